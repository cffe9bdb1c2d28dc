//! Finite De Morgan algebras: table validation, the lattice order, sups,
//! the covering relation and the crisp indicator `δ_p` on the carrier.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported carrier. Subsets of the carrier are enumerated as bit
/// masks, and the cylindrification formula visits all of them.
pub const MAX_ELEMENTS: usize = 16;

/// Dense index of an element in declaration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElemId(pub u8);

impl ElemId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("tables violate De Morgan axiom {}", .0.first().map(|v| v.axiom.as_str()).unwrap_or("?"))]
    Violations(Vec<Violation>),
    #[error("sup of the empty set is undefined")]
    EmptySup,
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("unknown built-in algebra `{0}` (expected B2, K3 or FOUR)")]
    UnknownBuiltin(String),
}

/// Raw operation tables over element ids, before any axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTables {
    pub name: String,
    pub elements: Vec<String>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

/// One failed axiom instance: the axiom identifier (e.g. `"3b"`) and the
/// element labels that witness the failure, in the axiom's variable order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ValidationReport {
    Ok,
    Malformed { reason: String },
    Violations { violations: Vec<Violation> },
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationReport::Ok)
    }
}

impl AlgebraTables {
    fn check_shape(&self) -> Result<(), String> {
        let n = self.elements.len();
        if n < 2 {
            return Err(format!("carrier needs at least 2 elements, got {n}"));
        }
        if n > MAX_ELEMENTS {
            return Err(format!(
                "carrier has {n} elements, maximum is {MAX_ELEMENTS}"
            ));
        }
        for (i, l) in self.elements.iter().enumerate() {
            if self.elements[..i].contains(l) {
                return Err(format!("duplicate element label `{l}`"));
            }
        }
        for (name, table) in [("join", &self.join), ("meet", &self.meet)] {
            if table.len() != n {
                return Err(format!(
                    "{name} table has {} rows, expected {n}",
                    table.len()
                ));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(format!(
                        "{name} row {i} has {} entries, expected {n}",
                        row.len()
                    ));
                }
                if let Some(v) = row.iter().find(|&&v| v >= n) {
                    return Err(format!("{name} row {i} has out-of-range entry {v}"));
                }
            }
        }
        if self.neg.len() != n {
            return Err(format!(
                "neg map has {} entries, expected {n}",
                self.neg.len()
            ));
        }
        if let Some(v) = self.neg.iter().find(|&&v| v >= n) {
            return Err(format!("neg has out-of-range entry {v}"));
        }
        if self.zero >= n || self.one >= n {
            return Err("zero/one out of range".into());
        }
        Ok(())
    }

    /// Exhaustive check of the seven axiom pairs. Reports the first witness
    /// (in lexicographic tuple order) for every violated axiom.
    pub fn validate(&self) -> ValidationReport {
        if let Err(reason) = self.check_shape() {
            return ValidationReport::Malformed { reason };
        }
        let n = self.elements.len();
        let j = |a: usize, b: usize| self.join[a][b];
        let m = |a: usize, b: usize| self.meet[a][b];
        let ng = |a: usize| self.neg[a];
        let (zero, one) = (self.zero, self.one);

        type Check<'a> = (&'static str, usize, Box<dyn Fn(&[usize]) -> bool + 'a>);
        let checks: Vec<Check> = vec![
            ("1a", 2, Box::new(|v| j(v[0], v[1]) == j(v[1], v[0]))),
            ("1b", 2, Box::new(|v| m(v[0], v[1]) == m(v[1], v[0]))),
            (
                "2a",
                3,
                Box::new(|v| j(j(v[0], v[1]), v[2]) == j(v[0], j(v[1], v[2]))),
            ),
            (
                "2b",
                3,
                Box::new(|v| m(m(v[0], v[1]), v[2]) == m(v[0], m(v[1], v[2]))),
            ),
            (
                "3a",
                3,
                Box::new(|v| m(v[0], j(v[1], v[2])) == j(m(v[0], v[1]), m(v[0], v[2]))),
            ),
            (
                "3b",
                3,
                Box::new(|v| j(v[0], m(v[1], v[2])) == m(j(v[0], v[1]), j(v[0], v[2]))),
            ),
            ("4a", 1, Box::new(|v| j(v[0], zero) == v[0])),
            ("4b", 1, Box::new(|v| m(v[0], one) == v[0])),
            ("5a", 2, Box::new(|v| m(v[0], j(v[0], v[1])) == v[0])),
            ("5b", 2, Box::new(|v| j(v[0], m(v[0], v[1])) == v[0])),
            (
                "6a",
                2,
                Box::new(|v| ng(j(v[0], v[1])) == m(ng(v[0]), ng(v[1]))),
            ),
            (
                "6b",
                2,
                Box::new(|v| ng(m(v[0], v[1])) == j(ng(v[0]), ng(v[1]))),
            ),
            ("7", 1, Box::new(|v| ng(ng(v[0])) == v[0])),
        ];

        let mut violations = Vec::new();
        for (axiom, arity, holds) in &checks {
            let total = n.pow(*arity as u32);
            let mut tuple = vec![0usize; *arity];
            for code in 0..total {
                let mut c = code;
                for slot in tuple.iter_mut().rev() {
                    *slot = c % n;
                    c /= n;
                }
                if !holds(&tuple) {
                    violations.push(Violation {
                        axiom: axiom.to_string(),
                        witness: tuple.iter().map(|&i| self.elements[i].clone()).collect(),
                    });
                    break;
                }
            }
        }
        if violations.is_empty() {
            ValidationReport::Ok
        } else {
            ValidationReport::Violations { violations }
        }
    }
}

/// A validated finite De Morgan algebra with its derived order tables.
#[derive(Clone, Debug)]
pub struct DeMorganAlgebra {
    name: String,
    labels: Vec<String>,
    join: Vec<ElemId>,
    meet: Vec<ElemId>,
    neg: Vec<ElemId>,
    zero: ElemId,
    one: ElemId,
    /// `down[p]`: bit mask of `{q : q <= p}`.
    down: Vec<u32>,
    /// Join of every subset mask; entry 0 is the empty join, i.e. zero.
    sup_of_mask: Vec<ElemId>,
}

impl PartialEq for DeMorganAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.join == other.join
            && self.meet == other.meet
            && self.neg == other.neg
            && self.zero == other.zero
            && self.one == other.one
    }
}

impl Eq for DeMorganAlgebra {}

impl DeMorganAlgebra {
    pub fn from_tables(tables: AlgebraTables) -> Result<Self, AlgebraError> {
        match tables.validate() {
            ValidationReport::Ok => {}
            ValidationReport::Malformed { reason } => return Err(AlgebraError::Malformed(reason)),
            ValidationReport::Violations { violations } => {
                return Err(AlgebraError::Violations(violations))
            }
        }
        let n = tables.elements.len();
        let id = |i: usize| ElemId(i as u8);
        let join: Vec<ElemId> = tables.join.iter().flatten().map(|&v| id(v)).collect();
        let meet: Vec<ElemId> = tables.meet.iter().flatten().map(|&v| id(v)).collect();
        let down = (0..n)
            .map(|p| {
                (0..n)
                    .filter(|&q| tables.meet[q][p] == q)
                    .fold(0u32, |acc, q| acc | (1 << q))
            })
            .collect();
        let mut sup_of_mask = vec![id(tables.zero); 1 << n];
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = sup_of_mask[mask & (mask - 1)];
            sup_of_mask[mask] = join[rest.idx() * n + low];
        }
        Ok(DeMorganAlgebra {
            name: tables.name,
            labels: tables.elements,
            join,
            meet,
            neg: tables.neg.into_iter().map(id).collect(),
            zero: id(tables.zero),
            one: id(tables.one),
            down,
            sup_of_mask,
        })
    }

    /// Two-element Boolean algebra `{0, 1}`.
    pub fn b2() -> Self {
        Self::chain("B2", &["0", "1"])
    }

    /// Kleene's strong three-valued chain `0 < u < 1` with `-u = u`.
    pub fn k3() -> Self {
        Self::chain("K3", &["0", "u", "1"])
    }

    /// Belnap's diamond `{0, a, b, 1}` with both atoms fixed by negation.
    pub fn four() -> Self {
        // ids as bit vectors: 0 = 00, a = 01, b = 10, 1 = 11
        let n = 4;
        let tables = AlgebraTables {
            name: "FOUR".into(),
            elements: ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect(),
            join: (0..n).map(|x| (0..n).map(|y| x | y).collect()).collect(),
            meet: (0..n).map(|x| (0..n).map(|y| x & y).collect()).collect(),
            neg: vec![3, 1, 2, 0],
            zero: 0,
            one: 3,
        };
        Self::from_tables(tables).expect("FOUR is a De Morgan algebra")
    }

    fn chain(name: &str, labels: &[&str]) -> Self {
        let n = labels.len();
        let tables = AlgebraTables {
            name: name.into(),
            elements: labels.iter().map(|s| s.to_string()).collect(),
            join: (0..n).map(|x| (0..n).map(|y| x.max(y)).collect()).collect(),
            meet: (0..n).map(|x| (0..n).map(|y| x.min(y)).collect()).collect(),
            neg: (0..n).map(|x| n - 1 - x).collect(),
            zero: 0,
            one: n - 1,
        };
        Self::from_tables(tables).expect("finite chains with order-reversal are De Morgan algebras")
    }

    pub fn builtin(name: &str) -> Result<Self, AlgebraError> {
        match name {
            "B2" => Ok(Self::b2()),
            "K3" => Ok(Self::k3()),
            "FOUR" => Ok(Self::four()),
            other => Err(AlgebraError::UnknownBuiltin(other.into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElemId> + ExactSizeIterator + Clone {
        (0..self.labels.len() as u8).map(ElemId)
    }

    pub fn label(&self, p: ElemId) -> &str {
        &self.labels[p.idx()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Result<ElemId, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| ElemId(i as u8))
            .ok_or_else(|| AlgebraError::UnknownLabel(label.into()))
    }

    #[inline]
    pub fn zero(&self) -> ElemId {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> ElemId {
        self.one
    }

    /// Whether `p` is one of the two classical values.
    #[inline]
    pub fn is_classical(&self, p: ElemId) -> bool {
        p == self.zero || p == self.one
    }

    #[inline]
    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.join[a.idx() * self.len() + b.idx()]
    }

    #[inline]
    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.meet[a.idx() * self.len() + b.idx()]
    }

    #[inline]
    pub fn neg(&self, a: ElemId) -> ElemId {
        self.neg[a.idx()]
    }

    #[inline]
    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.meet(a, b) == a
    }

    #[inline]
    pub fn lt(&self, a: ElemId, b: ElemId) -> bool {
        a != b && self.leq(a, b)
    }

    /// Bit mask of the down-set `{q : q <= p}`.
    #[inline]
    pub fn downset_mask(&self, p: ElemId) -> u32 {
        self.down[p.idx()]
    }

    /// Least upper bound of a nonempty set.
    pub fn sup<I: IntoIterator<Item = ElemId>>(&self, set: I) -> Result<ElemId, AlgebraError> {
        let mut it = set.into_iter();
        let first = it.next().ok_or(AlgebraError::EmptySup)?;
        Ok(it.fold(first, |acc, x| self.join(acc, x)))
    }

    /// Join with the empty join read as zero.
    pub fn join_all<I: IntoIterator<Item = ElemId>>(&self, set: I) -> ElemId {
        set.into_iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    /// Meet with the empty meet read as one.
    pub fn meet_all<I: IntoIterator<Item = ElemId>>(&self, set: I) -> ElemId {
        set.into_iter().fold(self.one, |acc, x| self.meet(acc, x))
    }

    /// Sup of the subset encoded by `mask` (bit `i` = element `i`); zero for 0.
    #[inline]
    pub fn sup_mask(&self, mask: u32) -> ElemId {
        self.sup_of_mask[mask as usize]
    }

    /// Number of subset masks, `2^|M|`.
    #[inline]
    pub fn mask_count(&self) -> u32 {
        1u32 << self.len()
    }

    /// `q ⋖ p`: `q < p` with nothing strictly between.
    pub fn covers(&self, q: ElemId, p: ElemId) -> bool {
        self.lt(q, p) && !self.elements().any(|r| self.lt(q, r) && self.lt(r, p))
    }

    /// `V_1 = {1}`, `V_{n+1} = {p : p ⋖ r for some r in V_n}`, up to the first
    /// empty level. Levels are listed in id order.
    pub fn level_sets(&self) -> Vec<Vec<ElemId>> {
        let mut levels = vec![vec![self.one]];
        loop {
            let prev = levels.last().unwrap();
            let next: Vec<ElemId> = self
                .elements()
                .filter(|&p| prev.iter().any(|&r| self.covers(p, r)))
                .collect();
            if next.is_empty() {
                return levels;
            }
            levels.push(next);
        }
    }

    /// The crisp indicator on the carrier: one when `p == q`, else zero.
    #[inline]
    pub fn delta_star(&self, p: ElemId, q: ElemId) -> ElemId {
        if p == q {
            self.one
        } else {
            self.zero
        }
    }

    pub fn to_tables(&self) -> AlgebraTables {
        let n = self.len();
        AlgebraTables {
            name: self.name.clone(),
            elements: self.labels.clone(),
            join: (0..n)
                .map(|i| (0..n).map(|j| self.join[i * n + j].idx()).collect())
                .collect(),
            meet: (0..n)
                .map(|i| (0..n).map(|j| self.meet[i * n + j].idx()).collect())
                .collect(),
            neg: self.neg.iter().map(|p| p.idx()).collect(),
            zero: self.zero.idx(),
            one: self.one.idx(),
        }
    }
}

/// On-disk form: every table entry is an element label.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub elements: Vec<String>,
    pub join: Vec<Vec<String>>,
    pub meet: Vec<Vec<String>>,
    pub neg: Vec<String>,
    pub zero: String,
    pub one: String,
}

impl AlgebraFile {
    pub fn to_tables(&self) -> Result<AlgebraTables, AlgebraError> {
        let lookup = |l: &String| {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| AlgebraError::UnknownLabel(l.clone()))
        };
        let table = |t: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>, AlgebraError> {
            t.iter()
                .map(|row| row.iter().map(lookup).collect())
                .collect()
        };
        Ok(AlgebraTables {
            name: self.name.clone(),
            elements: self.elements.clone(),
            join: table(&self.join)?,
            meet: table(&self.meet)?,
            neg: self.neg.iter().map(lookup).collect::<Result<_, _>>()?,
            zero: lookup(&self.zero)?,
            one: lookup(&self.one)?,
        })
    }

    pub fn from_algebra(alg: &DeMorganAlgebra) -> Self {
        let t = alg.to_tables();
        let l = |i: usize| t.elements[i].clone();
        AlgebraFile {
            name: t.name.clone(),
            elements: t.elements.clone(),
            join: t
                .join
                .iter()
                .map(|r| r.iter().map(|&i| l(i)).collect())
                .collect(),
            meet: t
                .meet
                .iter()
                .map(|r| r.iter().map(|&i| l(i)).collect())
                .collect(),
            neg: t.neg.iter().map(|&i| l(i)).collect(),
            zero: l(t.zero),
            one: l(t.one),
        }
    }

    /// Validates a parsed file; unknown labels are reported as malformed.
    pub fn validate(&self) -> ValidationReport {
        match self.to_tables() {
            Ok(t) => t.validate(),
            Err(e) => ValidationReport::Malformed {
                reason: e.to_string(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<DeMorganAlgebra> {
        vec![
            DeMorganAlgebra::b2(),
            DeMorganAlgebra::k3(),
            DeMorganAlgebra::four(),
        ]
    }

    #[test]
    fn builtins_validate() {
        for alg in all() {
            assert!(alg.to_tables().validate().is_ok(), "{}", alg.name());
        }
    }

    #[test]
    fn k3_with_bad_negation_fails_involution() {
        let mut t = DeMorganAlgebra::k3().to_tables();
        t.neg[1] = 0; // -u := 0
        match t.validate() {
            ValidationReport::Violations { violations } => {
                let inv = violations.iter().find(|v| v.axiom == "7").expect("axiom 7");
                // --u = -0 = 1, not u
                assert_eq!(inv.witness, vec!["u".to_string()]);
            }
            other => panic!("expected violations, got {other:?}"),
        }
    }

    #[test]
    fn malformed_tables_are_reported_before_axioms() {
        let mut t = DeMorganAlgebra::k3().to_tables();
        t.join.pop();
        assert!(matches!(t.validate(), ValidationReport::Malformed { .. }));
        let mut t = DeMorganAlgebra::k3().to_tables();
        t.neg[0] = 7;
        assert!(matches!(t.validate(), ValidationReport::Malformed { .. }));
    }

    #[test]
    fn order_examples() {
        let k3 = DeMorganAlgebra::k3();
        let (z, u, o) = (ElemId(0), ElemId(1), ElemId(2));
        assert!(k3.leq(z, o));
        assert!(k3.leq(u, o));
        let four = DeMorganAlgebra::four();
        let (a, b) = (four.id_of("a").unwrap(), four.id_of("b").unwrap());
        assert!(!four.leq(a, b));
        assert_eq!(four.sup([a, b]).unwrap(), four.one());
        assert_eq!(k3.sup([z, u]).unwrap(), u);
        assert_eq!(k3.sup([o]).unwrap(), o);
        assert_eq!(k3.sup(std::iter::empty()), Err(AlgebraError::EmptySup));
        assert_eq!(k3.join_all(std::iter::empty()), z);
        assert_eq!(k3.meet_all(std::iter::empty()), o);
    }

    #[test]
    fn covering_and_levels() {
        let k3 = DeMorganAlgebra::k3();
        assert!(k3.covers(ElemId(0), ElemId(1)));
        assert!(!k3.covers(ElemId(0), ElemId(2)));
        let b2 = DeMorganAlgebra::b2();
        assert_eq!(b2.level_sets(), vec![vec![ElemId(1)], vec![ElemId(0)]]);
        let four = DeMorganAlgebra::four();
        assert_eq!(
            four.level_sets(),
            vec![vec![ElemId(3)], vec![ElemId(1), ElemId(2)], vec![ElemId(0)]]
        );
    }

    #[test]
    fn delta_star_is_an_indicator() {
        let k3 = DeMorganAlgebra::k3();
        let u = ElemId(1);
        assert_eq!(k3.delta_star(u, u), k3.one());
        assert_eq!(k3.delta_star(u, k3.one()), k3.zero());
        let b2 = DeMorganAlgebra::b2();
        for q in b2.elements() {
            let expect = if q == b2.one() { b2.one() } else { b2.zero() };
            assert_eq!(b2.delta_star(b2.one(), q), expect);
        }
    }

    #[test]
    fn derived_laws_and_order() {
        for alg in all() {
            let (z, o) = (alg.zero(), alg.one());
            assert_eq!(alg.neg(z), o);
            assert_eq!(alg.neg(o), z);
            for x in alg.elements() {
                assert_eq!(alg.join(x, x), x);
                assert_eq!(alg.meet(x, x), x);
                assert_eq!(alg.meet(z, x), z);
                assert_eq!(alg.join(x, o), o);
                for y in alg.elements() {
                    assert_eq!(alg.neg(alg.join(x, y)), alg.meet(alg.neg(x), alg.neg(y)));
                    assert_eq!(alg.neg(alg.meet(x, y)), alg.join(alg.neg(x), alg.neg(y)));
                    assert_eq!(alg.leq(x, y), alg.join(x, y) == y);
                    assert_eq!(alg.leq(x, y), alg.leq(alg.neg(y), alg.neg(x)));
                    if alg.leq(x, y) && alg.leq(y, x) {
                        assert_eq!(x, y);
                    }
                    for w in alg.elements() {
                        if alg.leq(x, y) && alg.leq(y, w) {
                            assert!(alg.leq(x, w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sup_of_union_is_join_of_sups() {
        for alg in all() {
            for a in 1..alg.mask_count() {
                for b in 1..alg.mask_count() {
                    assert_eq!(
                        alg.sup_mask(a | b),
                        alg.join(alg.sup_mask(a), alg.sup_mask(b))
                    );
                }
                let members = alg.elements().filter(|p| a & (1 << p.0) != 0);
                assert_eq!(alg.sup(members).unwrap(), alg.sup_mask(a));
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let four = DeMorganAlgebra::four();
        let file = AlgebraFile::from_algebra(&four);
        let json = serde_json::to_string(&file).unwrap();
        let back: AlgebraFile = serde_json::from_str(&json).unwrap();
        let alg = DeMorganAlgebra::from_tables(back.to_tables().unwrap()).unwrap();
        assert_eq!(alg, four);
    }
}
