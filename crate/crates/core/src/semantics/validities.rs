//! The fourteen validity schemas, instantiated from explicit bindings.
//!
//! Two printed schemas are read in a corrected form: in schema 1 the second
//! quantifier is over `v_k`, and schema 13 takes the `q ∈ A` form of the
//! cylindrification formula,
//!
//! ```text
//! γ_p ∃v_k φ ⇔ ⋁_{sup A = p} ⋀_{q∈A} ∃v_k γ_q φ ∧ ¬⋁_{sup A > p} ⋀_{q∈A} ∃v_k γ_q φ
//! ```
//!
//! with nonempty `A ⊆ M` taken in increasing mask order.

use serde_json::{json, Value};
use thiserror::Error;

use crate::demorgan::{DeMorganAlgebra, ElemId};
use crate::syntax::derived::{big_and, big_gamma, big_or, forall, iff, imp, subst};
use crate::syntax::Formula;

pub const SCHEMA_COUNT: u8 = 14;

/// Metavariable bindings. Each schema reads the fields it mentions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    pub phi: Option<Formula>,
    pub theta: Option<Formula>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<ElemId>,
    /// Schema 14: the relation symbol, the target indices `j_0..j_{n-1}`
    /// and the fresh indices `k_0..k_{n-1}`.
    pub rel: Option<String>,
    pub j: Vec<usize>,
    pub fresh: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidityError {
    #[error("no validity schema {0} (expected 1..=14)")]
    UnknownSchema(u8),
    #[error("schema {schema} needs a binding for `{name}`")]
    Missing { schema: u8, name: &'static str },
    #[error("schema {schema}: side condition fails: {reason}")]
    SideCondition { schema: u8, reason: String },
}

impl Bindings {
    fn phi(&self, schema: u8) -> Result<Formula, ValidityError> {
        self.phi.clone().ok_or(ValidityError::Missing {
            schema,
            name: "phi",
        })
    }
    fn theta(&self, schema: u8) -> Result<Formula, ValidityError> {
        self.theta.clone().ok_or(ValidityError::Missing {
            schema,
            name: "theta",
        })
    }
    fn idx(v: Option<usize>, schema: u8, name: &'static str) -> Result<usize, ValidityError> {
        v.ok_or(ValidityError::Missing { schema, name })
    }

    pub fn to_json(&self, m: &DeMorganAlgebra) -> Value {
        let mut o = serde_json::Map::new();
        if let Some(f) = &self.phi {
            o.insert("phi".into(), json!(f.print(m)));
        }
        if let Some(f) = &self.theta {
            o.insert("theta".into(), json!(f.print(m)));
        }
        for (name, v) in [("k", self.k), ("l", self.l), ("m", self.m)] {
            if let Some(v) = v {
                o.insert(name.into(), json!(v));
            }
        }
        if let Some(p) = self.p {
            o.insert("p".into(), json!(m.label(p)));
        }
        if let Some(r) = &self.rel {
            o.insert("rel".into(), json!(r));
            o.insert("j".into(), json!(self.j));
            o.insert("fresh".into(), json!(self.fresh));
        }
        Value::Object(o)
    }
}

fn side(schema: u8, ok: bool, reason: impl FnOnce() -> String) -> Result<(), ValidityError> {
    if ok {
        Ok(())
    } else {
        Err(ValidityError::SideCondition {
            schema,
            reason: reason(),
        })
    }
}

/// The instance of `schema` under `b`, after checking its side conditions.
pub fn instantiate(
    m: &DeMorganAlgebra,
    schema: u8,
    b: &Bindings,
) -> Result<Formula, ValidityError> {
    let s = schema;
    let k = || Bindings::idx(b.k, s, "k");
    let l = || Bindings::idx(b.l, s, "l");
    let (zero, one) = (m.zero(), m.one());
    let t = Formula::Const;
    let eq = |x: Formula, y: Formula| iff(m, x, y);
    Ok(match schema {
        1 => {
            let all = forall(k()?, b.phi(s)?);
            imp(big_gamma(m, all.clone()), imp(all, b.phi(s)?))
        }
        2 => {
            let e = Formula::exists(k()?, Formula::gamma(one, b.phi(s)?));
            eq(Formula::gamma(one, e.clone()), e)
        }
        3 => {
            let d = Formula::Eq(k()?, l()?);
            eq(Formula::gamma(one, d.clone()), d)
        }
        4 => {
            let p = b.p.ok_or(ValidityError::Missing {
                schema: s,
                name: "p",
            })?;
            side(s, !m.is_classical(p), || {
                format!("p = {} must not be 0 or 1", m.label(p))
            })?;
            eq(Formula::gamma(p, Formula::Eq(k()?, l()?)), t(zero))
        }
        5 => {
            let d = Formula::Eq(k()?, l()?);
            eq(Formula::gamma(zero, d.clone()), d.neg())
        }
        6 => eq(Formula::exists(k()?, t(zero)), t(zero)),
        7 => {
            let e = Formula::exists(k()?, b.phi(s)?);
            eq(b.phi(s)?.or(e.clone()), e)
        }
        8 => {
            let k = k()?;
            let (phi, theta) = (b.phi(s)?, b.theta(s)?);
            let lhs = Formula::exists(k, phi.clone().and(Formula::exists(k, theta.clone())));
            eq(lhs, Formula::exists(k, phi).and(Formula::exists(k, theta)))
        }
        9 => {
            let (k, l, phi) = (k()?, l()?, b.phi(s)?);
            eq(
                Formula::exists(k, Formula::exists(l, phi.clone())),
                Formula::exists(l, Formula::exists(k, phi)),
            )
        }
        10 => {
            let k = k()?;
            eq(Formula::Eq(k, k), t(one))
        }
        11 => {
            let (k, l, mm) = (k()?, l()?, Bindings::idx(b.m, s, "m")?);
            side(s, k != l && k != mm, || {
                format!("k = {k} must differ from l = {l} and m = {mm}")
            })?;
            eq(
                Formula::Eq(l, mm),
                Formula::exists(k, Formula::Eq(l, k).and(Formula::Eq(k, mm))),
            )
        }
        12 => {
            let (k, l, phi) = (k()?, l()?, b.phi(s)?);
            side(s, k != l, || format!("k = l = {k}"))?;
            let g1 = Formula::gamma(one, phi);
            let a = Formula::exists(k, Formula::Eq(k, l).and(g1.clone()));
            let c = Formula::exists(k, Formula::Eq(k, l).and(g1.neg()));
            eq(a.and(c), t(zero))
        }
        13 => {
            let (k, phi) = (k()?, b.phi(s)?);
            let p = b.p.ok_or(ValidityError::Missing {
                schema: s,
                name: "p",
            })?;
            let term = |mask: u32| {
                big_and(
                    m,
                    m.elements()
                        .filter(|q| mask >> q.idx() & 1 == 1)
                        .map(|q| Formula::exists(k, Formula::gamma(q, phi.clone()))),
                )
            };
            let masks = || 1..m.mask_count();
            let at = big_or(m, masks().filter(|&a| m.sup_mask(a) == p).map(term));
            let above = big_or(m, masks().filter(|&a| m.lt(p, m.sup_mask(a))).map(term));
            eq(
                Formula::gamma(p, Formula::exists(k, phi)),
                at.and(above.neg()),
            )
        }
        14 => {
            let rel = b.rel.clone().ok_or(ValidityError::Missing {
                schema: s,
                name: "rel",
            })?;
            let (j, fresh) = (&b.j, &b.fresh);
            let n = j.len();
            side(s, fresh.len() == n, || {
                format!("{} fresh indices for arity {n}", fresh.len())
            })?;
            for (a, &ka) in fresh.iter().enumerate() {
                side(s, !fresh[..a].contains(&ka), || {
                    format!("fresh index {ka} repeated")
                })?;
                side(s, ka >= n && !j.contains(&ka), || {
                    format!("fresh index {ka} clashes with 0..{n} or j")
                })?;
            }
            let mut chain = Formula::rel(&rel, &(0..n).collect::<Vec<_>>());
            for a in (0..n).rev() {
                chain = subst(a, fresh[a], chain);
            }
            for a in (0..n).rev() {
                chain = subst(fresh[a], j[a], chain);
            }
            eq(Formula::rel(&rel, j), chain)
        }
        other => return Err(ValidityError::UnknownSchema(other)),
    })
}

/// Instances of schemas 1–13 over all index choices below `window`, every
/// `p` and the given metavariable fillers (`theta` ranges over the same
/// list). Instances whose side conditions fail are skipped.
pub fn instances(m: &DeMorganAlgebra, window: usize, fillers: &[Formula]) -> Vec<(u8, Bindings)> {
    let mut out = Vec::new();
    let idx: Vec<usize> = (0..window).collect();
    for schema in 1..=13u8 {
        let mut cands = vec![Bindings::default()];
        let uses = |name: &str| match name {
            "phi" => matches!(schema, 1 | 2 | 7 | 8 | 9 | 12 | 13),
            "theta" => schema == 8,
            "k" => true,
            "l" => matches!(schema, 3 | 4 | 5 | 9 | 11 | 12),
            "m" => schema == 11,
            "p" => matches!(schema, 4 | 13),
            _ => false,
        };
        macro_rules! expand {
            ($name:literal, $vals:expr, $set:expr) => {
                if uses($name) {
                    cands = cands
                        .into_iter()
                        .flat_map(|b| {
                            $vals.iter().map(move |v| {
                                let mut b = b.clone();
                                #[allow(clippy::redundant_closure_call)]
                                ($set)(&mut b, v.clone());
                                b
                            })
                        })
                        .collect();
                }
            };
        }
        let ps: Vec<ElemId> = m.elements().collect();
        expand!("phi", fillers, |b: &mut Bindings, f| b.phi = Some(f));
        expand!("theta", fillers, |b: &mut Bindings, f| b.theta = Some(f));
        expand!("k", idx, |b: &mut Bindings, v| b.k = Some(v));
        expand!("l", idx, |b: &mut Bindings, v| b.l = Some(v));
        expand!("m", idx, |b: &mut Bindings, v| b.m = Some(v));
        expand!("p", ps, |b: &mut Bindings, v| b.p = Some(v));
        out.extend(
            cands
                .into_iter()
                .filter(|b| instantiate(m, schema, b).is_ok())
                .map(|b| (schema, b)),
        );
    }
    out
}

/// Schema 14 instances for an `n`-ary relation: every `j ∈ window^n`, with
/// the smallest admissible fresh indices. Empty when the window is too
/// small to supply them.
pub fn substitution_instances(rel: &str, n: usize, window: usize) -> Vec<Bindings> {
    let total = window.checked_pow(n as u32).unwrap_or(0);
    (0..total)
        .filter_map(|mut code| {
            let j: Vec<usize> = (0..n)
                .map(|_| {
                    let v = code % window;
                    code /= window;
                    v
                })
                .collect();
            let fresh = fresh_indices(n, &j, window)?;
            Some(Bindings {
                rel: Some(rel.into()),
                j,
                fresh,
                ..Bindings::default()
            })
        })
        .collect()
}

/// The `n` smallest indices outside `0..n` and `j`, if all below `window`.
pub fn fresh_indices(n: usize, j: &[usize], window: usize) -> Option<Vec<usize>> {
    let fresh: Vec<usize> = (n..window).filter(|v| !j.contains(v)).take(n).collect();
    (fresh.len() == n).then_some(fresh)
}
