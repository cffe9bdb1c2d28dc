//! The construction `M(B)`: elements are `M`-indexed partitions of the unit
//! of a cylindric algebra `B`, with the operations lifted layerwise.
//!
//! [`MAlgebra`] is generic over the underlying [`CylindricAlgebra`], so the
//! same code builds `M(B)` over a set algebra and `M(C(A))` over an extracted
//! crisp algebra. Set-specific extras (enumeration, the witness-assignment
//! form of cylindrification, JSON) live on [`FullMAlgebra`].

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::demorgan::{AlgebraError, DeMorganAlgebra, ElemId};
use crate::setalg::{CylindricAlgebra, PointSet, SetError, Space};

/// Largest `|U|` accepted by [`FullMAlgebra::ecyl`].
pub const ECYL_MAX_BASE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MError {
    #[error("element has {found} layers, algebra has {expected} values")]
    LayerCount { expected: usize, found: usize },
    #[error("layers do not partition the unit")]
    NotPartition,
    #[error("coordinate {coord} outside the window 0..{dim}")]
    Coordinate { coord: usize, dim: usize },
    #[error("witness enumeration needs |U| <= {ECYL_MAX_BASE}, got {0}")]
    EnumerationCap(usize),
    #[error("element space {found:?} does not match {expected:?}")]
    SpaceMismatch { expected: Space, found: Space },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An element of `M(B)`: `layers[p]` is `x^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MElement<E> {
    pub layers: Vec<E>,
}

impl<E> MElement<E> {
    #[inline]
    pub fn layer(&self, p: ElemId) -> &E {
        &self.layers[p.idx()]
    }
}

pub type MValuedSet = MElement<PointSet>;

/// Subset bookkeeping for the cylindrification formula and the lifted
/// lattice operations.
#[derive(Clone, Debug)]
pub struct MCylOpsTable {
    /// Nonempty masks grouped by their sup.
    pub masks_by_sup: Vec<Vec<u32>>,
    /// `above[p]`: mask of `{r : r > p}`.
    pub above: Vec<u32>,
    /// `down[p]`: mask of `{q : q <= p}`.
    pub down: Vec<u32>,
    /// `join_pairs[p]`: all `(q, r)` with `q + r = p`.
    pub join_pairs: Vec<Vec<(ElemId, ElemId)>>,
    /// `meet_pairs[p]`: all `(q, r)` with `q . r = p`.
    pub meet_pairs: Vec<Vec<(ElemId, ElemId)>>,
}

impl MCylOpsTable {
    pub fn new(m: &DeMorganAlgebra) -> Self {
        let n = m.len();
        let mut masks_by_sup = vec![Vec::new(); n];
        for mask in 1..m.mask_count() {
            masks_by_sup[m.sup_mask(mask).idx()].push(mask);
        }
        let above = m
            .elements()
            .map(|p| {
                m.elements()
                    .filter(|&r| m.lt(p, r))
                    .fold(0, |acc, r| acc | 1 << r.0)
            })
            .collect();
        let down = m.elements().map(|p| m.downset_mask(p)).collect();
        let mut join_pairs = vec![Vec::new(); n];
        let mut meet_pairs = vec![Vec::new(); n];
        for q in m.elements() {
            for r in m.elements() {
                join_pairs[m.join(q, r).idx()].push((q, r));
                meet_pairs[m.meet(q, r).idx()].push((q, r));
            }
        }
        MCylOpsTable {
            masks_by_sup,
            above,
            down,
            join_pairs,
            meet_pairs,
        }
    }
}

/// `M(B)` for a finite De Morgan algebra `M` and a cylindric algebra `B`.
#[derive(Clone, Debug)]
pub struct MAlgebra<B> {
    values: Arc<DeMorganAlgebra>,
    base: B,
    table: Arc<MCylOpsTable>,
}

/// `M(B)` over the full set algebra on `U^d`.
pub type FullMAlgebra = MAlgebra<Space>;

fn elems(mask: u32) -> impl Iterator<Item = ElemId> {
    (0..32u8).filter(move |i| mask >> i & 1 == 1).map(ElemId)
}

impl<B: CylindricAlgebra> MAlgebra<B> {
    pub fn new(values: DeMorganAlgebra, base: B) -> Self {
        Self::with_shared(Arc::new(values), base)
    }

    pub fn with_shared(values: Arc<DeMorganAlgebra>, base: B) -> Self {
        let table = Arc::new(MCylOpsTable::new(&values));
        MAlgebra {
            values,
            base,
            table,
        }
    }

    #[inline]
    pub fn values(&self) -> &DeMorganAlgebra {
        &self.values
    }

    /// The same value algebra and tables over another base.
    pub fn rebase<C: CylindricAlgebra>(&self, base: C) -> MAlgebra<C> {
        MAlgebra {
            values: Arc::clone(&self.values),
            base,
            table: Arc::clone(&self.table),
        }
    }

    pub fn shared_values(&self) -> Arc<DeMorganAlgebra> {
        Arc::clone(&self.values)
    }

    #[inline]
    pub fn base(&self) -> &B {
        &self.base
    }

    #[inline]
    pub fn table(&self) -> &MCylOpsTable {
        &self.table
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    fn check_coord(&self, k: usize) -> Result<(), MError> {
        if k < self.dim() {
            Ok(())
        } else {
            Err(MError::Coordinate {
                coord: k,
                dim: self.dim(),
            })
        }
    }

    fn union_all<'a, I: IntoIterator<Item = &'a B::Elem>>(&self, it: I) -> B::Elem
    where
        B::Elem: 'a,
    {
        it.into_iter()
            .fold(self.base.bottom(), |acc, x| self.base.sum(&acc, x))
    }

    /// Pairwise disjoint layers whose union is the unit.
    pub fn is_partition(&self, x: &MElement<B::Elem>) -> bool {
        if x.layers.len() != self.values.len() {
            return false;
        }
        let mut seen = self.base.bottom();
        for layer in &x.layers {
            if !self.base.is_bottom(&self.base.product(&seen, layer)) {
                return false;
            }
            seen = self.base.sum(&seen, layer);
        }
        seen == self.base.top()
    }

    /// Validates an element built outside this module.
    pub fn check(&self, x: &MElement<B::Elem>) -> Result<(), MError> {
        if x.layers.len() != self.values.len() {
            return Err(MError::LayerCount {
                expected: self.values.len(),
                found: x.layers.len(),
            });
        }
        if !self.is_partition(x) {
            return Err(MError::NotPartition);
        }
        Ok(())
    }

    /// `u_p`: layer `p` is the unit, the rest are empty.
    pub fn unit(&self, p: ElemId) -> MElement<B::Elem> {
        self.crisp_layers(p, self.base.top())
    }

    /// The element with layer `p` equal to `x` and every other layer empty.
    /// Only a partition when `x` is the unit.
    fn crisp_layers(&self, p: ElemId, x: B::Elem) -> MElement<B::Elem> {
        let mut layers = vec![self.base.bottom(); self.values.len()];
        layers[p.idx()] = x;
        MElement { layers }
    }

    /// Two-layer element: `x` at 1, `-x` at 0.
    pub fn two_layer(&self, x: B::Elem) -> MElement<B::Elem> {
        let mut layers = vec![self.base.bottom(); self.values.len()];
        layers[self.values.zero().idx()] = self.base.minus(&x);
        layers[self.values.one().idx()] = x;
        MElement { layers }
    }

    fn lift2(
        &self,
        pairs: &[Vec<(ElemId, ElemId)>],
        x: &MElement<B::Elem>,
        y: &MElement<B::Elem>,
    ) -> MElement<B::Elem> {
        let layers = pairs
            .iter()
            .map(|ps| {
                let mut acc = self.base.bottom();
                for &(q, r) in ps {
                    let (a, b) = (x.layer(q), y.layer(r));
                    if self.base.is_bottom(a) || self.base.is_bottom(b) {
                        continue;
                    }
                    acc = self.base.sum(&acc, &self.base.product(a, b));
                }
                acc
            })
            .collect();
        MElement { layers }
    }

    /// `(x ⊔ y)^p = Σ_{q+r=p} x^q · y^r`.
    pub fn mjoin(&self, x: &MElement<B::Elem>, y: &MElement<B::Elem>) -> MElement<B::Elem> {
        self.lift2(&self.table.join_pairs, x, y)
    }

    /// `(x ⊓ y)^p = Σ_{q·r=p} x^q · y^r`.
    pub fn mmeet(&self, x: &MElement<B::Elem>, y: &MElement<B::Elem>) -> MElement<B::Elem> {
        self.lift2(&self.table.meet_pairs, x, y)
    }

    /// `(⊖x)^p = x^{-p}`.
    pub fn mneg(&self, x: &MElement<B::Elem>) -> MElement<B::Elem> {
        let layers = self
            .values
            .elements()
            .map(|p| x.layer(self.values.neg(p)).clone())
            .collect();
        MElement { layers }
    }

    /// `d_κλ`: the diagonal at 1, its complement at 0.
    pub fn mdiag(&self, k: usize, l: usize) -> Result<MElement<B::Elem>, MError> {
        self.check_coord(k)?;
        self.check_coord(l)?;
        Ok(self.two_layer(self.base.diagonal(k, l)))
    }

    /// `δ_p x`: `x^p` at 1, its complement at 0.
    pub fn mdelta(&self, p: ElemId, x: &MElement<B::Elem>) -> MElement<B::Elem> {
        self.two_layer(x.layer(p).clone())
    }

    /// `Δx = δ_0 x ⊔ δ_1 x`.
    pub fn big_delta(&self, x: &MElement<B::Elem>) -> MElement<B::Elem> {
        let m = &self.values;
        self.mjoin(&self.mdelta(m.zero(), x), &self.mdelta(m.one(), x))
    }

    /// Cylindrification by the sup formula
    /// `(c_κ x)^p = Σ_{supA=p} Π_{q∈A} c_κ x^q · -Σ_{supA>p} Π_{q∈A} c_κ x^q`.
    pub fn mcyl(&self, k: usize, x: &MElement<B::Elem>) -> Result<MElement<B::Elem>, MError> {
        self.check_coord(k)?;
        Ok(self.mcyl_unchecked(k, x))
    }

    pub(crate) fn mcyl_unchecked(&self, k: usize, x: &MElement<B::Elem>) -> MElement<B::Elem> {
        let cyl: Vec<B::Elem> = x
            .layers
            .iter()
            .map(|l| self.base.cylindrify(k, l))
            .collect();
        self.sup_layers(&cyl)
    }

    /// `V_p = Σ_{supA=p} Π_{q∈A} y_q · -Σ_{supA>p} Π_{q∈A} y_q` for an arbitrary
    /// family `y` indexed by `M`. Empty sums are the bottom element.
    pub fn sup_layers(&self, y: &[B::Elem]) -> MElement<B::Elem> {
        let n = self.values.len();
        assert_eq!(y.len(), n, "family must be indexed by the carrier");
        // Z[mask] = Π_{q ∈ mask} y_q, built from the mask minus its low bit.
        let count = 1usize << n;
        let mut z: Vec<Option<B::Elem>> = vec![None; count];
        z[0] = Some(self.base.top());
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            z[mask] = match &z[mask & (mask - 1)] {
                Some(rest) => {
                    let v = self.base.product(rest, &y[low]);
                    (!self.base.is_bottom(&v)).then_some(v)
                }
                None => None,
            };
        }
        let by_sup: Vec<B::Elem> = self
            .table
            .masks_by_sup
            .iter()
            .map(|masks| self.union_all(masks.iter().filter_map(|&m| z[m as usize].as_ref())))
            .collect();
        let layers = (0..n)
            .map(|p| {
                let higher = self.union_all(elems(self.table.above[p]).map(|r| &by_sup[r.idx()]));
                self.base.product(&by_sup[p], &self.base.minus(&higher))
            })
            .collect();
        MElement { layers }
    }

    /// `a ≤ b` iff `a ⊔ b = b`.
    pub fn mleq(&self, a: &MElement<B::Elem>, b: &MElement<B::Elem>) -> bool {
        self.mjoin(a, b) == *b
    }

    /// The layerwise criterion: `b^p ≤ Σ_{q≤p} a^q` for every `p`.
    pub fn mleq_layerwise(&self, a: &MElement<B::Elem>, b: &MElement<B::Elem>) -> bool {
        self.values.elements().all(|p| {
            let below = self.union_all(elems(self.table.down[p.idx()]).map(|q| a.layer(q)));
            let outside = self.base.product(b.layer(p), &self.base.minus(&below));
            self.base.is_bottom(&outside)
        })
    }

    /// `a ↦ b = ⊖a ⊔ b`.
    pub fn mimp(&self, a: &MElement<B::Elem>, b: &MElement<B::Elem>) -> MElement<B::Elem> {
        self.mjoin(&self.mneg(a), b)
    }

    /// `a |⟹ b = Π_r (δ_r b ↦ Σ_{q≤r} δ_q a)`, folded in id order.
    pub fn mstrong_imp(&self, a: &MElement<B::Elem>, b: &MElement<B::Elem>) -> MElement<B::Elem> {
        let mut acc: Option<MElement<B::Elem>> = None;
        for r in self.values.elements() {
            let below = elems(self.table.down[r.idx()])
                .map(|q| self.mdelta(q, a))
                .reduce(|x, y| self.mjoin(&x, &y))
                .expect("down-sets contain their top");
            let conj = self.mimp(&self.mdelta(r, b), &below);
            acc = Some(match acc {
                None => conj,
                Some(prev) => self.mmeet(&prev, &conj),
            });
        }
        acc.expect("carrier is nonempty")
    }

    /// `S^κ_λ x = C_κ(D_κλ ⊓ x)`.
    pub fn msubst(
        &self,
        k: usize,
        l: usize,
        x: &MElement<B::Elem>,
    ) -> Result<MElement<B::Elem>, MError> {
        let d = self.mdiag(k, l)?;
        self.mcyl(k, &self.mmeet(&d, x))
    }

    /// `Q_κ x = ⊖C_κ⊖x`.
    pub fn mq(&self, k: usize, x: &MElement<B::Elem>) -> Result<MElement<B::Elem>, MError> {
        Ok(self.mneg(&self.mcyl(k, &self.mneg(x))?))
    }

    /// `dim x = ⋃_p {κ : c_κ δ_p x ≠ δ_p x}`.
    pub fn mdim(&self, x: &MElement<B::Elem>) -> Vec<usize> {
        let deltas: Vec<_> = self.values.elements().map(|p| self.mdelta(p, x)).collect();
        (0..self.dim())
            .filter(|&k| deltas.iter().any(|d| self.mcyl_unchecked(k, d) != *d))
            .collect()
    }
}

/// Mixed-radix decoding used to enumerate value assignments: digit `i` of
/// `idx` in base `radix`, least significant first.
#[inline]
pub fn digit(idx: u64, radix: u64, i: usize) -> u64 {
    idx / radix.pow(i as u32) % radix
}

impl FullMAlgebra {
    pub fn full(values: DeMorganAlgebra, base: usize, dim: usize) -> Result<Self, MError> {
        Ok(MAlgebra::new(values, Space::new(base, dim)?))
    }

    pub fn space(&self) -> Space {
        self.base
    }

    /// Element whose point `i` carries value `value(i)`.
    pub fn from_point_values(&self, value: impl Fn(usize) -> ElemId) -> MValuedSet {
        let n = self.base.size();
        let mut layers = vec![PointSet::empty(n); self.values.len()];
        for i in 0..n {
            layers[value(i).idx()].insert(i);
        }
        MElement { layers }
    }

    /// The value carried by point `i`.
    pub fn value_at(&self, x: &MValuedSet, i: usize) -> ElemId {
        self.values
            .elements()
            .find(|&p| x.layer(p).contains(i))
            .expect("layers partition the space")
    }

    /// `|M|^(|U|^d)`, or `None` if it overflows `u64`.
    pub fn element_count(&self) -> Option<u64> {
        (self.values.len() as u64).checked_pow(u32::try_from(self.base.size()).ok()?)
    }

    /// The `idx`-th element: point `i` gets digit `i` of `idx` in base `|M|`.
    pub fn element_at(&self, idx: u64) -> MValuedSet {
        let radix = self.values.len() as u64;
        self.from_point_values(|i| ElemId(digit(idx, radix, i) as u8))
    }

    /// The crisp lift `g(a)`: `a` at 1, `-a` at 0.
    pub fn crisp(&self, a: &PointSet) -> MValuedSet {
        self.two_layer(a.clone())
    }

    /// `E_κ x` by enumerating witness assignments `j ∈ M^U`.
    pub fn ecyl(&self, k: usize, x: &MValuedSet) -> Result<MValuedSet, MError> {
        self.check_coord(k)?;
        let u = self.base.base;
        if u > ECYL_MAX_BASE {
            return Err(MError::EnumerationCap(u));
        }
        let m = self.values.len() as u64;
        let mut layers = vec![self.base.empty(); self.values.len()];
        for j in 0..m.pow(u as u32) {
            let assign: Vec<ElemId> = (0..u).map(|y| ElemId(digit(j, m, y) as u8)).collect();
            let hat = self.values.sup(assign.iter().copied())?;
            let mut acc = self.base.full();
            for (y, &jy) in assign.iter().enumerate() {
                acc.intersect_with(&self.base.witness_set(y, k, x.layer(jy))?);
                if acc.is_empty() {
                    break;
                }
            }
            layers[hat.idx()].union_with(&acc);
        }
        Ok(MElement { layers })
    }

    /// Every layer depends only on the coordinates in `gamma`.
    pub fn depends_on(&self, x: &MValuedSet, gamma: &[usize]) -> bool {
        x.layers.iter().all(|l| self.base.depends_on(l, gamma))
    }

    pub fn is_regular_element(&self, x: &MValuedSet) -> bool {
        self.depends_on(x, &self.mdim(x))
    }

    pub fn to_json(&self, x: &MValuedSet) -> MValuedSetJson {
        MValuedSetJson {
            algebra: self.values.name().to_string(),
            space: self.base,
            layers: self
                .values
                .elements()
                .map(|p| {
                    (
                        self.values.label(p).to_string(),
                        self.base.to_tuples(x.layer(p)),
                    )
                })
                .collect(),
        }
    }

    /// Loads a JSON element, enforcing the partition invariant. Labels
    /// absent from the map are empty layers.
    pub fn from_json(&self, j: &MValuedSetJson) -> Result<MValuedSet, MError> {
        if j.space != self.base {
            return Err(MError::SpaceMismatch {
                expected: self.base,
                found: j.space,
            });
        }
        let mut layers = vec![self.base.empty(); self.values.len()];
        for (label, tuples) in &j.layers {
            let p = self.values.id_of(label)?;
            layers[p.idx()] = self.base.from_tuples(tuples)?;
        }
        let x = MElement { layers };
        self.check(&x)?;
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MValuedSetJson {
    pub algebra: String,
    pub space: Space,
    pub layers: BTreeMap<String, Vec<Vec<usize>>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(m: DeMorganAlgebra, base: usize, dim: usize) -> FullMAlgebra {
        FullMAlgebra::full(m, base, dim).unwrap()
    }

    fn all(a: &FullMAlgebra) -> Vec<MValuedSet> {
        (0..a.element_count().unwrap())
            .map(|i| a.element_at(i))
            .collect()
    }

    #[test]
    fn units_and_join() {
        let a = alg(DeMorganAlgebra::k3(), 2, 1);
        let zero = a.unit(a.values().zero());
        for x in all(&a) {
            assert!(a.is_partition(&x));
            assert_eq!(a.mjoin(&zero, &x), x);
            assert!(a.mleq(&zero, &x));
            assert!(a.mleq(&x, &a.unit(a.values().one())));
            assert!(a.mleq(&x, &x));
        }
    }

    #[test]
    fn single_point_join() {
        let a = alg(DeMorganAlgebra::k3(), 1, 1);
        let u = a.values().id_of("u").unwrap();
        let x = a.unit(u);
        assert_eq!(a.mjoin(&x, &x), x);
    }

    #[test]
    fn b2_join_is_union_on_top_layer() {
        let a = alg(DeMorganAlgebra::b2(), 2, 2);
        let one = a.values().one();
        let xs = all(&a);
        for x in &xs {
            for y in xs.iter().step_by(3) {
                assert_eq!(*a.mjoin(x, y).layer(one), x.layer(one).union(y.layer(one)));
                assert_eq!(
                    *a.mcyl(1, x).unwrap().layer(one),
                    a.space().cyl(1, x.layer(one)).unwrap()
                );
            }
        }
    }

    #[test]
    fn diagonals_and_deltas() {
        let a = alg(DeMorganAlgebra::k3(), 2, 2);
        let m = a.values().clone();
        let u = m.id_of("u").unwrap();
        assert_eq!(a.mdiag(1, 1).unwrap(), a.unit(m.one()));
        assert!(a.mdiag(0, 1).unwrap().layer(u).is_empty());
        assert!(a.mdiag(0, 2).is_err());
        for p in m.elements() {
            assert_eq!(a.mdelta(p, &a.unit(p)), a.unit(m.one()));
            for q in m.elements().filter(|&q| q != p) {
                assert_eq!(a.mdelta(p, &a.unit(q)), a.unit(m.zero()));
            }
        }
        assert_eq!(a.big_delta(&a.mdiag(0, 1).unwrap()), a.unit(m.one()));
    }

    #[test]
    fn k3_cylinder_example() {
        let a = alg(DeMorganAlgebra::k3(), 2, 1);
        let m = a.values().clone();
        let u = m.id_of("u").unwrap();
        let x = a.from_point_values(|i| if i == 0 { m.one() } else { u });
        assert_eq!(a.mcyl(0, &x).unwrap(), a.unit(m.one()));
        assert_eq!(a.ecyl(0, &x).unwrap(), a.unit(m.one()));
        assert_eq!(a.mcyl(0, &a.unit(m.zero())).unwrap(), a.unit(m.zero()));
        for p in m.elements() {
            assert_eq!(a.ecyl(0, &a.unit(p)).unwrap(), a.unit(p));
        }
    }

    #[test]
    fn ecyl_matches_mcyl() {
        for m in [DeMorganAlgebra::k3(), DeMorganAlgebra::four()] {
            let a = alg(m, 2, 2);
            for x in all(&a) {
                for k in 0..2 {
                    assert_eq!(a.ecyl(k, &x).unwrap(), a.mcyl(k, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn derived_operators() {
        let a = alg(DeMorganAlgebra::k3(), 2, 1);
        let one = a.unit(a.values().one());
        for x in all(&a) {
            assert_eq!(a.mstrong_imp(&x, &x), one);
            assert!(a.mleq(&x, &a.mcyl(0, &x).unwrap()));
        }
        assert_eq!(a.mq(0, &one).unwrap(), one);
        let b = alg(DeMorganAlgebra::k3(), 2, 2);
        for p in b.values().elements() {
            assert_eq!(b.msubst(0, 1, &b.unit(p)).unwrap(), b.unit(p));
        }
    }

    #[test]
    fn dimension_sets() {
        let a = alg(DeMorganAlgebra::k3(), 2, 2);
        let m = a.values().clone();
        let u = m.id_of("u").unwrap();
        for p in m.elements() {
            assert!(a.mdim(&a.unit(p)).is_empty());
            assert!(a.depends_on(&a.unit(p), &[]));
        }
        let d = a.mdiag(0, 1).unwrap();
        assert_eq!(a.mdim(&d), vec![0, 1]);
        assert!(!a.depends_on(&d, &[0]));
        let sp = a.space();
        let x = a.from_point_values(|i| if sp.coord(i, 0) == 0 { m.one() } else { u });
        assert_eq!(a.mdim(&x), vec![0]);
        assert!(all(&a).iter().all(|x| a.is_regular_element(x)));
    }

    #[test]
    fn json_round_trip_and_partition_check() {
        let a = alg(DeMorganAlgebra::four(), 2, 1);
        let x = a.element_at(7);
        let j = a.to_json(&x);
        assert_eq!(a.from_json(&j).unwrap(), x);
        let mut bad = j.clone();
        bad.layers.insert("a".into(), vec![vec![0]]);
        bad.layers.insert("b".into(), vec![vec![0]]);
        assert!(matches!(a.from_json(&bad), Err(MError::NotPartition)));
    }
}
