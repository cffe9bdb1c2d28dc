//! The crisp part `C(A) = {δ_1 x}` of an `M`-cylindric algebra, the
//! embedding `A → M(C(A))` and the isomorphism `B ≅ C(M(B))`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Budget, LawReport, Mode, Status};
use crate::exec::Exec;
use crate::mvalued::{FullMAlgebra, MAlgebra, MElement, MValuedSet};
use crate::setalg::{CylindricAlgebra, PointSet};

/// `C(A)` for `A = M(B)`: elements are the crisp members `δ_1 x`, with the
/// operations of `A` restricted and `u_0`, `u_1` as bottom and top.
#[derive(Clone, Debug)]
pub struct CAlgebraView {
    alg: FullMAlgebra,
}

impl CAlgebraView {
    pub fn new(alg: FullMAlgebra) -> Self {
        CAlgebraView { alg }
    }

    pub fn inner(&self) -> &FullMAlgebra {
        &self.alg
    }

    pub fn contains(&self, x: &MValuedSet) -> bool {
        self.alg.mdelta(self.alg.values().one(), x) == *x
    }
}

impl CylindricAlgebra for CAlgebraView {
    type Elem = MValuedSet;

    fn dim(&self) -> usize {
        self.alg.dim()
    }
    fn bottom(&self) -> MValuedSet {
        self.alg.unit(self.alg.values().zero())
    }
    fn top(&self) -> MValuedSet {
        self.alg.unit(self.alg.values().one())
    }
    fn sum(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.alg.mjoin(a, b)
    }
    fn product(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.alg.mmeet(a, b)
    }
    fn minus(&self, a: &MValuedSet) -> MValuedSet {
        self.alg.mneg(a)
    }
    fn cylindrify(&self, k: usize, a: &MValuedSet) -> MValuedSet {
        self.alg.mcyl_unchecked(k, a)
    }
    fn diagonal(&self, k: usize, l: usize) -> MValuedSet {
        self.alg.mdiag(k, l).expect("coordinates checked by caller")
    }
}

pub fn extract_c(alg: &FullMAlgebra) -> CAlgebraView {
    CAlgebraView::new(alg.clone())
}

/// Pair indices for a binary homomorphism check: all pairs if within
/// budget, otherwise a seeded sample.
fn pair_cases(count: u64, budget: &Budget, stream: u64) -> (Mode, Vec<(u64, u64)>) {
    match budget.exhaustive_cases(Some(count), 2) {
        Some(cases) => (
            Mode::Exhaustive { cases },
            (0..cases).map(|c| (c % count, c / count)).collect(),
        ),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(stream);
            let pairs = (0..budget.samples)
                .map(|_| (rng.gen_range(0..count), rng.gen_range(0..count)))
                .collect();
            (
                Mode::Sampled {
                    n: budget.samples,
                    seed: budget.seed,
                },
                pairs,
            )
        }
    }
}

fn report(law: &str, mode: Mode, found: Option<Value>) -> LawReport {
    LawReport {
        law: law.into(),
        mode,
        status: match found {
            None => Status::Holds,
            Some(witness) => Status::Counterexample { witness },
        },
    }
}

/// `f(a)^p = δ_p a` is an injective homomorphism `A → M(C(A))`.
///
/// Injectivity and the unary operations are checked on every element, the
/// binary ones on all pairs within budget. The report's mode is that of the
/// pair check.
pub fn check_embed(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    let law = "embedding into M(C(A))";
    let m = alg.values().clone();
    let view = extract_c(alg);
    let mc = MAlgebra::with_shared(alg.shared_values(), view.clone());
    let f = |a: &MValuedSet| MElement {
        layers: m.elements().map(|p| alg.mdelta(p, a)).collect(),
    };
    let Some(count) = alg.element_count().filter(|&c| c <= budget.unary_limit) else {
        return report(
            law,
            Mode::Exhaustive { cases: 0 },
            Some(json!({"error": "carrier too large"})),
        );
    };
    let d = alg.dim();

    // Constants.
    for p in m.elements() {
        if f(&alg.unit(p)) != mc.unit(p) {
            return report(
                law,
                Mode::Exhaustive { cases: 0 },
                Some(json!({"op": "unit", "p": m.label(p)})),
            );
        }
    }
    for k in 0..d {
        for l in 0..d {
            if f(&alg.mdiag(k, l).unwrap()) != mc.mdiag(k, l).unwrap() {
                return report(
                    law,
                    Mode::Exhaustive { cases: 0 },
                    Some(json!({"op": "diag", "k": k, "l": l})),
                );
            }
        }
    }

    let images: Vec<MElement<MValuedSet>> = exec.map(count, |i| f(&alg.element_at(i)));
    let unary = exec.find_first(count, |i| {
        let a = alg.element_at(i);
        let fa = &images[i as usize];
        if !fa.layers.iter().all(|l| view.contains(l)) || !mc.is_partition(fa) {
            return Some(json!({"op": "partition", "index": i}));
        }
        if f(&alg.mneg(&a)) != mc.mneg(fa) {
            return Some(json!({"op": "neg", "index": i}));
        }
        for k in 0..d {
            if f(&alg.mcyl(k, &a).unwrap()) != mc.mcyl(k, fa).unwrap() {
                return Some(json!({"op": "cyl", "k": k, "index": i}));
            }
        }
        for q in m.elements() {
            if f(&alg.mdelta(q, &a)) != mc.mdelta(q, fa) {
                return Some(json!({"op": "delta", "q": m.label(q), "index": i}));
            }
        }
        None
    });
    if unary.is_some() {
        return report(law, Mode::Exhaustive { cases: count }, unary);
    }
    let distinct: HashSet<&MElement<MValuedSet>> = images.iter().collect();
    if distinct.len() as u64 != count {
        return report(
            law,
            Mode::Exhaustive { cases: count },
            Some(json!({"op": "injective"})),
        );
    }

    let (mode, pairs) = pair_cases(count, budget, 0xE3B);
    let found = exec.find_first_in(&pairs, |_, &(i, j)| {
        let (a, b) = (alg.element_at(i), alg.element_at(j));
        let (fa, fb) = (&images[i as usize], &images[j as usize]);
        if f(&alg.mjoin(&a, &b)) != mc.mjoin(fa, fb) {
            return Some(json!({"op": "join", "indices": [i, j]}));
        }
        if f(&alg.mmeet(&a, &b)) != mc.mmeet(fa, fb) {
            return Some(json!({"op": "meet", "indices": [i, j]}));
        }
        None
    });
    report(law, mode, found)
}

/// `|B|` for the full set algebra, when enumerable.
fn set_algebra_size(alg: &FullMAlgebra) -> Option<u64> {
    let n = alg.space().size();
    (n <= 16).then(|| 1u64 << n)
}

/// `f(a) = δ_1 g(a)` is a bijective homomorphism `B → C(M(B))`, where `g`
/// is the crisp lift. The image is compared with `{δ_1 x : x ∈ M(B)}`.
pub fn check_iso(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    let law = "isomorphism B ≅ C(M(B))";
    let m = alg.values().clone();
    let one = m.one();
    let space = alg.space();
    let (Some(size), Some(count)) = (
        set_algebra_size(alg),
        alg.element_count().filter(|&c| c <= budget.unary_limit),
    ) else {
        return report(
            law,
            Mode::Exhaustive { cases: 0 },
            Some(json!({"error": "carrier too large"})),
        );
    };
    let n = space.size();
    let set = |i: u64| PointSet::from_mask(n, i);
    let f = |a: &PointSet| alg.mdelta(one, &alg.crisp(a));

    let crisp_part: HashSet<MValuedSet> = exec
        .map(count, |i| alg.mdelta(one, &alg.element_at(i)))
        .into_iter()
        .collect();
    let image: HashSet<MValuedSet> = exec.map(size, |i| f(&set(i))).into_iter().collect();
    if image.len() as u64 != size {
        return report(
            law,
            Mode::Exhaustive { cases: size },
            Some(json!({"op": "injective"})),
        );
    }
    if image != crisp_part {
        return report(
            law,
            Mode::Exhaustive { cases: size },
            Some(json!({"op": "onto", "image": image.len(), "crisp_part": crisp_part.len()})),
        );
    }
    let cons = (f(&space.empty()) == alg.unit(m.zero()) && f(&space.full()) == alg.unit(one))
        .then_some(())
        .and_then(|_| {
            (0..space.dim)
                .flat_map(|k| (0..space.dim).map(move |l| (k, l)))
                .try_for_each(|(k, l)| {
                    (f(&space.diag(k, l).unwrap()) == alg.mdiag(k, l).unwrap()).then_some(())
                })
        });
    if cons.is_none() {
        return report(
            law,
            Mode::Exhaustive { cases: size },
            Some(json!({"op": "constants"})),
        );
    }
    let unary = exec.find_first(size, |i| {
        let a = set(i);
        let fa = f(&a);
        if f(&a.complement()) != alg.mneg(&fa) {
            return Some(json!({"op": "neg", "index": i}));
        }
        (0..space.dim)
            .find(|&k| f(&space.cyl(k, &a).unwrap()) != alg.mcyl(k, &fa).unwrap())
            .map(|k| json!({"op": "cyl", "k": k, "index": i}))
    });
    if unary.is_some() {
        return report(law, Mode::Exhaustive { cases: size }, unary);
    }
    let (mode, pairs) = pair_cases(size, budget, 0x150);
    let found = exec.find_first_in(&pairs, |_, &(i, j)| {
        let (a, b) = (set(i), set(j));
        let (fa, fb) = (f(&a), f(&b));
        if f(&a.union(&b)) != alg.mjoin(&fa, &fb) {
            return Some(json!({"op": "join", "indices": [i, j]}));
        }
        if f(&a.intersection(&b)) != alg.mmeet(&fa, &fb) {
            return Some(json!({"op": "meet", "indices": [i, j]}));
        }
        None
    });
    report(law, mode, found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demorgan::DeMorganAlgebra;

    #[test]
    fn crisp_part_has_set_algebra_size() {
        let alg = FullMAlgebra::full(DeMorganAlgebra::k3(), 2, 2).unwrap();
        let one = alg.values().one();
        let crisp: HashSet<MValuedSet> = (0..81)
            .map(|i| alg.mdelta(one, &alg.element_at(i)))
            .collect();
        assert_eq!(crisp.len(), 16);
        let view = extract_c(&alg);
        assert!(crisp.iter().all(|x| view.contains(x)));
    }

    #[test]
    fn a_star_item_5_sanity() {
        let alg = FullMAlgebra::full(DeMorganAlgebra::four(), 2, 1).unwrap();
        let one = alg.values().one();
        let a = PointSet::from_mask(2, 0b10);
        assert_eq!(*alg.mdelta(one, &alg.crisp(&a)).layer(one), a);
    }
}
