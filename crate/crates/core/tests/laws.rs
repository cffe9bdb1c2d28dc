use mcyl::laws::axioms::{
    axiom_arity, axiom_violation, check_axiom10_literal, check_axiom31_literal,
};
use mcyl::laws::embed::{check_embed, check_iso};
use mcyl::laws::theorems;
use mcyl::laws::{check_mca_axioms, Budget, LawAlgebra, LawReport, Mode, Status, AXIOM_COUNT};
use mcyl::{DeMorganAlgebra, ElemId, Exec, FullMAlgebra, MValuedSet};
use serde_json::Value;

fn algebras() -> Vec<DeMorganAlgebra> {
    vec![
        DeMorganAlgebra::b2(),
        DeMorganAlgebra::k3(),
        DeMorganAlgebra::four(),
    ]
}

fn failing(reports: &[LawReport]) -> Vec<&LawReport> {
    reports.iter().filter(|r| !r.holds()).collect()
}

#[test]
fn all_axioms_hold_at_desk_scale() {
    for m in algebras() {
        let name = m.name().to_string();
        let alg = FullMAlgebra::full(m, 2, 2).unwrap();
        let reports = check_mca_axioms(&alg, &Budget::default(), Exec::default());
        assert_eq!(reports.len(), AXIOM_COUNT as usize);
        assert!(
            failing(&reports).is_empty(),
            "{name}: {:?}",
            failing(&reports)
        );
        for (n, r) in (1..=AXIOM_COUNT).zip(&reports) {
            let arity = axiom_arity(n);
            match (&r.mode, arity, name.as_str()) {
                (Mode::Exhaustive { .. }, 0..=2, _) | (Mode::Exhaustive { .. }, 3, "B2") => {}
                (Mode::Sampled { n, .. }, 3, _) => assert!(*n >= 10_000),
                other => panic!("unexpected mode for axiom {n}: {other:?}"),
            }
        }
    }
}

#[test]
fn literal_readings_fail() {
    for m in algebras() {
        let alg = FullMAlgebra::full(m, 2, 2).unwrap();
        assert!(check_axiom10_literal(&alg).is_some());
        assert!(!check_axiom31_literal(&alg, &Budget::default(), Exec::default()).holds());
    }
}

/// `M(B)` with the subtracted term of the cylindrification formula removed.
struct DroppedTerm(FullMAlgebra);

impl LawAlgebra for DroppedTerm {
    type Elem = MValuedSet;
    fn values(&self) -> &DeMorganAlgebra {
        self.0.values()
    }
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn element_count(&self) -> Option<u64> {
        self.0.element_count()
    }
    fn element(&self, idx: u64) -> MValuedSet {
        self.0.element_at(idx)
    }
    fn join(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.0.mjoin(a, b)
    }
    fn meet(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.0.mmeet(a, b)
    }
    fn neg(&self, a: &MValuedSet) -> MValuedSet {
        self.0.mneg(a)
    }
    fn unit(&self, p: ElemId) -> MValuedSet {
        self.0.unit(p)
    }
    fn cyl(&self, k: usize, a: &MValuedSet) -> MValuedSet {
        let m = self.0.values();
        let sp = self.0.space();
        let cyl: Vec<_> = a.layers.iter().map(|l| sp.cyl(k, l).unwrap()).collect();
        let layers = m
            .elements()
            .map(|p| {
                let mut acc = sp.empty();
                for mask in 1..m.mask_count() {
                    if m.sup_mask(mask) == p {
                        let z = m
                            .elements()
                            .filter(|q| mask >> q.0 & 1 == 1)
                            .fold(sp.full(), |acc, q| acc.intersection(&cyl[q.idx()]));
                        acc.union_with(&z);
                    }
                }
                acc
            })
            .collect();
        MValuedSet { layers }
    }
    fn diag(&self, k: usize, l: usize) -> MValuedSet {
        self.0.mdiag(k, l).unwrap()
    }
    fn delta(&self, p: ElemId, a: &MValuedSet) -> MValuedSet {
        self.0.mdelta(p, a)
    }
    fn describe(&self, a: &MValuedSet) -> Value {
        LawAlgebra::describe(&self.0, a)
    }
    fn sample(&self, rng: &mut rand_chacha::ChaCha8Rng) -> MValuedSet {
        self.0.sample(rng)
    }
}

#[test]
fn mutation_is_caught_with_reproducible_witness() {
    let alg = DroppedTerm(FullMAlgebra::full(DeMorganAlgebra::k3(), 2, 2).unwrap());
    let reports = check_mca_axioms(&alg, &Budget::default(), Exec::default());
    let failed: Vec<&str> = failing(&reports).iter().map(|r| r.law.as_str()).collect();
    assert!(
        failed.contains(&"axiom 23") || failed.contains(&"axiom 31"),
        "{failed:?}"
    );
    for r in failing(&reports) {
        let n: u32 = r.law.trim_start_matches("axiom ").parse().unwrap();
        let Status::Counterexample { witness } = &r.status else {
            unreachable!()
        };
        let idx: Vec<u64> = witness["indices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        let xs: Vec<MValuedSet> = idx.iter().map(|&i| alg.element(i)).collect();
        assert_eq!(
            axiom_violation(&alg, n, &xs).as_ref(),
            Some(&witness["params"])
        );
    }
}

#[test]
fn reports_are_deterministic_across_strategies() {
    let alg = FullMAlgebra::full(DeMorganAlgebra::four(), 2, 2).unwrap();
    let budget = Budget {
        samples: 500,
        ..Budget::default()
    };
    let a = check_mca_axioms(&alg, &budget, Exec::Sequential);
    let b = check_mca_axioms(&alg, &budget, Exec::Parallel);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn structure_theorems() {
    for m in algebras() {
        let alg = FullMAlgebra::full(m, 2, 2).unwrap();
        let reports = theorems::check_all(&alg, &Budget::default(), Exec::default());
        assert!(failing(&reports).is_empty(), "{:?}", failing(&reports));
    }
}

#[test]
fn embedding_and_isomorphism() {
    for m in algebras() {
        let alg = FullMAlgebra::full(m, 2, 2).unwrap();
        let e = check_embed(&alg, &Budget::default(), Exec::default());
        assert!(e.holds(), "{e:?}");
        let i = check_iso(&alg, &Budget::default(), Exec::default());
        assert!(i.holds(), "{i:?}");
        assert_eq!(i.mode, Mode::Exhaustive { cases: 256 });
    }
}
