use mcyl::semantics::props::{
    agreement, check_substitution_semantics, vacuous_exists, window_invariant,
};
use mcyl::semantics::validities::{instances, instantiate, substitution_instances};
use mcyl::semantics::{
    entails, sample_structures, EntailVerdict, MStructure, SearchBounds, StructureSpace,
};
use mcyl::syntax::dag::Dag;
use mcyl::syntax::derived::{forall, iff, strong_imp};
use mcyl::syntax::random::{random_formula, FormulaGen};
use mcyl::syntax::{parse, parse_infer};
use mcyl::truth::{suite_signature, tautology_suite};
use mcyl::{DeMorganAlgebra, Exec, Formula, Signature, DEFAULT_SEED};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sig() -> Signature {
    Signature::new([("P", 1), ("R", 2)])
}

fn fillers() -> Vec<Formula> {
    let m = DeMorganAlgebra::b2();
    [
        "P(v0)",
        "P(v1)",
        "R(v0,v1)",
        "R(v1,v0)",
        "~P(v0)",
        "E v1 . R(v0,v1)",
    ]
    .iter()
    .map(|t| parse(t, &sig(), &m).unwrap())
    .collect()
}

fn validity_dag(m: &DeMorganAlgebra, window: usize) -> (Dag, Vec<u32>, Vec<String>) {
    let mut dag = Dag::new();
    let mut roots = Vec::new();
    let mut names = Vec::new();
    for (schema, b) in instances(m, window, &fillers()) {
        roots.push(dag.add(&instantiate(m, schema, &b).unwrap()));
        names.push(format!("schema {schema} {:?}", b.to_json(m)));
    }
    (dag, roots, names)
}

#[test]
fn validities_hold_in_every_small_k3_structure() {
    let k3 = DeMorganAlgebra::k3();
    let space = StructureSpace::new(k3.clone(), 2, 2, &sig()).unwrap();
    assert_eq!(space.count(), Some(729));
    let (dag, roots, names) = validity_dag(&k3, 2);
    let bad = Exec::default().find_first(729, |i| {
        space
            .at(i)
            .first_false(&dag, &roots)
            .unwrap()
            .map(|r| (i, r))
    });
    assert_eq!(bad.map(|(i, r)| (i, names[r].clone())), None);
}

#[test]
fn validities_hold_in_sampled_four_structures() {
    let four = DeMorganAlgebra::four();
    let space = StructureSpace::new(four.clone(), 2, 2, &sig()).unwrap();
    let (dag, roots, _) = validity_dag(&four, 2);
    let structures = sample_structures(&space, 200, DEFAULT_SEED, 9);
    let bad = Exec::default().find_first_in(&structures, |i, s| {
        s.first_false(&dag, &roots).unwrap().map(|r| (i, r))
    });
    assert_eq!(bad, None);
}

#[test]
fn substitution_schema_on_a_wide_window() {
    let k3 = DeMorganAlgebra::k3();
    let space = StructureSpace::new(k3.clone(), 2, 4, &sig()).unwrap();
    let mut dag = Dag::new();
    let roots: Vec<u32> = substitution_instances("R", 2, 4)
        .into_iter()
        .chain(substitution_instances("P", 1, 4))
        .map(|b| dag.add(&instantiate(&k3, 14, &b).unwrap()))
        .collect();
    assert!(!roots.is_empty());
    for s in sample_structures(&space, 50, DEFAULT_SEED, 14) {
        assert_eq!(s.first_false(&dag, &roots).unwrap(), None);
        assert!(check_substitution_semantics(&s).unwrap().holds());
    }
}

#[test]
fn order_and_equality_readings() {
    let four = DeMorganAlgebra::four();
    let space = StructureSpace::new(four.clone(), 2, 2, &sig()).unwrap();
    let fs = fillers();
    for s in sample_structures(&space, 30, 3, 0) {
        let alg = s.algebra();
        for a in &fs {
            for b in &fs {
                let (x, y) = (s.eval(a).unwrap(), s.eval(b).unwrap());
                let si = s.eval(&strong_imp(&four, a.clone(), b.clone())).unwrap();
                assert_eq!(si, alg.mstrong_imp(&x, &y));
                assert_eq!(s.denotes_true(&si), alg.mleq(&x, &y));
                assert_eq!(
                    s.is_true(&iff(&four, a.clone(), b.clone())).unwrap(),
                    x == y
                );
            }
            let all = s.eval(&forall(1, a.clone())).unwrap();
            assert_eq!(all, alg.mq(1, &x_of(&s, a)).unwrap());
        }
    }
}

fn x_of(s: &MStructure, f: &Formula) -> mcyl::MValuedSet {
    s.eval(f).unwrap()
}

#[test]
fn structural_properties_on_random_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for m in [DeMorganAlgebra::k3(), DeMorganAlgebra::four()] {
        let space = StructureSpace::new(m.clone(), 2, 3, &sig()).unwrap();
        let gen = FormulaGen::new(&sig(), 3, 4);
        for _ in 0..150 {
            let s = space.sample(&mut rng);
            let f = random_formula(&mut rng, &gen, &m);
            for k in 0..3 {
                assert!(vacuous_exists(&s, &f, k).unwrap());
            }
            assert!(window_invariant(&s, &f).unwrap());
            assert!(agreement(&s, &f, &mut rng, 20).unwrap());
        }
    }
}

#[test]
fn print_parse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let four = DeMorganAlgebra::four();
    let gen = FormulaGen::new(&sig(), 4, 6);
    for _ in 0..2000 {
        let f = random_formula(&mut rng, &gen, &four);
        let text = f.print(&four);
        assert_eq!(parse(&text, &sig(), &four).unwrap(), f, "{text}");
    }
}

#[test]
fn tautologies_are_true_in_random_structures() {
    for m in [
        DeMorganAlgebra::b2(),
        DeMorganAlgebra::k3(),
        DeMorganAlgebra::four(),
    ] {
        let space = StructureSpace::new(m.clone(), 2, 2, &suite_signature()).unwrap();
        let mut dag = Dag::new();
        let roots: Vec<u32> = tautology_suite(&m)
            .iter()
            .map(|t| dag.add(&t.formula))
            .collect();
        for s in sample_structures(&space, 20, DEFAULT_SEED, 7) {
            assert_eq!(s.first_false(&dag, &roots).unwrap(), None);
        }
    }
}

#[test]
fn bounded_entailment() {
    let k3 = DeMorganAlgebra::k3();
    let mut sig = Signature::default();
    let lem = parse_infer("(R(v0) | ~R(v0))", &mut sig, &k3).unwrap();
    let refl = parse_infer("(R(v0) => R(v0))", &mut sig, &k3).unwrap();
    let bounds = SearchBounds::new(2, 1);
    match entails(&k3, &sig, &[], &lem, None, &bounds, Exec::default()).unwrap() {
        EntailVerdict::Countermodel { structure, .. } => {
            let u = k3.id_of("u").unwrap();
            assert!(structure.relation("R").unwrap().table.contains(&u));
        }
        v => panic!("{v:?}"),
    }
    assert!(matches!(
        entails(&k3, &sig, &[], &refl, None, &bounds, Exec::default()).unwrap(),
        EntailVerdict::NoCountermodel {
            exhaustive: true,
            ..
        }
    ));
    let t0 = Formula::Const(k3.zero());
    assert!(matches!(
        entails(&k3, &sig, &[t0], &lem, None, &bounds, Exec::default()).unwrap(),
        EntailVerdict::NoCountermodel { .. }
    ));
    // Q-truth over {u, 1} accepts excluded middle.
    let q = [k3.id_of("u").unwrap(), k3.one()];
    assert!(matches!(
        entails(&k3, &sig, &[], &lem, Some(&q), &bounds, Exec::default()).unwrap(),
        EntailVerdict::NoCountermodel { .. }
    ));
}

#[test]
fn q_truth_of_constants() {
    let k3 = DeMorganAlgebra::k3();
    let u = k3.id_of("u").unwrap();
    let s = MStructure::new(k3.clone(), 2, 1).unwrap();
    let tu = Formula::Const(u);
    assert!(s.is_q_true(&tu, &[u, k3.one()]).unwrap());
    assert!(!s.is_q_true(&tu, &[k3.one()]).unwrap());
    let q = [u, k3.one()];
    let lifted = mcyl::syntax::derived::q_restrict(&k3, tu.clone(), &q);
    assert_eq!(s.is_q_true(&tu, &q).unwrap(), s.is_true(&lifted).unwrap());
    assert!(s.is_true(&Formula::Eq(0, 0)).unwrap());
}
