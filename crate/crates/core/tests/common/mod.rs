//! Proof fixtures shared by the proof and acceptance tests.
#![allow(dead_code)]

use mcyl::proof::build::{
    conjunction, deduction, exists_cong, exists_intro, exists_mono, forall_elim, vacuous_exists,
    Builder,
};
use mcyl::proof::{Justification, Proof};
use mcyl::semantics::{sample_structures, StructureSpace};
use mcyl::syntax::derived::{big_gamma, forall, iff, imp, strong_imp};
use mcyl::syntax::parse;
use mcyl::{DeMorganAlgebra, Formula, Signature};

pub fn sig() -> Signature {
    Signature::new([("P", 1), ("R", 2), ("U", 1)])
}

pub fn f(m: &DeMorganAlgebra, text: &str) -> Formula {
    parse(text, &sig(), m).unwrap()
}

fn hyp(m: &DeMorganAlgebra, sigma: Vec<Formula>, i: usize) -> Proof {
    let mut b = Builder::new(m, sigma);
    b.hypothesis(i);
    b.finish()
}

/// `(name, proof, expected conclusion)` for theorems (a)–(f).
pub fn derived_cases(m: &DeMorganAlgebra) -> Vec<(String, Proof, Formula)> {
    let p0 = f(m, "P(v0)");
    let r = f(m, "R(v0,v1)");
    let u0 = f(m, "U(v0)");
    let ex = |k, x: &Formula| Formula::exists(k, x.clone());
    let si = |a: &Formula, b: &Formula| strong_imp(m, a.clone(), b.clone());
    let mut out = Vec::new();

    out.push((
        "a".into(),
        exists_intro(m, &p0, 1).unwrap(),
        si(&p0, &ex(1, &p0)),
    ));
    out.push((
        "a/relation".into(),
        exists_intro(m, &r, 0).unwrap(),
        si(&r, &ex(0, &r)),
    ));

    let all = forall(1, r.clone());
    out.push((
        "b".into(),
        forall_elim(m, &hyp(m, vec![all], 0)).unwrap(),
        r.clone(),
    ));

    let mono = si(&p0, &u0);
    out.push((
        "c".into(),
        exists_mono(m, &hyp(m, vec![mono], 0), 0).unwrap(),
        si(&ex(0, &p0), &ex(0, &u0)),
    ));
    let base = exists_intro(m, &r, 1).unwrap();
    out.push((
        "c/closed".into(),
        exists_mono(m, &base, 0).unwrap(),
        si(&ex(0, &r), &ex(0, &ex(1, &r))),
    ));

    let eq = iff(m, p0.clone(), u0.clone());
    out.push((
        "d".into(),
        exists_cong(m, &hyp(m, vec![eq], 0), 0).unwrap(),
        iff(m, ex(0, &p0), ex(0, &u0)),
    ));

    out.push((
        "e".into(),
        vacuous_exists(m, &p0, 1).unwrap(),
        iff(m, ex(1, &p0), p0.clone()),
    ));

    let sigma = vec![p0.clone(), r.clone(), u0.clone()];
    let parts: Vec<Proof> = (0..2).map(|i| hyp(m, sigma.clone(), i)).collect();
    out.push((
        "f".into(),
        conjunction(m, &sigma, &parts).unwrap(),
        p0.clone().and(r.clone()),
    ));
    let parts: Vec<Proof> = (0..3).map(|i| hyp(m, sigma.clone(), i)).collect();
    out.push((
        "f/three".into(),
        conjunction(m, &sigma, &parts).unwrap(),
        p0.clone().and(r.clone()).and(u0.clone()),
    ));
    out
}

/// `(name, proof, expected conclusion)` for the deduction transform. The
/// discharged sentence is `φ = E v0 . P(v0)` and `Σ = {Γφ, ψ}`.
pub fn deduction_cases(m: &DeMorganAlgebra) -> Vec<(String, Proof, Formula)> {
    let phi = f(m, "E v0 . P(v0)");
    let psi = f(m, "(U(v1) | ~U(v1))");
    let g = big_gamma(m, phi.clone());
    let sigma = vec![g.clone(), psi.clone()];
    let inner_sigma = vec![g.clone(), psi.clone(), phi.clone()];
    let gamma_phi = hyp(m, sigma.clone(), 0);
    let mut out = Vec::new();
    let mut case = |name: &str, inner: Proof| {
        let concl = imp(phi.clone(), inner.conclusion().unwrap().clone());
        out.push((
            name.to_string(),
            deduction(m, &inner, &gamma_phi, &phi).unwrap(),
            concl,
        ));
    };

    let mut b = Builder::new(m, inner_sigma.clone());
    b.tautology(strong_imp(m, f(m, "R(v0,v1)"), f(m, "R(v0,v1)")));
    case("axiom", b.finish());

    let mut b = Builder::new(m, inner_sigma.clone());
    b.hypothesis(2);
    case("phi", b.finish());

    let mut b = Builder::new(m, inner_sigma.clone());
    b.hypothesis(1);
    case("hypothesis", b.finish());

    // φ, Γφ → (φ → (ψ ∨ φ)) style chain: MP twice
    let mut b = Builder::new(m, inner_sigma.clone());
    let h = b.hypothesis(2);
    let gh = b.hypothesis(0);
    let wide = psi.clone().or(phi.clone());
    let t = b.tautology(imp(g.clone(), imp(phi.clone(), wide)));
    let s = b.mp(t, gh).unwrap();
    b.mp(s, h).unwrap();
    case("mp", b.finish());

    let mut b = Builder::new(m, inner_sigma.clone());
    let h = b.hypothesis(2);
    b.gamma(h);
    case("gamma", b.finish());

    // (P(v0) & φ) ⇒ φ, then ∃v0 on the left
    let mut b = Builder::new(m, inner_sigma.clone());
    let t = b.tautology(strong_imp(m, f(m, "P(v0)").and(phi.clone()), phi.clone()));
    b.exists(t, 0).unwrap();
    case("exists", b.finish());
    out
}

/// One mutation per citing line: each cited line index is moved to the
/// nearest earlier line with a different formula. Returns the mutated line
/// with the proof.
pub fn mutations(p: &Proof) -> Vec<(usize, Proof)> {
    let mut out = Vec::new();
    for (i, line) in p.lines.iter().enumerate() {
        let refs = line.by.references();
        let Some(&r) = refs.first() else { continue };
        let Some(other) = (0..i)
            .rev()
            .find(|&c| p.lines[c].formula != p.lines[r].formula)
        else {
            continue;
        };
        let mut q = p.clone();
        q.lines[i].by = match &line.by {
            Justification::ModusPonens { ant, .. } => Justification::ModusPonens {
                imp: other,
                ant: *ant,
            },
            Justification::Gamma(_) => Justification::Gamma(other),
            Justification::Exists { var, .. } => Justification::Exists {
                from: other,
                var: *var,
            },
            _ => unreachable!(),
        };
        out.push((i, q));
    }
    out
}

/// The conclusion of `p` is true in every sampled model of its `Σ`.
pub fn sound_in_samples(m: &DeMorganAlgebra, p: &Proof, n: u64, seed: u64) -> bool {
    let concl = p.conclusion().unwrap();
    let formulas = p.lines.iter().map(|l| &l.formula).chain(&p.sigma);
    let window = formulas
        .filter_map(|g| g.max_var())
        .max()
        .map_or(1, |v| v + 1);
    let space = StructureSpace::new(m.clone(), 2, window, &sig()).unwrap();
    sample_structures(&space, n, seed, 0)
        .iter()
        .all(|a| !a.is_model(&p.sigma).unwrap() || a.is_true(concl).unwrap())
}
