mod common;

use common::{deduction_cases, derived_cases, f, mutations, sig, sound_in_samples};
use mcyl::proof::build::{deduction, exists_intro, vacuous_exists, BuildError, Builder};
use mcyl::proof::json::{from_json, to_json};
use mcyl::proof::{check_proof, q_lift, Checker, Justification, Line, LineError, Proof, Verdict};
use mcyl::syntax::derived::{big_gamma, iff, imp, q_restrict, strong_imp};
use mcyl::truth::{Order, TautOptions};
use mcyl::{DeMorganAlgebra, Exec, Formula, DEFAULT_SEED};

fn algebras() -> [DeMorganAlgebra; 3] {
    [
        DeMorganAlgebra::b2(),
        DeMorganAlgebra::k3(),
        DeMorganAlgebra::four(),
    ]
}

#[test]
fn derived_theorems_check() {
    for m in algebras() {
        for (name, p, concl) in derived_cases(&m) {
            assert_eq!(
                check_proof(&m, &p),
                Verdict::Accepted,
                "{} {name}",
                m.name()
            );
            assert_eq!(p.conclusion(), Some(&concl), "{} {name}", m.name());
        }
    }
}

#[test]
fn exists_intro_is_seven_lines() {
    let k3 = DeMorganAlgebra::k3();
    let p = exists_intro(&k3, &f(&k3, "R(v0,v1)"), 1).unwrap();
    assert_eq!(p.lines.len(), 7);
    let rules: Vec<_> = p.lines.iter().map(|l| l.by.rule()).collect();
    assert_eq!(
        rules,
        [
            "tautology",
            "validity",
            "tautology",
            "mp",
            "tautology",
            "mp",
            "mp"
        ]
    );
}

#[test]
fn side_conditions_are_enforced() {
    let k3 = DeMorganAlgebra::k3();
    assert!(matches!(
        vacuous_exists(&k3, &f(&k3, "P(v0)"), 0),
        Err(BuildError::FreeVariable(0, _))
    ));
    let phi = f(&k3, "P(v0)");
    let inner = Builder::new(&k3, vec![phi.clone()]).finish();
    assert!(matches!(
        deduction(&k3, &inner, &inner, &phi),
        Err(BuildError::NotSentence(_))
    ));

    let sentence = f(&k3, "E v0 . P(v0)");
    let mut b = Builder::new(&k3, vec![]);
    b.tautology(sentence.clone());
    let bogus = b.finish();
    assert!(matches!(
        deduction(&k3, &bogus, &bogus, &sentence),
        Err(BuildError::Invalid {
            line: 0,
            error: LineError::NotTautology
        })
    ));
}

#[test]
fn deduction_transform_cases_check() {
    for m in algebras() {
        for (name, p, concl) in deduction_cases(&m) {
            assert_eq!(
                check_proof(&m, &p),
                Verdict::Accepted,
                "{} {name}",
                m.name()
            );
            assert_eq!(p.conclusion(), Some(&concl), "{} {name}", m.name());
        }
    }
}

#[test]
fn phi_case_goes_through_gamma_tautology() {
    let k3 = DeMorganAlgebra::k3();
    let (_, p, _) = deduction_cases(&k3)
        .into_iter()
        .find(|(n, _, _)| n == "phi")
        .unwrap();
    let phi = f(&k3, "E v0 . P(v0)");
    let want = imp(big_gamma(&k3, phi.clone()), imp(phi.clone(), phi));
    assert!(p
        .lines
        .iter()
        .any(|l| l.formula == want && l.by == Justification::Tautology));
}

#[test]
fn mutated_proofs_are_rejected_where_mutated() {
    let k3 = DeMorganAlgebra::k3();
    let mut seen = 0;
    for (name, p, _) in derived_cases(&k3).into_iter().chain(deduction_cases(&k3)) {
        for (line, q) in mutations(&p) {
            match check_proof(&k3, &q) {
                Verdict::Rejected { line: at, .. } => assert_eq!(at, line, "{name}"),
                Verdict::Accepted => panic!("{name}: mutation at {line} accepted"),
            }
            seen += 1;
        }
    }
    assert!(seen >= 20, "{seen}");
}

#[test]
fn one_symbol_antecedent_change_is_caught() {
    let k3 = DeMorganAlgebra::k3();
    let mut p = exists_intro(&k3, &f(&k3, "P(v0)"), 1).unwrap();
    // line 3 detaches from line 2; change line 2's formula and its citation
    // no longer lines up
    p.lines[2].formula = exists_intro(&k3, &f(&k3, "P(v1)"), 1).unwrap().lines[2]
        .formula
        .clone();
    p.lines[2].by = Justification::Tautology;
    assert!(matches!(
        check_proof(&k3, &p),
        Verdict::Rejected {
            line: 3,
            error: LineError::ModusPonens { .. }
        }
    ));
}

#[test]
fn exists_rule_names_the_free_variable() {
    let k3 = DeMorganAlgebra::k3();
    let p0 = f(&k3, "P(v0)");
    let mut b = Builder::new(&k3, vec![]);
    b.tautology(strong_imp(&k3, p0.clone(), p0.clone()));
    let mut p = b.finish();
    p.lines.push(Line {
        formula: strong_imp(&k3, Formula::exists(0, p0.clone()), p0),
        by: Justification::Exists { from: 0, var: 0 },
    });
    assert_eq!(
        check_proof(&k3, &p),
        Verdict::Rejected {
            line: 1,
            error: LineError::ExistsFree { var: 0 }
        }
    );
}

#[test]
fn over_budget_tautology_is_a_distinct_rejection() {
    let k3 = DeMorganAlgebra::k3();
    let p = exists_intro(&k3, &f(&k3, "P(v0)"), 1).unwrap();
    let opts = TautOptions {
        cap: 2,
        order: Order::LowFirst,
        exec: Exec::Sequential,
    };
    match Checker::with_options(&k3, opts).check(&p) {
        Verdict::Rejected {
            line: 0,
            error: LineError::TautologyBudget(_),
        } => {}
        v => panic!("{v:?}"),
    }
}

#[test]
fn proofs_are_sound_on_samples() {
    for m in algebras() {
        for (name, p, _) in derived_cases(&m).into_iter().chain(deduction_cases(&m)) {
            assert!(
                sound_in_samples(&m, &p, 20, DEFAULT_SEED),
                "{} {name}",
                m.name()
            );
        }
    }
}

#[test]
fn every_line_of_a_closed_proof_is_valid() {
    let k3 = DeMorganAlgebra::k3();
    for (name, p, _) in derived_cases(&k3)
        .into_iter()
        .filter(|(_, p, _)| p.sigma.is_empty())
    {
        for (i, l) in p.lines.iter().enumerate() {
            let single = Proof {
                sigma: vec![],
                lines: vec![l.clone()],
            };
            assert!(
                sound_in_samples(&k3, &single, 20, DEFAULT_SEED + 1),
                "{name} line {i}"
            );
        }
    }
}

#[test]
fn json_round_trip() {
    for m in algebras() {
        for (name, p, _) in derived_cases(&m).into_iter().chain(deduction_cases(&m)) {
            let v = to_json(&m, &p);
            let mut s = sig();
            let back = from_json(&m, v.clone(), &mut s, false).unwrap();
            assert_eq!(back, p, "{} {name}", m.name());
            assert_eq!(to_json(&m, &back), v);
        }
    }
}

#[test]
fn json_errors_carry_the_line() {
    let k3 = DeMorganAlgebra::k3();
    let text = r#"{"sigma": [], "lines": [{"formula": "t[1]", "by": {"rule": "tautology", "args": []}},
                  {"formula": "t[1]", "by": {"rule": "teleport", "args": [0]}}]}"#;
    let err = mcyl::proof::json::from_json_str(&k3, text, &mut sig(), false).unwrap_err();
    assert_eq!(err.to_string(), "line 1: unknown rule `teleport`");
}

#[test]
fn q_lifted_goal_of_full_set_is_provable() {
    let k3 = DeMorganAlgebra::k3();
    let phi = f(&k3, "P(v0)");
    let all: Vec<_> = k3.elements().collect();
    let (_, goal) = q_lift(&k3, &[], &phi, &all);
    assert_eq!(goal, q_restrict(&k3, phi.clone(), &all));
    let mut b = Builder::new(&k3, vec![]);
    b.tautology(iff(&k3, goal, Formula::Const(k3.one())));
    assert!(check_proof(&k3, &b.finish()).is_accepted());
}
