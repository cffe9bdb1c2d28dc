//! The 31 axioms of an `M`-cylindric algebra, as checkable predicates.
//!
//! Parameters (`κ`, `λ`, `μ`, `p`, `q`) are looped inside each predicate, so
//! an axiom's arity counts element variables only. Paired axioms (`1a`/`1b`
//! and so on) share one report.

use serde_json::{json, Value};

use super::{check_law, fold_or, Budget, LawAlgebra, LawReport};
use crate::demorgan::ElemId;
use crate::exec::Exec;

pub const AXIOM_COUNT: u32 = 31;

/// Number of element variables in axiom `n`.
pub fn axiom_arity(n: u32) -> u32 {
    match n {
        2 | 3 => 3,
        1 | 8 | 13 | 14 | 25 | 26 | 30 => 2,
        6 | 10 | 11 | 17 | 18 | 19 | 21 | 22 => 0,
        _ => 1,
    }
}

fn sum<A: LawAlgebra>(alg: &A, items: impl IntoIterator<Item = A::Elem>) -> A::Elem {
    let zero = alg.values().zero();
    fold_or(items, alg.unit(zero), |a, b| alg.join(&a, &b))
}

fn product<A: LawAlgebra>(alg: &A, items: impl IntoIterator<Item = A::Elem>) -> A::Elem {
    let one = alg.values().one();
    fold_or(items, alg.unit(one), |a, b| alg.meet(&a, &b))
}

fn first<I: Iterator<Item = Value>>(mut it: I) -> Option<Value> {
    it.next()
}

/// `Σ_{supA=p} Π_{q∈A} y_A,q · -Σ_{supA>p} Π_{q∈A} y_A,q` in the algebra,
/// where `factor(mask, q)` supplies the product's factors.
fn sup_formula<A: LawAlgebra>(
    alg: &A,
    p: ElemId,
    factor: impl Fn(u32, ElemId) -> A::Elem,
) -> A::Elem {
    let m = alg.values();
    let term = |mask: u32| {
        product(
            alg,
            m.elements()
                .filter(|q| mask >> q.0 & 1 == 1)
                .map(|q| factor(mask, q)),
        )
    };
    let at = sum(
        alg,
        (1..m.mask_count())
            .filter(|&s| m.sup_mask(s) == p)
            .map(term),
    );
    let above = sum(
        alg,
        (1..m.mask_count())
            .filter(|&s| m.lt(p, m.sup_mask(s)))
            .map(term),
    );
    alg.meet(&at, &alg.neg(&above))
}

/// Parameters of the first failing instance of axiom `n` on `xs`.
pub fn axiom_violation<A: LawAlgebra>(alg: &A, n: u32, xs: &[A::Elem]) -> Option<Value> {
    let m = alg.values();
    let d = alg.dim();
    let u0 = alg.unit(m.zero());
    let u1 = alg.unit(m.one());
    let lab = |p: ElemId| m.label(p).to_string();
    let coords = || 0..d;
    let ok = |b: bool, params: Value| (!b).then_some(params);
    match n {
        1 => {
            let (a, b) = (&xs[0], &xs[1]);
            ok(alg.join(a, b) == alg.join(b, a), json!({"part": "a"}))
                .or_else(|| ok(alg.meet(a, b) == alg.meet(b, a), json!({"part": "b"})))
        }
        2 => {
            let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
            ok(
                alg.join(&alg.join(a, b), c) == alg.join(a, &alg.join(b, c)),
                json!({"part": "a"}),
            )
            .or_else(|| {
                ok(
                    alg.meet(&alg.meet(a, b), c) == alg.meet(a, &alg.meet(b, c)),
                    json!({"part": "b"}),
                )
            })
        }
        3 => {
            let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
            let lhs_a = alg.meet(a, &alg.join(b, c));
            let rhs_a = alg.join(&alg.meet(a, b), &alg.meet(a, c));
            let lhs_b = alg.join(a, &alg.meet(b, c));
            let rhs_b = alg.meet(&alg.join(a, b), &alg.join(a, c));
            ok(lhs_a == rhs_a, json!({"part": "a"}))
                .or_else(|| ok(lhs_b == rhs_b, json!({"part": "b"})))
        }
        4 => {
            let a = &xs[0];
            ok(alg.join(a, &u0) == *a, json!({"part": "a"}))
                .or_else(|| ok(alg.meet(a, &u1) == *a, json!({"part": "b"})))
        }
        5 => first(m.elements().filter_map(|p| {
            let dp = alg.delta(p, &xs[0]);
            let nd = alg.neg(&dp);
            ok(alg.join(&dp, &nd) == u1, json!({"part": "a", "p": lab(p)}))
                .or_else(|| ok(alg.meet(&dp, &nd) == u0, json!({"part": "b", "p": lab(p)})))
        })),
        6 => first(coords().filter_map(|k| ok(alg.cyl(k, &u0) == u0, json!({"k": k})))),
        7 => first(coords().filter_map(|k| {
            let c = alg.cyl(k, &xs[0]);
            ok(alg.join(&xs[0], &c) == c, json!({"k": k}))
        })),
        8 => first(coords().filter_map(|k| {
            let (a, b) = (&xs[0], &xs[1]);
            let cb = alg.cyl(k, b);
            let lhs = alg.cyl(k, &alg.meet(a, &cb));
            ok(lhs == alg.meet(&alg.cyl(k, a), &cb), json!({"k": k}))
        })),
        9 => first(
            coords()
                .flat_map(|k| coords().map(move |l| (k, l)))
                .filter_map(|(k, l)| {
                    let a = &xs[0];
                    ok(
                        alg.cyl(k, &alg.cyl(l, a)) == alg.cyl(l, &alg.cyl(k, a)),
                        json!({"k": k, "l": l}),
                    )
                }),
        ),
        10 => axiom10(alg, false),
        11 => first(coords().filter_map(|k| ok(alg.diag(k, k) == u1, json!({"k": k})))),
        12 => first(
            coords()
                .flat_map(|k| coords().map(move |l| (k, l)))
                .filter(|(k, l)| k != l)
                .filter_map(|(k, l)| {
                    let d1 = alg.delta(m.one(), &xs[0]);
                    let dkl = alg.diag(k, l);
                    let lhs = alg.meet(
                        &alg.cyl(k, &alg.meet(&dkl, &d1)),
                        &alg.cyl(k, &alg.meet(&dkl, &alg.neg(&d1))),
                    );
                    ok(lhs == u0, json!({"k": k, "l": l}))
                }),
        ),
        13 | 14 => {
            let (da, db) = (alg.delta(m.one(), &xs[0]), alg.delta(m.one(), &xs[1]));
            let t = if n == 13 {
                alg.join(&da, &db)
            } else {
                alg.meet(&da, &db)
            };
            ok(alg.delta(m.one(), &t) == t, json!({}))
        }
        15 => {
            let t = alg.neg(&alg.delta(m.one(), &xs[0]));
            ok(alg.delta(m.one(), &t) == t, json!({}))
        }
        16 => first(coords().filter_map(|k| {
            let t = alg.cyl(k, &alg.delta(m.one(), &xs[0]));
            ok(alg.delta(m.one(), &t) == t, json!({"k": k}))
        })),
        17..=19 => {
            first(
                coords()
                    .flat_map(|k| coords().map(move |l| (k, l)))
                    .filter_map(|(k, l)| {
                        let dkl = alg.diag(k, l);
                        match n {
                            17 => ok(alg.delta(m.one(), &dkl) == dkl, json!({"k": k, "l": l})),
                            18 => ok(
                                alg.delta(m.zero(), &dkl) == alg.neg(&dkl),
                                json!({"k": k, "l": l}),
                            ),
                            _ => first(m.elements().filter(|&p| !m.is_classical(p)).filter_map(
                                |p| {
                                    ok(
                                        alg.delta(p, &dkl) == u0,
                                        json!({"k": k, "l": l, "p": lab(p)}),
                                    )
                                },
                            )),
                        }
                    }),
            )
        }
        20 => first(m.elements().filter_map(|p| {
            ok(
                alg.delta(p, &alg.neg(&xs[0])) == alg.delta(m.neg(p), &xs[0]),
                json!({"p": lab(p)}),
            )
        })),
        21 => first(
            m.elements()
                .filter_map(|p| ok(alg.delta(p, &alg.unit(p)) == u1, json!({"p": lab(p)}))),
        ),
        22 => first(
            m.elements()
                .flat_map(|p| m.elements().map(move |q| (p, q)))
                .filter(|(p, q)| p != q)
                .filter_map(|(p, q)| {
                    ok(
                        alg.delta(p, &alg.unit(q)) == u0,
                        json!({"p": lab(p), "q": lab(q)}),
                    )
                }),
        ),
        23 => first(
            m.elements()
                .flat_map(|p| m.elements().map(move |q| (p, q)))
                .filter(|(p, q)| p != q)
                .filter_map(|(p, q)| {
                    ok(
                        alg.meet(&alg.delta(p, &xs[0]), &alg.delta(q, &xs[0])) == u0,
                        json!({"p": lab(p), "q": lab(q)}),
                    )
                }),
        ),
        24 => ok(
            sum(alg, m.elements().map(|p| alg.delta(p, &xs[0]))) == u1,
            json!({}),
        ),
        25 | 26 => {
            let (a, b) = (&xs[0], &xs[1]);
            let combined = if n == 25 {
                alg.join(a, b)
            } else {
                alg.meet(a, b)
            };
            first(m.elements().filter_map(|p| {
                let rhs = sum(
                    alg,
                    m.elements()
                        .flat_map(|q| m.elements().map(move |r| (q, r)))
                        .filter(|&(q, r)| {
                            if n == 25 {
                                m.join(q, r) == p
                            } else {
                                m.meet(q, r) == p
                            }
                        })
                        .map(|(q, r)| alg.meet(&alg.delta(q, a), &alg.delta(r, b))),
                );
                ok(alg.delta(p, &combined) == rhs, json!({"p": lab(p)}))
            }))
        }
        27..=29 => first(m.elements().filter_map(|q| {
            let dq = alg.delta(q, &xs[0]);
            match n {
                27 => ok(alg.delta(m.one(), &dq) == dq, json!({"q": lab(q)})),
                29 => ok(
                    alg.delta(m.zero(), &dq) == alg.neg(&dq),
                    json!({"q": lab(q)}),
                ),
                _ => first(
                    m.elements()
                        .filter(|&p| !m.is_classical(p))
                        .filter_map(|p| {
                            ok(alg.delta(p, &dq) == u0, json!({"p": lab(p), "q": lab(q)}))
                        }),
                ),
            }
        })),
        30 => {
            let (a, b) = (&xs[0], &xs[1]);
            let same = m.elements().all(|p| alg.delta(p, a) == alg.delta(p, b));
            ok(!same || a == b, json!({}))
        }
        31 => axiom31(alg, &xs[0], false),
        _ => panic!("no axiom {n}"),
    }
}

/// Axiom 10. With `literal` set the side condition `κ ∉ {λ, μ}` is dropped.
fn axiom10<A: LawAlgebra>(alg: &A, literal: bool) -> Option<Value> {
    let d = alg.dim();
    for k in 0..d {
        for l in 0..d {
            for mu in 0..d {
                if !literal && (k == l || k == mu) {
                    continue;
                }
                let rhs = alg.cyl(k, &alg.meet(&alg.diag(l, k), &alg.diag(k, mu)));
                if alg.diag(l, mu) != rhs {
                    return Some(json!({"k": k, "l": l, "m": mu}));
                }
            }
        }
    }
    None
}

/// Axiom 31. The product ranges over `q ∈ A`; with `literal` set it ranges
/// over all of `M`.
fn axiom31<A: LawAlgebra>(alg: &A, a: &A::Elem, literal: bool) -> Option<Value> {
    let m = alg.values();
    for k in 0..alg.dim() {
        let cyl_deltas: Vec<A::Elem> = m.elements().map(|q| alg.cyl(k, &alg.delta(q, a))).collect();
        let all = product(alg, cyl_deltas.iter().cloned());
        for p in m.elements() {
            let lhs = alg.delta(p, &alg.cyl(k, a));
            let rhs = if literal {
                sup_formula(alg, p, |_, _| all.clone())
            } else {
                sup_formula(alg, p, |_, q| cyl_deltas[q.idx()].clone())
            };
            if lhs != rhs {
                return Some(json!({"k": k, "p": m.label(p)}));
            }
        }
    }
    None
}

/// One report per axiom, in axiom order.
pub fn check_mca_axioms<A: LawAlgebra>(alg: &A, budget: &Budget, exec: Exec) -> Vec<LawReport> {
    (1..=AXIOM_COUNT)
        .map(|n| {
            check_law(
                alg,
                &format!("axiom {n}"),
                axiom_arity(n),
                budget,
                exec,
                n as u64,
                |a, xs| axiom_violation(a, n, xs),
            )
        })
        .collect()
}

/// Axiom 10 without its side condition. Fails in every `M(B)` of dimension
/// at least 2 (take `κ = λ ≠ μ`).
pub fn check_axiom10_literal<A: LawAlgebra>(alg: &A) -> Option<Value> {
    axiom10(alg, true)
}

/// Axiom 31 with the product over all of `M`.
pub fn check_axiom31_literal<A: LawAlgebra>(alg: &A, budget: &Budget, exec: Exec) -> LawReport {
    check_law(
        alg,
        "axiom 31 (product over M)",
        1,
        budget,
        exec,
        131,
        |a, xs| axiom31(a, &xs[0], true),
    )
}
