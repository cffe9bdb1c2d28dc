//! Valuation semantics `T(φ, v)` and the brute-force tautology test.
//!
//! Valuations assign values to the maximal prime subformulas of the query
//! only; no clause of `T` looks at any other prime.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::demorgan::{DeMorganAlgebra, ElemId};
use crate::exec::Exec;
use crate::mvalued::digit;
use crate::syntax::dag::{Dag, Node};
use crate::syntax::derived::{big_and, big_gamma, big_or, iff, imp, q_restrict, strong_imp};
use crate::syntax::{Formula, Signature};

/// Most valuations [`is_tautology`] will enumerate.
pub const DEFAULT_CAP: u64 = 10_000_000;

pub type Valuation = BTreeMap<Formula, ElemId>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TruthError {
    #[error("valuation does not cover prime {0:?}")]
    Uncovered(Formula),
    #[error("{primes} primes over {values} values exceed the budget of {cap} valuations")]
    Budget {
        primes: usize,
        values: usize,
        cap: u64,
    },
}

/// Which end of the valuation index the first prime occupies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Order {
    /// Prime `i` is digit `i`, least significant first.
    #[default]
    LowFirst,
    /// Prime `i` is digit `n-1-i`.
    HighFirst,
}

#[derive(Copy, Clone, Debug)]
pub struct TautOptions {
    pub cap: u64,
    pub order: Order,
    pub exec: Exec,
}

impl Default for TautOptions {
    fn default() -> Self {
        TautOptions {
            cap: DEFAULT_CAP,
            order: Order::LowFirst,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TautVerdict {
    Tautology {
        valuations: u64,
    },
    /// The first failing valuation in enumeration order and the value it
    /// gives the formula.
    Refuted {
        #[serde(skip)]
        valuation: Vec<(Formula, ElemId)>,
        #[serde(skip)]
        value: ElemId,
    },
}

impl TautVerdict {
    pub fn is_tautology(&self) -> bool {
        matches!(self, TautVerdict::Tautology { .. })
    }
}

/// A formula compiled for repeated evaluation under valuations.
#[derive(Clone, Debug)]
pub struct Compiled {
    dag: Dag,
    root: u32,
    primes: Vec<Formula>,
    /// Node id → prime slot.
    slot: Vec<Option<usize>>,
    /// Non-prime nodes the root needs, children first.
    order: Vec<u32>,
}

impl Compiled {
    pub fn new(f: &Formula) -> Self {
        let (dag, root) = Dag::of(f);
        let prime_ids = dag.primes(root);
        let mut slot = vec![None; dag.len()];
        for (i, &id) in prime_ids.iter().enumerate() {
            slot[id as usize] = Some(i);
        }
        let mut needed = vec![false; dag.len()];
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if slot[id as usize].is_some() || std::mem::replace(&mut needed[id as usize], true) {
                continue;
            }
            match &dag.nodes[id as usize] {
                Node::Neg(a) | Node::Gamma(_, a) => stack.push(*a),
                Node::And(a, b) | Node::Or(a, b) => stack.extend([*a, *b]),
                _ => {}
            }
        }
        let order = (0..dag.len() as u32)
            .filter(|&i| needed[i as usize])
            .collect();
        let primes = prime_ids.iter().map(|&id| dag.formula(id)).collect();
        Compiled {
            dag,
            root,
            primes,
            slot,
            order,
        }
    }

    pub fn primes(&self) -> &[Formula] {
        &self.primes
    }

    /// `T(φ, v)` with `vals[i]` the value of prime `i`.
    pub fn eval(&self, m: &DeMorganAlgebra, vals: &[ElemId], scratch: &mut Vec<ElemId>) -> ElemId {
        scratch.clear();
        scratch.resize(self.dag.len(), m.zero());
        let get = |s: &[ElemId], id: u32| match self.slot[id as usize] {
            Some(i) => vals[i],
            None => s[id as usize],
        };
        for &id in &self.order {
            let v = match &self.dag.nodes[id as usize] {
                Node::Const(p) => *p,
                Node::Neg(a) => m.neg(get(scratch, *a)),
                Node::And(a, b) => m.meet(get(scratch, *a), get(scratch, *b)),
                Node::Or(a, b) => m.join(get(scratch, *a), get(scratch, *b)),
                Node::Gamma(p, a) => m.delta_star(*p, get(scratch, *a)),
                _ => unreachable!("primes are read from the valuation"),
            };
            scratch[id as usize] = v;
        }
        get(scratch, self.root)
    }
}

pub fn t_eval(m: &DeMorganAlgebra, f: &Formula, v: &Valuation) -> Result<ElemId, TruthError> {
    let c = Compiled::new(f);
    let vals = c
        .primes
        .iter()
        .map(|p| {
            v.get(p)
                .copied()
                .ok_or_else(|| TruthError::Uncovered(p.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(c.eval(m, &vals, &mut Vec::new()))
}

/// `T(Γφ, v)`.
pub fn crispness_value(
    m: &DeMorganAlgebra,
    f: &Formula,
    v: &Valuation,
) -> Result<ElemId, TruthError> {
    t_eval(m, &big_gamma(m, f.clone()), v)
}

/// `T(θ ⇔ φ, v)`.
pub fn iff_value(
    m: &DeMorganAlgebra,
    theta: &Formula,
    phi: &Formula,
    v: &Valuation,
) -> Result<ElemId, TruthError> {
    t_eval(m, &iff(m, theta.clone(), phi.clone()), v)
}

/// Number of valuations of `primes` primes, if within `cap`.
fn valuation_count(m: &DeMorganAlgebra, primes: usize, cap: u64) -> Result<u64, TruthError> {
    let err = TruthError::Budget {
        primes,
        values: m.len(),
        cap,
    };
    let n = (m.len() as u64)
        .checked_pow(u32::try_from(primes).map_err(|_| err.clone())?)
        .ok_or(err.clone())?;
    if n > cap {
        return Err(err);
    }
    Ok(n)
}

fn valuation_at(m: &DeMorganAlgebra, n: usize, idx: u64, order: Order) -> Vec<ElemId> {
    let radix = m.len() as u64;
    (0..n)
        .map(|i| {
            let pos = match order {
                Order::LowFirst => i,
                Order::HighFirst => n - 1 - i,
            };
            ElemId(digit(idx, radix, pos) as u8)
        })
        .collect()
}

pub fn is_tautology(m: &DeMorganAlgebra, f: &Formula) -> Result<TautVerdict, TruthError> {
    decide(m, f, &TautOptions::default())
}

/// Exhaustive over all valuations of the primes of `f`. The witness is the
/// lowest failing index in the chosen order.
pub fn decide(
    m: &DeMorganAlgebra,
    f: &Formula,
    opts: &TautOptions,
) -> Result<TautVerdict, TruthError> {
    let c = Compiled::new(f);
    let n = c.primes.len();
    let count = valuation_count(m, n, opts.cap)?;
    let one = m.one();
    let found = opts.exec.find_first(count, |idx| {
        let vals = valuation_at(m, n, idx, opts.order);
        let value = c.eval(m, &vals, &mut Vec::new());
        (value != one).then_some((vals, value))
    });
    Ok(match found {
        None => TautVerdict::Tautology { valuations: count },
        Some((vals, value)) => TautVerdict::Refuted {
            valuation: c.primes.iter().cloned().zip(vals).collect(),
            value,
        },
    })
}

/// One instance of an item of the tautology list.
#[derive(Clone, Debug)]
pub struct TautItem {
    pub item: u32,
    /// Parameter values of this instance, e.g. `p=u` or `Q={a,1}`.
    pub params: String,
    pub formula: Formula,
}

/// Relations standing in for the metavariables of [`tautology_suite`].
pub fn suite_signature() -> Signature {
    Signature::new([("P", 1), ("R", 2), ("U", 1), ("W", 1)])
}

/// The tautology list, every parametrized item expanded over `M`.
///
/// Metavariables become distinct primes: `φ = P(v0)`, `θ = R(v0,v1)`,
/// `ψ = U(v1)`, `χ = W(v0)`. Item 15 uses the transitive conclusion
/// `φ ⇔ ψ`, item 19 reads `(φ⇔θ) → (γ_pφ ⇔ γ_pθ)` and item 8 is instantiated
/// only for `0 ∉ Q`.
pub fn tautology_suite(m: &DeMorganAlgebra) -> Vec<TautItem> {
    let phi = Formula::rel("P", &[0]);
    let theta = Formula::rel("R", &[0, 1]);
    let psi = Formula::rel("U", &[1]);
    let chi = Formula::rel("W", &[0]);
    let (zero, one) = (m.zero(), m.one());
    let t = Formula::Const;
    let g = Formula::gamma;
    let si = |a: &Formula, b: &Formula| strong_imp(m, a.clone(), b.clone());
    let eqv = |a: &Formula, b: &Formula| iff(m, a.clone(), b.clone());
    let im = |a: &Formula, b: &Formula| imp(a.clone(), b.clone());
    let gg = |a: &Formula| big_gamma(m, a.clone());
    let or = |a: &Formula, b: &Formula| a.clone().or(b.clone());
    let and = |a: &Formula, b: &Formula| a.clone().and(b.clone());
    let lbl = |p: ElemId| m.label(p).to_string();
    let vals: Vec<ElemId> = m.elements().collect();

    let mut out = Vec::new();
    let mut push = |item: u32, params: String, formula: Formula| {
        out.push(TautItem {
            item,
            params,
            formula,
        })
    };

    push(
        1,
        String::new(),
        im(&si(&phi, &theta), &im(&si(&theta, &psi), &si(&phi, &psi))),
    );
    push(2, String::new(), im(&eqv(&phi, &theta), &si(&phi, &theta)));
    push(3, String::new(), im(&eqv(&phi, &theta), &si(&theta, &phi)));
    push(
        4,
        String::new(),
        im(
            &si(&theta, &phi),
            &im(&si(&phi, &theta), &eqv(&phi, &theta)),
        ),
    );
    {
        let a = im(&phi, &im(&theta, &psi));
        let b = im(&phi, &theta);
        let tail = im(&a, &im(&b, &im(&phi, &psi)));
        push(
            5,
            String::new(),
            im(&gg(&phi), &im(&gg(&a), &im(&gg(&b), &tail))),
        );
    }
    {
        let a = si(&chi, &im(&phi, &theta));
        push(
            6,
            String::new(),
            im(
                &gg(&phi),
                &im(&gg(&a), &im(&a, &im(&phi, &si(&chi, &theta)))),
            ),
        );
        let b = im(&phi, &si(&chi, &theta));
        push(
            7,
            String::new(),
            im(
                &gg(&phi),
                &im(&gg(&b), &im(&b, &si(&chi, &im(&phi, &theta)))),
            ),
        );
    }
    for mask in 0..1u32 << m.len() {
        let q: Vec<ElemId> = vals
            .iter()
            .copied()
            .filter(|p| mask >> p.idx() & 1 == 1)
            .collect();
        let name = format!(
            "Q={{{}}}",
            q.iter().map(|&p| lbl(p)).collect::<Vec<_>>().join(",")
        );
        let t0q = q_restrict(m, t(zero), &q);
        if !q.contains(&zero) {
            push(8, name.clone(), im(&t0q, &t(zero)));
        }
        push(9, name, im(&t(zero), &t0q));
    }
    push(10, String::new(), im(&gg(&phi), &gg(&phi.clone().neg())));
    push(
        11,
        String::new(),
        im(&gg(&phi), &im(&im(&phi.clone().neg(), &t(zero)), &phi)),
    );
    push(12, String::new(), si(&phi, &phi));
    push(13, String::new(), eqv(&phi, &phi));
    push(
        14,
        String::new(),
        im(&eqv(&phi, &theta), &eqv(&theta, &phi)),
    );
    push(
        15,
        String::new(),
        im(
            &eqv(&phi, &theta),
            &im(&eqv(&theta, &psi), &eqv(&phi, &psi)),
        ),
    );
    {
        let (t1, p1, t2, p2) = (&phi, &theta, &psi, &chi);
        push(
            16,
            String::new(),
            im(
                &eqv(t1, p1),
                &im(&eqv(t2, p2), &eqv(&or(t1, t2), &or(p1, p2))),
            ),
        );
        push(
            17,
            String::new(),
            im(
                &eqv(t1, p1),
                &im(&eqv(t2, p2), &eqv(&and(t1, t2), &and(p1, p2))),
            ),
        );
    }
    push(
        18,
        String::new(),
        im(
            &eqv(&theta, &psi),
            &eqv(&theta.clone().neg(), &psi.clone().neg()),
        ),
    );
    for &p in &vals {
        push(
            19,
            format!("p={}", lbl(p)),
            im(
                &eqv(&phi, &theta),
                &eqv(&g(p, phi.clone()), &g(p, theta.clone())),
            ),
        );
    }
    push(20, String::new(), im(&eqv(&t(one), &t(zero)), &t(zero)));
    push(
        21,
        String::new(),
        im(&gg(&phi), &im(&phi, &eqv(&phi, &t(one)))),
    );
    {
        let d = or(&g(one, phi.clone()), &g(one, theta.clone()));
        push(22, String::new(), eqv(&g(one, d.clone()), &d));
        let c = and(&g(one, phi.clone()), &g(one, theta.clone()));
        push(23, String::new(), eqv(&g(one, c.clone()), &c));
        let n = g(one, phi.clone()).neg();
        push(24, String::new(), eqv(&g(one, n.clone()), &n));
    }
    push(25, String::new(), eqv(&t(zero), &g(one, t(zero))));
    push(26, String::new(), eqv(&t(one), &g(one, t(one))));
    for &p in &vals {
        let pairs = |op: fn(&DeMorganAlgebra, ElemId, ElemId) -> ElemId| {
            let mut terms = Vec::new();
            for &q in &vals {
                for &r in &vals {
                    if op(m, q, r) == p {
                        terms.push(g(q, phi.clone()).and(g(r, theta.clone())));
                    }
                }
            }
            big_or(m, terms)
        };
        push(
            27,
            format!("p={}", lbl(p)),
            eqv(&g(p, or(&phi, &theta)), &pairs(DeMorganAlgebra::join)),
        );
        push(
            28,
            format!("p={}", lbl(p)),
            eqv(&g(p, and(&phi, &theta)), &pairs(DeMorganAlgebra::meet)),
        );
    }
    for &p in &vals {
        for &q in vals.iter().filter(|&&q| q != p) {
            push(
                29,
                format!("p={},q={}", lbl(p), lbl(q)),
                eqv(&and(&g(p, phi.clone()), &g(q, phi.clone())), &t(zero)),
            );
        }
    }
    push(
        30,
        String::new(),
        eqv(&big_or(m, vals.iter().map(|&p| g(p, phi.clone()))), &t(one)),
    );
    for &p in &vals {
        push(
            31,
            format!("p={}", lbl(p)),
            eqv(&g(p, phi.clone().neg()), &g(m.neg(p), phi.clone())),
        );
    }
    for &p in &vals {
        push(32, format!("p={}", lbl(p)), eqv(&g(p, t(p)), &t(one)));
    }
    for &p in &vals {
        for &q in vals.iter().filter(|&&q| q != p) {
            push(
                33,
                format!("p={},q={}", lbl(p), lbl(q)),
                eqv(&g(p, t(q)), &t(zero)),
            );
        }
    }
    push(34, String::new(), eqv(&or(&phi, &theta), &or(&theta, &phi)));
    push(
        35,
        String::new(),
        eqv(&and(&phi, &theta), &and(&theta, &phi)),
    );
    push(
        36,
        String::new(),
        eqv(&or(&or(&phi, &theta), &psi), &or(&phi, &or(&theta, &psi))),
    );
    push(
        37,
        String::new(),
        eqv(
            &and(&and(&phi, &theta), &psi),
            &and(&phi, &and(&theta, &psi)),
        ),
    );
    push(
        38,
        String::new(),
        eqv(
            &and(&phi, &or(&theta, &psi)),
            &or(&and(&phi, &theta), &and(&phi, &psi)),
        ),
    );
    push(
        39,
        String::new(),
        eqv(
            &or(&phi, &and(&theta, &psi)),
            &and(&or(&phi, &theta), &or(&phi, &psi)),
        ),
    );
    push(40, String::new(), eqv(&or(&phi, &t(zero)), &phi));
    push(41, String::new(), eqv(&and(&phi, &t(one)), &phi));
    {
        let g1 = g(one, phi.clone());
        push(42, String::new(), eqv(&or(&g1, &g1.clone().neg()), &t(one)));
        push(
            43,
            String::new(),
            eqv(&and(&g1, &g1.clone().neg()), &t(zero)),
        );
    }
    for &q in &vals {
        push(
            44,
            format!("q={}", lbl(q)),
            eqv(&g(one, g(q, phi.clone())), &g(q, phi.clone())),
        );
    }
    for &p in vals.iter().filter(|&&p| !m.is_classical(p)) {
        for &q in &vals {
            push(
                45,
                format!("p={},q={}", lbl(p), lbl(q)),
                eqv(&g(p, g(q, phi.clone())), &t(zero)),
            );
        }
    }
    for &q in &vals {
        push(
            46,
            format!("q={}", lbl(q)),
            eqv(&g(zero, g(q, phi.clone())), &g(q, phi.clone()).neg()),
        );
    }
    {
        let all = big_and(
            m,
            vals.iter()
                .map(|&p| eqv(&g(p, phi.clone()), &g(p, theta.clone()))),
        );
        push(47, String::new(), im(&all, &eqv(&phi, &theta)));
    }
    push(48, String::new(), si(&phi, &or(&phi, &theta)));
    push(49, String::new(), gg(&gg(&phi)));
    push(
        50,
        String::new(),
        im(
            &gg(&theta),
            &im(&gg(&phi), &im(&theta, &im(&phi, &and(&theta, &phi)))),
        ),
    );
    {
        let a = im(&phi, &psi);
        push(
            51,
            String::new(),
            im(&gg(&phi), &im(&gg(&a), &im(&a, &im(&phi, &gg(&psi))))),
        );
    }
    out
}
