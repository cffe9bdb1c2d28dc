//! Hilbert-style proofs for `⊢` and `⊢_Q`.
//!
//! Axioms are the tautologies (decided by truth table) and the validity
//! schemas (matched against explicit bindings). The rules are modus ponens,
//! the `Γ`-rule and the `∃`-rule in its `⇒` form. Rule matching is
//! syntactic equality of expanded core trees.

pub mod build;
pub mod json;

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::demorgan::{DeMorganAlgebra, ElemId};
use crate::semantics::validities::{instantiate, Bindings, ValidityError};
use crate::syntax::derived::{big_gamma, imp, match_strong_imp, q_restrict, strong_imp};
use crate::syntax::Formula;
use crate::truth::{decide, TautOptions, TruthError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Member `i` of `Σ`.
    Hypothesis(usize),
    Tautology,
    Validity {
        schema: u8,
        bindings: Bindings,
    },
    /// Line `imp` is `line ant → current`.
    ModusPonens {
        imp: usize,
        ant: usize,
    },
    /// Current is `Γ` of line `from`.
    Gamma(usize),
    /// Line `from` is `θ ⇒ φ`, current is `∃v_var θ ⇒ φ`.
    Exists {
        from: usize,
        var: usize,
    },
}

impl Justification {
    pub fn rule(&self) -> &'static str {
        match self {
            Justification::Hypothesis(_) => "hypothesis",
            Justification::Tautology => "tautology",
            Justification::Validity { .. } => "validity",
            Justification::ModusPonens { .. } => "mp",
            Justification::Gamma(_) => "gamma",
            Justification::Exists { .. } => "exists",
        }
    }

    /// Earlier lines this justification cites.
    pub fn references(&self) -> Vec<usize> {
        match self {
            Justification::ModusPonens { imp, ant } => vec![*imp, *ant],
            Justification::Gamma(j) | Justification::Exists { from: j, .. } => vec![*j],
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub by: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub sigma: Vec<Formula>,
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineError {
    #[error("{rule}: line {reference} is not an earlier line")]
    BadReference {
        rule: &'static str,
        reference: usize,
    },
    #[error("hypothesis: sigma has no member {0}")]
    NoSuchHypothesis(usize),
    #[error("hypothesis: formula differs from sigma member {0}")]
    HypothesisMismatch(usize),
    #[error("tautology: not a tautology")]
    NotTautology,
    #[error("tautology: {0}")]
    TautologyBudget(TruthError),
    #[error("validity: {0}")]
    Validity(ValidityError),
    #[error("validity: formula is not the instance of schema {0} under the given bindings")]
    ValidityMismatch(u8),
    #[error("mp: line {imp} is not (line {ant} -> current)")]
    ModusPonens { imp: usize, ant: usize },
    #[error("gamma: formula is not G of line {0}")]
    Gamma(usize),
    #[error("exists: formula is not of the form (E v{var} . θ => φ)")]
    ExistsShape { var: usize },
    #[error("exists: line {from} is not (θ => φ) for the θ, φ of the current line")]
    ExistsPremise { from: usize },
    #[error("exists: v{var} is free in the consequent")]
    ExistsFree { var: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected { line: usize, error: LineError },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Outcome of checking a whole proof: every line is checked on its own, and
/// the verdict is the earliest failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofReport {
    pub accepted: bool,
    pub lines: Vec<LineReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineReport {
    pub line: usize,
    pub rule: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub struct Checker<'a> {
    m: &'a DeMorganAlgebra,
    opts: TautOptions,
    known: HashSet<Formula>,
}

impl<'a> Checker<'a> {
    pub fn new(m: &'a DeMorganAlgebra) -> Self {
        Self::with_options(m, TautOptions::default())
    }

    pub fn with_options(m: &'a DeMorganAlgebra, opts: TautOptions) -> Self {
        Checker {
            m,
            opts,
            known: HashSet::new(),
        }
    }

    fn check_tautology(&mut self, f: &Formula) -> Result<(), LineError> {
        if self.known.contains(f) {
            return Ok(());
        }
        match decide(self.m, f, &self.opts) {
            Ok(v) if v.is_tautology() => {
                self.known.insert(f.clone());
                Ok(())
            }
            Ok(_) => Err(LineError::NotTautology),
            Err(e) => Err(LineError::TautologyBudget(e)),
        }
    }

    /// Checks line `i` of `proof` against the formulas of earlier lines.
    pub fn check_line(&mut self, proof: &Proof, i: usize) -> Result<(), LineError> {
        let m = self.m;
        let line = &proof.lines[i];
        let f = &line.formula;
        let rule = line.by.rule();
        for r in line.by.references() {
            if r >= i {
                return Err(LineError::BadReference { rule, reference: r });
            }
        }
        let at = |j: usize| &proof.lines[j].formula;
        match &line.by {
            Justification::Hypothesis(h) => match proof.sigma.get(*h) {
                None => Err(LineError::NoSuchHypothesis(*h)),
                Some(g) if g != f => Err(LineError::HypothesisMismatch(*h)),
                Some(_) => Ok(()),
            },
            Justification::Tautology => self.check_tautology(f),
            Justification::Validity { schema, bindings } => {
                let inst = instantiate(m, *schema, bindings).map_err(LineError::Validity)?;
                if inst == *f {
                    Ok(())
                } else {
                    Err(LineError::ValidityMismatch(*schema))
                }
            }
            Justification::ModusPonens { imp: j, ant: k } => {
                if *at(*j) == imp(at(*k).clone(), f.clone()) {
                    Ok(())
                } else {
                    Err(LineError::ModusPonens { imp: *j, ant: *k })
                }
            }
            Justification::Gamma(j) => {
                if *f == big_gamma(m, at(*j).clone()) {
                    Ok(())
                } else {
                    Err(LineError::Gamma(*j))
                }
            }
            Justification::Exists { from, var } => {
                let Some((Formula::Exists(k, theta), phi)) = match_strong_imp(m, f) else {
                    return Err(LineError::ExistsShape { var: *var });
                };
                if k != *var {
                    return Err(LineError::ExistsShape { var: *var });
                }
                if *at(*from) != strong_imp(m, *theta, phi.clone()) {
                    return Err(LineError::ExistsPremise { from: *from });
                }
                if phi.free_vars().contains(var) {
                    return Err(LineError::ExistsFree { var: *var });
                }
                Ok(())
            }
        }
    }

    pub fn report(&mut self, proof: &Proof) -> ProofReport {
        let lines: Vec<LineReport> = (0..proof.lines.len())
            .map(|i| {
                let r = self.check_line(proof, i);
                LineReport {
                    line: i,
                    rule: proof.lines[i].by.rule(),
                    ok: r.is_ok(),
                    error: r.err().map(|e| e.to_string()),
                }
            })
            .collect();
        ProofReport {
            accepted: !lines.is_empty() && lines.iter().all(|l| l.ok),
            lines,
        }
    }

    pub fn check(&mut self, proof: &Proof) -> Verdict {
        for i in 0..proof.lines.len() {
            if let Err(error) = self.check_line(proof, i) {
                return Verdict::Rejected { line: i, error };
            }
        }
        Verdict::Accepted
    }
}

/// Checks every line in order and reports the earliest failure.
pub fn check_proof(m: &DeMorganAlgebra, proof: &Proof) -> Verdict {
    Checker::new(m).check(proof)
}

/// `(Σ^Q, φ^Q)`: a proof of the lifted goal certifies `Σ ⊢_Q φ`.
pub fn q_lift(
    m: &DeMorganAlgebra,
    sigma: &[Formula],
    phi: &Formula,
    q: &[ElemId],
) -> (Vec<Formula>, Formula) {
    (
        sigma.iter().map(|s| q_restrict(m, s.clone(), q)).collect(),
        q_restrict(m, phi.clone(), q),
    )
}
