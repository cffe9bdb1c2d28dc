//! Proof construction: a line-appending builder, the derived theorems
//! (a)–(f) and the deduction transform.
//!
//! Every constructor emits a plain `Proof`; nothing here is trusted, the
//! output still has to pass the checker.

use std::collections::HashMap;

use thiserror::Error;

use super::{check_proof, Justification, Line, LineError, Proof, Verdict};
use crate::demorgan::DeMorganAlgebra;
use crate::semantics::validities::{Bindings, ValidityError};
use crate::syntax::derived::{
    big_and, big_gamma, forall, iff, imp, match_iff, match_imp, match_strong_imp, strong_imp,
};
use crate::syntax::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("expected {expected}, found {found}")]
    Shape {
        expected: &'static str,
        found: String,
    },
    #[error("v{0} is free in {1}")]
    FreeVariable(usize, String),
    #[error("{0} is not a sentence")]
    NotSentence(String),
    #[error("input proofs have different hypotheses")]
    SigmaMismatch,
    #[error("input proof is empty")]
    Empty,
    #[error("input proof rejected at line {line}: {error}")]
    Invalid { line: usize, error: LineError },
    #[error(transparent)]
    Validity(#[from] ValidityError),
}

/// Appends justified lines to a proof under a fixed `Σ`.
pub struct Builder<'a> {
    m: &'a DeMorganAlgebra,
    proof: Proof,
}

impl<'a> Builder<'a> {
    pub fn new(m: &'a DeMorganAlgebra, sigma: Vec<Formula>) -> Self {
        Builder {
            m,
            proof: Proof {
                sigma,
                lines: Vec::new(),
            },
        }
    }

    pub fn line(&self, i: usize) -> &Formula {
        &self.proof.lines[i].formula
    }

    pub fn last(&self) -> Option<usize> {
        self.proof.lines.len().checked_sub(1)
    }

    pub fn push(&mut self, formula: Formula, by: Justification) -> usize {
        self.proof.lines.push(Line { formula, by });
        self.proof.lines.len() - 1
    }

    pub fn hypothesis(&mut self, i: usize) -> usize {
        let f = self.proof.sigma[i].clone();
        self.push(f, Justification::Hypothesis(i))
    }

    pub fn tautology(&mut self, f: Formula) -> usize {
        self.push(f, Justification::Tautology)
    }

    pub fn validity(&mut self, schema: u8, bindings: Bindings) -> Result<usize, BuildError> {
        let f = crate::semantics::validities::instantiate(self.m, schema, &bindings)?;
        Ok(self.push(f, Justification::Validity { schema, bindings }))
    }

    /// Detaches the consequent of line `imp_line`, whose antecedent must be
    /// line `ant`.
    pub fn mp(&mut self, imp_line: usize, ant: usize) -> Result<usize, BuildError> {
        let (a, c) =
            match_imp(self.line(imp_line)).ok_or_else(|| self.shape("an implication", imp_line))?;
        if a != self.line(ant) {
            return Err(self.shape("the antecedent of the implication", ant));
        }
        let c = c.clone();
        Ok(self.push(c, Justification::ModusPonens { imp: imp_line, ant }))
    }

    pub fn gamma(&mut self, j: usize) -> usize {
        let f = big_gamma(self.m, self.line(j).clone());
        self.push(f, Justification::Gamma(j))
    }

    /// From line `j` = `θ ⇒ φ` derives `∃v_k θ ⇒ φ`.
    pub fn exists(&mut self, j: usize, k: usize) -> Result<usize, BuildError> {
        let (theta, phi) = match_strong_imp(self.m, self.line(j))
            .ok_or_else(|| self.shape("a strong implication", j))?;
        if phi.free_vars().contains(&k) {
            return Err(BuildError::FreeVariable(k, phi.print(self.m)));
        }
        let f = strong_imp(self.m, Formula::exists(k, theta), phi);
        Ok(self.push(f, Justification::Exists { from: j, var: k }))
    }

    /// Appends the lines of `p`, which must share `Σ`, and returns the index
    /// of its conclusion.
    pub fn include(&mut self, p: &Proof) -> Result<usize, BuildError> {
        if p.sigma != self.proof.sigma {
            return Err(BuildError::SigmaMismatch);
        }
        if p.lines.is_empty() {
            return Err(BuildError::Empty);
        }
        let off = self.proof.lines.len();
        for l in &p.lines {
            let by = match &l.by {
                Justification::ModusPonens { imp, ant } => Justification::ModusPonens {
                    imp: imp + off,
                    ant: ant + off,
                },
                Justification::Gamma(j) => Justification::Gamma(j + off),
                Justification::Exists { from, var } => Justification::Exists {
                    from: from + off,
                    var: *var,
                },
                other => other.clone(),
            };
            self.push(l.formula.clone(), by);
        }
        Ok(self.proof.lines.len() - 1)
    }

    pub fn finish(self) -> Proof {
        self.proof
    }

    fn shape(&self, expected: &'static str, line: usize) -> BuildError {
        BuildError::Shape {
            expected,
            found: self.line(line).print(self.m),
        }
    }

    /// Lines for `φ ⇒ ∃v_k φ`; returns the conclusion.
    pub fn exists_intro(&mut self, phi: &Formula, k: usize) -> Result<usize, BuildError> {
        let m = self.m;
        let e = Formula::exists(k, phi.clone());
        let wide = phi.clone().or(e.clone());
        let l1 = self.tautology(strong_imp(m, phi.clone(), wide.clone()));
        let l2 = self.validity(
            7,
            Bindings {
                phi: Some(phi.clone()),
                k: Some(k),
                ..Bindings::default()
            },
        )?;
        let l3 = self.tautology(imp(
            iff(m, wide.clone(), e.clone()),
            strong_imp(m, wide.clone(), e.clone()),
        ));
        let l4 = self.mp(l3, l2)?;
        let tr = transitivity(m, phi, &wide, &e);
        let l5 = self.tautology(tr);
        let l6 = self.mp(l5, l1)?;
        self.mp(l6, l4)
    }

    /// From line `j` = `φ ⇒ θ` derives `∃v_k φ ⇒ ∃v_k θ`.
    pub fn exists_mono(&mut self, j: usize, k: usize) -> Result<usize, BuildError> {
        let m = self.m;
        let (phi, theta) = match_strong_imp(m, self.line(j))
            .ok_or_else(|| self.shape("a strong implication", j))?;
        let a = self.exists_intro(&theta, k)?;
        let e = Formula::exists(k, theta.clone());
        let t = self.tautology(transitivity(m, &phi, &theta, &e));
        let s = self.mp(t, j)?;
        let s = self.mp(s, a)?;
        self.exists(s, k)
    }

    /// `Γα`, `Γβ`, `α`, `β` to `α ∧ β`.
    fn conjoin(&mut self, a: usize, b: usize) -> Result<usize, BuildError> {
        let (x, y) = (self.line(a).clone(), self.line(b).clone());
        let ga = self.gamma(a);
        let gb = self.gamma(b);
        let m = self.m;
        let t = self.tautology(imp(
            big_gamma(m, x.clone()),
            imp(
                big_gamma(m, y.clone()),
                imp(x.clone(), imp(y.clone(), x.and(y))),
            ),
        ));
        let s = self.mp(t, ga)?;
        let s = self.mp(s, gb)?;
        let s = self.mp(s, a)?;
        self.mp(s, b)
    }
}

/// `(α ⇒ β) → ((β ⇒ γ) → (α ⇒ γ))`.
fn transitivity(m: &DeMorganAlgebra, a: &Formula, b: &Formula, c: &Formula) -> Formula {
    let si = |x: &Formula, y: &Formula| strong_imp(m, x.clone(), y.clone());
    imp(si(a, b), imp(si(b, c), si(a, c)))
}

/// `(α ⇒ β) → ((β ⇒ α) → (α ⇔ β))`.
fn antisymmetry(m: &DeMorganAlgebra, a: &Formula, b: &Formula) -> Formula {
    let si = |x: &Formula, y: &Formula| strong_imp(m, x.clone(), y.clone());
    imp(si(a, b), imp(si(b, a), iff(m, a.clone(), b.clone())))
}

fn conclusion(p: &Proof) -> Result<&Formula, BuildError> {
    p.conclusion().ok_or(BuildError::Empty)
}

/// (a) `⊢ φ ⇒ ∃v_k φ`.
pub fn exists_intro(m: &DeMorganAlgebra, phi: &Formula, k: usize) -> Result<Proof, BuildError> {
    let mut b = Builder::new(m, Vec::new());
    b.exists_intro(phi, k)?;
    Ok(b.finish())
}

/// (b) From `Σ ⊢ ∀v_k φ`, `Σ ⊢ φ`.
pub fn forall_elim(m: &DeMorganAlgebra, base: &Proof) -> Result<Proof, BuildError> {
    let c = conclusion(base)?;
    let parsed = match c {
        Formula::Neg(e) => match e.as_ref() {
            Formula::Exists(k, n) => match n.as_ref() {
                Formula::Neg(phi) => Some((*k, (**phi).clone())),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    };
    let (k, phi) = parsed.ok_or_else(|| shape("a universal formula", m, c))?;
    debug_assert_eq!(forall(k, phi.clone()), *c);
    let mut b = Builder::new(m, base.sigma.clone());
    let all = b.include(base)?;
    let g = b.gamma(all);
    let v = b.validity(
        1,
        Bindings {
            phi: Some(phi),
            k: Some(k),
            ..Bindings::default()
        },
    )?;
    let s = b.mp(v, g)?;
    b.mp(s, all)?;
    Ok(b.finish())
}

/// (c) From `Σ ⊢ φ ⇒ θ`, `Σ ⊢ ∃v_k φ ⇒ ∃v_k θ`.
pub fn exists_mono(m: &DeMorganAlgebra, base: &Proof, k: usize) -> Result<Proof, BuildError> {
    let mut b = Builder::new(m, base.sigma.clone());
    let j = b.include(base)?;
    b.exists_mono(j, k)?;
    Ok(b.finish())
}

/// (d) From `Σ ⊢ φ ⇔ θ`, `Σ ⊢ ∃v_k φ ⇔ ∃v_k θ`.
pub fn exists_cong(m: &DeMorganAlgebra, base: &Proof, k: usize) -> Result<Proof, BuildError> {
    let c = conclusion(base)?;
    let (phi, theta) = match_iff(m, c).ok_or_else(|| shape("a biconditional", m, c))?;
    let si = |x: &Formula, y: &Formula| strong_imp(m, x.clone(), y.clone());
    let mut b = Builder::new(m, base.sigma.clone());
    let eq = b.include(base)?;
    let t = b.tautology(imp(c.clone(), si(&phi, &theta)));
    let fwd = b.mp(t, eq)?;
    let t = b.tautology(imp(c.clone(), si(&theta, &phi)));
    let bwd = b.mp(t, eq)?;
    let fwd = b.exists_mono(fwd, k)?;
    let bwd = b.exists_mono(bwd, k)?;
    let (ep, et) = (Formula::exists(k, phi), Formula::exists(k, theta));
    let t = b.tautology(antisymmetry(m, &ep, &et));
    let s = b.mp(t, fwd)?;
    b.mp(s, bwd)?;
    Ok(b.finish())
}

/// (e) `⊢ ∃v_k φ ⇔ φ` when `k ∉ Fv(φ)`.
pub fn vacuous_exists(m: &DeMorganAlgebra, phi: &Formula, k: usize) -> Result<Proof, BuildError> {
    if phi.free_vars().contains(&k) {
        return Err(BuildError::FreeVariable(k, phi.print(m)));
    }
    let mut b = Builder::new(m, Vec::new());
    let refl = b.tautology(strong_imp(m, phi.clone(), phi.clone()));
    let down = b.exists(refl, k)?;
    let up = b.exists_intro(phi, k)?;
    let t = b.tautology(antisymmetry(m, &Formula::exists(k, phi.clone()), phi));
    let s = b.mp(t, down)?;
    b.mp(s, up)?;
    Ok(b.finish())
}

/// (f) From `Σ ⊢ φ_i` for each `i`, `Σ ⊢ ⋀_i φ_i` (left-nested).
pub fn conjunction(
    m: &DeMorganAlgebra,
    sigma: &[Formula],
    proofs: &[Proof],
) -> Result<Proof, BuildError> {
    let mut b = Builder::new(m, sigma.to_vec());
    if proofs.is_empty() {
        b.tautology(big_and(m, []));
        return Ok(b.finish());
    }
    let mut acc = b.include(&proofs[0])?;
    for p in &proofs[1..] {
        let next = b.include(p)?;
        acc = b.conjoin(acc, next)?;
    }
    Ok(b.finish())
}

fn shape(expected: &'static str, m: &DeMorganAlgebra, f: &Formula) -> BuildError {
    BuildError::Shape {
        expected,
        found: f.print(m),
    }
}

fn require_valid(m: &DeMorganAlgebra, p: &Proof) -> Result<(), BuildError> {
    match check_proof(m, p) {
        Verdict::Accepted if !p.lines.is_empty() => Ok(()),
        Verdict::Accepted => Err(BuildError::Empty),
        Verdict::Rejected { line, error } => Err(BuildError::Invalid { line, error }),
    }
}

/// Turns a proof of `Σ ∪ {φ} ⊢ θ` and a proof of `Σ ⊢ Γφ` into a proof of
/// `Σ ⊢ φ → θ`. Hypotheses of `inner` are matched by formula: `φ` itself, or
/// a member of `gamma_phi.sigma`.
pub fn deduction(
    m: &DeMorganAlgebra,
    inner: &Proof,
    gamma_phi: &Proof,
    phi: &Formula,
) -> Result<Proof, BuildError> {
    if !phi.is_sentence() {
        return Err(BuildError::NotSentence(phi.print(m)));
    }
    require_valid(m, inner)?;
    require_valid(m, gamma_phi)?;
    let gf = big_gamma(m, phi.clone());
    if conclusion(gamma_phi)? != &gf {
        return Err(shape("a proof of G φ", m, conclusion(gamma_phi)?));
    }
    let sigma = gamma_phi.sigma.clone();
    let index: HashMap<&Formula, usize> = sigma
        .iter()
        .enumerate()
        .rev()
        .map(|(i, f)| (f, i))
        .collect();
    let mut b = Builder::new(m, sigma.clone());
    let g = b.include(gamma_phi)?;
    let gg = |x: &Formula| big_gamma(m, x.clone());
    let im = |x: &Formula, y: &Formula| imp(x.clone(), y.clone());
    // map[i]: the output line holding φ → ψ_i
    let mut map = Vec::with_capacity(inner.lines.len());
    for line in &inner.lines {
        let psi = &line.formula;
        let out = if psi == phi {
            let t = b.tautology(im(&gf, &im(phi, phi)));
            b.mp(t, g)?
        } else {
            match &line.by {
                Justification::Hypothesis(_)
                | Justification::Tautology
                | Justification::Validity { .. } => {
                    let by = match &line.by {
                        Justification::Hypothesis(_) => match index.get(psi) {
                            Some(&i) => Justification::Hypothesis(i),
                            None => return Err(shape("a member of the outer hypotheses", m, psi)),
                        },
                        other => other.clone(),
                    };
                    let own = b.push(psi.clone(), by);
                    let gp = b.gamma(own);
                    let t = b.tautology(im(&gg(psi), &im(psi, &im(phi, psi))));
                    let s = b.mp(t, gp)?;
                    b.mp(s, own)?
                }
                Justification::ModusPonens { imp: j, ant: k } => {
                    // map[j]: φ → (χ → ψ), map[k]: φ → χ
                    let (a, bb) = (map[*j], map[*k]);
                    let chi = inner.lines[*k].formula.clone();
                    let af = im(phi, &im(&chi, psi));
                    let bf = im(phi, &chi);
                    let ga = b.gamma(a);
                    let gb = b.gamma(bb);
                    let tail = im(&af, &im(&bf, &im(phi, psi)));
                    let t = b.tautology(im(&gf, &im(&gg(&af), &im(&gg(&bf), &tail))));
                    let mut s = b.mp(t, g)?;
                    for ant in [ga, gb, a, bb] {
                        s = b.mp(s, ant)?;
                    }
                    s
                }
                Justification::Gamma(j) => {
                    // map[j]: φ → χ, current Γχ
                    let a = map[*j];
                    let chi = inner.lines[*j].formula.clone();
                    let af = im(phi, &chi);
                    let ga = b.gamma(a);
                    let t = b.tautology(im(&gf, &im(&gg(&af), &im(&af, &im(phi, &gg(&chi))))));
                    let s = b.mp(t, g)?;
                    let s = b.mp(s, ga)?;
                    b.mp(s, a)?
                }
                Justification::Exists { from, var } => {
                    // map[from]: φ → (χ ⇒ θ), current ∃v_k χ ⇒ θ
                    let a = map[*from];
                    let (chi, theta) = match_strong_imp(m, &inner.lines[*from].formula)
                        .ok_or_else(|| {
                            shape("a strong implication", m, &inner.lines[*from].formula)
                        })?;
                    let bf = im(phi, &strong_imp(m, chi.clone(), theta.clone()));
                    let swapped = strong_imp(m, chi.clone(), im(phi, &theta));
                    let gb = b.gamma(a);
                    let t = b.tautology(im(&gf, &im(&gg(&bf), &im(&bf, &swapped))));
                    let s = b.mp(t, g)?;
                    let s = b.mp(s, gb)?;
                    let s = b.mp(s, a)?;
                    let lifted = b.exists(s, *var)?;
                    let af = b.line(lifted).clone();
                    let ga = b.gamma(lifted);
                    let back = im(phi, &strong_imp(m, Formula::exists(*var, chi), theta));
                    let t = b.tautology(im(&gf, &im(&gg(&af), &im(&af, &back))));
                    let s = b.mp(t, g)?;
                    let s = b.mp(s, ga)?;
                    b.mp(s, lifted)?
                }
            }
        };
        map.push(out);
    }
    Ok(b.finish())
}
