//! Derived connectives as rewrites into the core syntax.
//!
//! Generalized `⋁`/`⋀` fold left in element-id order, which fixes the shape
//! of every expanded tree: the empty disjunction is `t_0` and the empty
//! conjunction is `t_1`.

use super::Formula;
use crate::demorgan::{DeMorganAlgebra, ElemId};

pub fn big_or(m: &DeMorganAlgebra, items: impl IntoIterator<Item = Formula>) -> Formula {
    items
        .into_iter()
        .reduce(Formula::or)
        .unwrap_or(Formula::Const(m.zero()))
}

pub fn big_and(m: &DeMorganAlgebra, items: impl IntoIterator<Item = Formula>) -> Formula {
    items
        .into_iter()
        .reduce(Formula::and)
        .unwrap_or(Formula::Const(m.one()))
}

/// `θ → φ = ¬θ ∨ φ`.
pub fn imp(theta: Formula, phi: Formula) -> Formula {
    theta.neg().or(phi)
}

/// `θ ⇒ φ = ⋀_r (γ_r φ → ⋁_{q≤r} γ_q θ)`: true exactly when `T(θ) ≤ T(φ)`.
pub fn strong_imp(m: &DeMorganAlgebra, theta: Formula, phi: Formula) -> Formula {
    big_and(
        m,
        m.elements().map(|r| {
            let below = big_or(
                m,
                m.elements()
                    .filter(|&q| m.leq(q, r))
                    .map(|q| Formula::gamma(q, theta.clone())),
            );
            imp(Formula::gamma(r, phi.clone()), below)
        }),
    )
}

/// `θ ⇔ φ = (θ ⇒ φ) ∧ (φ ⇒ θ)`.
pub fn iff(m: &DeMorganAlgebra, theta: Formula, phi: Formula) -> Formula {
    strong_imp(m, theta.clone(), phi.clone()).and(strong_imp(m, phi, theta))
}

pub fn forall(k: usize, phi: Formula) -> Formula {
    Formula::exists(k, phi.neg()).neg()
}

/// `Γφ = γ_0 φ ∨ γ_1 φ`.
pub fn big_gamma(m: &DeMorganAlgebra, phi: Formula) -> Formula {
    Formula::gamma(m.zero(), phi.clone()).or(Formula::gamma(m.one(), phi))
}

/// `φ^Q = ⋁_{p∈Q} γ_p φ`, with `Q` read as a set.
pub fn q_restrict(m: &DeMorganAlgebra, phi: Formula, q: &[ElemId]) -> Formula {
    big_or(
        m,
        m.elements()
            .filter(|p| q.contains(p))
            .map(|p| Formula::gamma(p, phi.clone())),
    )
}

/// `S^k_l φ = ∃v_k (v_k ≈ v_l ∧ φ)`.
pub fn subst(k: usize, l: usize, phi: Formula) -> Formula {
    Formula::exists(k, Formula::Eq(k, l).and(phi))
}

/// Splits `θ → φ` into `(θ, φ)`.
pub fn match_imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Or(a, b) => match a.as_ref() {
            Formula::Neg(theta) => Some((theta, b)),
            _ => None,
        },
        _ => None,
    }
}

/// Recovers `(θ, φ)` from an expanded `θ ⇒ φ`, checking the whole shape.
pub fn match_strong_imp(m: &DeMorganAlgebra, f: &Formula) -> Option<(Formula, Formula)> {
    // The first conjunct is `γ_{r0} φ → (γ_{q0} θ ∨ …)`.
    let mut first = f;
    while let Formula::And(a, _) = first {
        first = a;
    }
    let (lhs, rhs) = match_imp(first)?;
    let Formula::Gamma(_, phi) = lhs else {
        return None;
    };
    let mut d = rhs;
    while let Formula::Or(a, _) = d {
        d = a;
    }
    let Formula::Gamma(_, theta) = d else {
        return None;
    };
    let (theta, phi) = (theta.as_ref().clone(), phi.as_ref().clone());
    (strong_imp(m, theta.clone(), phi.clone()) == *f).then_some((theta, phi))
}

/// Recovers `(θ, φ)` from an expanded `θ ⇔ φ`.
pub fn match_iff(m: &DeMorganAlgebra, f: &Formula) -> Option<(Formula, Formula)> {
    let Formula::And(a, _) = f else { return None };
    let (theta, phi) = match_strong_imp(m, a)?;
    (iff(m, theta.clone(), phi.clone()) == *f).then_some((theta, phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strong_imp_has_one_conjunct_per_value() {
        let b2 = DeMorganAlgebra::b2();
        let f = strong_imp(&b2, Formula::rel("P", &[0]), Formula::rel("R", &[0]));
        let mut n = 1;
        let mut g = &f;
        while let Formula::And(a, _) = g {
            n += 1;
            g = a;
        }
        assert_eq!(n, 2);
    }

    #[test]
    fn matchers_invert_builders() {
        let four = DeMorganAlgebra::four();
        let (t, p) = (
            Formula::rel("P", &[0]),
            Formula::exists(1, Formula::rel("R", &[0, 1])),
        );
        let si = strong_imp(&four, t.clone(), p.clone());
        assert_eq!(match_strong_imp(&four, &si), Some((t.clone(), p.clone())));
        assert_eq!(
            match_iff(&four, &iff(&four, t.clone(), p.clone())),
            Some((t.clone(), p.clone()))
        );
        assert_eq!(match_strong_imp(&four, &imp(t, p)), None);
    }

    #[test]
    fn empty_restriction_is_false() {
        let k3 = DeMorganAlgebra::k3();
        assert_eq!(
            q_restrict(&k3, Formula::rel("P", &[0]), &[]),
            Formula::Const(k3.zero())
        );
        assert_eq!(big_and(&k3, []), Formula::Const(k3.one()));
        let one = k3.one();
        assert_eq!(
            q_restrict(&k3, Formula::rel("P", &[0]), &[one]),
            Formula::gamma(one, Formula::rel("P", &[0]))
        );
    }
}
