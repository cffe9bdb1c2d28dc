//! Structural facts about the denotation, checked on concrete structures.

use rand::Rng;
use serde_json::json;

use super::validities::{fresh_indices, instantiate, Bindings};
use super::{MStructure, SemError};
use crate::laws::{LawReport, Mode, Status};
use crate::mvalued::MValuedSet;
use crate::setalg::Space;
use crate::syntax::derived::subst;
use crate::syntax::Formula;

/// `S`-chain substitution against direct renaming: for every relation and
/// every `j ∈ window^n`, the chain of schema 14 denotes the same element as
/// `R(v_{j_0},…)`. Fresh indices are the smallest admissible ones.
pub fn check_substitution_semantics(a: &MStructure) -> Result<LawReport, SemError> {
    let d = a.window();
    let mut cases = 0u64;
    for (name, r) in a.relations() {
        let n = r.arity;
        if fresh_indices(n, &vec![0; n], d).is_none() {
            return Err(SemError::WindowTooSmall {
                needed: 2 * n,
                window: d,
            });
        }
        for code in 0..(d as u64).pow(n as u32) {
            let j: Vec<usize> = (0..n)
                .map(|i| crate::mvalued::digit(code, d as u64, i) as usize)
                .collect();
            let Some(fresh) = fresh_indices(n, &j, d) else {
                continue;
            };
            cases += 1;
            let direct = a.eval(&Formula::rel(name, &j))?;
            let mut chain = Formula::rel(name, &(0..n).collect::<Vec<_>>());
            for i in (0..n).rev() {
                chain = subst(i, fresh[i], chain);
            }
            for i in (0..n).rev() {
                chain = subst(fresh[i], j[i], chain);
            }
            if a.eval(&chain)? != direct {
                return Ok(LawReport {
                    law: "substitution chain".into(),
                    mode: Mode::Exhaustive { cases },
                    status: Status::Counterexample {
                        witness: json!({"relation": name, "j": j, "fresh": fresh}),
                    },
                });
            }
        }
    }
    Ok(LawReport {
        law: "substitution chain".into(),
        mode: Mode::Exhaustive { cases },
        status: Status::Holds,
    })
}

/// Schema 14 as a validity: the biconditional is true in `a`.
pub fn substitution_validity(a: &MStructure, b: &Bindings) -> Result<bool, SemError> {
    let f = instantiate(a.values(), 14, b)?;
    a.is_true(&f)
}

/// `k ∉ Fv(φ)` implies `(∃v_k φ)^A = φ^A`. Vacuously true otherwise.
pub fn vacuous_exists(a: &MStructure, f: &Formula, k: usize) -> Result<bool, SemError> {
    if f.free_vars().contains(&k) {
        return Ok(true);
    }
    Ok(a.eval(&Formula::exists(k, f.clone()))? == a.eval(f)?)
}

/// Extends a window element by `extra` coordinates that it does not
/// depend on.
pub fn extend_window(x: &MValuedSet, from: Space, to: Space) -> MValuedSet {
    let shift = to.dim - from.dim;
    let layers = x
        .layers
        .iter()
        .map(|l| {
            let mut out = to.empty();
            for i in l.iter() {
                let lo = i * to.base.pow(shift as u32);
                for t in 0..to.base.pow(shift as u32) {
                    out.insert(lo + t);
                }
            }
            out
        })
        .collect();
    MValuedSet { layers }
}

/// The denotation at window `d+1` is the cylinder over the one at `d`.
pub fn window_invariant(a: &MStructure, f: &Formula) -> Result<bool, SemError> {
    let wider = a.with_window(a.window() + 1)?;
    let small = a.eval(f)?;
    let big = wider.eval(f)?;
    Ok(extend_window(&small, a.algebra().space(), wider.algebra().space()) == big)
}

/// Points agreeing on `Fv(φ)` carry the same value, over `pairs` random
/// pairs.
pub fn agreement<R: Rng>(
    a: &MStructure,
    f: &Formula,
    rng: &mut R,
    pairs: usize,
) -> Result<bool, SemError> {
    let x = a.eval(f)?;
    let space = a.algebra().space();
    let fv = f.free_vars();
    for _ in 0..pairs {
        let s = rng.gen_range(0..space.size());
        let mut t = s;
        for k in (0..space.dim).filter(|k| !fv.contains(k)) {
            t = space.with_coord(t, k, rng.gen_range(0..space.base));
        }
        if a.algebra().value_at(&x, s) != a.algebra().value_at(&x, t) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demorgan::DeMorganAlgebra;
    use crate::semantics::StructureSpace;
    use crate::syntax::Signature;

    #[test]
    fn swap_and_repeat_substitutions() {
        let k3 = DeMorganAlgebra::k3();
        let space = StructureSpace::new(k3, 2, 4, &Signature::new([("R", 2)])).unwrap();
        for idx in [0, 7, 100, 6000] {
            let report = check_substitution_semantics(&space.at(idx)).unwrap();
            assert!(report.holds(), "{report:?}");
        }
    }

    #[test]
    fn small_window_is_rejected() {
        let space =
            StructureSpace::new(DeMorganAlgebra::b2(), 2, 3, &Signature::new([("R", 2)])).unwrap();
        assert!(matches!(
            check_substitution_semantics(&space.at(0)),
            Err(SemError::WindowTooSmall { .. })
        ));
    }
}
