//! The two Boolean identities behind the cylindric axioms of `M(B)`, checked
//! on random families of subsets of a small point set.
//!
//! Families indexed by `M` are carried as [`MElement`]s over the
//! one-dimensional space on the point set, so the lifted meet and the sup
//! formula of the construction do the bookkeeping.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{LawReport, Mode, Status};
use crate::demorgan::DeMorganAlgebra;
use crate::exec::Exec;
use crate::mvalued::{MAlgebra, MElement, MError};
use crate::setalg::{PointSet, Space};

type Family = MElement<PointSet>;

fn random_family(rng: &mut ChaCha8Rng, n_values: usize, points: usize) -> Family {
    let layers = (0..n_values)
        .map(|_| PointSet::from_mask(points, rng.gen::<u64>()))
        .collect();
    MElement { layers }
}

fn random_partition(rng: &mut ChaCha8Rng, n_values: usize, points: usize) -> Family {
    let mut layers = vec![PointSet::empty(points); n_values];
    for s in 0..points {
        layers[rng.gen_range(0..n_values)].insert(s);
    }
    MElement { layers }
}

fn family_json(f: &Family) -> Value {
    json!(f
        .layers
        .iter()
        .map(|l| l.iter().collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn run<F>(name: &str, trials: u64, seed: u64, stream: u64, exec: Exec, case: F) -> LawReport
where
    F: Fn(&mut ChaCha8Rng) -> Option<Value> + Sync + Send,
{
    // Each trial gets its own stream so results do not depend on scheduling.
    let found = exec.find_first(trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream << 32 | t);
        case(&mut rng).map(|w| json!({"trial": t, "case": w}))
    });
    LawReport {
        law: name.into(),
        mode: Mode::Sampled { n: trials, seed },
        status: match found {
            None => Status::Holds,
            Some(witness) => Status::Counterexample { witness },
        },
    }
}

fn setup(m: &DeMorganAlgebra, points: usize) -> Result<MAlgebra<Space>, MError> {
    Ok(MAlgebra::new(m.clone(), Space::new(points, 1)?))
}

/// `V(U')_p = Σ_{r·t=p} V(U)_r · W_t`, where `U'_q = Σ_{r·t=q} U_r · W_t`,
/// `W` is a partition and `V` is the sup formula.
pub fn check_boolean_identity_1(
    m: &DeMorganAlgebra,
    points: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<LawReport, MError> {
    let alg = setup(m, points)?;
    let n = m.len();
    Ok(run("boolean identity 1", trials, seed, 1, exec, |rng| {
        let u = random_family(rng, n, points);
        let w = random_partition(rng, n, points);
        identity_1_mismatch(&alg, &u, &w)
            .map(|p| json!({"p": m.label(p), "U": family_json(&u), "W": family_json(&w)}))
    }))
}

/// First `p` where the two sides of identity 1 differ.
pub fn identity_1_mismatch(
    alg: &MAlgebra<Space>,
    u: &Family,
    w: &Family,
) -> Option<crate::demorgan::ElemId> {
    let lhs = alg.sup_layers(&alg.mmeet(u, w).layers);
    let rhs = alg.mmeet(&alg.sup_layers(&u.layers), w);
    alg.values()
        .elements()
        .find(|&p| lhs.layer(p) != rhs.layer(p))
}

/// `Σ_{q≤p} V(Y)_q = (Σ_{q≤p} Y_q) · Π_{q≰p} -Y_q`.
pub fn check_boolean_identity_2(
    m: &DeMorganAlgebra,
    points: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<LawReport, MError> {
    let alg = setup(m, points)?;
    let n = m.len();
    Ok(run("boolean identity 2", trials, seed, 2, exec, |rng| {
        let y = random_family(rng, n, points);
        identity_2_mismatch(&alg, &y).map(|p| json!({"p": m.label(p), "Y": family_json(&y)}))
    }))
}

pub fn identity_2_mismatch(alg: &MAlgebra<Space>, y: &Family) -> Option<crate::demorgan::ElemId> {
    let m = alg.values();
    let v = alg.sup_layers(&y.layers);
    let space = *alg.base();
    m.elements().find(|&p| {
        let mut lhs = space.empty();
        let mut below = space.empty();
        let mut outside = space.full();
        for q in m.elements() {
            if m.leq(q, p) {
                lhs.union_with(v.layer(q));
                below.union_with(y.layer(q));
            } else {
                outside.intersect_with(&y.layer(q).complement());
            }
        }
        lhs != below.intersection(&outside)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_partition_collapses_identity_1() {
        let m = DeMorganAlgebra::four();
        let alg = setup(&m, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = alg.unit(m.one());
        for _ in 0..50 {
            let u = random_family(&mut rng, 4, 4);
            let v = alg.sup_layers(&u.layers);
            assert_eq!(alg.mmeet(&v, &w), v);
            assert_eq!(identity_1_mismatch(&alg, &u, &w), None);
        }
    }

    #[test]
    fn empty_family_identity_2() {
        let m = DeMorganAlgebra::k3();
        let alg = setup(&m, 4).unwrap();
        let y = MElement {
            layers: vec![PointSet::empty(4); 3],
        };
        assert_eq!(identity_2_mismatch(&alg, &y), None);
    }

    #[test]
    fn identities_hold_on_small_runs() {
        for m in [
            DeMorganAlgebra::b2(),
            DeMorganAlgebra::k3(),
            DeMorganAlgebra::four(),
        ] {
            assert!(check_boolean_identity_1(&m, 4, 200, 3, Exec::default())
                .unwrap()
                .holds());
            assert!(check_boolean_identity_2(&m, 4, 200, 3, Exec::default())
                .unwrap()
                .holds());
        }
    }
}
