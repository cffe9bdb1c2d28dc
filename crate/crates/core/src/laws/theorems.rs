//! Structure theorems about `M(B)` over a set algebra, as law checks.

use serde_json::{json, Value};

use super::{check_law, Budget, LawReport};
use crate::demorgan::ElemId;
use crate::exec::Exec;
use crate::mvalued::{FullMAlgebra, MValuedSet};

fn ok(b: bool, params: Value) -> Option<Value> {
    (!b).then_some(params)
}

/// `E_κ L = C_κ L` for every element and coordinate.
pub fn check_ecyl(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    check_law(alg, "E_k = C_k", 1, budget, exec, 201, |a, xs| {
        (0..a.dim()).find_map(|k| match a.ecyl(k, &xs[0]) {
            Ok(e) => ok(e == a.mcyl_unchecked(k, &xs[0]), json!({"k": k})),
            Err(err) => Some(json!({"k": k, "error": err.to_string()})),
        })
    })
}

/// `a ⊔ b = b` iff `b^p ≤ Σ_{q≤p} a^q` for every `p`.
pub fn check_leq_characterization(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    check_law(
        alg,
        "order characterization",
        2,
        budget,
        exec,
        202,
        |a, xs| {
            let (x, y) = (&xs[0], &xs[1]);
            ok(
                a.mleq(x, y) == a.mleq_layerwise(x, y),
                json!({"join_form": a.mleq(x, y)}),
            )
        },
    )
}

/// `C_κ(L ⊔ K) = C_κ L ⊔ C_κ K`.
pub fn check_cyl_additive(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    check_law(alg, "C_k additive", 2, budget, exec, 203, |a, xs| {
        (0..a.dim()).find_map(|k| {
            let lhs = a.mcyl_unchecked(k, &a.mjoin(&xs[0], &xs[1]));
            let rhs = a.mjoin(&a.mcyl_unchecked(k, &xs[0]), &a.mcyl_unchecked(k, &xs[1]));
            ok(lhs == rhs, json!({"k": k}))
        })
    })
}

/// `L ≤ K` implies `C_κ L ≤ C_κ K`.
pub fn check_cyl_monotone(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    check_law(alg, "C_k monotone", 2, budget, exec, 204, |a, xs| {
        if !a.mleq(&xs[0], &xs[1]) {
            return None;
        }
        (0..a.dim()).find_map(|k| {
            ok(
                a.mleq(&a.mcyl_unchecked(k, &xs[0]), &a.mcyl_unchecked(k, &xs[1])),
                json!({"k": k}),
            )
        })
    })
}

/// `a ⊔ a = a` and `≤` is a partial order.
pub fn check_order_laws(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    check_law(
        alg,
        "idempotence and order",
        2,
        budget,
        exec,
        205,
        |a, xs| {
            let (x, y) = (&xs[0], &xs[1]);
            if a.mjoin(x, x) != *x {
                return Some(json!({"law": "idempotence"}));
            }
            ok(
                !(a.mleq(x, y) && a.mleq(y, x)) || x == y,
                json!({"law": "antisymmetry"}),
            )
        },
    )
}

fn in_a_star(alg: &FullMAlgebra, x: &MValuedSet) -> bool {
    alg.values()
        .elements()
        .filter(|&p| !alg.values().is_classical(p))
        .all(|p| x.layer(p).is_empty())
}

/// Items 1 to 12 of the theorem on `A* = {a : a^p = 0 for p ∉ {0,1}}`.
///
/// Pairs range over `A*` itself: element `i` is the crisp lift of the
/// `i`-th subset of `U^d`. Item 3 is checked separately over all elements.
pub fn check_a_star(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    let m = alg.values().clone();
    let (zero, one) = (m.zero(), m.one());
    let space = alg.space();
    let n = space.size();
    assert!(n <= 16, "A* enumeration needs |U^d| <= 16");
    let count = 1u64 << n;
    let star = |i: u64| alg.crisp(&crate::setalg::PointSet::from_mask(n, i));
    let view = StarView {
        alg,
        count,
        star: &star,
    };
    let r = check_law(&view, "A* theorem", 2, budget, exec, 206, |_, xs| {
        let (a, b) = (&xs[0], &xs[1]);
        let (a0, a1, b0, b1) = (a.layer(zero), a.layer(one), b.layer(zero), b.layer(one));
        let imp = |x: &MValuedSet, y: &MValuedSet| alg.mimp(x, y);
        let join = alg.mjoin(a, b);
        let meet = alg.mmeet(a, b);
        let neg = alg.mneg(a);
        let iff = alg.mmeet(&imp(a, b), &imp(b, a));
        let mut closed = vec![
            join.clone(),
            meet.clone(),
            neg.clone(),
            imp(a, b),
            iff.clone(),
        ];
        for k in 0..space.dim {
            let c = alg.mcyl_unchecked(k, a);
            let cd = alg.mq(k, a).unwrap();
            closed.push(c.clone());
            closed.push(cd.clone());
            // 9, 10
            if *c.layer(one) != space.cyl(k, a1).unwrap()
                || *c.layer(zero) != space.inner_cyl(k, a0).unwrap()
            {
                return Some(json!({"item": 9, "k": k}));
            }
            if *cd.layer(one) != space.inner_cyl(k, a1).unwrap()
                || *cd.layer(zero) != space.cyl(k, a0).unwrap()
            {
                return Some(json!({"item": 10, "k": k}));
            }
            for l in 0..space.dim {
                if !in_a_star(alg, &alg.mdiag(k, l).unwrap()) {
                    return Some(json!({"item": 4, "k": k, "l": l}));
                }
            }
        }
        if !closed.iter().all(|x| in_a_star(alg, x)) {
            return Some(json!({"item": 1}));
        }
        if *a0 != a1.complement() {
            return Some(json!({"item": 2}));
        }
        if (a == b) != (a1 == b1) || (a == b) != (a0 == b0) {
            return Some(json!({"item": 5}));
        }
        if *join.layer(one) != a1.union(b1) || *join.layer(zero) != a0.intersection(b0) {
            return Some(json!({"item": 6}));
        }
        if *meet.layer(one) != a1.intersection(b1) || *meet.layer(zero) != a0.union(b0) {
            return Some(json!({"item": 7}));
        }
        if *neg.layer(one) != a1.complement() || *neg.layer(zero) != a0.complement() {
            return Some(json!({"item": 8}));
        }
        if *imp(a, b).layer(one) != a1.complement().union(b1) {
            return Some(json!({"item": 11}));
        }
        // Item 12 is compared against the lifted biconditional
        // `(-a + b)·(-b + a)`; the printed right-hand side simplifies to
        // `-a + b` and fails whenever `b < a`.
        let bicond = a1
            .complement()
            .union(b1)
            .intersection(&b1.complement().union(a1));
        if *iff.layer(one) != bicond {
            return Some(json!({"item": 12}));
        }
        None
    });
    if !r.holds() {
        return r;
    }
    // Item 3: δ_p a ∈ A* for every element.
    let item3 = check_law(alg, "A* theorem", 1, budget, exec, 207, |a, xs| {
        m.elements()
            .find(|&p| !in_a_star(a, &a.mdelta(p, &xs[0])))
            .map(|p| json!({"item": 3, "p": m.label(p)}))
    });
    if item3.holds() {
        r
    } else {
        item3
    }
}

/// Enumerates `A*` through the law driver.
struct StarView<'a, F> {
    alg: &'a FullMAlgebra,
    count: u64,
    star: &'a F,
}

impl<F: Fn(u64) -> MValuedSet + Sync> super::LawAlgebra for StarView<'_, F> {
    type Elem = MValuedSet;
    fn values(&self) -> &crate::demorgan::DeMorganAlgebra {
        self.alg.values()
    }
    fn dim(&self) -> usize {
        self.alg.dim()
    }
    fn element_count(&self) -> Option<u64> {
        Some(self.count)
    }
    fn element(&self, idx: u64) -> MValuedSet {
        (self.star)(idx)
    }
    fn join(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.alg.mjoin(a, b)
    }
    fn meet(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.alg.mmeet(a, b)
    }
    fn neg(&self, a: &MValuedSet) -> MValuedSet {
        self.alg.mneg(a)
    }
    fn unit(&self, p: ElemId) -> MValuedSet {
        self.alg.unit(p)
    }
    fn cyl(&self, k: usize, a: &MValuedSet) -> MValuedSet {
        self.alg.mcyl_unchecked(k, a)
    }
    fn diag(&self, k: usize, l: usize) -> MValuedSet {
        self.alg.mdiag(k, l).unwrap()
    }
    fn delta(&self, p: ElemId, a: &MValuedSet) -> MValuedSet {
        self.alg.mdelta(p, a)
    }
    fn describe(&self, a: &MValuedSet) -> Value {
        super::LawAlgebra::describe(self.alg, a)
    }
    fn sample(&self, rng: &mut rand_chacha::ChaCha8Rng) -> MValuedSet {
        use rand::Rng;
        (self.star)(rng.gen_range(0..self.count))
    }
}

/// `dim a = ⋃_p dim a^p`, and `{κ : c_κ a ≠ a} ⊆ dim a`.
pub fn check_dimension_sets(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    let space = alg.space();
    check_law(alg, "dimension sets", 1, budget, exec, 208, |a, xs| {
        let x = &xs[0];
        let dim = a.mdim(x);
        let mut layerwise: Vec<usize> = x
            .layers
            .iter()
            .flat_map(|l| space.dimension_set(l))
            .collect();
        layerwise.sort_unstable();
        layerwise.dedup();
        if dim != layerwise {
            return Some(json!({"dim": dim, "layerwise": layerwise}));
        }
        (0..a.dim())
            .find(|&k| a.mcyl_unchecked(k, x) != *x && !dim.contains(&k))
            .map(|k| json!({"moved_outside_dim": k}))
    })
}

/// In `C(A)`: `{κ : c_κ a ≠ a} ⊆ dim_A a` for crisp `a`.
pub fn check_crisp_dimension(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    let one = alg.values().one();
    check_law(
        alg,
        "crisp part dimension",
        1,
        budget,
        exec,
        209,
        |a, xs| {
            let c = a.mdelta(one, &xs[0]);
            let dim = a.mdim(&c);
            (0..a.dim())
                .find(|&k| a.mcyl_unchecked(k, &c) != c && !dim.contains(&k))
                .map(|k| json!({"k": k}))
        },
    )
}

/// Every element depends on its dimension set.
pub fn check_regularity(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    check_law(alg, "regularity", 1, budget, exec, 210, |a, xs| {
        ok(a.is_regular_element(&xs[0]), json!({}))
    })
}

/// For `M = B2`, the top layer of every operation is the set-algebra
/// operation: `M(B)` is a copy of `B`.
pub fn check_b2_projection(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> LawReport {
    let one = alg.values().one();
    let space = alg.space();
    check_law(
        alg,
        "top-layer projection",
        2,
        budget,
        exec,
        211,
        |a, xs| {
            let (x, y) = (xs[0].layer(one), xs[1].layer(one));
            if a.mjoin(&xs[0], &xs[1]).layer(one) != &x.union(y)
                || a.mneg(&xs[0]).layer(one) != &x.complement()
            {
                return Some(json!({"op": "boolean"}));
            }
            (0..a.dim()).find_map(|k| {
                let c = a.mcyl_unchecked(k, &xs[0]);
                ok(
                    *c.layer(one) == space.cyl(k, x).unwrap(),
                    json!({"op": "cyl", "k": k}),
                )
            })
        },
    )
}

/// Every structure-theorem report, in a fixed order.
pub fn check_all(alg: &FullMAlgebra, budget: &Budget, exec: Exec) -> Vec<LawReport> {
    let mut out = vec![
        check_order_laws(alg, budget, exec),
        check_leq_characterization(alg, budget, exec),
        check_cyl_additive(alg, budget, exec),
        check_cyl_monotone(alg, budget, exec),
        check_dimension_sets(alg, budget, exec),
        check_crisp_dimension(alg, budget, exec),
        check_regularity(alg, budget, exec),
    ];
    if alg.space().base <= crate::mvalued::ECYL_MAX_BASE {
        out.insert(0, check_ecyl(alg, budget, exec));
    }
    if alg.space().size() <= 16 {
        out.push(check_a_star(alg, budget, exec));
    }
    if alg.values().len() == 2 {
        out.push(check_b2_projection(alg, budget, exec));
    }
    out
}
