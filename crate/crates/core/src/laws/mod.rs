//! Brute-force law checking.
//!
//! A law is a predicate over a tuple of algebra elements; it returns the
//! parameters of the first failing instance, if any. [`check_law`] decides
//! between exhaustive enumeration and seeded sampling from the arity and the
//! size of the carrier, then scans the cases through an [`Exec`].

pub mod axioms;
pub mod embed;
pub mod identities;
pub mod theorems;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::demorgan::{DeMorganAlgebra, ElemId};
use crate::exec::Exec;
use crate::mvalued::{FullMAlgebra, MValuedSet};
use crate::DEFAULT_SEED;

pub use axioms::{check_mca_axioms, AXIOM_COUNT};
pub use embed::{check_embed, check_iso, CAlgebraView};
pub use identities::{check_boolean_identity_1, check_boolean_identity_2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive { cases: u64 },
    Sampled { n: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    Holds,
    Counterexample { witness: Value },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub mode: Mode,
    pub status: Status,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Case budget shared by all drivers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Enumerate every tuple when there are at most this many.
    pub exhaustive_limit: u64,
    /// Unary laws stay exhaustive up to this many elements.
    pub unary_limit: u64,
    /// Tuples drawn when enumeration is out of reach.
    pub samples: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exhaustive_limit: 1 << 16,
            unary_limit: 1 << 20,
            samples: 10_000,
            seed: DEFAULT_SEED,
        }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget {
            seed,
            ..Self::default()
        }
    }

    /// Exhaustive case count for `count^arity`, if within budget.
    pub fn exhaustive_cases(&self, count: Option<u64>, arity: u32) -> Option<u64> {
        let cases = count?.checked_pow(arity)?;
        let limit = if arity <= 1 {
            self.unary_limit.max(self.exhaustive_limit)
        } else {
            self.exhaustive_limit
        };
        (cases <= limit).then_some(cases)
    }
}

/// The operations a law checker needs, over an enumerable carrier.
pub trait LawAlgebra: Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn values(&self) -> &DeMorganAlgebra;
    fn dim(&self) -> usize;
    /// Carrier size, `None` when it does not fit `u64`.
    fn element_count(&self) -> Option<u64>;
    fn element(&self, idx: u64) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn unit(&self, p: ElemId) -> Self::Elem;
    fn cyl(&self, k: usize, a: &Self::Elem) -> Self::Elem;
    fn diag(&self, k: usize, l: usize) -> Self::Elem;
    fn delta(&self, p: ElemId, a: &Self::Elem) -> Self::Elem;
    fn describe(&self, a: &Self::Elem) -> Value;

    /// Random element, uniform over the carrier when it is enumerable.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

impl LawAlgebra for FullMAlgebra {
    type Elem = MValuedSet;

    fn values(&self) -> &DeMorganAlgebra {
        FullMAlgebra::values(self)
    }
    fn dim(&self) -> usize {
        FullMAlgebra::dim(self)
    }
    fn element_count(&self) -> Option<u64> {
        FullMAlgebra::element_count(self)
    }
    fn element(&self, idx: u64) -> MValuedSet {
        self.element_at(idx)
    }
    fn join(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.mjoin(a, b)
    }
    fn meet(&self, a: &MValuedSet, b: &MValuedSet) -> MValuedSet {
        self.mmeet(a, b)
    }
    fn neg(&self, a: &MValuedSet) -> MValuedSet {
        self.mneg(a)
    }
    fn unit(&self, p: ElemId) -> MValuedSet {
        FullMAlgebra::unit(self, p)
    }
    fn cyl(&self, k: usize, a: &MValuedSet) -> MValuedSet {
        self.mcyl_unchecked(k, a)
    }
    fn diag(&self, k: usize, l: usize) -> MValuedSet {
        self.mdiag(k, l)
            .expect("law drivers stay inside the window")
    }
    fn delta(&self, p: ElemId, a: &MValuedSet) -> MValuedSet {
        self.mdelta(p, a)
    }
    fn describe(&self, a: &MValuedSet) -> Value {
        serde_json::to_value(self.to_json(a)).expect("element JSON is plain data")
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> MValuedSet {
        let n = FullMAlgebra::values(self).len();
        let draws: Vec<u8> = (0..self.space().size())
            .map(|_| rng.gen_range(0..n) as u8)
            .collect();
        self.from_point_values(|i| ElemId(draws[i]))
    }
}

/// Runs one law. `stream` separates the random streams of different laws
/// sharing a seed.
pub fn check_law<A, F>(
    alg: &A,
    law: &str,
    arity: u32,
    budget: &Budget,
    exec: Exec,
    stream: u64,
    pred: F,
) -> LawReport
where
    A: LawAlgebra,
    F: Fn(&A, &[A::Elem]) -> Option<Value> + Sync + Send,
{
    let witness = |indices: Option<Vec<u64>>, tuple: &[A::Elem], params: Value| {
        json!({
            "indices": indices,
            "elements": tuple.iter().map(|e| alg.describe(e)).collect::<Vec<_>>(),
            "params": params,
        })
    };
    if let Some(cases) = budget.exhaustive_cases(alg.element_count(), arity) {
        let count = alg.element_count().unwrap_or(1);
        let found = exec.find_first(cases, |case| {
            let idx: Vec<u64> = (0..arity).map(|i| case / count.pow(i) % count).collect();
            let tuple: Vec<A::Elem> = idx.iter().map(|&i| alg.element(i)).collect();
            pred(alg, &tuple).map(|params| witness(Some(idx), &tuple, params))
        });
        return LawReport {
            law: law.into(),
            mode: Mode::Exhaustive { cases },
            status: status(found),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    rng.set_stream(stream);
    let tuples: Vec<Vec<A::Elem>> = (0..budget.samples)
        .map(|_| (0..arity).map(|_| alg.sample(&mut rng)).collect())
        .collect();
    let found = exec.find_first_in(&tuples, |_, tuple| {
        pred(alg, tuple).map(|params| witness(None, tuple, params))
    });
    LawReport {
        law: law.into(),
        mode: Mode::Sampled {
            n: budget.samples,
            seed: budget.seed,
        },
        status: status(found),
    }
}

fn status(found: Option<Value>) -> Status {
    match found {
        None => Status::Holds,
        Some(witness) => Status::Counterexample { witness },
    }
}

/// Folds a nonempty family with `op`; an empty family gives `empty`.
pub(crate) fn fold_or<T>(
    items: impl IntoIterator<Item = T>,
    empty: T,
    op: impl Fn(T, T) -> T,
) -> T {
    let mut it = items.into_iter();
    match it.next() {
        None => empty,
        Some(first) => it.fold(first, op),
    }
}
