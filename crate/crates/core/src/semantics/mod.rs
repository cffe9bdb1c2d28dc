//! `M`-structures and the denotation `φ^A`.
//!
//! The denotation is computed in the window `U^d` rather than `U^ω`: a
//! formula whose variables are all below `d` denotes a cylinder over its
//! window value, so nothing is lost. [`props`] checks this, along with the
//! other structural facts the semantics relies on.

pub mod props;
pub mod validities;

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::demorgan::{AlgebraError, DeMorganAlgebra, ElemId};
use crate::exec::Exec;
use crate::mvalued::{digit, FullMAlgebra, MError, MValuedSet};
use crate::setalg::Space;
use crate::syntax::dag::{Dag, Node};
use crate::syntax::{Formula, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemError {
    #[error("variable v{var} is outside the window v0..v{}", .window.saturating_sub(1))]
    Window { var: usize, window: usize },
    #[error("relation `{0}` is not interpreted in the structure")]
    UndeclaredRelation(String),
    #[error("relation `{name}` has arity {expected}, used with {found} arguments")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("relation `{0}` does not partition U^n")]
    NotPartition(String),
    #[error("needs {needed} variables, window has {window}")]
    WindowTooSmall { needed: usize, window: usize },
    #[error("structure JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Validity(#[from] validities::ValidityError),
    #[error(transparent)]
    M(#[from] MError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An `M`-valued relation: the value of every tuple of `U^arity`, indexed
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub arity: usize,
    pub table: Vec<ElemId>,
}

/// An `M`-structure on `U = {0..base-1}`, evaluated in the window `U^d`.
#[derive(Clone, Debug)]
pub struct MStructure {
    alg: FullMAlgebra,
    relations: BTreeMap<String, Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub algebra: String,
    pub base: usize,
    pub window: usize,
    /// name → label → tuples carrying that value.
    pub relations: BTreeMap<String, BTreeMap<String, Vec<Vec<usize>>>>,
}

impl MStructure {
    pub fn new(values: DeMorganAlgebra, base: usize, window: usize) -> Result<Self, SemError> {
        Ok(MStructure {
            alg: FullMAlgebra::full(values, base, window)?,
            relations: BTreeMap::new(),
        })
    }

    /// A structure sharing this one's algebra and relations at another window.
    pub fn with_window(&self, window: usize) -> Result<Self, SemError> {
        let space = Space::new(self.base(), window).map_err(MError::from)?;
        Ok(MStructure {
            alg: self.alg.rebase(space),
            relations: self.relations.clone(),
        })
    }

    pub fn values(&self) -> &DeMorganAlgebra {
        self.alg.values()
    }

    pub fn algebra(&self) -> &FullMAlgebra {
        &self.alg
    }

    pub fn base(&self) -> usize {
        self.alg.space().base
    }

    pub fn window(&self) -> usize {
        self.alg.dim()
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn signature(&self) -> Signature {
        Signature {
            relations: self
                .relations
                .iter()
                .map(|(n, r)| (n.clone(), r.arity))
                .collect(),
        }
    }

    fn relation_size(&self, arity: usize) -> Result<usize, SemError> {
        Ok(Space::new(self.base(), arity).map_err(MError::from)?.size())
    }

    /// Sets `name` to the relation whose tuple with index `i` has value
    /// `table[i]`.
    pub fn set_relation(
        &mut self,
        name: &str,
        arity: usize,
        table: Vec<ElemId>,
    ) -> Result<(), SemError> {
        let n = self.relation_size(arity)?;
        if table.len() != n || table.iter().any(|p| p.idx() >= self.values().len()) {
            return Err(SemError::NotPartition(name.into()));
        }
        self.relations
            .insert(name.into(), Relation { arity, table });
        Ok(())
    }

    /// Sets `name` from a value function on tuples.
    pub fn set_relation_fn(
        &mut self,
        name: &str,
        arity: usize,
        value: impl Fn(&[usize]) -> ElemId,
    ) -> Result<(), SemError> {
        let space = Space::new(self.base(), arity).map_err(MError::from)?;
        let table = (0..space.size())
            .map(|i| value(&space.tuple_of(i)))
            .collect();
        self.set_relation(name, arity, table)
    }

    /// `P_i` as an element of `M(B)` over `U^n`.
    pub fn relation_set(&self, name: &str) -> Option<MValuedSet> {
        let r = self.relations.get(name)?;
        let alg = self.alg.rebase(Space::new(self.base(), r.arity).ok()?);
        Some(alg.from_point_values(|i| r.table[i]))
    }

    pub fn to_json(&self) -> StructureJson {
        let m = self.values();
        let relations = self
            .relations
            .iter()
            .map(|(name, r)| {
                let space = Space::new(self.base(), r.arity).expect("checked when set");
                let mut layers: BTreeMap<String, Vec<Vec<usize>>> = m
                    .elements()
                    .map(|p| (m.label(p).to_string(), Vec::new()))
                    .collect();
                for (i, p) in r.table.iter().enumerate() {
                    layers.get_mut(m.label(*p)).unwrap().push(space.tuple_of(i));
                }
                layers.retain(|_, t| !t.is_empty());
                (name.clone(), layers)
            })
            .collect();
        StructureJson {
            algebra: m.name().to_string(),
            base: self.base(),
            window: self.window(),
            relations,
        }
    }

    /// Loads a structure. `algebra` overrides the built-in named in the
    /// file. Each relation's layers must partition `U^n`.
    pub fn from_json(
        j: &StructureJson,
        algebra: Option<&DeMorganAlgebra>,
    ) -> Result<Self, SemError> {
        let m = match algebra {
            Some(m) => m.clone(),
            None => DeMorganAlgebra::builtin(&j.algebra)?,
        };
        if j.base == 0 {
            return Err(SemError::Json("base must be nonempty".into()));
        }
        let mut s = MStructure::new(m.clone(), j.base, j.window)?;
        for (name, layers) in &j.relations {
            let arity = layers
                .values()
                .flatten()
                .next()
                .map(Vec::len)
                .ok_or_else(|| SemError::NotPartition(name.clone()))?;
            let space = Space::new(j.base, arity).map_err(MError::from)?;
            let mut table = vec![None; space.size()];
            for (label, tuples) in layers {
                let p = m.id_of(label)?;
                for t in tuples {
                    if t.len() != arity {
                        return Err(SemError::Json(format!(
                            "relation `{name}` mixes tuple lengths"
                        )));
                    }
                    let i = space.index_of(t).map_err(MError::from)?;
                    if table[i].replace(p).is_some() {
                        return Err(SemError::NotPartition(name.clone()));
                    }
                }
            }
            let table = table
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| SemError::NotPartition(name.clone()))?;
            s.set_relation(name, arity, table)?;
        }
        Ok(s)
    }

    pub fn from_json_str(text: &str, algebra: Option<&DeMorganAlgebra>) -> Result<Self, SemError> {
        let j: StructureJson =
            serde_json::from_str(text).map_err(|e| SemError::Json(e.to_string()))?;
        Self::from_json(&j, algebra)
    }

    fn lift(&self, name: &str, args: &[usize]) -> Result<MValuedSet, SemError> {
        let r = self
            .relations
            .get(name)
            .ok_or_else(|| SemError::UndeclaredRelation(name.into()))?;
        if r.arity != args.len() {
            return Err(SemError::Arity {
                name: name.into(),
                expected: r.arity,
                found: args.len(),
            });
        }
        self.check_vars(args)?;
        let space = self.alg.space();
        let base = self.base();
        Ok(self.alg.from_point_values(|i| {
            let idx = args
                .iter()
                .fold(0, |acc, &a| acc * base + space.coord(i, a));
            r.table[idx]
        }))
    }

    fn check_vars(&self, vars: &[usize]) -> Result<(), SemError> {
        let window = self.window();
        match vars.iter().find(|&&v| v >= window) {
            Some(&var) => Err(SemError::Window { var, window }),
            None => Ok(()),
        }
    }

    /// Denotations of every node of `dag`, children first.
    pub fn eval_dag(&self, dag: &Dag) -> Result<Vec<MValuedSet>, SemError> {
        let a = &self.alg;
        let mut out: Vec<MValuedSet> = Vec::with_capacity(dag.len());
        for node in &dag.nodes {
            let v = match node {
                Node::Rel { name, args } => self.lift(name, args)?,
                Node::Eq(j, k) => {
                    self.check_vars(&[*j, *k])?;
                    a.mdiag(*j, *k)?
                }
                Node::Const(p) => a.unit(*p),
                Node::Neg(x) => a.mneg(&out[*x as usize]),
                Node::And(x, y) => a.mmeet(&out[*x as usize], &out[*y as usize]),
                Node::Or(x, y) => a.mjoin(&out[*x as usize], &out[*y as usize]),
                Node::Exists(k, x) => {
                    self.check_vars(&[*k])?;
                    a.mcyl(*k, &out[*x as usize])?
                }
                Node::Gamma(p, x) => a.mdelta(*p, &out[*x as usize]),
            };
            out.push(v);
        }
        Ok(out)
    }

    /// `φ^A` restricted to the window.
    pub fn eval(&self, f: &Formula) -> Result<MValuedSet, SemError> {
        let (dag, root) = Dag::of(f);
        Ok(self.eval_dag(&dag)?.swap_remove(root as usize))
    }

    /// `φ^A = U_1`.
    pub fn is_true(&self, f: &Formula) -> Result<bool, SemError> {
        Ok(self.denotes_true(&self.eval(f)?))
    }

    pub fn denotes_true(&self, x: &MValuedSet) -> bool {
        x.layer(self.values().one()).is_full()
    }

    /// `⋃_{p∈Q} (φ^A)^p` is everything.
    pub fn is_q_true(&self, f: &Formula, q: &[ElemId]) -> Result<bool, SemError> {
        Ok(self.denotes_q_true(&self.eval(f)?, q))
    }

    pub fn denotes_q_true(&self, x: &MValuedSet, q: &[ElemId]) -> bool {
        let mut acc = self.alg.space().empty();
        for p in q {
            acc.union_with(x.layer(*p));
        }
        acc.is_full()
    }

    /// Index of the first root of `dag` that is not true here.
    pub fn first_false(&self, dag: &Dag, roots: &[u32]) -> Result<Option<usize>, SemError> {
        let vals = self.eval_dag(dag)?;
        Ok(roots
            .iter()
            .position(|&r| !self.denotes_true(&vals[r as usize])))
    }

    pub fn is_model(&self, sigma: &[Formula]) -> Result<bool, SemError> {
        for f in sigma {
            if !self.is_true(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_q_model(&self, sigma: &[Formula], q: &[ElemId]) -> Result<bool, SemError> {
        for f in sigma {
            if !self.is_q_true(f, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All structures over a fixed algebra, base, window and signature.
/// Structure `idx` gives relation `r` (in name order) the table whose
/// digits, base `|M|`, are the mixed-radix digit `r` of `idx`.
#[derive(Clone, Debug)]
pub struct StructureSpace {
    template: MStructure,
    rels: Vec<(String, usize, usize)>,
}

impl StructureSpace {
    pub fn new(
        values: DeMorganAlgebra,
        base: usize,
        window: usize,
        sig: &Signature,
    ) -> Result<Self, SemError> {
        let template = MStructure::new(values, base, window)?;
        let rels = sig
            .relations
            .iter()
            .map(|(n, &a)| Ok((n.clone(), a, template.relation_size(a)?)))
            .collect::<Result<_, SemError>>()?;
        Ok(StructureSpace { template, rels })
    }

    /// Number of structures, `None` past `u64`.
    pub fn count(&self) -> Option<u64> {
        let m = self.template.values().len() as u64;
        self.rels.iter().try_fold(1u64, |acc, &(_, _, size)| {
            acc.checked_mul(m.checked_pow(u32::try_from(size).ok()?)?)
        })
    }

    pub fn at(&self, mut idx: u64) -> MStructure {
        let m = self.template.values().len() as u64;
        let mut s = self.template.clone();
        for (name, arity, size) in &self.rels {
            let count = m.pow(*size as u32);
            let sub = idx % count;
            idx /= count;
            let table = (0..*size).map(|i| ElemId(digit(sub, m, i) as u8)).collect();
            s.relations.insert(
                name.clone(),
                Relation {
                    arity: *arity,
                    table,
                },
            );
        }
        s
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> MStructure {
        let m = self.template.values().len();
        let mut s = self.template.clone();
        for (name, arity, size) in &self.rels {
            let table = (0..*size)
                .map(|_| ElemId(rng.gen_range(0..m) as u8))
                .collect();
            s.relations.insert(
                name.clone(),
                Relation {
                    arity: *arity,
                    table,
                },
            );
        }
        s
    }
}

/// Limits of the countermodel search behind [`entails`].
#[derive(Clone, Debug)]
pub struct SearchBounds {
    pub max_base: usize,
    pub window: usize,
    /// Enumerate all structures of a base size when there are at most
    /// this many; otherwise sample.
    pub exhaustive_limit: u64,
    pub samples: u64,
    pub seed: u64,
}

impl SearchBounds {
    pub fn new(max_base: usize, window: usize) -> Self {
        SearchBounds {
            max_base,
            window,
            exhaustive_limit: 1 << 16,
            samples: 1000,
            seed: crate::DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug)]
pub enum EntailVerdict {
    /// Nothing found within the bounds. This is not a proof of entailment
    /// unless every base size was searched exhaustively and the entailment
    /// is known to have small countermodels.
    NoCountermodel { checked: u64, exhaustive: bool },
    /// The first countermodel: lowest base, then lowest index.
    Countermodel {
        base: usize,
        index: u64,
        sampled: bool,
        structure: MStructure,
    },
}

/// Searches for a structure modeling `sigma` (`Q`-modeling, when `q` is
/// given) in which `phi` fails.
pub fn entails(
    values: &DeMorganAlgebra,
    sig: &Signature,
    sigma: &[Formula],
    phi: &Formula,
    q: Option<&[ElemId]>,
    bounds: &SearchBounds,
    exec: Exec,
) -> Result<EntailVerdict, SemError> {
    let mut dag = Dag::new();
    let sigma_roots: Vec<u32> = sigma.iter().map(|f| dag.add(f)).collect();
    let root = dag.add(phi);
    let holds = |s: &MStructure, x: &MValuedSet| match q {
        Some(q) => s.denotes_q_true(x, q),
        None => s.denotes_true(x),
    };
    let is_counter = |s: &MStructure| -> Result<bool, SemError> {
        let vals = s.eval_dag(&dag)?;
        Ok(sigma_roots.iter().all(|&r| holds(s, &vals[r as usize]))
            && !holds(s, &vals[root as usize]))
    };
    let mut checked = 0;
    let mut exhaustive = true;
    for base in 1..=bounds.max_base {
        let space = StructureSpace::new(values.clone(), base, bounds.window, sig)?;
        // Surface window and signature errors before the search.
        is_counter(&space.at(0))?;
        let hit = match space.count().filter(|&c| c <= bounds.exhaustive_limit) {
            Some(count) => {
                checked += count;
                exec.find_first(count, |i| {
                    is_counter(&space.at(i))
                        .unwrap_or(false)
                        .then_some((i, false))
                })
            }
            None => {
                exhaustive = false;
                checked += bounds.samples;
                let samples = sample_structures(&space, bounds.samples, bounds.seed, base as u64);
                exec.find_first_in(&samples, |i, s| {
                    is_counter(s).unwrap_or(false).then_some((i as u64, true))
                })
            }
        };
        if let Some((index, sampled)) = hit {
            let structure = if sampled {
                sample_structures(&space, index + 1, bounds.seed, base as u64)
                    .pop()
                    .unwrap()
            } else {
                space.at(index)
            };
            return Ok(EntailVerdict::Countermodel {
                base,
                index,
                sampled,
                structure,
            });
        }
    }
    Ok(EntailVerdict::NoCountermodel {
        checked,
        exhaustive,
    })
}

/// `n` structures from the seeded stream `stream`, drawn sequentially.
pub fn sample_structures(
    space: &StructureSpace,
    n: u64,
    seed: u64,
    stream: u64,
) -> Vec<MStructure> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n).map(|_| space.sample(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn existential_over_k3_example() {
        // P^1 = {0}, P^u = {1}: some witness has value 1.
        let k3 = DeMorganAlgebra::k3();
        let (u, one) = (k3.id_of("u").unwrap(), k3.one());
        let mut s = MStructure::new(k3, 2, 1).unwrap();
        s.set_relation("R", 1, vec![one, u]).unwrap();
        let f = Formula::exists(0, Formula::rel("R", &[0]));
        assert_eq!(s.eval(&f).unwrap(), s.algebra().unit(one));
    }

    #[test]
    fn window_is_enforced() {
        let s = MStructure::new(DeMorganAlgebra::b2(), 2, 2).unwrap();
        assert!(matches!(
            s.eval(&Formula::Eq(0, 2)),
            Err(SemError::Window { var: 2, window: 2 })
        ));
        assert!(matches!(
            s.eval(&Formula::rel("R", &[0])),
            Err(SemError::UndeclaredRelation(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let four = DeMorganAlgebra::four();
        let space =
            StructureSpace::new(four.clone(), 2, 2, &Signature::new([("R", 2), ("P", 1)])).unwrap();
        let s = space.at(12345);
        let j = s.to_json();
        let back = MStructure::from_json(&j, None).unwrap();
        assert_eq!(back.relations(), s.relations());
        let mut broken = j.clone();
        broken
            .relations
            .get_mut("P")
            .unwrap()
            .values_mut()
            .next()
            .unwrap()
            .clear();
        assert!(MStructure::from_json(&broken, None).is_err());
    }
}
