//! Random core formulas for property tests.

use rand::Rng;

use super::{Formula, Signature};
use crate::demorgan::{DeMorganAlgebra, ElemId};

/// Shape parameters for [`random_formula`].
#[derive(Clone, Debug)]
pub struct FormulaGen {
    pub relations: Vec<(String, usize)>,
    /// Variables are drawn from `v0 .. v{vars-1}`.
    pub vars: usize,
    pub depth: usize,
}

impl FormulaGen {
    pub fn new(sig: &Signature, vars: usize, depth: usize) -> Self {
        FormulaGen {
            relations: sig.relations.iter().map(|(n, &a)| (n.clone(), a)).collect(),
            vars,
            depth,
        }
    }
}

pub fn random_formula<R: Rng>(rng: &mut R, g: &FormulaGen, m: &DeMorganAlgebra) -> Formula {
    gen(rng, g, m, g.depth)
}

fn gen<R: Rng>(rng: &mut R, g: &FormulaGen, m: &DeMorganAlgebra, depth: usize) -> Formula {
    let value = |rng: &mut R| ElemId(rng.gen_range(0..m.len()) as u8);
    let var = |rng: &mut R| rng.gen_range(0..g.vars.max(1));
    let leaf = |rng: &mut R| match rng.gen_range(0..10) {
        0..=5 if !g.relations.is_empty() => {
            let (name, arity) = &g.relations[rng.gen_range(0..g.relations.len())];
            Formula::Rel {
                name: name.clone(),
                args: (0..*arity).map(|_| var(rng)).collect(),
            }
        }
        0..=7 => Formula::Eq(var(rng), var(rng)),
        _ => Formula::Const(value(rng)),
    };
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    match rng.gen_range(0..6) {
        0 => gen(rng, g, m, depth - 1).neg(),
        1 => gen(rng, g, m, depth - 1).and(gen(rng, g, m, depth - 1)),
        2 => gen(rng, g, m, depth - 1).or(gen(rng, g, m, depth - 1)),
        3 => Formula::exists(var(rng), gen(rng, g, m, depth - 1)),
        4 => Formula::gamma(value(rng), gen(rng, g, m, depth - 1)),
        _ => leaf(rng),
    }
}
