//! Formulas of the `M`-valued first-order language.
//!
//! The AST carries only the core connectives. Derived forms (`->`, `=>`,
//! `<=>`, `A`, `G`, `Q[..]`, `S[..]`) are expanded by [`derived`] at parse
//! time, so two formulas are the same exactly when their core trees are.

pub mod dag;
pub mod derived;
mod parser;
pub mod random;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::demorgan::{DeMorganAlgebra, ElemId};

pub use parser::{parse, parse_infer};

/// Names that the parser reads as keywords and never as relations.
pub const RESERVED: [&str; 3] = ["E", "A", "G"];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Rel { name: String, args: Vec<usize> },
    Eq(usize, usize),
    Const(ElemId),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(usize, Box<Formula>),
    Gamma(ElemId, Box<Formula>),
}

impl Formula {
    pub fn rel(name: &str, args: &[usize]) -> Self {
        Formula::Rel {
            name: name.into(),
            args: args.to_vec(),
        }
    }
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Formula::Neg(Box::new(self))
    }
    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }
    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }
    pub fn exists(k: usize, body: Formula) -> Self {
        Formula::Exists(k, Box::new(body))
    }
    pub fn gamma(p: ElemId, body: Formula) -> Self {
        Formula::Gamma(p, Box::new(body))
    }

    /// Relational, equality and `∃`-rooted formulas.
    pub fn is_prime(&self) -> bool {
        matches!(
            self,
            Formula::Rel { .. } | Formula::Eq(..) | Formula::Exists(..)
        )
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<usize>) {
        match self {
            Formula::Rel { args, .. } => out.extend(args.iter().copied()),
            Formula::Eq(j, k) => {
                out.insert(*j);
                out.insert(*k);
            }
            Formula::Const(_) => {}
            Formula::Neg(a) | Formula::Gamma(_, a) => a.collect_free(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Exists(k, a) => {
                let mut inner = BTreeSet::new();
                a.collect_free(&mut inner);
                inner.remove(k);
                out.extend(inner);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Largest variable index occurring anywhere, bound or free.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Rel { args, .. } => args.iter().copied().max(),
            Formula::Eq(j, k) => Some(*j.max(k)),
            Formula::Const(_) => None,
            Formula::Neg(a) | Formula::Gamma(_, a) => a.max_var(),
            Formula::And(a, b) | Formula::Or(a, b) => a.max_var().max(b.max_var()),
            Formula::Exists(k, a) => Some(a.max_var().map_or(*k, |m| m.max(*k))),
        }
    }

    /// Maximal prime subformulas in order of first occurrence. The scan
    /// does not descend below a prime.
    pub fn prime_subformulas(&self) -> Vec<Formula> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.collect_primes(&mut seen, &mut out);
        out
    }

    fn collect_primes<'a>(&'a self, seen: &mut HashSet<&'a Formula>, out: &mut Vec<Formula>) {
        match self {
            f if f.is_prime() => {
                if seen.insert(f) {
                    out.push(f.clone());
                }
            }
            Formula::Const(_) => {}
            Formula::Neg(a) | Formula::Gamma(_, a) => a.collect_primes(seen, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_primes(seen, out);
                b.collect_primes(seen, out);
            }
            _ => unreachable!("primes handled above"),
        }
    }

    /// Relation names with the arities they are used at.
    pub fn relations(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.visit(&mut |f| {
            if let Formula::Rel { name, args } = f {
                out.insert(name.clone(), args.len());
            }
        });
        out
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Neg(a) | Formula::Gamma(_, a) | Formula::Exists(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// Core-syntax text; labels come from `m`.
    pub fn print(&self, m: &DeMorganAlgebra) -> String {
        let mut s = String::new();
        self.write_to(m, &mut s);
        s
    }

    fn write_to(&self, m: &DeMorganAlgebra, s: &mut String) {
        match self {
            Formula::Rel { name, args } => {
                s.push_str(name);
                if !args.is_empty() {
                    s.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            s.push(',');
                        }
                        let _ = write!(s, "v{a}");
                    }
                    s.push(')');
                }
            }
            Formula::Eq(j, k) => {
                let _ = write!(s, "v{j} = v{k}");
            }
            Formula::Const(p) => {
                let _ = write!(s, "t[{}]", m.label(*p));
            }
            Formula::Neg(a) => {
                s.push('~');
                a.write_to(m, s);
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                s.push('(');
                a.write_to(m, s);
                s.push_str(if matches!(self, Formula::And(..)) {
                    " & "
                } else {
                    " | "
                });
                b.write_to(m, s);
                s.push(')');
            }
            Formula::Exists(k, a) => {
                let _ = write!(s, "E v{k} . ");
                a.write_to(m, s);
            }
            Formula::Gamma(p, a) => {
                let _ = write!(s, "g[{}] ", m.label(*p));
                a.write_to(m, s);
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("at {pos}: unknown relation `{name}`")]
    UnknownRelation { pos: usize, name: String },
    #[error("at {pos}: `{name}` has arity {expected}, used with {found} arguments")]
    Arity {
        pos: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("at {pos}: unknown element label `{label}`")]
    UnknownLabel { pos: usize, label: String },
    #[error("at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// Relation symbols and their arities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub relations: BTreeMap<String, usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("relation `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("`{0}` is not a valid relation name")]
    BadName(String),
    #[error("invalid signature JSON: {0}")]
    Json(String),
}

impl Signature {
    pub fn new<'a>(rels: impl IntoIterator<Item = (&'a str, usize)>) -> Self {
        Signature {
            relations: rels.into_iter().map(|(n, a)| (n.to_string(), a)).collect(),
        }
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    /// Checks a declared signature. Zero-ary symbols only arise from
    /// inference, never from a file.
    pub fn validate(&self) -> Result<(), SignatureError> {
        for (name, &arity) in &self.relations {
            if !is_ident(name) || RESERVED.contains(&name.as_str()) {
                return Err(SignatureError::BadName(name.clone()));
            }
            if arity == 0 {
                return Err(SignatureError::ZeroArity(name.clone()));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, SignatureError> {
        let sig: Signature =
            serde_json::from_str(text).map_err(|e| SignatureError::Json(e.to_string()))?;
        sig.validate()?;
        Ok(sig)
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_clauses() {
        let m = DeMorganAlgebra::k3();
        assert!(Formula::Const(m.one()).free_vars().is_empty());
        assert_eq!(Formula::Eq(2, 5).free_vars(), BTreeSet::from([2, 5]));
        let f = Formula::exists(1, Formula::rel("R", &[0, 1]));
        assert_eq!(f.free_vars(), BTreeSet::from([0]));
        let g = Formula::gamma(m.one(), Formula::rel("R", &[3]));
        assert_eq!(g.free_vars(), BTreeSet::from([3]));
    }

    #[test]
    fn primes_stop_at_exists() {
        let r0 = Formula::rel("R", &[0]);
        let s1 = Formula::rel("S", &[1]);
        let inner = Formula::exists(0, r0.clone().and(s1.clone()));
        assert_eq!(inner.prime_subformulas(), vec![inner.clone()]);
        let f = Formula::exists(0, r0.clone()).and(s1.clone());
        assert_eq!(
            f.prime_subformulas(),
            vec![Formula::exists(0, r0.clone()), s1]
        );
        let m = DeMorganAlgebra::k3();
        let g = Formula::gamma(m.one(), r0.clone()).or(Formula::Const(m.one()));
        assert_eq!(g.prime_subformulas(), vec![r0]);
    }

    #[test]
    fn signature_rejects_zero_arity() {
        assert!(Signature::from_json(r#"{"relations":{"R1":2}}"#).is_ok());
        assert!(Signature::from_json(r#"{"relations":{"R1":0}}"#).is_err());
        assert!(Signature::from_json(r#"{"relations":{"E":1}}"#).is_err());
    }
}
