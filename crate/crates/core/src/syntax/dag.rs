//! Hash-consed form of a formula.
//!
//! Expanded derived connectives repeat the same subformulas many times
//! (`θ ⇔ φ` mentions each side `2|M|` times or more). Evaluators work on
//! this DAG so each distinct subformula is computed once. Children always
//! have smaller ids than their parents.

use std::collections::HashMap;

use super::Formula;
use crate::demorgan::ElemId;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Rel { name: String, args: Vec<usize> },
    Eq(usize, usize),
    Const(ElemId),
    Neg(u32),
    And(u32, u32),
    Or(u32, u32),
    Exists(usize, u32),
    Gamma(ElemId, u32),
}

#[derive(Clone, Debug, Default)]
pub struct Dag {
    pub nodes: Vec<Node>,
    index: HashMap<Node, u32>,
}

impl Dag {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds the DAG of `f` and returns it with the root id.
    pub fn of(f: &Formula) -> (Dag, u32) {
        let mut dag = Dag::new();
        let root = dag.add(f);
        (dag, root)
    }

    pub fn add(&mut self, f: &Formula) -> u32 {
        let node = match f {
            Formula::Rel { name, args } => Node::Rel {
                name: name.clone(),
                args: args.clone(),
            },
            Formula::Eq(j, k) => Node::Eq(*j, *k),
            Formula::Const(p) => Node::Const(*p),
            Formula::Neg(a) => Node::Neg(self.add(a)),
            Formula::And(a, b) => Node::And(self.add(a), self.add(b)),
            Formula::Or(a, b) => Node::Or(self.add(a), self.add(b)),
            Formula::Exists(k, a) => Node::Exists(*k, self.add(a)),
            Formula::Gamma(p, a) => Node::Gamma(*p, self.add(a)),
        };
        self.intern(node)
    }

    fn intern(&mut self, node: Node) -> u32 {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Ids of the maximal prime nodes under `root`, in first-occurrence
    /// order of a left-to-right preorder walk.
    pub fn primes(&self, root: u32) -> Vec<u32> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id as usize], true) {
                continue;
            }
            match &self.nodes[id as usize] {
                Node::Rel { .. } | Node::Eq(..) | Node::Exists(..) => out.push(id),
                Node::Const(_) => {}
                Node::Neg(a) | Node::Gamma(_, a) => stack.push(*a),
                Node::And(a, b) | Node::Or(a, b) => {
                    stack.push(*b);
                    stack.push(*a);
                }
            }
        }
        out
    }

    /// Rebuilds the tree rooted at `id`.
    pub fn formula(&self, id: u32) -> Formula {
        match &self.nodes[id as usize] {
            Node::Rel { name, args } => Formula::Rel {
                name: name.clone(),
                args: args.clone(),
            },
            Node::Eq(j, k) => Formula::Eq(*j, *k),
            Node::Const(p) => Formula::Const(*p),
            Node::Neg(a) => self.formula(*a).neg(),
            Node::And(a, b) => self.formula(*a).and(self.formula(*b)),
            Node::Or(a, b) => self.formula(*a).or(self.formula(*b)),
            Node::Exists(k, a) => Formula::exists(*k, self.formula(*a)),
            Node::Gamma(p, a) => Formula::gamma(*p, self.formula(*a)),
        }
    }
}
