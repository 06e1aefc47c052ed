//! Finite term universes: all terms over a signature and an ordered set of
//! generator constants up to a depth bound, hash-consed and closed under
//! subterms. The universe is the finite support on which saturation runs.

use std::collections::HashMap;

use thiserror::Error;

use crate::poset::Poset;
use crate::term::{Signature, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UniverseError {
    #[error("term universe overflow: {terms} terms exceed the cap of {cap}")]
    UniverseOverflow { terms: usize, cap: usize },
    #[error("atom `{0}` is not a generator of the universe")]
    UnknownAtom(String),
    #[error("operation `{0}` is not in the signature")]
    UnknownOp(String),
}

pub type TermId = u32;

pub const DEFAULT_TERM_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum NodeKey {
    Gen(usize),
    App(usize, Vec<TermId>),
}

#[derive(Clone, Debug)]
pub enum Node {
    Gen(usize),
    App(usize, Vec<TermId>),
}

#[derive(Clone)]
pub struct TermUniverse {
    sig: Signature,
    generators: Poset,
    depth_bound: usize,
    nodes: Vec<Node>,
    depths: Vec<u32>,
    sizes: Vec<u32>,
    index: HashMap<NodeKey, TermId>,
}

impl TermUniverse {
    /// All terms of depth at most `depth_bound` over the signature and the
    /// generator constants. Generators come first in poset order; compound
    /// terms are enumerated level by level, operations in signature order,
    /// argument tuples lexicographically by term id.
    pub fn build(
        sig: &Signature,
        generators: &Poset,
        depth_bound: usize,
        cap: usize,
    ) -> Result<TermUniverse, UniverseError> {
        let mut uni = TermUniverse {
            sig: sig.clone(),
            generators: generators.clone(),
            depth_bound,
            nodes: Vec::new(),
            depths: Vec::new(),
            sizes: Vec::new(),
            index: HashMap::new(),
        };
        for g in 0..generators.len() {
            uni.insert(Node::Gen(g), cap)?;
        }
        for level in 1..=depth_bound {
            let prev_count = uni.nodes.len() as TermId;
            for op_idx in 0..sig.ops().len() {
                let arity = sig.arity(op_idx);
                // Tuples over existing terms whose deepest argument sits at
                // level - 1, so each application lands exactly at `level`.
                let mut args = vec![0 as TermId; arity];
                uni.enumerate_tuples(op_idx, level as u32, prev_count, &mut args, 0, cap)?;
            }
        }
        Ok(uni)
    }

    fn enumerate_tuples(
        &mut self,
        op_idx: usize,
        level: u32,
        prev_count: TermId,
        args: &mut Vec<TermId>,
        pos: usize,
        cap: usize,
    ) -> Result<(), UniverseError> {
        let arity = args.len();
        if pos == arity {
            let reaches = arity == 0 && level == 1
                || args.iter().any(|&a| self.depths[a as usize] == level - 1);
            if reaches {
                self.insert(Node::App(op_idx, args.clone()), cap)?;
            }
            return Ok(());
        }
        for id in 0..prev_count {
            if self.depths[id as usize] < level {
                args[pos] = id;
                self.enumerate_tuples(op_idx, level, prev_count, args, pos + 1, cap)?;
            }
        }
        Ok(())
    }

    fn insert(&mut self, node: Node, cap: usize) -> Result<TermId, UniverseError> {
        let key = match &node {
            Node::Gen(g) => NodeKey::Gen(*g),
            Node::App(op, args) => NodeKey::App(*op, args.clone()),
        };
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        if self.nodes.len() >= cap {
            return Err(UniverseError::UniverseOverflow {
                terms: self.nodes.len() + 1,
                cap,
            });
        }
        let (depth, size) = match &node {
            Node::Gen(_) => (0, 1),
            Node::App(_, args) => (
                1 + args
                    .iter()
                    .map(|&a| self.depths[a as usize])
                    .max()
                    .unwrap_or(0),
                1 + args
                    .iter()
                    .map(|&a| self.sizes[a as usize])
                    .sum::<u32>(),
            ),
        };
        let id = self.nodes.len() as TermId;
        self.nodes.push(node);
        self.depths.push(depth);
        self.sizes.push(size);
        self.index.insert(key, id);
        Ok(id)
    }

    /// Inserts a term (and its subterms) regardless of the depth bound; used
    /// to make sure goal terms are present.
    pub fn add_term(&mut self, t: &Term, cap: usize) -> Result<TermId, UniverseError> {
        match t {
            Term::Atom(name) => {
                let g = self
                    .generators
                    .index_of(name)
                    .ok_or_else(|| UniverseError::UnknownAtom(name.clone()))?;
                self.insert(Node::Gen(g), cap)
            }
            Term::App(op, args) => {
                let op_idx = self
                    .sig
                    .op_index(op)
                    .ok_or_else(|| UniverseError::UnknownOp(op.clone()))?;
                let mut ids = Vec::with_capacity(args.len());
                for a in args {
                    ids.push(self.add_term(a, cap)?);
                }
                self.insert(Node::App(op_idx, ids), cap)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn generators(&self) -> &Poset {
        &self.generators
    }

    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    pub fn node(&self, id: TermId) -> &Node {
        &self.nodes[id as usize]
    }

    pub fn depth(&self, id: TermId) -> usize {
        self.depths[id as usize] as usize
    }

    pub fn size(&self, id: TermId) -> usize {
        self.sizes[id as usize] as usize
    }

    /// Id of the i-th generator (generators are inserted first).
    pub fn gen_id(&self, g: usize) -> TermId {
        g as TermId
    }

    pub fn lookup_app(&self, op_idx: usize, args: &[TermId]) -> Option<TermId> {
        self.index
            .get(&NodeKey::App(op_idx, args.to_vec()))
            .copied()
    }

    pub fn lookup_term(&self, t: &Term) -> Option<TermId> {
        match t {
            Term::Atom(name) => {
                let g = self.generators.index_of(name)?;
                self.index.get(&NodeKey::Gen(g)).copied()
            }
            Term::App(op, args) => {
                let op_idx = self.sig.op_index(op)?;
                let mut ids = Vec::with_capacity(args.len());
                for a in args {
                    ids.push(self.lookup_term(a)?);
                }
                self.lookup_app(op_idx, &ids)
            }
        }
    }

    /// Reconstructs the term tree.
    pub fn term_of(&self, id: TermId) -> Term {
        match self.node(id) {
            Node::Gen(g) => Term::Atom(self.generators.label(*g).to_string()),
            Node::App(op, args) => Term::App(
                self.sig.op_name(*op).to_string(),
                args.iter().map(|&a| self.term_of(a)).collect(),
            ),
        }
    }

    /// Total deterministic order used to pick class representatives: depth,
    /// then size, then the structural order on reconstructed terms.
    pub fn rep_order(&self, a: TermId, b: TermId) -> std::cmp::Ordering {
        self.depths[a as usize]
            .cmp(&self.depths[b as usize])
            .then(self.sizes[a as usize].cmp(&self.sizes[b as usize]))
            .then_with(|| self.term_of(a).cmp(&self.term_of(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Presentation;

    #[test]
    fn semilattice_universe_sizes() {
        let sl = Presentation::semilattice();
        let gens = Poset::discrete(vec!["a", "b"]);
        let u1 = TermUniverse::build(sl.signature(), &gens, 1, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(u1.len(), 2 + 4);
        let u2 = TermUniverse::build(sl.signature(), &gens, 2, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(u2.len(), 2 + 6 * 6);
    }

    #[test]
    fn constants_live_at_depth_one() {
        let pt = Presentation::pointed();
        let gens = Poset::discrete(vec!["a"]);
        let u = TermUniverse::build(pt.signature(), &gens, 1, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(u.len(), 2);
        let e = u.lookup_term(&Term::app("e", vec![])).unwrap();
        assert_eq!(u.depth(e), 1);
    }

    #[test]
    fn empty_generators_without_constants_is_empty() {
        let sl = Presentation::semilattice();
        let u = TermUniverse::build(sl.signature(), &Poset::empty(), 3, DEFAULT_TERM_CAP).unwrap();
        assert!(u.is_empty());
    }

    #[test]
    fn overflow_reported() {
        let sl = Presentation::semilattice();
        let gens = Poset::discrete(vec!["a", "b", "c"]);
        match TermUniverse::build(sl.signature(), &gens, 3, 100) {
            Err(UniverseError::UniverseOverflow { cap: 100, .. }) => {}
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(_) => panic!("expected overflow"),
        }
    }

    #[test]
    fn lookup_round_trips() {
        let sl = Presentation::semilattice();
        let gens = Poset::discrete(vec!["a", "b"]);
        let u = TermUniverse::build(sl.signature(), &gens, 2, DEFAULT_TERM_CAP).unwrap();
        for id in 0..u.len() as TermId {
            assert_eq!(u.lookup_term(&u.term_of(id)), Some(id));
        }
    }
}
