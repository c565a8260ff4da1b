//! Hash-consed formula representation used by the propositional and modal
//! search cores. Desugared formulas (no `~`, `<->` or `<>` nodes) intern to
//! integer ids with structural sharing, making sequent hashing and equality
//! cheap; proofs are reconstructed into `Formula` trees only on success.

use std::collections::HashMap;

use crate::formula::Formula;

pub(super) type Id = u32;

/// Absurdity is always the first interned node.
pub(super) const FALSUM: Id = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(super) enum Node {
    Falsum,
    Atom(u32),
    Pred(u32, u32),
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
    BoxOp(Id),
}

pub(super) struct Interner {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    names: Vec<String>,
    name_index: HashMap<String, u32>,
}

impl Interner {
    pub(super) fn new() -> Self {
        let mut i = Interner {
            nodes: Vec::new(),
            index: HashMap::new(),
            names: Vec::new(),
            name_index: HashMap::new(),
        };
        let id = i.add(Node::Falsum);
        debug_assert_eq!(id, FALSUM);
        i
    }

    fn add(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    fn name(&mut self, s: &str) -> u32 {
        if let Some(&i) = self.name_index.get(s) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(s.to_string());
        self.name_index.insert(s.to_string(), i);
        i
    }

    pub(super) fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    pub(super) fn imp(&mut self, a: Id, b: Id) -> Id {
        self.add(Node::Imp(a, b))
    }

    /// Intern a desugared formula. Panics on `~`, `<->`, `<>` or quantifier
    /// nodes; the callers desugar first and stay propositional or modal.
    pub(super) fn intern(&mut self, f: &Formula) -> Id {
        match f {
            Formula::Falsum => FALSUM,
            Formula::Atom(a) => {
                let n = self.name(a);
                self.add(Node::Atom(n))
            }
            Formula::Pred(p, x) => {
                let p = self.name(p);
                let x = self.name(x);
                self.add(Node::Pred(p, x))
            }
            Formula::And(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                self.add(Node::And(a, b))
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                self.add(Node::Or(a, b))
            }
            Formula::Imp(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                self.add(Node::Imp(a, b))
            }
            Formula::Box(a) => {
                let a = self.intern(a);
                self.add(Node::BoxOp(a))
            }
            other => panic!("cannot intern {other:?}: callers desugar first"),
        }
    }

    pub(super) fn resolve(&self, id: Id) -> Formula {
        match self.node(id) {
            Node::Falsum => Formula::Falsum,
            Node::Atom(n) => Formula::atom(self.names[n as usize].clone()),
            Node::Pred(p, x) => Formula::pred(
                self.names[p as usize].clone(),
                self.names[x as usize].clone(),
            ),
            Node::And(a, b) => Formula::and(self.resolve(a), self.resolve(b)),
            Node::Or(a, b) => Formula::or(self.resolve(a), self.resolve(b)),
            Node::Imp(a, b) => Formula::imp(self.resolve(a), self.resolve(b)),
            Node::BoxOp(a) => Formula::boxed(self.resolve(a)),
        }
    }

    pub(super) fn resolve_all(&self, ids: &[Id]) -> Vec<Formula> {
        ids.iter().map(|&id| self.resolve(id)).collect()
    }
}

/// Insert into a sorted multiset.
pub(super) fn insert_sorted(v: &mut Vec<Id>, id: Id) {
    let pos = v.partition_point(|&x| x < id);
    v.insert(pos, id);
}

/// Insert into a sorted set; returns false when already present.
pub(super) fn insert_set(v: &mut Vec<Id>, id: Id) -> bool {
    match v.binary_search(&id) {
        Ok(_) => false,
        Err(pos) => {
            v.insert(pos, id);
            true
        }
    }
}

pub(super) fn contains(v: &[Id], id: Id) -> bool {
    v.binary_search(&id).is_ok()
}

pub(super) fn remove_sorted(v: &[Id], id: Id) -> Vec<Id> {
    let mut out = v.to_vec();
    if let Ok(pos) = out.binary_search(&id) {
        out.remove(pos);
    }
    out
}
