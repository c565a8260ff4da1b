//! Contraction-free backward search for propositional IL and minimal logic.
//!
//! The left-implication rule is split by the shape of the implication's own
//! antecedent, which removes the need for contraction and makes the search
//! terminate on every input without loop checks. In minimal mode the
//! absurdity rules are dropped and `false` behaves as an ordinary atom.
//!
//! The search runs over hash-consed formula ids with the antecedent kept as
//! a sorted multiset; rules fire on the first applicable formula in that
//! canonical order, choice points are tried in the documented order (left
//! disjunct before right, nested-implication principals in canonical
//! order), and failed sequents are cached for the duration of the call, so
//! the proof returned for a goal is deterministic.

use std::collections::HashSet;

use crate::formula::Formula;
use crate::proof::{ProofNode, Rule, Sequent};

use super::intern::{contains, insert_sorted, remove_sorted, Id, Interner, Node, FALSUM};

pub(super) fn prove(goal: &Formula, minimal: bool) -> Option<ProofNode> {
    let mut prover = Prover {
        interner: Interner::new(),
        minimal,
        failed: HashSet::new(),
    };
    let goal = prover.interner.intern(goal);
    prover.search(&[], goal)
}

struct Prover {
    interner: Interner,
    minimal: bool,
    failed: HashSet<(Vec<Id>, Id)>,
}

impl Prover {
    fn sequent(&self, ante: &[Id], succ: Id) -> Sequent {
        Sequent::new(
            self.interner.resolve_all(ante),
            vec![self.interner.resolve(succ)],
        )
    }

    fn leaf(&self, ante: &[Id], succ: Id, rule: Rule) -> ProofNode {
        ProofNode::leaf(self.sequent(ante, succ), rule)
    }

    fn node(&self, ante: &[Id], succ: Id, rule: Rule, premises: Vec<ProofNode>) -> ProofNode {
        ProofNode {
            sequent: self.sequent(ante, succ),
            rule,
            premises,
        }
    }

    fn atomic(&self, id: Id) -> bool {
        matches!(self.interner.node(id), Node::Atom(_) | Node::Pred(..))
            || (self.minimal && id == FALSUM)
    }

    fn search(&mut self, ante: &[Id], succ: Id) -> Option<ProofNode> {
        if contains(ante, succ) {
            let principal = self.interner.resolve(succ);
            return Some(self.leaf(ante, succ, Rule::Axiom { principal }));
        }
        if !self.minimal && contains(ante, FALSUM) {
            return Some(self.leaf(ante, succ, Rule::FalsumLeft));
        }
        let key = (ante.to_vec(), succ);
        if self.failed.contains(&key) {
            return None;
        }
        let result = self.expand(ante, succ);
        if result.is_none() {
            self.failed.insert(key);
        }
        result
    }

    fn expand(&mut self, ante: &[Id], succ: Id) -> Option<ProofNode> {
        // Invertible left rules, first applicable in canonical order.
        for &f in ante {
            match self.interner.node(f) {
                Node::And(a, b) => {
                    let mut rest = remove_sorted(ante, f);
                    insert_sorted(&mut rest, a);
                    insert_sorted(&mut rest, b);
                    let premise = self.search(&rest, succ)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::AndLeft { principal }, vec![premise]));
                }
                Node::Or(a, b) => {
                    let mut left = remove_sorted(ante, f);
                    insert_sorted(&mut left, a);
                    let mut right = remove_sorted(ante, f);
                    insert_sorted(&mut right, b);
                    let p1 = self.search(&left, succ)?;
                    let p2 = self.search(&right, succ)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::OrLeft { principal }, vec![p1, p2]));
                }
                Node::Imp(a, b) => {
                    if self.atomic(a) && contains(ante, a) {
                        let mut rest = remove_sorted(ante, f);
                        insert_sorted(&mut rest, b);
                        let premise = self.search(&rest, succ)?;
                        let principal = self.interner.resolve(f);
                        return Some(self.node(
                            ante,
                            succ,
                            Rule::ImpLeftAtom { principal },
                            vec![premise],
                        ));
                    }
                    match self.interner.node(a) {
                        Node::Falsum if !self.minimal => {
                            let rest = remove_sorted(ante, f);
                            let premise = self.search(&rest, succ)?;
                            let principal = self.interner.resolve(f);
                            return Some(self.node(
                                ante,
                                succ,
                                Rule::ImpLeftFalsum { principal },
                                vec![premise],
                            ));
                        }
                        Node::And(c, d) => {
                            let inner = self.interner.imp(d, b);
                            let curried = self.interner.imp(c, inner);
                            let mut rest = remove_sorted(ante, f);
                            insert_sorted(&mut rest, curried);
                            let premise = self.search(&rest, succ)?;
                            let principal = self.interner.resolve(f);
                            return Some(self.node(
                                ante,
                                succ,
                                Rule::ImpLeftAnd { principal },
                                vec![premise],
                            ));
                        }
                        Node::Or(c, d) => {
                            let left = self.interner.imp(c, b);
                            let right = self.interner.imp(d, b);
                            let mut rest = remove_sorted(ante, f);
                            insert_sorted(&mut rest, left);
                            insert_sorted(&mut rest, right);
                            let premise = self.search(&rest, succ)?;
                            let principal = self.interner.resolve(f);
                            return Some(self.node(
                                ante,
                                succ,
                                Rule::ImpLeftOr { principal },
                                vec![premise],
                            ));
                        }
                        _ => {}
                    }
                }
                _ => {}
            }
        }

        // Invertible right rules.
        match self.interner.node(succ) {
            Node::And(a, b) => {
                let p1 = self.search(ante, a)?;
                let p2 = self.search(ante, b)?;
                let principal = self.interner.resolve(succ);
                return Some(self.node(ante, succ, Rule::AndRight { principal }, vec![p1, p2]));
            }
            Node::Imp(a, b) => {
                let mut extended = ante.to_vec();
                insert_sorted(&mut extended, a);
                let premise = self.search(&extended, b)?;
                let principal = self.interner.resolve(succ);
                return Some(self.node(ante, succ, Rule::ImpRight { principal }, vec![premise]));
            }
            _ => {}
        }

        // Choice points, tried with backtracking.
        if let Node::Or(a, b) = self.interner.node(succ) {
            if let Some(premise) = self.search(ante, a) {
                let principal = self.interner.resolve(succ);
                return Some(self.node(
                    ante,
                    succ,
                    Rule::OrRightFirst { principal },
                    vec![premise],
                ));
            }
            if let Some(premise) = self.search(ante, b) {
                let principal = self.interner.resolve(succ);
                return Some(self.node(
                    ante,
                    succ,
                    Rule::OrRightSecond { principal },
                    vec![premise],
                ));
            }
        }
        for &f in ante {
            let Node::Imp(a, b) = self.interner.node(f) else {
                continue;
            };
            let Node::Imp(_, d) = self.interner.node(a) else {
                continue;
            };
            let db = self.interner.imp(d, b);
            let mut first = remove_sorted(ante, f);
            insert_sorted(&mut first, db);
            let Some(p1) = self.search(&first, a) else {
                continue;
            };
            let mut second = remove_sorted(ante, f);
            insert_sorted(&mut second, b);
            let Some(p2) = self.search(&second, succ) else {
                continue;
            };
            let principal = self.interner.resolve(f);
            return Some(self.node(ante, succ, Rule::ImpLeftImp { principal }, vec![p1, p2]));
        }
        None
    }
}
