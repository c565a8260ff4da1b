//! Multi-succedent backward search for propositional S4.
//!
//! Sequents are sets over hash-consed formula ids. The classical rules are
//! applied invertibly in canonical order; a boxed antecedent is unfolded at
//! most once per world segment; when a sequent is saturated the search jumps
//! through each boxed succedent in turn, carrying the boxed antecedents
//! along. A jump to a sequent already on the current path is skipped, which
//! makes the search terminate; since sequents range over the finite
//! subformula closure this yields a decision procedure. Failed sequents are
//! cached together with the jump path they failed under only when that path
//! is empty, so the cache stays sound.

use std::collections::HashSet;

use crate::formula::Formula;
use crate::proof::{ProofNode, Rule, Sequent};

use super::intern::{contains, insert_set, remove_sorted, Id, Interner, Node, FALSUM};

pub(super) fn prove(goal: &Formula) -> Option<ProofNode> {
    let mut prover = Prover {
        interner: Interner::new(),
        failed_on_empty_path: HashSet::new(),
    };
    let goal = prover.interner.intern(goal);
    prover.search(&[], &[goal], &[], &mut Vec::new())
}

type SeqKey = (Vec<Id>, Vec<Id>);

struct Prover {
    interner: Interner,
    /// Sequents that failed with no loop-check restrictions in effect; such
    /// failures are context-free and safe to reuse.
    failed_on_empty_path: HashSet<SeqKey>,
}

impl Prover {
    fn sequent(&self, ante: &[Id], succ: &[Id]) -> Sequent {
        Sequent::new(self.interner.resolve_all(ante), self.interner.resolve_all(succ))
    }

    fn node(&self, ante: &[Id], succ: &[Id], rule: Rule, premises: Vec<ProofNode>) -> ProofNode {
        ProofNode {
            sequent: self.sequent(ante, succ),
            rule,
            premises,
        }
    }

    fn search(
        &mut self,
        ante: &[Id],
        succ: &[Id],
        unfolded: &[Id],
        path: &mut Vec<SeqKey>,
    ) -> Option<ProofNode> {
        if let Some(&shared) = ante.iter().find(|&&f| contains(succ, f)) {
            let principal = self.interner.resolve(shared);
            return Some(ProofNode::leaf(
                self.sequent(ante, succ),
                Rule::Axiom { principal },
            ));
        }
        if contains(ante, FALSUM) {
            return Some(ProofNode::leaf(self.sequent(ante, succ), Rule::FalsumLeft));
        }
        let cacheable = path.is_empty() && unfolded.is_empty();
        let key = (ante.to_vec(), succ.to_vec());
        if cacheable && self.failed_on_empty_path.contains(&key) {
            return None;
        }
        let result = self.expand(ante, succ, unfolded, path);
        if cacheable && result.is_none() {
            self.failed_on_empty_path.insert(key);
        }
        result
    }

    fn expand(
        &mut self,
        ante: &[Id],
        succ: &[Id],
        unfolded: &[Id],
        path: &mut Vec<SeqKey>,
    ) -> Option<ProofNode> {
        // Invertible phase, first applicable formula in canonical order.
        for &f in ante {
            match self.interner.node(f) {
                Node::And(a, b) => {
                    let mut next = remove_sorted(ante, f);
                    insert_set(&mut next, a);
                    insert_set(&mut next, b);
                    let premise = self.search(&next, succ, unfolded, path)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::AndLeft { principal }, vec![premise]));
                }
                Node::Or(a, b) => {
                    let mut left = remove_sorted(ante, f);
                    insert_set(&mut left, a);
                    let mut right = remove_sorted(ante, f);
                    insert_set(&mut right, b);
                    let p1 = self.search(&left, succ, unfolded, path)?;
                    let p2 = self.search(&right, succ, unfolded, path)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::OrLeft { principal }, vec![p1, p2]));
                }
                Node::Imp(a, b) => {
                    let rest = remove_sorted(ante, f);
                    let mut with_a = succ.to_vec();
                    insert_set(&mut with_a, a);
                    let p1 = self.search(&rest, &with_a, unfolded, path)?;
                    let mut with_b = rest.clone();
                    insert_set(&mut with_b, b);
                    let p2 = self.search(&with_b, succ, unfolded, path)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::ImpLeft { principal }, vec![p1, p2]));
                }
                Node::BoxOp(a) => {
                    if !contains(ante, a) && !contains(unfolded, f) {
                        let mut next = ante.to_vec();
                        insert_set(&mut next, a);
                        let mut done = unfolded.to_vec();
                        insert_set(&mut done, f);
                        let premise = self.search(&next, succ, &done, path)?;
                        let principal = self.interner.resolve(f);
                        return Some(self.node(
                            ante,
                            succ,
                            Rule::BoxLeft { principal },
                            vec![premise],
                        ));
                    }
                }
                _ => {}
            }
        }
        for &f in succ {
            match self.interner.node(f) {
                Node::And(a, b) => {
                    let rest = remove_sorted(succ, f);
                    let mut left = rest.clone();
                    insert_set(&mut left, a);
                    let mut right = rest;
                    insert_set(&mut right, b);
                    let p1 = self.search(ante, &left, unfolded, path)?;
                    let p2 = self.search(ante, &right, unfolded, path)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::AndRight { principal }, vec![p1, p2]));
                }
                Node::Or(a, b) => {
                    let mut next = remove_sorted(succ, f);
                    insert_set(&mut next, a);
                    insert_set(&mut next, b);
                    let premise = self.search(ante, &next, unfolded, path)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::OrRight { principal }, vec![premise]));
                }
                Node::Imp(a, b) => {
                    let mut next_ante = ante.to_vec();
                    insert_set(&mut next_ante, a);
                    let mut next_succ = remove_sorted(succ, f);
                    insert_set(&mut next_succ, b);
                    let premise = self.search(&next_ante, &next_succ, unfolded, path)?;
                    let principal = self.interner.resolve(f);
                    return Some(self.node(ante, succ, Rule::ImpRight { principal }, vec![premise]));
                }
                _ => {}
            }
        }

        // Saturated: jump through each boxed succedent.
        for &f in succ {
            let Node::BoxOp(a) = self.interner.node(f) else {
                continue;
            };
            let boxes: Vec<Id> = ante
                .iter()
                .copied()
                .filter(|&x| matches!(self.interner.node(x), Node::BoxOp(_)))
                .collect();
            let target = vec![a];
            let jump = (boxes.clone(), target.clone());
            if path.contains(&jump) {
                continue;
            }
            path.push(jump);
            let premise = self.search(&boxes, &target, &[], path);
            path.pop();
            if let Some(premise) = premise {
                let principal = self.interner.resolve(f);
                return Some(self.node(ante, succ, Rule::BoxRight { principal }, vec![premise]));
            }
        }
        None
    }
}
