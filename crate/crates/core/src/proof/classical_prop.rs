//! Invertible multi-succedent search for classical propositional logic.
//! Every rule strictly reduces connective weight, so the search terminates
//! and decides the fragment without backtracking.

use crate::formula::Formula;
use crate::proof::{ProofNode, Rule, Sequent};

pub(super) fn prove(goal: &Formula) -> Option<ProofNode> {
    search(&[], &[goal.clone()])
}

fn atomic(f: &Formula) -> bool {
    matches!(f, Formula::Atom(_) | Formula::Pred(..) | Formula::Falsum)
}

fn without(side: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = side.to_vec();
    v.remove(i);
    v
}

fn search(ante: &[Formula], succ: &[Formula]) -> Option<ProofNode> {
    let seq = Sequent::new(ante.to_vec(), succ.to_vec());
    if let Some(shared) = ante.iter().find(|a| succ.contains(a)) {
        return Some(ProofNode::leaf(
            seq,
            Rule::Axiom {
                principal: shared.clone(),
            },
        ));
    }
    if ante.iter().any(|a| *a == Formula::Falsum) {
        return Some(ProofNode::leaf(seq, Rule::FalsumLeft));
    }

    for (i, f) in ante.iter().enumerate() {
        if atomic(f) {
            continue;
        }
        let rest = without(ante, i);
        return match f {
            Formula::And(a, b) => {
                let mut ext = rest;
                ext.push((**a).clone());
                ext.push((**b).clone());
                let premise = search(&ext, succ)?;
                Some(ProofNode {
                    sequent: seq,
                    rule: Rule::AndLeft {
                        principal: f.clone(),
                    },
                    premises: vec![premise],
                })
            }
            Formula::Or(a, b) => {
                let mut left = rest.clone();
                left.push((**a).clone());
                let mut right = rest;
                right.push((**b).clone());
                let p1 = search(&left, succ)?;
                let p2 = search(&right, succ)?;
                Some(ProofNode {
                    sequent: seq,
                    rule: Rule::OrLeft {
                        principal: f.clone(),
                    },
                    premises: vec![p1, p2],
                })
            }
            Formula::Imp(a, b) => {
                let mut right_succ = succ.to_vec();
                right_succ.push((**a).clone());
                let p1 = search(&rest, &right_succ)?;
                let mut ext = rest;
                ext.push((**b).clone());
                let p2 = search(&ext, succ)?;
                Some(ProofNode {
                    sequent: seq,
                    rule: Rule::ImpLeft {
                        principal: f.clone(),
                    },
                    premises: vec![p1, p2],
                })
            }
            _ => unreachable!("input is desugared propositional"),
        };
    }

    for (i, f) in succ.iter().enumerate() {
        if atomic(f) {
            continue;
        }
        let rest = without(succ, i);
        return match f {
            Formula::And(a, b) => {
                let mut left = rest.clone();
                left.push((**a).clone());
                let mut right = rest;
                right.push((**b).clone());
                let p1 = search(ante, &left)?;
                let p2 = search(ante, &right)?;
                Some(ProofNode {
                    sequent: seq,
                    rule: Rule::AndRight {
                        principal: f.clone(),
                    },
                    premises: vec![p1, p2],
                })
            }
            Formula::Or(a, b) => {
                let mut ext = rest;
                ext.push((**a).clone());
                ext.push((**b).clone());
                let premise = search(ante, &ext)?;
                Some(ProofNode {
                    sequent: seq,
                    rule: Rule::OrRight {
                        principal: f.clone(),
                    },
                    premises: vec![premise],
                })
            }
            Formula::Imp(a, b) => {
                let mut ext_ante = ante.to_vec();
                ext_ante.push((**a).clone());
                let mut ext_succ = rest;
                ext_succ.push((**b).clone());
                let premise = search(&ext_ante, &ext_succ)?;
                Some(ProofNode {
                    sequent: seq,
                    rule: Rule::ImpRight {
                        principal: f.clone(),
                    },
                    premises: vec![premise],
                })
            }
            _ => unreachable!("input is desugared propositional"),
        };
    }

    None
}
