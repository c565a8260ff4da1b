//! Depth-bounded backward search for the monadic first-order fragment in
//! intuitionistic, minimal and classical flavors.
//!
//! Eigenvariable rules pick the first canonical parameter (`v0`, `v1`, ...)
//! not occurring in the sequent; instantiation rules try the parameters in
//! scope plus, below the term cap, one fresh parameter (domains are
//! nonempty). Every rule application costs one unit of depth; failures are
//! memoized per sequent together with the depth that was available, since a
//! sequent that cannot be closed with more budget cannot be closed with less.

use std::collections::{BTreeSet, HashMap};

use crate::formula::Formula;
use crate::proof::{Calculus, ProofNode, Rule, Sequent};

pub(super) fn prove(
    goal: &Formula,
    calculus: Calculus,
    depth: usize,
    max_terms: usize,
) -> Option<ProofNode> {
    let mut prover = Prover {
        calculus,
        max_terms: max_terms.max(1),
        failed: HashMap::new(),
    };
    prover.search(&[], &[goal.clone()], depth)
}

struct Prover {
    calculus: Calculus,
    max_terms: usize,
    failed: HashMap<(Vec<Formula>, Vec<Formula>), usize>,
}

fn sorted(side: &[Formula]) -> Vec<Formula> {
    let mut v = side.to_vec();
    v.sort();
    v
}

fn without(side: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = side.to_vec();
    v.remove(i);
    v
}

fn with(side: &[Formula], f: Formula) -> Vec<Formula> {
    let mut v = side.to_vec();
    v.push(f);
    v
}

fn sequent_idents(ante: &[Formula], succ: &[Formula]) -> BTreeSet<String> {
    ante.iter()
        .chain(succ.iter())
        .flat_map(|f| f.idents())
        .collect()
}

fn fresh_param(ante: &[Formula], succ: &[Formula]) -> String {
    let used = sequent_idents(ante, succ);
    (0..)
        .map(|k| format!("v{k}"))
        .find(|v| !used.contains(v))
        .expect("unbounded name supply")
}

impl Prover {
    fn single(&self) -> bool {
        !self.calculus.multi_succedent()
    }

    fn candidate_terms(&self, ante: &[Formula], succ: &[Formula]) -> Vec<String> {
        let mut vars: BTreeSet<String> = BTreeSet::new();
        for f in ante.iter().chain(succ.iter()) {
            vars.extend(f.free_vars());
        }
        let mut terms: Vec<String> = vars.into_iter().collect();
        if terms.len() < self.max_terms {
            terms.push(fresh_param(ante, succ));
        }
        terms
    }

    fn search(&mut self, ante: &[Formula], succ: &[Formula], depth: usize) -> Option<ProofNode> {
        let seq = Sequent::new(ante.to_vec(), succ.to_vec());
        if let Some(shared) = ante.iter().find(|a| succ.contains(a)) {
            return Some(ProofNode::leaf(
                seq,
                Rule::Axiom {
                    principal: shared.clone(),
                },
            ));
        }
        if self.calculus.has_falsum_left() && ante.iter().any(|a| *a == Formula::Falsum) {
            return Some(ProofNode::leaf(seq, Rule::FalsumLeft));
        }
        if depth == 0 {
            return None;
        }
        let key = (sorted(ante), sorted(succ));
        if let Some(&failed_at) = self.failed.get(&key) {
            if depth <= failed_at {
                return None;
            }
        }
        let result = self.expand(ante, succ, depth, seq);
        if result.is_none() {
            let entry = self.failed.entry(key).or_insert(0);
            *entry = (*entry).max(depth);
        }
        result
    }

    fn expand(
        &mut self,
        ante: &[Formula],
        succ: &[Formula],
        depth: usize,
        seq: Sequent,
    ) -> Option<ProofNode> {
        let d = depth - 1;
        let node = |rule: Rule, premises: Vec<ProofNode>| {
            Some(ProofNode {
                sequent: seq.clone(),
                rule,
                premises,
            })
        };

        // Non-branching invertible left rules.
        for (i, f) in ante.iter().enumerate() {
            match f {
                Formula::And(a, b) => {
                    let rest = with(&with(&without(ante, i), (**a).clone()), (**b).clone());
                    let premise = self.search(&rest, succ, d)?;
                    return node(Rule::AndLeft { principal: f.clone() }, vec![premise]);
                }
                Formula::Exists(x, body) => {
                    let param = fresh_param(ante, succ);
                    let rest = with(&without(ante, i), body.subst_var(x, &param));
                    let premise = self.search(&rest, succ, d)?;
                    return node(
                        Rule::ExistsLeft {
                            principal: f.clone(),
                            param,
                        },
                        vec![premise],
                    );
                }
                _ => {}
            }
        }

        // Invertible right rules.
        for (i, f) in succ.iter().enumerate() {
            match f {
                Formula::Imp(a, b) => {
                    let next_ante = with(ante, (**a).clone());
                    let next_succ = if self.single() {
                        vec![(**b).clone()]
                    } else {
                        with(&without(succ, i), (**b).clone())
                    };
                    let premise = self.search(&next_ante, &next_succ, d)?;
                    return node(Rule::ImpRight { principal: f.clone() }, vec![premise]);
                }
                Formula::Forall(x, body) => {
                    let param = fresh_param(ante, succ);
                    let inst = body.subst_var(x, &param);
                    let next_succ = if self.single() {
                        vec![inst]
                    } else {
                        with(&without(succ, i), inst)
                    };
                    let premise = self.search(ante, &next_succ, d)?;
                    return node(
                        Rule::ForallRight {
                            principal: f.clone(),
                            param,
                        },
                        vec![premise],
                    );
                }
                Formula::And(a, b) => {
                    let (left, right) = if self.single() {
                        (vec![(**a).clone()], vec![(**b).clone()])
                    } else {
                        let rest = without(succ, i);
                        (with(&rest, (**a).clone()), with(&rest, (**b).clone()))
                    };
                    let p1 = self.search(ante, &left, d)?;
                    let p2 = self.search(ante, &right, d)?;
                    return node(Rule::AndRight { principal: f.clone() }, vec![p1, p2]);
                }
                Formula::Or(a, b) if !self.single() => {
                    let rest = without(succ, i);
                    let next = with(&with(&rest, (**a).clone()), (**b).clone());
                    let premise = self.search(ante, &next, d)?;
                    return node(Rule::OrRight { principal: f.clone() }, vec![premise]);
                }
                _ => {}
            }
        }

        // Disjunction on the left branches but is invertible.
        for (i, f) in ante.iter().enumerate() {
            let Formula::Or(a, b) = f else { continue };
            let left = with(&without(ante, i), (**a).clone());
            let right = with(&without(ante, i), (**b).clone());
            let p1 = self.search(&left, succ, d)?;
            let p2 = self.search(&right, succ, d)?;
            return node(Rule::OrLeft { principal: f.clone() }, vec![p1, p2]);
        }

        // Implication on the left: invertible for the multi-succedent
        // calculus, a backtracking choice for the single-succedent ones
        // (the principal persists in its first premise).
        if !self.single() {
            for (i, f) in ante.iter().enumerate() {
                let Formula::Imp(a, b) = f else { continue };
                let rest = without(ante, i);
                let p1 = self.search(&rest, &with(succ, (**a).clone()), d)?;
                let p2 = self.search(&with(&rest, (**b).clone()), succ, d)?;
                return node(Rule::ImpLeft { principal: f.clone() }, vec![p1, p2]);
            }
        }

        // Choice points.
        if self.single() {
            if let Some(Formula::Or(a, b)) = succ.first() {
                let principal = succ[0].clone();
                if let Some(premise) = self.search(ante, &[(**a).clone()], d) {
                    return node(Rule::OrRightFirst { principal }, vec![premise]);
                }
                if let Some(premise) = self.search(ante, &[(**b).clone()], d) {
                    return node(Rule::OrRightSecond { principal }, vec![premise]);
                }
            }
            for (i, f) in ante.iter().enumerate() {
                let Formula::Imp(a, b) = f else { continue };
                let Some(p1) = self.search(ante, &[(**a).clone()], d) else {
                    continue;
                };
                let rest = with(&without(ante, i), (**b).clone());
                let Some(p2) = self.search(&rest, succ, d) else {
                    continue;
                };
                return node(Rule::ImpLeft { principal: f.clone() }, vec![p1, p2]);
            }
        }
        for f in ante {
            let Formula::Forall(x, body) = f else { continue };
            for term in self.candidate_terms(ante, succ) {
                let inst = body.subst_var(x, &term);
                if ante.contains(&inst) {
                    continue;
                }
                if let Some(premise) = self.search(&with(ante, inst), succ, d) {
                    return node(
                        Rule::ForallLeft {
                            principal: f.clone(),
                            term,
                        },
                        vec![premise],
                    );
                }
            }
        }
        for f in succ {
            let Formula::Exists(x, body) = f else { continue };
            for term in self.candidate_terms(ante, succ) {
                let inst = body.subst_var(x, &term);
                let next = if self.single() {
                    vec![inst]
                } else {
                    if succ.contains(&inst) {
                        continue;
                    }
                    with(succ, inst)
                };
                if let Some(premise) = self.search(ante, &next, d) {
                    return node(
                        Rule::ExistsRight {
                            principal: f.clone(),
                            term,
                        },
                        vec![premise],
                    );
                }
            }
        }
        None
    }
}
