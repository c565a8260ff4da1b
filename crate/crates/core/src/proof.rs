//! Syntactic proof search and checkable proof objects.
//!
//! Each logic gets a cut-free backward sequent search with a documented
//! leftmost-first strategy, so the proof returned for a given goal is
//! deterministic:
//!
//! * propositional IL and minimal logic: a contraction-free calculus that
//!   terminates on every input and is a decision procedure;
//! * propositional CL: an invertible multi-succedent calculus, also a
//!   decision procedure;
//! * propositional S4: a multi-succedent calculus with necessity rules and
//!   ancestor loop checking, also terminating;
//! * monadic first-order IL/CL/minimal: depth-bounded search with fresh
//!   parameters for the eigenvariable rules and bounded instantiation for
//!   the others — a returned proof is sound, absence at a depth is not a
//!   refutation.
//!
//! Inside the prover, `~A` abbreviates `A -> false` and `A <-> B` expands to
//! the two implications; proof objects range over the desugared language
//! while the trace printer re-sugars `-> false` for readability.
//!
//! `check_proof` re-validates every rule instance locally and independently
//! of the search that produced the tree.

mod classical_prop;
mod fo;
mod g4ip;
mod intern;
mod s4;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical::{cl_decide_monadic, cl_decide_prop};
use crate::error::EngineError;
use crate::formula::{render_formula, Formula};
use crate::kripke::{search_countermodel, Flavor, SearchBounds};
use crate::verdict::{Certificate, CounterExample, Exhaustion, Logic, Verdict};

/// Default depth bound for first-order sequent search.
pub const DEFAULT_DEPTH: usize = 12;

/// World cap used when a propositional countermodel has to exist but the
/// caller's bounds were too small to exhibit it.
const PROP_GROWTH_CAP: usize = 10;

/// The calculus a proof object belongs to; fixes the admissible rule set
/// and whether sequents are read as multisets or as sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Calculus {
    PropIl,
    PropMinimal,
    PropCl,
    FoIl,
    FoMinimal,
    FoCl,
    S4,
}

impl Calculus {
    pub fn multi_succedent(self) -> bool {
        matches!(self, Calculus::PropCl | Calculus::FoCl | Calculus::S4)
    }

    /// S4 search works on set-sequents; the checker compares accordingly.
    fn set_sequents(self) -> bool {
        matches!(self, Calculus::S4)
    }

    fn has_falsum_left(self) -> bool {
        !matches!(self, Calculus::PropMinimal | Calculus::FoMinimal)
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::PropIl => "propositional IL",
            Calculus::PropMinimal => "propositional minimal",
            Calculus::PropCl => "propositional CL",
            Calculus::FoIl => "first-order IL",
            Calculus::FoMinimal => "first-order minimal",
            Calculus::FoCl => "first-order CL",
            Calculus::S4 => "S4",
        })
    }
}

/// A sequent: multiset antecedent, succedent of length one except in the
/// multi-succedent calculi.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Self {
        Sequent {
            antecedent,
            succedent,
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Formula]| {
            fs.iter()
                .map(|x| render_formula(&resugar(x)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "{} |- {}", side(&self.antecedent), side(&self.succedent))
    }
}

/// A rule instance label. Principal formulas are recorded by value; the
/// checker locates them in the conclusion and recomputes the premises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    Axiom { principal: Formula },
    FalsumLeft,
    AndLeft { principal: Formula },
    AndRight { principal: Formula },
    OrLeft { principal: Formula },
    OrRight { principal: Formula },
    OrRightFirst { principal: Formula },
    OrRightSecond { principal: Formula },
    ImpRight { principal: Formula },
    ImpLeft { principal: Formula },
    ImpLeftAtom { principal: Formula },
    ImpLeftFalsum { principal: Formula },
    ImpLeftAnd { principal: Formula },
    ImpLeftOr { principal: Formula },
    ImpLeftImp { principal: Formula },
    ForallLeft { principal: Formula, term: String },
    ForallRight { principal: Formula, param: String },
    ExistsLeft { principal: Formula, param: String },
    ExistsRight { principal: Formula, term: String },
    BoxLeft { principal: Formula },
    BoxRight { principal: Formula },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom { .. } => "Axiom",
            Rule::FalsumLeft => "FalsumL",
            Rule::AndLeft { .. } => "AndL",
            Rule::AndRight { .. } => "AndR",
            Rule::OrLeft { .. } => "OrL",
            Rule::OrRight { .. } => "OrR",
            Rule::OrRightFirst { .. } => "OrR1",
            Rule::OrRightSecond { .. } => "OrR2",
            Rule::ImpRight { .. } => "ImpR",
            Rule::ImpLeft { .. } => "ImpL",
            Rule::ImpLeftAtom { .. } => "ImpL-atom",
            Rule::ImpLeftFalsum { .. } => "ImpL-false",
            Rule::ImpLeftAnd { .. } => "ImpL-and",
            Rule::ImpLeftOr { .. } => "ImpL-or",
            Rule::ImpLeftImp { .. } => "ImpL-imp",
            Rule::ForallLeft { .. } => "ForallL",
            Rule::ForallRight { .. } => "ForallR",
            Rule::ExistsLeft { .. } => "ExistsL",
            Rule::ExistsRight { .. } => "ExistsR",
            Rule::BoxLeft { .. } => "BoxL",
            Rule::BoxRight { .. } => "BoxR",
        }
    }
}

/// One node of a derivation tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofNode {
    pub sequent: Sequent,
    pub rule: Rule,
    pub premises: Vec<ProofNode>,
}

impl ProofNode {
    fn leaf(sequent: Sequent, rule: Rule) -> Self {
        ProofNode {
            sequent,
            rule,
            premises: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::node_count).sum::<usize>()
    }
}

/// A complete derivation of `goal` in `calculus`. The root sequent proves
/// the desugared goal (`~`/`<->`/`<>` expanded).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub calculus: Calculus,
    pub goal: Formula,
    pub root: ProofNode,
}

/// Expand `~A` to `A -> false`, `A <-> B` to its two implications, and (for
/// S4 input) `<>A` to `~[]~A`, recursively.
pub fn desugar(f: &Formula) -> Formula {
    match f {
        Formula::Neg(a) => Formula::imp(desugar(a), Formula::Falsum),
        Formula::Iff(a, b) => {
            let (da, db) = (desugar(a), desugar(b));
            Formula::and(
                Formula::imp(da.clone(), db.clone()),
                Formula::imp(db, da),
            )
        }
        Formula::Dia(a) => Formula::imp(
            Formula::boxed(Formula::imp(desugar(a), Formula::Falsum)),
            Formula::Falsum,
        ),
        Formula::And(a, b) => Formula::and(desugar(a), desugar(b)),
        Formula::Or(a, b) => Formula::or(desugar(a), desugar(b)),
        Formula::Imp(a, b) => Formula::imp(desugar(a), desugar(b)),
        Formula::Box(a) => Formula::boxed(desugar(a)),
        Formula::Forall(x, a) => Formula::forall(x.clone(), desugar(a)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), desugar(a)),
        Formula::Atom(_) | Formula::Pred(..) | Formula::Falsum => f.clone(),
    }
}

/// Re-introduce `~` for `A -> false` when displaying desugared formulas.
pub fn resugar(f: &Formula) -> Formula {
    match f {
        Formula::Imp(a, b) if **b == Formula::Falsum => Formula::neg(resugar(a)),
        Formula::Neg(a) => Formula::neg(resugar(a)),
        Formula::And(a, b) => Formula::and(resugar(a), resugar(b)),
        Formula::Or(a, b) => Formula::or(resugar(a), resugar(b)),
        Formula::Imp(a, b) => Formula::imp(resugar(a), resugar(b)),
        Formula::Iff(a, b) => Formula::iff(resugar(a), resugar(b)),
        Formula::Box(a) => Formula::boxed(resugar(a)),
        Formula::Dia(a) => Formula::dia(resugar(a)),
        Formula::Forall(x, a) => Formula::forall(x.clone(), resugar(a)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), resugar(a)),
        Formula::Atom(_) | Formula::Pred(..) | Formula::Falsum => f.clone(),
    }
}

/// Indented text trace: one `rule: sequent` line per node, premises indented
/// under their conclusion.
pub fn render_proof_trace(p: &Proof) -> String {
    let mut out = String::new();
    out.push_str(&format!("calculus: {}\n", p.calculus));
    out.push_str(&format!("goal: {}\n", render_formula(&p.goal)));
    fn go(node: &ProofNode, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&format!("{}: {}\n", node.rule.name(), node.sequent));
        for premise in &node.premises {
            go(premise, indent + 1, out);
        }
    }
    go(&p.root, 0, &mut out);
    out
}

pub fn proof_to_json(p: &Proof) -> serde_json::Value {
    serde_json::to_value(p).expect("proof serialization cannot fail")
}

/// Where and why a proof fails to check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofDefect {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub message: String,
}

/// Validate every rule instance of a proof independently of the search that
/// produced it. Returns `true` iff the tree is a correct derivation of the
/// (desugared) goal in its calculus.
pub fn check_proof(p: &Proof) -> bool {
    check_proof_detailed(p).is_ok()
}

/// As [`check_proof`], but reporting the first bad node.
pub fn check_proof_detailed(p: &Proof) -> Result<(), ProofDefect> {
    let expected_root = Sequent::new(vec![], vec![desugar(&p.goal)]);
    if !sequent_eq(p.calculus, &p.root.sequent, &expected_root) {
        return Err(ProofDefect {
            path: vec![],
            message: format!(
                "root sequent is `{}` but the goal desugars to `{}`",
                p.root.sequent, expected_root
            ),
        });
    }
    check_node(p.calculus, &p.root, &mut Vec::new())
}

fn check_node(
    calculus: Calculus,
    node: &ProofNode,
    path: &mut Vec<usize>,
) -> Result<(), ProofDefect> {
    let defect = |message: String| ProofDefect {
        path: path.clone(),
        message,
    };
    if !calculus.multi_succedent() && node.sequent.succedent.len() != 1 {
        return Err(defect(format!(
            "{calculus} sequents carry exactly one succedent formula"
        )));
    }
    let expected = premises_of(calculus, &node.sequent, &node.rule).map_err(&defect)?;
    if expected.len() != node.premises.len() {
        return Err(defect(format!(
            "rule {} requires {} premises, found {}",
            node.rule.name(),
            expected.len(),
            node.premises.len()
        )));
    }
    for (i, (want, have)) in expected.iter().zip(&node.premises).enumerate() {
        if !sequent_eq(calculus, &have.sequent, want) {
            path.push(i);
            let d = ProofDefect {
                path: path.clone(),
                message: format!(
                    "premise {} of {} is `{}` but the rule yields `{}`",
                    i,
                    node.rule.name(),
                    have.sequent,
                    want
                ),
            };
            path.pop();
            return Err(d);
        }
        path.push(i);
        check_node(calculus, have, path)?;
        path.pop();
    }
    Ok(())
}

fn canon(calculus: Calculus, side: &[Formula]) -> Vec<Formula> {
    let mut v = side.to_vec();
    v.sort();
    if calculus.set_sequents() {
        v.dedup();
    }
    v
}

fn sequent_eq(calculus: Calculus, a: &Sequent, b: &Sequent) -> bool {
    canon(calculus, &a.antecedent) == canon(calculus, &b.antecedent)
        && canon(calculus, &a.succedent) == canon(calculus, &b.succedent)
}

fn remove_one(side: &[Formula], f: &Formula) -> Option<Vec<Formula>> {
    let i = side.iter().position(|x| x == f)?;
    let mut v = side.to_vec();
    v.remove(i);
    Some(v)
}

fn with(mut side: Vec<Formula>, f: Formula) -> Vec<Formula> {
    side.push(f);
    side
}

fn fresh_for(seq: &Sequent, param: &str) -> bool {
    !seq.antecedent
        .iter()
        .chain(seq.succedent.iter())
        .any(|f| f.idents().iter().any(|id| id == param))
}

/// Compute the premises a rule instance yields from its conclusion, or
/// explain why the instance is malformed for this calculus.
fn premises_of(
    calculus: Calculus,
    conclusion: &Sequent,
    rule: &Rule,
) -> Result<Vec<Sequent>, String> {
    use Rule::*;
    let ante = &conclusion.antecedent;
    let succ = &conclusion.succedent;
    let single = !calculus.multi_succedent();
    let in_ante = |f: &Formula| ante.iter().any(|x| x == f);
    let in_succ = |f: &Formula| succ.iter().any(|x| x == f);

    let g4 = matches!(calculus, Calculus::PropIl | Calculus::PropMinimal);
    let fo = matches!(
        calculus,
        Calculus::FoIl | Calculus::FoMinimal | Calculus::FoCl
    );
    let s4 = calculus == Calculus::S4;

    match rule {
        Axiom { principal } => {
            if in_ante(principal) && in_succ(principal) {
                Ok(vec![])
            } else {
                Err("axiom principal must occur on both sides".to_string())
            }
        }
        FalsumLeft => {
            if !calculus.has_falsum_left() {
                Err(format!("{calculus} has no absurdity rule"))
            } else if in_ante(&Formula::Falsum) {
                Ok(vec![])
            } else {
                Err("absurdity is not in the antecedent".to_string())
            }
        }
        AndLeft { principal } => {
            let Formula::And(a, b) = principal else {
                return Err("principal of AndL must be a conjunction".to_string());
            };
            let rest = remove_one(ante, principal)
                .ok_or("principal of AndL is not in the antecedent")?;
            Ok(vec![Sequent::new(
                with(with(rest, (**a).clone()), (**b).clone()),
                succ.clone(),
            )])
        }
        AndRight { principal } => {
            let Formula::And(a, b) = principal else {
                return Err("principal of AndR must be a conjunction".to_string());
            };
            let rest = remove_one(succ, principal)
                .ok_or("principal of AndR is not in the succedent")?;
            Ok(vec![
                Sequent::new(ante.clone(), with(rest.clone(), (**a).clone())),
                Sequent::new(ante.clone(), with(rest, (**b).clone())),
            ])
        }
        OrLeft { principal } => {
            let Formula::Or(a, b) = principal else {
                return Err("principal of OrL must be a disjunction".to_string());
            };
            let rest = remove_one(ante, principal)
                .ok_or("principal of OrL is not in the antecedent")?;
            Ok(vec![
                Sequent::new(with(rest.clone(), (**a).clone()), succ.clone()),
                Sequent::new(with(rest, (**b).clone()), succ.clone()),
            ])
        }
        OrRight { principal } => {
            if single {
                return Err("OrR needs a multi-succedent calculus".to_string());
            }
            let Formula::Or(a, b) = principal else {
                return Err("principal of OrR must be a disjunction".to_string());
            };
            let rest = remove_one(succ, principal)
                .ok_or("principal of OrR is not in the succedent")?;
            Ok(vec![Sequent::new(
                ante.clone(),
                with(with(rest, (**a).clone()), (**b).clone()),
            )])
        }
        OrRightFirst { principal } | OrRightSecond { principal } => {
            if !single {
                return Err("single-succedent disjunction rule in a multi-succedent calculus".to_string());
            }
            let Formula::Or(a, b) = principal else {
                return Err("principal must be a disjunction".to_string());
            };
            if succ.first() != Some(principal) {
                return Err("principal is not the succedent".to_string());
            }
            let pick = if matches!(rule, OrRightFirst { .. }) {
                (**a).clone()
            } else {
                (**b).clone()
            };
            Ok(vec![Sequent::new(ante.clone(), vec![pick])])
        }
        ImpRight { principal } => {
            let Formula::Imp(a, b) = principal else {
                return Err("principal of ImpR must be an implication".to_string());
            };
            let rest = remove_one(succ, principal)
                .ok_or("principal of ImpR is not in the succedent")?;
            let new_succ = if single {
                vec![(**b).clone()]
            } else {
                with(rest, (**b).clone())
            };
            Ok(vec![Sequent::new(
                with(ante.clone(), (**a).clone()),
                new_succ,
            )])
        }
        ImpLeft { principal } => {
            if g4 {
                return Err("the contraction-free calculus has no generic ImpL".to_string());
            }
            let Formula::Imp(a, b) = principal else {
                return Err("principal of ImpL must be an implication".to_string());
            };
            if !in_ante(principal) {
                return Err("principal of ImpL is not in the antecedent".to_string());
            }
            if single {
                let rest = remove_one(ante, principal).expect("present");
                Ok(vec![
                    Sequent::new(ante.clone(), vec![(**a).clone()]),
                    Sequent::new(with(rest, (**b).clone()), succ.clone()),
                ])
            } else {
                let rest = remove_one(ante, principal).expect("present");
                Ok(vec![
                    Sequent::new(rest.clone(), with(succ.clone(), (**a).clone())),
                    Sequent::new(with(rest, (**b).clone()), succ.clone()),
                ])
            }
        }
        ImpLeftAtom { principal } => {
            if !g4 {
                return Err("ImpL-atom belongs to the contraction-free calculus".to_string());
            }
            let Formula::Imp(a, b) = principal else {
                return Err("principal of ImpL-atom must be an implication".to_string());
            };
            let atomic = matches!(**a, Formula::Atom(_) | Formula::Pred(..))
                || (calculus == Calculus::PropMinimal && **a == Formula::Falsum);
            if !atomic {
                return Err("antecedent of the principal is not atomic".to_string());
            }
            if !in_ante(a) {
                return Err("the atomic antecedent is not available".to_string());
            }
            let rest = remove_one(ante, principal)
                .ok_or("principal of ImpL-atom is not in the antecedent")?;
            Ok(vec![Sequent::new(with(rest, (**b).clone()), succ.clone())])
        }
        ImpLeftFalsum { principal } => {
            if calculus != Calculus::PropIl {
                return Err("ImpL-false is an IL-only simplification".to_string());
            }
            let Formula::Imp(a, _) = principal else {
                return Err("principal of ImpL-false must be an implication".to_string());
            };
            if **a != Formula::Falsum {
                return Err("antecedent of the principal is not absurdity".to_string());
            }
            let rest = remove_one(ante, principal)
                .ok_or("principal of ImpL-false is not in the antecedent")?;
            Ok(vec![Sequent::new(rest, succ.clone())])
        }
        ImpLeftAnd { principal } => {
            if !g4 {
                return Err("ImpL-and belongs to the contraction-free calculus".to_string());
            }
            let Formula::Imp(a, b) = principal else {
                return Err("principal of ImpL-and must be an implication".to_string());
            };
            let Formula::And(c, d) = &**a else {
                return Err("antecedent of the principal is not a conjunction".to_string());
            };
            let rest = remove_one(ante, principal)
                .ok_or("principal of ImpL-and is not in the antecedent")?;
            let curried = Formula::imp(
                (**c).clone(),
                Formula::imp((**d).clone(), (**b).clone()),
            );
            Ok(vec![Sequent::new(with(rest, curried), succ.clone())])
        }
        ImpLeftOr { principal } => {
            if !g4 {
                return Err("ImpL-or belongs to the contraction-free calculus".to_string());
            }
            let Formula::Imp(a, b) = principal else {
                return Err("principal of ImpL-or must be an implication".to_string());
            };
            let Formula::Or(c, d) = &**a else {
                return Err("antecedent of the principal is not a disjunction".to_string());
            };
            let rest = remove_one(ante, principal)
                .ok_or("principal of ImpL-or is not in the antecedent")?;
            Ok(vec![Sequent::new(
                with(
                    with(rest, Formula::imp((**c).clone(), (**b).clone())),
                    Formula::imp((**d).clone(), (**b).clone()),
                ),
                succ.clone(),
            )])
        }
        ImpLeftImp { principal } => {
            if !g4 {
                return Err("ImpL-imp belongs to the contraction-free calculus".to_string());
            }
            let Formula::Imp(a, b) = principal else {
                return Err("principal of ImpL-imp must be an implication".to_string());
            };
            let Formula::Imp(_, d) = &**a else {
                return Err("antecedent of the principal is not an implication".to_string());
            };
            let rest = remove_one(ante, principal)
                .ok_or("principal of ImpL-imp is not in the antecedent")?;
            Ok(vec![
                Sequent::new(
                    with(
                        rest.clone(),
                        Formula::imp((**d).clone(), (**b).clone()),
                    ),
                    vec![(**a).clone()],
                ),
                Sequent::new(with(rest, (**b).clone()), succ.clone()),
            ])
        }
        ForallLeft { principal, term } => {
            if !fo {
                return Err("quantifier rules belong to the first-order calculi".to_string());
            }
            let Formula::Forall(x, body) = principal else {
                return Err("principal of ForallL must be universal".to_string());
            };
            if !in_ante(principal) {
                return Err("principal of ForallL is not in the antecedent".to_string());
            }
            Ok(vec![Sequent::new(
                with(ante.clone(), body.subst_var(x, term)),
                succ.clone(),
            )])
        }
        ForallRight { principal, param } => {
            if !fo {
                return Err("quantifier rules belong to the first-order calculi".to_string());
            }
            let Formula::Forall(x, body) = principal else {
                return Err("principal of ForallR must be universal".to_string());
            };
            if !fresh_for(conclusion, param) {
                return Err(format!("parameter `{param}` is not fresh"));
            }
            let rest = remove_one(succ, principal)
                .ok_or("principal of ForallR is not in the succedent")?;
            let new_succ = if single {
                vec![body.subst_var(x, param)]
            } else {
                with(rest, body.subst_var(x, param))
            };
            Ok(vec![Sequent::new(ante.clone(), new_succ)])
        }
        ExistsLeft { principal, param } => {
            if !fo {
                return Err("quantifier rules belong to the first-order calculi".to_string());
            }
            let Formula::Exists(x, body) = principal else {
                return Err("principal of ExistsL must be existential".to_string());
            };
            if !fresh_for(conclusion, param) {
                return Err(format!("parameter `{param}` is not fresh"));
            }
            let rest = remove_one(ante, principal)
                .ok_or("principal of ExistsL is not in the antecedent")?;
            Ok(vec![Sequent::new(
                with(rest, body.subst_var(x, param)),
                succ.clone(),
            )])
        }
        ExistsRight { principal, term } => {
            if !fo {
                return Err("quantifier rules belong to the first-order calculi".to_string());
            }
            let Formula::Exists(x, body) = principal else {
                return Err("principal of ExistsR must be existential".to_string());
            };
            if single {
                if succ.first() != Some(principal) {
                    return Err("principal of ExistsR is not the succedent".to_string());
                }
                Ok(vec![Sequent::new(
                    ante.clone(),
                    vec![body.subst_var(x, term)],
                )])
            } else {
                if !in_succ(principal) {
                    return Err("principal of ExistsR is not in the succedent".to_string());
                }
                Ok(vec![Sequent::new(
                    ante.clone(),
                    with(succ.clone(), body.subst_var(x, term)),
                )])
            }
        }
        BoxLeft { principal } => {
            if !s4 {
                return Err("necessity rules belong to the S4 calculus".to_string());
            }
            let Formula::Box(a) = principal else {
                return Err("principal of BoxL must be boxed".to_string());
            };
            if !in_ante(principal) {
                return Err("principal of BoxL is not in the antecedent".to_string());
            }
            Ok(vec![Sequent::new(
                with(ante.clone(), (**a).clone()),
                succ.clone(),
            )])
        }
        BoxRight { principal } => {
            if !s4 {
                return Err("necessity rules belong to the S4 calculus".to_string());
            }
            let Formula::Box(a) = principal else {
                return Err("principal of BoxR must be boxed".to_string());
            };
            if !in_succ(principal) {
                return Err("principal of BoxR is not in the succedent".to_string());
            }
            let boxes: Vec<Formula> = ante
                .iter()
                .filter(|f| matches!(f, Formula::Box(_)))
                .cloned()
                .collect();
            Ok(vec![Sequent::new(boxes, vec![(**a).clone()])])
        }
    }
}

// ---------------------------------------------------------------------------
// Public prover API
// ---------------------------------------------------------------------------

/// Decide propositional IL provability. Terminates on every propositional
/// input; a returned proof passes `check_proof`.
pub fn prove_il_prop(f: &Formula) -> Result<Option<Proof>, EngineError> {
    prove_prop_contraction_free(f, Calculus::PropIl)
}

/// Decide propositional minimal-logic provability (absurdity behaves as an
/// ordinary atom).
pub fn prove_minimal_prop(f: &Formula) -> Result<Option<Proof>, EngineError> {
    prove_prop_contraction_free(f, Calculus::PropMinimal)
}

fn prove_prop_contraction_free(
    f: &Formula,
    calculus: Calculus,
) -> Result<Option<Proof>, EngineError> {
    if !f.is_propositional() {
        return Err(EngineError::fragment(
            "prove_il_prop",
            "formula must be propositional",
        ));
    }
    let goal = desugar(f);
    Ok(g4ip::prove(&goal, calculus == Calculus::PropMinimal).map(|root| Proof {
        calculus,
        goal: f.clone(),
        root,
    }))
}

/// Decide propositional classical provability in the invertible
/// multi-succedent calculus.
pub fn prove_cl_prop(f: &Formula) -> Result<Option<Proof>, EngineError> {
    if !f.is_propositional() {
        return Err(EngineError::fragment(
            "prove_cl_prop",
            "formula must be propositional",
        ));
    }
    let goal = desugar(f);
    Ok(classical_prop::prove(&goal).map(|root| Proof {
        calculus: Calculus::PropCl,
        goal: f.clone(),
        root,
    }))
}

/// Decide propositional S4 provability; terminating via ancestor loop checks.
pub fn prove_s4_prop(f: &Formula) -> Result<Option<Proof>, EngineError> {
    if !f.is_propositional_modal() {
        return Err(EngineError::fragment(
            "prove_s4_prop",
            "formula must be propositional modal",
        ));
    }
    let goal = desugar(f);
    Ok(s4::prove(&goal).map(|root| Proof {
        calculus: Calculus::S4,
        goal: f.clone(),
        root,
    }))
}

/// Bounded-depth backward search for the monadic first-order fragment.
/// A returned proof is sound; absence at depth `depth` is not a refutation.
/// `max_terms` caps how many instantiation terms a branch may use.
pub fn prove_sequent_fo(
    f: &Formula,
    depth: usize,
    logic: Logic,
    max_terms: usize,
) -> Result<Option<Proof>, EngineError> {
    if f.has_modalities() {
        return Err(EngineError::fragment(
            "prove_sequent_fo",
            "modal operators are not part of the first-order fragment",
        ));
    }
    let calculus = match logic {
        Logic::Il => Calculus::FoIl,
        Logic::Minimal => Calculus::FoMinimal,
        Logic::Cl => Calculus::FoCl,
        Logic::S4 => {
            return Err(EngineError::fragment(
                "prove_sequent_fo",
                "no first-order S4 calculus is provided",
            ))
        }
    };
    let mut closed = f.clone();
    for var in f.free_vars().into_iter().rev() {
        closed = Formula::forall(var, closed);
    }
    let goal = desugar(&closed);
    Ok(fo::prove(&goal, calculus, depth, max_terms).map(|root| Proof {
        calculus,
        goal: closed,
        root,
    }))
}

// ---------------------------------------------------------------------------
// Combined decision procedure
// ---------------------------------------------------------------------------

/// Run prover and countermodel search for `f` in the given logic.
///
/// Propositional inputs are decidable here and never yield `Unknown`: the
/// provers are decision procedures, and when they report unprovable the
/// model search is grown past the caller's bounds (the finite model property
/// guarantees a finite countermodel). First-order inputs respect `bounds`
/// and `depth` strictly and may honestly return `Unknown` — double negation
/// shift is the standard example, unprovable yet without a finite rooted
/// countermodel.
pub fn decide(
    f: &Formula,
    logic: Logic,
    bounds: &SearchBounds,
    depth: usize,
) -> Result<Verdict, EngineError> {
    match logic {
        Logic::Cl => decide_cl(f, bounds, depth),
        Logic::Il | Logic::Minimal => decide_int(f, logic, bounds, depth),
        Logic::S4 => decide_s4(f, bounds),
    }
}

fn grown(bounds: &SearchBounds) -> SearchBounds {
    SearchBounds::new(bounds.max_worlds.max(PROP_GROWTH_CAP), bounds.max_domain)
}

fn unknown(bounds: &SearchBounds, depth: usize, note: &str) -> Verdict {
    Verdict::Unknown(Exhaustion {
        bounds: bounds.clone(),
        depth,
        note: note.to_string(),
    })
}

fn decide_cl(f: &Formula, bounds: &SearchBounds, depth: usize) -> Result<Verdict, EngineError> {
    if f.has_modalities() {
        return Err(EngineError::fragment(
            "decide",
            "CL covers the propositional and monadic first-order fragments",
        ));
    }
    if f.is_propositional() {
        if let Some(proof) = prove_cl_prop(f)? {
            return Ok(Verdict::Valid(Certificate::Proof(proof)));
        }
        return cl_decide_prop(f);
    }
    if let Some(proof) = prove_sequent_fo(f, depth, Logic::Cl, bounds.max_domain)? {
        return Ok(Verdict::Valid(Certificate::Proof(proof)));
    }
    match cl_decide_monadic(f, bounds.max_domain)? {
        v @ Verdict::Invalid(_) => Ok(v),
        Verdict::Valid(cert @ Certificate::DomainCheck { exact: true, .. }) => {
            Ok(Verdict::Valid(cert))
        }
        _ => Ok(unknown(
            bounds,
            depth,
            "no proof at this depth and no counterexample within the domain cap",
        )),
    }
}

fn decide_int(
    f: &Formula,
    logic: Logic,
    bounds: &SearchBounds,
    depth: usize,
) -> Result<Verdict, EngineError> {
    let flavor = if logic == Logic::Il {
        Flavor::Il
    } else {
        Flavor::Minimal
    };
    if f.has_modalities() {
        return Err(EngineError::fragment(
            "decide",
            "modal operators are undefined in IL and minimal logic",
        ));
    }
    if f.is_propositional() {
        let proof = match logic {
            Logic::Il => prove_il_prop(f)?,
            _ => prove_minimal_prop(f)?,
        };
        if let Some(proof) = proof {
            return Ok(Verdict::Valid(Certificate::Proof(proof)));
        }
        if let Some(model) = search_countermodel(f, flavor, &grown(bounds))? {
            return Ok(Verdict::Invalid(CounterExample::Model(model)));
        }
        return Ok(unknown(
            &grown(bounds),
            depth,
            "unprovable, but the countermodel search cap was exhausted",
        ));
    }
    if let Some(proof) = prove_sequent_fo(f, depth, logic, bounds.max_domain)? {
        return Ok(Verdict::Valid(Certificate::Proof(proof)));
    }
    if let Some(model) = search_countermodel(f, flavor, bounds)? {
        return Ok(Verdict::Invalid(CounterExample::Model(model)));
    }
    Ok(unknown(
        bounds,
        depth,
        "no proof at this depth and no countermodel within these bounds",
    ))
}

fn decide_s4(f: &Formula, bounds: &SearchBounds) -> Result<Verdict, EngineError> {
    if !f.is_propositional_modal() {
        return Err(EngineError::fragment(
            "decide",
            "S4 covers the propositional modal fragment",
        ));
    }
    if let Some(proof) = prove_s4_prop(f)? {
        return Ok(Verdict::Valid(Certificate::Proof(proof)));
    }
    if let Some(model) = search_countermodel(f, Flavor::S4, &grown(bounds))? {
        return Ok(Verdict::Invalid(CounterExample::Model(model)));
    }
    Ok(unknown(
        &grown(bounds),
        0,
        "unprovable, but the countermodel search cap was exhausted",
    ))
}

// ---------------------------------------------------------------------------
// Law battery
// ---------------------------------------------------------------------------

/// One law evaluated against CL, IL and minimal logic.
#[derive(Clone, Debug)]
pub struct LawRow {
    pub name: &'static str,
    pub formula: Formula,
    pub cl: Verdict,
    pub il: Verdict,
    pub minimal: Verdict,
}

/// The fixed battery of separating laws.
#[derive(Clone, Debug)]
pub struct LawMatrix {
    pub rows: Vec<LawRow>,
}

/// The laws whose validity pattern separates CL, IL and minimal logic.
pub const LAW_BATTERY: [(&str, &str); 7] = [
    ("double negation", "~~p -> p"),
    ("excluded middle", "p | ~p"),
    ("ex falso", "false -> p"),
    ("triple negation", "~~~p <-> ~p"),
    ("contraposition", "(p -> q) -> (~q -> ~p)"),
    ("double negation intro", "p -> ~~p"),
    ("peirce", "((p -> q) -> p) -> p"),
];

/// Evaluate the fixed law battery against CL, IL and minimal logic.
pub fn law_battery(bounds: &SearchBounds) -> LawMatrix {
    let rows = LAW_BATTERY
        .iter()
        .map(|(name, text)| {
            let formula = crate::formula::parse_formula(text).expect("battery formulas parse");
            let run = |logic| decide(&formula, logic, bounds, DEFAULT_DEPTH).expect("propositional");
            LawRow {
                name,
                formula: formula.clone(),
                cl: run(Logic::Cl),
                il: run(Logic::Il),
                minimal: run(Logic::Minimal),
            }
        })
        .collect();
    LawMatrix { rows }
}

impl LawMatrix {
    /// Aligned-column text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let name_w = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(0)
            .max("law".len());
        let formula_w = self
            .rows
            .iter()
            .map(|r| render_formula(&r.formula).len())
            .max()
            .unwrap_or(0)
            .max("formula".len());
        out.push_str(&format!(
            "{:name_w$}  {:formula_w$}  {:8}  {:8}  {:8}\n",
            "law", "formula", "CL", "IL", "Minimal"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:name_w$}  {:formula_w$}  {:8}  {:8}  {:8}\n",
                r.name,
                render_formula(&r.formula),
                r.cl.outcome(),
                r.il.outcome(),
                r.minimal.outcome()
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "laws": self.rows.iter().map(|r| serde_json::json!({
                "name": r.name,
                "formula": render_formula(&r.formula),
                "cl": crate::verdict::verdict_to_json(&r.cl),
                "il": crate::verdict::verdict_to_json(&r.il),
                "minimal": crate::verdict::verdict_to_json(&r.minimal),
            })).collect::<Vec<_>>(),
        })
    }
}

// ---------------------------------------------------------------------------
// The triple-negation theorem with its contraposition backbone
// ---------------------------------------------------------------------------

/// The equivalence `~~~a <-> ~a` together with the two lemmas it classically
/// rests on: the contraposition instance `(a -> ~~a) -> (~~~a -> ~a)` —
/// contraposition `(a -> b) -> (~b -> ~a)` with `b` taken to be `~~a` — and
/// the introduction `a -> ~~a`. All three are derived by the IL prover.
#[derive(Clone, Debug)]
pub struct TripleNegationTheorem {
    pub contraposition_instance: Formula,
    pub contraposition_proof: Proof,
    pub intro_instance: Formula,
    pub intro_proof: Proof,
    pub equivalence: Formula,
    pub equivalence_proof: Proof,
}

/// Derive the triple-negation collapse in propositional IL.
pub fn triple_negation_theorem() -> TripleNegationTheorem {
    let parse = |s: &str| crate::formula::parse_formula(s).expect("theorem formulas parse");
    let contraposition_instance = parse("(a -> ~~a) -> (~~~a -> ~a)");
    let intro_instance = parse("a -> ~~a");
    let equivalence = parse("~~~a <-> ~a");
    let prove = |f: &Formula| {
        prove_il_prop(f)
            .expect("propositional")
            .expect("IL theorem is provable")
    };
    TripleNegationTheorem {
        contraposition_proof: prove(&contraposition_instance),
        contraposition_instance,
        intro_proof: prove(&intro_instance),
        intro_instance,
        equivalence_proof: prove(&equivalence),
        equivalence,
    }
}

impl TripleNegationTheorem {
    /// Concatenated trace of the three derivations.
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        out.push_str(&render_proof_trace(&self.contraposition_proof));
        out.push('\n');
        out.push_str(&render_proof_trace(&self.intro_proof));
        out.push('\n');
        out.push_str(&render_proof_trace(&self.equivalence_proof));
        out
    }
}
