//! Classical validity by exhaustive enumeration: truth tables for the
//! propositional fragment, finite domains for the monadic first-order one.
//!
//! Witness ordering is pinned so results are reproducible: assignment slots
//! (atoms sorted by name, then predicate instances sorted by predicate and
//! individual) are enumerated as a binary counter with the first slot
//! toggling fastest, and the first falsifying assignment is returned.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::EngineError;
use crate::formula::Formula;
use crate::verdict::{Certificate, CounterExample, Verdict};

/// Atom truth-table refusal threshold; enumeration is exact or refused.
pub const MAX_TRUTH_TABLE_ATOMS: usize = 20;

/// Assignment-slot refusal threshold for the finite-domain check.
pub const MAX_DOMAIN_SLOTS: usize = 24;

/// A classical counterexample: atom values, and for first-order formulas a
/// finite domain with per-individual predicate values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    pub atoms: BTreeMap<String, bool>,
    pub domain: Vec<String>,
    pub preds: BTreeMap<(String, String), bool>,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.domain.is_empty() {
            parts.push(format!("domain {{{}}}", self.domain.join(", ")));
        }
        for (a, v) in &self.atoms {
            parts.push(format!("{a}={v}"));
        }
        for ((p, d), v) in &self.preds {
            parts.push(format!("{p}({d})={v}"));
        }
        f.write_str(&parts.join(", "))
    }
}

impl Valuation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "domain": self.domain,
            "atoms": self.atoms,
            "preds": self.preds.iter()
                .map(|((p, d), v)| serde_json::json!([format!("{p}({d})"), v]))
                .collect::<Vec<_>>(),
        })
    }
}

fn eval_prop(f: &Formula, atoms: &[String], bits: u64) -> bool {
    match f {
        Formula::Atom(p) => {
            let i = atoms.binary_search(p).expect("atom indexed");
            bits & (1 << i) != 0
        }
        Formula::Falsum => false,
        Formula::Neg(a) => !eval_prop(a, atoms, bits),
        Formula::And(a, b) => eval_prop(a, atoms, bits) && eval_prop(b, atoms, bits),
        Formula::Or(a, b) => eval_prop(a, atoms, bits) || eval_prop(b, atoms, bits),
        Formula::Imp(a, b) => !eval_prop(a, atoms, bits) || eval_prop(b, atoms, bits),
        Formula::Iff(a, b) => eval_prop(a, atoms, bits) == eval_prop(b, atoms, bits),
        _ => unreachable!("fragment checked"),
    }
}

/// Decide classical validity of a propositional formula by truth tables.
/// Never returns `Unknown`; refuses formulas with more than
/// [`MAX_TRUTH_TABLE_ATOMS`] atoms.
pub fn cl_decide_prop(f: &Formula) -> Result<Verdict, EngineError> {
    if !f.is_propositional() {
        return Err(EngineError::fragment(
            "cl_decide_prop",
            "formula must be propositional (no quantifiers, predicates or modalities)",
        ));
    }
    let atoms = f.atoms();
    if atoms.len() > MAX_TRUTH_TABLE_ATOMS {
        return Err(EngineError::TooManyAtoms {
            count: atoms.len(),
            limit: MAX_TRUTH_TABLE_ATOMS,
        });
    }
    let total = 1u64 << atoms.len();
    for bits in 0..total {
        if !eval_prop(f, &atoms, bits) {
            let valuation = Valuation {
                atoms: atoms
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a.clone(), bits & (1 << i) != 0))
                    .collect(),
                ..Valuation::default()
            };
            return Ok(Verdict::Invalid(CounterExample::Valuation(valuation)));
        }
    }
    Ok(Verdict::Valid(Certificate::TruthTable {
        atoms,
        valuations: total,
    }))
}

struct FoTable {
    atoms: Vec<String>,
    preds: Vec<String>,
    domain_size: usize,
}

impl FoTable {
    // Slot layout: atoms first, then (pred, individual) pairs sorted by
    // predicate index and individual index.
    fn slot_count(&self) -> usize {
        self.atoms.len() + self.preds.len() * self.domain_size
    }

    fn atom_bit(&self, name: &str, bits: u64) -> bool {
        let i = self.atoms.binary_search(&name.to_string()).expect("atom indexed");
        bits & (1 << i) != 0
    }

    fn pred_bit(&self, name: &str, ind: usize, bits: u64) -> bool {
        let p = self.preds.binary_search(&name.to_string()).expect("pred indexed");
        let slot = self.atoms.len() + p * self.domain_size + ind;
        bits & (1 << slot) != 0
    }
}

fn eval_fo(
    f: &Formula,
    t: &FoTable,
    bits: u64,
    env: &mut Vec<(String, usize)>,
) -> bool {
    match f {
        Formula::Atom(p) => t.atom_bit(p, bits),
        Formula::Pred(p, x) => {
            let ind = env
                .iter()
                .rev()
                .find(|(v, _)| v == x)
                .map(|(_, d)| *d)
                .expect("formula is closed before evaluation");
            t.pred_bit(p, ind, bits)
        }
        Formula::Falsum => false,
        Formula::Neg(a) => !eval_fo(a, t, bits, env),
        Formula::And(a, b) => eval_fo(a, t, bits, env) && eval_fo(b, t, bits, env),
        Formula::Or(a, b) => eval_fo(a, t, bits, env) || eval_fo(b, t, bits, env),
        Formula::Imp(a, b) => !eval_fo(a, t, bits, env) || eval_fo(b, t, bits, env),
        Formula::Iff(a, b) => eval_fo(a, t, bits, env) == eval_fo(b, t, bits, env),
        Formula::Forall(x, body) => (0..t.domain_size).all(|d| {
            env.push((x.clone(), d));
            let r = eval_fo(body, t, bits, env);
            env.pop();
            r
        }),
        Formula::Exists(x, body) => (0..t.domain_size).any(|d| {
            env.push((x.clone(), d));
            let r = eval_fo(body, t, bits, env);
            env.pop();
            r
        }),
        Formula::Box(_) | Formula::Dia(_) => unreachable!("fragment checked"),
    }
}

/// Decide classical validity of a monadic first-order formula over all
/// nonempty domains of size `1..=max_domain`. Free variables are universally
/// closed. With `k` distinct predicates the check is exact once `max_domain`
/// reaches `2^k`; a smaller cap yields a valid-within-bound certificate.
pub fn cl_decide_monadic(f: &Formula, max_domain: usize) -> Result<Verdict, EngineError> {
    if f.has_modalities() {
        return Err(EngineError::fragment(
            "cl_decide_monadic",
            "modal operators are not part of the first-order fragment",
        ));
    }
    assert!(max_domain >= 1, "max_domain must be positive");
    let mut closed = f.clone();
    for var in f.free_vars().into_iter().rev() {
        closed = Formula::forall(var, closed);
    }
    let atoms = closed.atoms();
    let preds = closed.predicates();
    for m in 1..=max_domain {
        let t = FoTable {
            atoms: atoms.clone(),
            preds: preds.clone(),
            domain_size: m,
        };
        let slots = t.slot_count();
        if slots > MAX_DOMAIN_SLOTS {
            return Err(EngineError::TooManyAtoms {
                count: slots,
                limit: MAX_DOMAIN_SLOTS,
            });
        }
        for bits in 0..(1u64 << slots) {
            let mut env = Vec::new();
            if !eval_fo(&closed, &t, bits, &mut env) {
                let domain: Vec<String> = (0..m).map(|d| format!("d{d}")).collect();
                let valuation = Valuation {
                    atoms: atoms
                        .iter()
                        .enumerate()
                        .map(|(i, a)| (a.clone(), bits & (1 << i) != 0))
                        .collect(),
                    preds: preds
                        .iter()
                        .flat_map(|p| {
                            let t = &t;
                            let bits = bits;
                            (0..m).map(move |d| {
                                ((p.clone(), format!("d{d}")), t.pred_bit(p, d, bits))
                            })
                        })
                        .collect(),
                    domain,
                };
                return Ok(Verdict::Invalid(CounterExample::Valuation(valuation)));
            }
        }
    }
    let needed = 1usize << preds.len().min(16);
    Ok(Verdict::Valid(Certificate::DomainCheck {
        max_domain,
        exact: max_domain >= needed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    // Independent truth-table oracle for cross-checking the engine.
    fn oracle_valid(f: &Formula) -> bool {
        fn eval(f: &Formula, assign: &BTreeMap<String, bool>) -> bool {
            match f {
                Formula::Atom(a) => assign[a],
                Formula::Falsum => false,
                Formula::Neg(x) => !eval(x, assign),
                Formula::And(a, b) => eval(a, assign) && eval(b, assign),
                Formula::Or(a, b) => eval(a, assign) || eval(b, assign),
                Formula::Imp(a, b) => !eval(a, assign) || eval(b, assign),
                Formula::Iff(a, b) => eval(a, assign) == eval(b, assign),
                _ => unreachable!(),
            }
        }
        let atoms = f.atoms();
        let n = atoms.len();
        (0..(1u64 << n)).all(|bits| {
            let assign: BTreeMap<String, bool> = atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), bits & (1 << i) != 0))
                .collect();
            eval(f, &assign)
        })
    }

    #[test]
    fn double_negation_elimination_is_classically_valid() {
        assert!(cl_decide_prop(&p("~~p -> p")).unwrap().is_valid());
    }

    #[test]
    fn implication_is_not_valid_and_witness_is_pinned() {
        let v = cl_decide_prop(&p("p -> q")).unwrap();
        let w = v.witness_valuation().expect("invalid with valuation").clone();
        assert_eq!(w.atoms["p"], true);
        assert_eq!(w.atoms["q"], false);
    }

    #[test]
    fn peirce_matches_the_truth_table_oracle() {
        let f = p("((p -> q) -> p) -> p");
        assert!(oracle_valid(&f));
        assert!(cl_decide_prop(&f).unwrap().is_valid());
    }

    #[test]
    fn engine_agrees_with_oracle_on_law_formulas() {
        let formulas = [
            "~~p -> p",
            "p | ~p",
            "false -> p",
            "~~~p <-> ~p",
            "(p -> q) -> (~q -> ~p)",
            "((p -> q) -> p) -> p",
            "p -> ~~p",
            "p -> q",
            "p & q -> q | r",
            "(p <-> q) <-> ((p -> q) & (q -> p))",
        ];
        for text in formulas {
            let f = p(text);
            assert_eq!(
                cl_decide_prop(&f).unwrap().is_valid(),
                oracle_valid(&f),
                "{text}"
            );
        }
    }

    #[test]
    fn rejects_quantified_input() {
        assert!(cl_decide_prop(&p("forall x. f(x)")).is_err());
    }

    #[test]
    fn refuses_oversized_truth_tables() {
        let mut f = p("a0");
        for i in 1..=20 {
            f = Formula::and(f, Formula::atom(format!("a{i}")));
        }
        assert!(matches!(
            cl_decide_prop(&f),
            Err(EngineError::TooManyAtoms { .. })
        ));
    }

    #[test]
    fn no_exists_neg_implies_forall_is_classically_valid() {
        let f = p("~(exists x. ~f(x)) -> forall x. f(x)");
        assert!(cl_decide_monadic(&f, 2).unwrap().is_valid());
    }

    #[test]
    fn forall_implies_exists_over_nonempty_domains() {
        let f = p("(forall x. f(x)) -> exists x. f(x)");
        assert!(cl_decide_monadic(&f, 2).unwrap().is_valid());
    }

    #[test]
    fn exists_to_forall_has_the_pinned_two_element_witness() {
        let f = p("exists x. f(x) -> forall x. f(x)");
        let v = cl_decide_monadic(&f, 2).unwrap();
        let w = v.witness_valuation().expect("invalid").clone();
        assert_eq!(w.domain, vec!["d0", "d1"]);
        assert_eq!(w.preds[&("f".to_string(), "d0".to_string())], true);
        assert_eq!(w.preds[&("f".to_string(), "d1".to_string())], false);
    }

    #[test]
    fn exactness_tag_tracks_the_monadic_bound() {
        let f = p("(forall x. f(x)) -> forall x. f(x)");
        match cl_decide_monadic(&f, 1).unwrap() {
            Verdict::Valid(Certificate::DomainCheck { exact, .. }) => assert!(!exact),
            other => panic!("expected valid, got {other:?}"),
        }
        match cl_decide_monadic(&f, 2).unwrap() {
            Verdict::Valid(Certificate::DomainCheck { exact, .. }) => assert!(exact),
            other => panic!("expected valid, got {other:?}"),
        }
    }
}
