//! Translations between logics: the double-negation embeddings of classical
//! into intuitionistic logic, the necessity embedding of intuitionistic
//! logic into S4, and the two non-logical hypothesis-forming moves — the
//! sufficient-reason step and Markov's principle — with their applicability
//! constraints.
//!
//! None of the translations simplify their output; every result is exactly
//! the unrolled definition, so tests can pin it syntactically.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::EngineError;
use crate::formula::{render_formula, Formula};
use crate::kripke::SearchBounds;
use crate::proof::decide;
use crate::verdict::{verdict_to_json, Logic, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error(transparent)]
    Engine(#[from] EngineError),

    /// The sufficient-reason step is only defined on the two doubly negated
    /// shapes.
    #[error("not eligible for the sufficient-reason step: {0}")]
    NotPsrEligible(String),

    /// Markov's move is only defined on a doubly negated existential.
    #[error("not eligible for Markov's move: {0}")]
    NotMarkovEligible(String),

    /// Markov's move requires both constraints to be affirmed.
    #[error("attestation required: {0}")]
    AttestationRequired(String),
}

/// Prefix a propositional formula with a double negation. This suffices for
/// propositional classical-to-intuitionistic embedding; it fails first-order,
/// where [`negative_translation`] must be used instead.
pub fn glivenko(f: &Formula) -> Result<Formula, TranslationError> {
    if f.has_quantifiers() || f.has_predicates() {
        return Err(EngineError::fragment(
            "glivenko",
            "the double-negation prefix is only adequate propositionally; use the negative translation",
        )
        .into());
    }
    if f.has_modalities() {
        return Err(EngineError::fragment("glivenko", "modal input is not translated").into());
    }
    Ok(Formula::neg(Formula::neg(f.clone())))
}

/// The compositional negative translation: atoms are doubly negated;
/// conjunction, implication, universal quantification and negation are
/// translated componentwise; disjunction and existential quantification go
/// through their De Morgan duals.
pub fn negative_translation(f: &Formula) -> Result<Formula, TranslationError> {
    if f.has_modalities() {
        return Err(
            EngineError::fragment("negative_translation", "modal input is not translated").into(),
        );
    }
    Ok(negative(f))
}

fn negative(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Pred(..) => Formula::neg(Formula::neg(f.clone())),
        Formula::Falsum => Formula::Falsum,
        Formula::Neg(a) => Formula::neg(negative(a)),
        Formula::And(a, b) => Formula::and(negative(a), negative(b)),
        Formula::Imp(a, b) => Formula::imp(negative(a), negative(b)),
        Formula::Iff(a, b) => Formula::iff(negative(a), negative(b)),
        Formula::Or(a, b) => Formula::neg(Formula::and(
            Formula::neg(negative(a)),
            Formula::neg(negative(b)),
        )),
        Formula::Forall(x, body) => Formula::forall(x.clone(), negative(body)),
        Formula::Exists(x, body) => Formula::neg(Formula::forall(
            x.clone(),
            Formula::neg(negative(body)),
        )),
        Formula::Box(_) | Formula::Dia(_) => unreachable!("fragment checked"),
    }
}

/// The translation that wraps every subformula node, the outermost included,
/// in a double negation.
pub fn kolmogorov_translation(f: &Formula) -> Result<Formula, TranslationError> {
    if f.has_modalities() {
        return Err(EngineError::fragment(
            "kolmogorov_translation",
            "modal input is not translated",
        )
        .into());
    }
    Ok(kolmogorov(f))
}

fn kolmogorov(f: &Formula) -> Formula {
    let inner = match f {
        Formula::Atom(_) | Formula::Pred(..) | Formula::Falsum => f.clone(),
        Formula::Neg(a) => Formula::neg(kolmogorov(a)),
        Formula::And(a, b) => Formula::and(kolmogorov(a), kolmogorov(b)),
        Formula::Or(a, b) => Formula::or(kolmogorov(a), kolmogorov(b)),
        Formula::Imp(a, b) => Formula::imp(kolmogorov(a), kolmogorov(b)),
        Formula::Iff(a, b) => Formula::iff(kolmogorov(a), kolmogorov(b)),
        Formula::Forall(x, body) => Formula::forall(x.clone(), kolmogorov(body)),
        Formula::Exists(x, body) => Formula::exists(x.clone(), kolmogorov(body)),
        Formula::Box(_) | Formula::Dia(_) => unreachable!("fragment checked"),
    };
    Formula::neg(Formula::neg(inner))
}

/// The necessity embedding into S4: atoms are boxed, conjunction and
/// disjunction go componentwise, implication and negation are boxed, and a
/// biconditional is treated as its two implications.
pub fn gmt_translation(f: &Formula) -> Result<Formula, TranslationError> {
    if !f.is_propositional() {
        return Err(EngineError::fragment(
            "gmt_translation",
            "the S4 embedding takes non-modal propositional input",
        )
        .into());
    }
    Ok(gmt(f))
}

fn gmt(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => Formula::boxed(f.clone()),
        Formula::Falsum => Formula::Falsum,
        Formula::Neg(a) => Formula::boxed(Formula::neg(gmt(a))),
        Formula::And(a, b) => Formula::and(gmt(a), gmt(b)),
        Formula::Or(a, b) => Formula::or(gmt(a), gmt(b)),
        Formula::Imp(a, b) => Formula::boxed(Formula::imp(gmt(a), gmt(b))),
        Formula::Iff(a, b) => {
            let (ta, tb) = (gmt(a), gmt(b));
            Formula::and(
                Formula::boxed(Formula::imp(ta.clone(), tb.clone())),
                Formula::boxed(Formula::imp(tb, ta)),
            )
        }
        _ => unreachable!("fragment checked"),
    }
}

/// Which of the two sanctioned shapes licensed a sufficient-reason step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsrJustification {
    /// `~~G  =>  G`
    OuterDoubleNegation,
    /// `~(exists x. ~G)  =>  forall x. G`
    NegExistsNeg,
}

impl fmt::Display for PsrJustification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsrJustification::OuterDoubleNegation => "outer double negation removed",
            PsrJustification::NegExistsNeg => "negated existential counterexample turned universal",
        })
    }
}

/// The epistemic status every sufficient-reason step carries: it is a
/// hypothesis-forming translation between logics, not an inference inside
/// one, and `decide(~~p -> p, IL) = Invalid` certifies that.
pub const PSR_EPISTEMIC_STATUS: &str = "hypothesis, not inference";

/// A recorded sufficient-reason step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsrStep {
    pub input: Formula,
    pub output: Formula,
    pub justification: PsrJustification,
    pub epistemic_status: String,
}

/// Apply the sufficient-reason step to a doubly negated proposition:
/// `~~G` yields `G` and `~(exists x. ~G)` yields `forall x. G`. Anything
/// else is not eligible — the move is only defined on doubly negated shapes.
pub fn psr_apply(f: &Formula) -> Result<PsrStep, TranslationError> {
    let step = |output: Formula, justification: PsrJustification| PsrStep {
        input: f.clone(),
        output,
        justification,
        epistemic_status: PSR_EPISTEMIC_STATUS.to_string(),
    };
    if let Formula::Neg(inner) = f {
        if let Formula::Neg(core) = &**inner {
            return Ok(step(
                (**core).clone(),
                PsrJustification::OuterDoubleNegation,
            ));
        }
        if let Formula::Exists(x, body) = &**inner {
            if let Formula::Neg(core) = &**body {
                return Ok(step(
                    Formula::forall(x.clone(), (**core).clone()),
                    PsrJustification::NegExistsNeg,
                ));
            }
        }
    }
    Err(TranslationError::NotPsrEligible(format!(
        "`{}` is neither `~~G` nor `~(exists x. ~G)`",
        render_formula(f)
    )))
}

/// The two constraints on applying Markov's move, both of which must be
/// affirmed: the premise is the conclusion of a reductio argument, and the
/// predicate is decidable (with the decision method named).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkovAttestation {
    pub is_aaa_conclusion: bool,
    pub decidability_witness: Option<String>,
}

impl MarkovAttestation {
    pub fn new(is_aaa_conclusion: bool, decidability_witness: Option<&str>) -> Self {
        MarkovAttestation {
            is_aaa_conclusion,
            decidability_witness: decidability_witness.map(str::to_string),
        }
    }
}

/// A recorded application of Markov's move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkovStep {
    pub input: Formula,
    pub output: Formula,
    pub attestation: MarkovAttestation,
}

/// Apply Markov's move `~~(exists x. G) => exists x. G`, which is defined
/// only on doubly negated existentials and only under a full attestation.
pub fn markov_apply(
    f: &Formula,
    attestation: &MarkovAttestation,
) -> Result<MarkovStep, TranslationError> {
    let Formula::Neg(inner) = f else {
        return Err(TranslationError::NotMarkovEligible(format!(
            "`{}` is not a doubly negated existential",
            render_formula(f)
        )));
    };
    let Formula::Neg(core) = &**inner else {
        return Err(TranslationError::NotMarkovEligible(format!(
            "`{}` is not a doubly negated existential",
            render_formula(f)
        )));
    };
    let Formula::Exists(..) = &**core else {
        return Err(TranslationError::NotMarkovEligible(format!(
            "`{}` is doubly negated but not existential; the move does not cover it",
            render_formula(f)
        )));
    };
    if !attestation.is_aaa_conclusion {
        return Err(TranslationError::AttestationRequired(
            "the premise must be attested as the conclusion of a reductio argument".to_string(),
        ));
    }
    if attestation
        .decidability_witness
        .as_deref()
        .map(str::trim)
        .map_or(true, str::is_empty)
    {
        return Err(TranslationError::AttestationRequired(
            "the predicate must be attested decidable, naming the decision method".to_string(),
        ));
    }
    Ok(MarkovStep {
        input: f.clone(),
        output: (**core).clone(),
        attestation: attestation.clone(),
    })
}

// ---------------------------------------------------------------------------
// The quantified double-negation battery
// ---------------------------------------------------------------------------

/// The fixed family of quantified double-negation predicates, in report
/// order.
pub const QDN_FAMILY: [(&str, &str); 5] = [
    ("A1", "forall x. ~~f(x)"),
    ("A2", "~~(forall x. f(x))"),
    ("A3", "~(exists x. ~f(x))"),
    ("A4", "~~(exists x. f(x))"),
    ("A5", "exists x. ~~f(x)"),
];

/// The note attached to implications that exhaust both searches. The pair
/// `A2 <-> A3` is claimed equivalent in Dummett's table (1977, p. 29);
/// standard metatheory leaves the shift direction unprovable, and the report
/// flags the tension instead of endorsing either side.
pub const QDN_UNRESOLVED_NOTE: &str = "unresolved at finite bounds - standard metatheory: \
     unprovable; Dummett's table (1977, p. 29) claims equivalence";

/// One direction of the battery.
#[derive(Clone, Debug)]
pub struct BatteryEntry {
    pub from: &'static str,
    pub to: &'static str,
    pub implication: Formula,
    pub verdict: Verdict,
    /// Set on the unresolved shift directions.
    pub flag: Option<&'static str>,
}

/// Every ordered pair of the family, decided intuitionistically, with the
/// claimed-equivalence pair called out.
#[derive(Clone, Debug)]
pub struct BatteryReport {
    pub entries: Vec<BatteryEntry>,
    /// Outcomes for `A2 -> A3` and `A3 -> A2`.
    pub claimed_equivalence: (Verdict, Verdict),
}

/// Decide every implication between ordered pairs of the quantified
/// double-negation family in IL.
pub fn dummett_battery(bounds: &SearchBounds, depth: usize) -> BatteryReport {
    let family: Vec<(&'static str, Formula)> = QDN_FAMILY
        .iter()
        .map(|(name, text)| {
            (
                *name,
                crate::formula::parse_formula(text).expect("battery formulas parse"),
            )
        })
        .collect();

    let mut entries = Vec::new();
    for (from, premise) in &family {
        for (to, conclusion) in &family {
            if from == to {
                continue;
            }
            let implication = Formula::imp(premise.clone(), conclusion.clone());
            let verdict = decide(&implication, Logic::Il, bounds, depth)
                .expect("battery formulas are monadic first-order");
            let flag = verdict.is_unknown().then_some(QDN_UNRESOLVED_NOTE);
            entries.push(BatteryEntry {
                from,
                to,
                implication,
                verdict,
                flag,
            });
        }
    }
    let outcome = |from: &str, to: &str| {
        entries
            .iter()
            .find(|e| e.from == from && e.to == to)
            .expect("pair present")
            .verdict
            .clone()
    };
    BatteryReport {
        claimed_equivalence: (outcome("A2", "A3"), outcome("A3", "A2")),
        entries,
    }
}

impl BatteryReport {
    pub fn entry(&self, from: &str, to: &str) -> Option<&BatteryEntry> {
        self.entries.iter().find(|e| e.from == from && e.to == to)
    }

    /// Aligned-column text rendering, fixed order.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("quantified double-negation family:\n");
        for (name, text) in QDN_FAMILY {
            out.push_str(&format!("  {name} = {text}\n"));
        }
        out.push('\n');
        let imp_w = self
            .entries
            .iter()
            .map(|e| render_formula(&e.implication).len())
            .max()
            .unwrap_or(0);
        for e in &self.entries {
            out.push_str(&format!(
                "{} -> {}  {:imp_w$}  {:8}{}\n",
                e.from,
                e.to,
                render_formula(&e.implication),
                e.verdict.outcome(),
                e.flag.map(|f| format!("  [{f}]")).unwrap_or_default()
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "claimed equivalence A2 <-> A3: forward {}, backward {}\n",
            self.claimed_equivalence.0.outcome(),
            self.claimed_equivalence.1.outcome()
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": QDN_FAMILY.iter()
                .map(|(n, t)| serde_json::json!({ "name": n, "formula": t }))
                .collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "from": e.from,
                "to": e.to,
                "implication": render_formula(&e.implication),
                "verdict": verdict_to_json(&e.verdict),
                "flag": e.flag,
            })).collect::<Vec<_>>(),
            "claimed_equivalence": {
                "forward": verdict_to_json(&self.claimed_equivalence.0),
                "backward": verdict_to_json(&self.claimed_equivalence.1),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::proof::{prove_il_prop, prove_sequent_fo, DEFAULT_DEPTH};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn glivenko_prefixes_a_double_negation() {
        assert_eq!(glivenko(&p("p | ~p")).unwrap(), p("~~(p | ~p)"));
        assert_eq!(
            glivenko(&p("((p->q)->p)->p")).unwrap(),
            p("~~(((p->q)->p)->p)")
        );
        assert!(glivenko(&p("forall x. f(x)")).is_err());
    }

    #[test]
    fn glivenko_bridges_the_engines_on_lem() {
        let f = p("p | ~p");
        assert!(crate::classical::cl_decide_prop(&f).unwrap().is_valid());
        let proof = prove_il_prop(&glivenko(&f).unwrap()).unwrap();
        assert!(proof.is_some());
    }

    #[test]
    fn negative_translation_unrolls_exactly() {
        assert_eq!(
            negative_translation(&p("p | ~p")).unwrap(),
            p("~(~~~p & ~~~~p)")
        );
        assert_eq!(
            negative_translation(&p("exists x. f(x)")).unwrap(),
            p("~(forall x. ~~~f(x))")
        );
    }

    #[test]
    fn negative_translation_bridges_the_monadic_engines() {
        let f = p("exists x. f(x) | ~(exists x. f(x))");
        assert!(crate::classical::cl_decide_monadic(&f, 2).unwrap().is_valid());
        let translated = negative_translation(&f).unwrap();
        let proof = prove_sequent_fo(&translated, DEFAULT_DEPTH, Logic::Il, 3).unwrap();
        assert!(proof.is_some());
    }

    #[test]
    fn kolmogorov_wraps_every_node() {
        assert_eq!(kolmogorov_translation(&p("p")).unwrap(), p("~~p"));
        assert_eq!(
            kolmogorov_translation(&p("p -> q")).unwrap(),
            p("~~(~~p -> ~~q)")
        );
    }

    #[test]
    fn gmt_unrolls_exactly() {
        assert_eq!(gmt_translation(&p("p")).unwrap(), p("[]p"));
        assert_eq!(gmt_translation(&p("p | ~p")).unwrap(), p("[]p | []~[]p"));
        assert!(gmt_translation(&p("[]p")).is_err());
    }

    #[test]
    fn psr_accepts_exactly_the_two_shapes() {
        let step = psr_apply(&p("~~(forall x. f(x))")).unwrap();
        assert_eq!(step.output, p("forall x. f(x)"));
        assert_eq!(step.justification, PsrJustification::OuterDoubleNegation);
        assert_eq!(step.epistemic_status, PSR_EPISTEMIC_STATUS);

        let step = psr_apply(&p("~(exists X. ~f(X))")).unwrap();
        assert_eq!(step.output, p("forall X. f(X)"));
        assert_eq!(step.justification, PsrJustification::NegExistsNeg);

        assert!(matches!(
            psr_apply(&p("p -> q")),
            Err(TranslationError::NotPsrEligible(_))
        ));
    }

    #[test]
    fn markov_needs_shape_and_both_attestations() {
        let f = p("~~(exists x. f(x))");
        let full = MarkovAttestation::new(true, Some("finite check"));
        let step = markov_apply(&f, &full).unwrap();
        assert_eq!(step.output, p("exists x. f(x)"));

        assert!(matches!(
            markov_apply(&f, &MarkovAttestation::new(false, Some("finite check"))),
            Err(TranslationError::AttestationRequired(_))
        ));
        assert!(matches!(
            markov_apply(&f, &MarkovAttestation::new(true, None)),
            Err(TranslationError::AttestationRequired(_))
        ));
        assert!(matches!(
            markov_apply(&p("~~(forall x. f(x))"), &full),
            Err(TranslationError::NotMarkovEligible(_))
        ));
    }

    #[test]
    fn psr_step_is_not_an_il_inference() {
        let step = psr_apply(&p("~~p")).unwrap();
        let claim = Formula::imp(step.input.clone(), step.output.clone());
        let verdict = decide(&claim, Logic::Il, &SearchBounds::default(), DEFAULT_DEPTH).unwrap();
        assert!(verdict.is_invalid());
    }
}
