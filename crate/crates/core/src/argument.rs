//! Structural encoding and validation of problem-organized theories: a chain
//! of reductio (ad absurdum) arguments concluding in a doubly negated
//! predicate, exactly one sufficient-reason step turning it into an
//! affirmative hypothesis, and classical consequences drawn from there.
//!
//! Records mix prose and formulas: historical arguments are prose, so steps
//! without formulas are legal and checked structurally only. Where formulas
//! are present the engines are consulted — reductio steps tagged as
//! intuitionistic inferences must not be refutable, and classical
//! consequences are checked against the sufficient-reason output plus the
//! background. Bounded engines cannot certify everything, so `Unknown`
//! outcomes are warnings, not failures.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{classify_negation_profile, render_formula, Formula, NegationClass};
use crate::kripke::SearchBounds;
use crate::proof::decide;
use crate::translations::{psr_apply, PsrStep, PSR_EPISTEMIC_STATUS};
use crate::verdict::{Logic, Verdict};

/// A statement: prose, optionally backed by a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<Formula>,
}

impl Claim {
    pub fn text(text: &str) -> Self {
        Claim {
            text: text.to_string(),
            formula: None,
        }
    }

    pub fn formal(text: &str, formula: Formula) -> Self {
        Claim {
            text: text.to_string(),
            formula: Some(formula),
        }
    }
}

/// Justification tag that subjects a step to the intuitionistic inference
/// check.
pub const IL_INFERENCE: &str = "il-inference";

/// One step of a reductio chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AaaStep {
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<Formula>,
    /// Free-form tag; `il-inference` makes the step checkable.
    pub justification: String,
    /// Marks the step that reaches absurdity; required on the final step.
    #[serde(default)]
    pub absurdity_reached: bool,
}

/// A reductio ad absurdum argument: assume the negation of the thesis,
/// derive absurdity, conclude the doubly negated thesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AaaRecord {
    pub thesis: Claim,
    pub hypothesis: Claim,
    pub chain: Vec<AaaStep>,
    pub conclusion: Claim,
}

/// A classical consequence drawn after the sufficient-reason step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consequence {
    pub formula: Formula,
    pub justification: String,
}

/// A problem-organized theory record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemTheory {
    pub problem: String,
    #[serde(default)]
    pub background: Vec<Claim>,
    pub aaas: Vec<AaaRecord>,
    /// The doubly negated predicate the chain concludes in.
    pub final_predicate: Formula,
    /// Exactly one sufficient-reason step is admissible.
    pub psr_steps: Vec<PsrStep>,
    #[serde(default)]
    pub classical_consequences: Vec<Consequence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("theory file error: {0}")]
pub struct TheoryFormatError(pub String);

impl ProblemTheory {
    pub fn from_json_str(text: &str) -> Result<ProblemTheory, TheoryFormatError> {
        serde_json::from_str(text).map_err(|e| TheoryFormatError(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("theory serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    Failure,
    Warning,
    Info,
}

/// One validation finding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    pub code: String,
    pub message: String,
}

/// All findings from a validation run; failures mean the record does not
/// have the required structure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self
            .findings
            .iter()
            .any(|f| f.severity == Severity::Failure)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Failure)
    }

    fn push(&mut self, severity: Severity, code: &str, message: String) {
        self.findings.push(Finding {
            severity,
            code: code.to_string(),
            message,
        });
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for f in &self.findings {
            let tag = match f.severity {
                Severity::Failure => "FAIL",
                Severity::Warning => "WARN",
                Severity::Info => "info",
            };
            out.push_str(&format!("{tag} {}: {}\n", f.code, f.message));
        }
        out.push_str(if self.passed() {
            "result: pass\n"
        } else {
            "result: fail\n"
        });
        out
    }
}

/// Check one reductio argument: the hypothesis negates the thesis, the final
/// step reaches absurdity, the conclusion doubly negates the thesis, and
/// every adjacent formal step tagged `il-inference` is not intuitionistically
/// refutable given the hypothesis and the earlier formal steps.
pub fn validate_aaa(a: &AaaRecord, depth: usize, bounds: &SearchBounds) -> ValidationReport {
    let mut report = ValidationReport::default();
    validate_aaa_into(a, &[], depth, bounds, "", &mut report);
    report
}

fn validate_aaa_into(
    a: &AaaRecord,
    background: &[Formula],
    depth: usize,
    bounds: &SearchBounds,
    ctx: &str,
    report: &mut ValidationReport,
) {
    if let (Some(thesis), Some(hypothesis)) = (&a.thesis.formula, &a.hypothesis.formula) {
        if *hypothesis != Formula::neg(thesis.clone()) {
            report.push(
                Severity::Failure,
                "hypothesis-negates-thesis",
                format!("{ctx}hypothesis must be the negation of the thesis"),
            );
        }
    }
    match a.chain.last() {
        None => report.push(
            Severity::Failure,
            "nonempty-chain",
            format!("{ctx}a reductio needs at least one chain step"),
        ),
        Some(last) => {
            if !last.absurdity_reached {
                report.push(
                    Severity::Failure,
                    "absurdity-reached",
                    format!("{ctx}the final chain step must be marked as reaching absurdity"),
                );
            }
            if let Some(f) = &last.formula {
                if *f != Formula::Falsum {
                    report.push(
                        Severity::Failure,
                        "final-step-absurd",
                        format!("{ctx}final chain formula must be absurdity, found `{}`",
                            render_formula(f)),
                    );
                }
            }
        }
    }
    if let (Some(thesis), Some(conclusion)) = (&a.thesis.formula, &a.conclusion.formula) {
        if *conclusion != Formula::neg(Formula::neg(thesis.clone())) {
            report.push(
                Severity::Failure,
                "conclusion-doubly-negates-thesis",
                format!("{ctx}conclusion must be double negation of thesis"),
            );
        }
    }

    // Inference checks accumulate what the argument has established so far:
    // the background, the hypothesis, and every earlier formal step.
    let mut established: Vec<Formula> = background.to_vec();
    if let Some(h) = &a.hypothesis.formula {
        established.push(h.clone());
    }
    for (i, step) in a.chain.iter().enumerate() {
        let Some(f) = &step.formula else { continue };
        if step.justification == IL_INFERENCE && !established.is_empty() {
            let premises = conjoin(&established);
            let claim = Formula::imp(premises, f.clone());
            match decide(&claim, Logic::Il, bounds, depth) {
                Ok(Verdict::Valid(_)) => {}
                Ok(Verdict::Invalid(_)) => report.push(
                    Severity::Failure,
                    "il-inference-refuted",
                    format!(
                        "{ctx}step {i} does not follow intuitionistically: `{}` is refuted",
                        render_formula(&claim)
                    ),
                ),
                Ok(Verdict::Unknown(_)) => report.push(
                    Severity::Warning,
                    "il-inference-unresolved",
                    format!(
                        "{ctx}step {i}: `{}` is neither proved nor refuted at these bounds",
                        render_formula(&claim)
                    ),
                ),
                Err(e) => report.push(
                    Severity::Warning,
                    "il-inference-unsupported",
                    format!("{ctx}step {i}: {e}"),
                ),
            }
        }
        established.push(f.clone());
    }
}

fn conjoin(fs: &[Formula]) -> Formula {
    let mut it = fs.iter().cloned();
    let first = it.next().expect("nonempty");
    it.fold(first, Formula::and)
}

/// Check a whole problem-organized theory: the reductio chain links up, the
/// final predicate is a doubly negated conclusion of the last argument,
/// exactly one sufficient-reason step reproduces from it, and the classical
/// consequences follow from its output plus the background.
pub fn validate_po_theory(
    t: &ProblemTheory,
    depth: usize,
    bounds: &SearchBounds,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let background: Vec<Formula> = t
        .background
        .iter()
        .filter_map(|c| c.formula.clone())
        .collect();

    if t.aaas.is_empty() {
        report.push(
            Severity::Failure,
            "nonempty-theory",
            "a problem-organized theory needs at least one reductio argument".to_string(),
        );
    }
    for (i, a) in t.aaas.iter().enumerate() {
        validate_aaa_into(a, &background, depth, bounds, &format!("aaa[{i}]: "), &mut report);
    }

    // Chain linkage: a formal conclusion must reappear among the next
    // argument's formal material.
    for i in 0..t.aaas.len().saturating_sub(1) {
        let Some(conclusion) = &t.aaas[i].conclusion.formula else {
            continue;
        };
        let next = &t.aaas[i + 1];
        let mut pool: Vec<&Formula> = next.chain.iter().filter_map(|s| s.formula.as_ref()).collect();
        pool.extend(next.thesis.formula.as_ref());
        pool.extend(next.hypothesis.formula.as_ref());
        pool.extend(background.iter());
        let formal_next = !pool.is_empty();
        if formal_next && !pool.iter().any(|f| **f == *conclusion) {
            report.push(
                Severity::Failure,
                "chain-linkage",
                format!(
                    "conclusion of argument {i} does not reappear in argument {} or the background",
                    i + 1
                ),
            );
        }
    }

    if let Some(last) = t.aaas.last() {
        if let Some(conclusion) = &last.conclusion.formula {
            if *conclusion != t.final_predicate {
                report.push(
                    Severity::Failure,
                    "final-predicate-concludes-chain",
                    "final predicate must be the conclusion of the last reductio".to_string(),
                );
            }
        }
    }

    let profile = classify_negation_profile(&t.final_predicate);
    let dnp_shape = profile.class == NegationClass::DoublyNegated
        || matches!(
            &t.final_predicate,
            Formula::Neg(inner) if matches!(&**inner, Formula::Exists(_, body)
                if matches!(&**body, Formula::Neg(_)))
        );
    if !dnp_shape {
        report.push(
            Severity::Failure,
            "final-predicate-dnp",
            "final predicate must be a DNP".to_string(),
        );
    }

    if t.psr_steps.len() != 1 {
        report.push(
            Severity::Failure,
            "single-psr",
            format!("exactly one PSR step, found {}", t.psr_steps.len()),
        );
    }
    if let Some(step) = t.psr_steps.first() {
        if step.input != t.final_predicate {
            report.push(
                Severity::Failure,
                "psr-input",
                "PSR step input must be the final predicate".to_string(),
            );
        }
        match psr_apply(&t.final_predicate) {
            Ok(expected) => {
                if expected.output != step.output || expected.justification != step.justification {
                    report.push(
                        Severity::Failure,
                        "psr-reproducible",
                        "PSR step must be reproducible from the final predicate".to_string(),
                    );
                }
            }
            Err(e) => report.push(Severity::Failure, "psr-eligible", e.to_string()),
        }
        if step.epistemic_status != PSR_EPISTEMIC_STATUS {
            report.push(
                Severity::Warning,
                "psr-status",
                format!(
                    "PSR step carries status `{}`; the canonical tag is `{PSR_EPISTEMIC_STATUS}`",
                    step.epistemic_status
                ),
            );
        }
    }

    if let Some(step) = t.psr_steps.first() {
        let mut premises = vec![step.output.clone()];
        premises.extend(background.iter().cloned());
        let premises = conjoin(&premises);
        for (i, c) in t.classical_consequences.iter().enumerate() {
            let claim = Formula::imp(premises.clone(), c.formula.clone());
            match decide(&claim, Logic::Cl, bounds, depth) {
                Ok(Verdict::Valid(_)) => {}
                Ok(Verdict::Invalid(_)) => report.push(
                    Severity::Failure,
                    "consequence-refuted",
                    format!(
                        "classical consequence {i} is refuted: `{}`",
                        render_formula(&claim)
                    ),
                ),
                Ok(Verdict::Unknown(_)) => report.push(
                    Severity::Warning,
                    "consequence-unresolved",
                    format!(
                        "classical consequence {i} is neither proved nor refuted at these bounds"
                    ),
                ),
                Err(e) => report.push(
                    Severity::Warning,
                    "consequence-unsupported",
                    format!("classical consequence {i}: {e}"),
                ),
            }
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::proof::DEFAULT_DEPTH;
    use crate::translations::PsrJustification;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn minimal_aaa() -> AaaRecord {
        AaaRecord {
            thesis: Claim::formal("contradictions are impossible", p("~(p & ~p)")),
            hypothesis: Claim::formal("suppose a contradiction held", p("~~(p & ~p)")),
            chain: vec![
                AaaStep {
                    statement: "the supposed contradiction refutes itself".to_string(),
                    formula: Some(Formula::Falsum),
                    justification: IL_INFERENCE.to_string(),
                    absurdity_reached: true,
                },
            ],
            conclusion: Claim::formal(
                "contradictions are doubly rejected",
                p("~~~(p & ~p)"),
            ),
        }
    }

    #[test]
    fn a_well_formed_reductio_passes() {
        let report = validate_aaa(&minimal_aaa(), DEFAULT_DEPTH, &SearchBounds::default());
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn wrong_conclusion_is_a_structural_failure() {
        let mut a = minimal_aaa();
        a.conclusion = Claim::formal("wrong", p("~(p & ~p)"));
        let report = validate_aaa(&a, DEFAULT_DEPTH, &SearchBounds::default());
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|f| f.message.contains("conclusion must be double negation of thesis")));
    }

    #[test]
    fn refutable_inference_step_fails() {
        let mut a = minimal_aaa();
        a.hypothesis = Claim::formal("suppose not", p("~q"));
        a.thesis = Claim::formal("q", p("q"));
        a.conclusion = Claim::formal("doubly not not", p("~~q"));
        let report = validate_aaa(&a, DEFAULT_DEPTH, &SearchBounds::default());
        assert!(report
            .findings
            .iter()
            .any(|f| f.code == "il-inference-refuted"));
    }

    #[test]
    fn text_only_records_are_checked_structurally_only() {
        let a = AaaRecord {
            thesis: Claim::text("the alternative geometry is workable"),
            hypothesis: Claim::text("suppose it breaks down"),
            chain: vec![AaaStep {
                statement: "the breakdown contradicts the derived theorems".to_string(),
                formula: None,
                justification: "text".to_string(),
                absurdity_reached: true,
            }],
            conclusion: Claim::text("it cannot be refuted"),
        };
        let report = validate_aaa(&a, DEFAULT_DEPTH, &SearchBounds::default());
        assert!(report.passed(), "{}", report.render_text());
    }

    fn toy_theory() -> ProblemTheory {
        ProblemTheory {
            problem: "does every instance satisfy f".to_string(),
            background: vec![Claim::text(
                "f is decidable on each instance by a direct finite test",
            )],
            aaas: vec![AaaRecord {
                thesis: Claim::text("every instance satisfies f"),
                hypothesis: Claim::text("suppose some instance fails f"),
                chain: vec![AaaStep {
                    statement: "the decision method would exhibit the failing instance; none appears"
                        .to_string(),
                    formula: Some(Formula::Falsum),
                    justification: "text".to_string(),
                    absurdity_reached: true,
                }],
                conclusion: Claim::formal(
                    "no instance fails f",
                    p("~(exists x. ~f(x))"),
                ),
            }],
            final_predicate: p("~(exists x. ~f(x))"),
            psr_steps: vec![PsrStep {
                input: p("~(exists x. ~f(x))"),
                output: p("forall x. f(x)"),
                justification: PsrJustification::NegExistsNeg,
                epistemic_status: PSR_EPISTEMIC_STATUS.to_string(),
            }],
            classical_consequences: vec![
                Consequence {
                    formula: p("exists x. f(x)"),
                    justification: "instances exist, so some instance satisfies f".to_string(),
                },
                Consequence {
                    formula: p("f(c)"),
                    justification: "any named instance satisfies f".to_string(),
                },
            ],
        }
    }

    #[test]
    fn toy_theory_passes() {
        let report = validate_po_theory(&toy_theory(), DEFAULT_DEPTH, &SearchBounds::default());
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn two_psr_steps_fail_with_the_named_error() {
        let mut t = toy_theory();
        t.psr_steps.push(t.psr_steps[0].clone());
        let report = validate_po_theory(&t, DEFAULT_DEPTH, &SearchBounds::default());
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|f| f.message.contains("exactly one PSR step")));
    }

    #[test]
    fn affirmative_final_predicate_fails_with_the_named_error() {
        let mut t = toy_theory();
        t.final_predicate = p("forall x. f(x)");
        let report = validate_po_theory(&t, DEFAULT_DEPTH, &SearchBounds::default());
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|f| f.message.contains("final predicate must be a DNP")));
    }

    #[test]
    fn validation_is_idempotent() {
        let t = toy_theory();
        let a = validate_po_theory(&t, DEFAULT_DEPTH, &SearchBounds::default());
        let b = validate_po_theory(&t, DEFAULT_DEPTH, &SearchBounds::default());
        assert_eq!(a, b);
    }

    #[test]
    fn theory_round_trips_through_json() {
        let t = toy_theory();
        let json = t.to_json_string();
        let back = ProblemTheory::from_json_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
