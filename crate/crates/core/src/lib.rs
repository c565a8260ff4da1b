//! Decision procedures for classical, intuitionistic, minimal and S4
//! propositional logic (plus the bounded monadic first-order fragment),
//! double-negation translations between them, a rule-based detector for
//! doubly negated propositions in text, and a structural validator for
//! reductio-based argument chains.

pub mod argument;
pub mod classical;
pub mod error;
pub mod formula;
pub mod dnp;
pub mod kripke;
pub mod proof;
pub mod space;
pub mod translations;
pub mod verdict;

pub use argument::{
    validate_aaa, validate_po_theory, AaaRecord, AaaStep, Claim, Consequence, Finding,
    ProblemTheory, Severity, TheoryFormatError, ValidationReport, IL_INFERENCE,
};
pub use classical::{cl_decide_monadic, cl_decide_prop, Valuation};
pub use dnp::{
    annotate_document, annotate_sentence, annotations_to_human, annotations_to_json_lines,
    profile_document, profile_from_annotations, segment_text, AnnotationRecord, Classification,
    DetectorConfig, DocumentProfile, Lexicon, LexiconError, Marker, MarkerKind, ProfileVerdict,
    RuleId,
};
pub use error::EngineError;
pub use formula::{
    classify_negation_profile, collapse_negation_prefix, parse_formula, render_formula, Formula,
    NegationClass, NegationProfile, ParseError,
};
pub use kripke::{
    check_model, force, model_from_json, model_to_json, parse_model_text, render_model_text,
    search_countermodel, Flavor, GroundAtom, KripkeModel, ModelReport, SearchBounds,
};
pub use proof::{
    check_proof, check_proof_detailed, decide, desugar, law_battery, prove_cl_prop, prove_il_prop,
    prove_minimal_prop, prove_s4_prop, prove_sequent_fo, render_proof_trace, resugar,
    triple_negation_theorem, Calculus, LawMatrix, LawRow, Proof, ProofDefect, ProofNode, Rule,
    Sequent, TripleNegationTheorem, DEFAULT_DEPTH,
};
pub use translations::{
    dummett_battery, glivenko, gmt_translation, kolmogorov_translation, markov_apply,
    negative_translation, psr_apply, BatteryEntry, BatteryReport, MarkovAttestation, MarkovStep,
    PsrJustification, PsrStep, TranslationError, PSR_EPISTEMIC_STATUS, QDN_FAMILY,
    QDN_UNRESOLVED_NOTE,
};
pub use verdict::{verdict_to_json, Certificate, CounterExample, Exhaustion, Logic, Verdict};
