//! Rule-based detection of doubly negated propositions (DNPs) in plain
//! English text.
//!
//! The detector is an explicitly heuristic approximation of a reading
//! method: rhetorical double negations are excluded, `only`, modal words and
//! `no more ... than` comparatives count as full DNPs on their own, negative
//! interrogatives are flagged low-confidence, and context-negative words
//! supply understood second negations. What a human reader resolves from
//! meaning, the detector approximates with configurable word lists, so both
//! false positives and false negatives are expected at the margins.
//!
//! Everything is deterministic: identical input text, lexicon and
//! configuration produce byte-identical annotations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Detection rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    /// Rhetorical double negation (`nothing else than` + quantity): excluded.
    R1,
    /// `only` works as a DNP.
    R2,
    /// Modal words work as DNPs.
    R3,
    /// `no more ... than` comparatives work as DNPs.
    R4,
    /// Negative interrogative; fired on surface form only, low confidence.
    R5,
    /// Context-negative word supplies an understood second negation.
    R6,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// What a marker span matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerKind {
    ExplicitNegative,
    NegativePrefix,
    ContextNegative,
    ModalTrigger,
    OnlyTrigger,
    ComparativeTrigger,
    RhetoricPattern,
}

impl MarkerKind {
    /// Negation weight. Triggers that work as DNPs by themselves weigh 2.
    fn weight(self) -> usize {
        match self {
            MarkerKind::ExplicitNegative
            | MarkerKind::NegativePrefix
            | MarkerKind::ContextNegative => 1,
            MarkerKind::ModalTrigger
            | MarkerKind::OnlyTrigger
            | MarkerKind::ComparativeTrigger => 2,
            MarkerKind::RhetoricPattern => 0,
        }
    }
}

/// A matched span within a sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marker {
    /// Byte offsets, relative to the same origin as the sentence span.
    pub span: (usize, usize),
    pub kind: MarkerKind,
    pub token: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Affirmative,
    SingleNegation,
    Dnp,
    RhetoricalExcluded,
}

/// Per-sentence detection result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    /// Byte offsets of the sentence in the document.
    pub sentence_span: (usize, usize),
    pub text: String,
    pub markers: Vec<Marker>,
    pub rules_fired: BTreeSet<RuleId>,
    pub classification: Classification,
    /// True when the DNP classification rests on the interrogative rule
    /// alone, whose intended-answer condition the detector cannot see.
    pub low_confidence: bool,
}

/// Word lists and patterns driving the detector. All entries are lowercase
/// and deduplicated; the loader normalizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicon {
    pub explicit_negatives: BTreeSet<String>,
    pub negative_prefixes: Vec<String>,
    pub context_negatives: BTreeSet<String>,
    pub modal_triggers: BTreeSet<String>,
    /// `(opening phrase, later word)` pairs such as `no more ... than`.
    pub comparative_patterns: Vec<(String, String)>,
    /// Phrases that, followed by a quantity, mark a rhetorical double
    /// negation.
    pub rhetoric_patterns: Vec<String>,
    /// Stems a negative prefix may attach to; keeps `university` from
    /// counting as a negation.
    pub stems: BTreeSet<String>,
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon {
            explicit_negatives: set(&[
                "not", "no", "nothing", "never", "without", "cannot", "none", "nobody",
                "neither", "nor",
            ]),
            negative_prefixes: ["in", "un", "non", "im", "ir"]
                .iter()
                .map(|p| p.to_string())
                .collect(),
            context_negatives: set(&["harm", "kill", "impossible", "change", "different", "variation"]),
            modal_triggers: set(&["must", "possible", "necessary", "may", "impossible"]),
            comparative_patterns: vec![
                ("no more".to_string(), "than".to_string()),
                ("no less".to_string(), "than".to_string()),
            ],
            rhetoric_patterns: vec!["nothing else than".to_string()],
            stems: set(&[
                "admissible", "avoidable", "capable", "certain", "comparable", "compatible",
                "complete", "consistent", "correct", "countable", "definite", "dependent",
                "determinate", "direct", "divisible", "equal", "finite", "formal", "just",
                "known", "legal", "limited", "logical", "measurable", "moral", "mortal",
                "movable", "natural", "nocent", "nocuous", "perfect", "possible", "probable",
                "proper", "pure", "rational", "real", "regular", "relevant", "responsible",
                "reversible", "stable", "sufficient", "violent", "visible", "voluntary",
            ]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("lexicon format error on line {line}: {message}")]
pub struct LexiconError {
    pub line: usize,
    pub message: String,
}

impl Lexicon {
    /// Parse the sectioned lexicon file format: `[section]` headers with one
    /// lowercase entry per line; `#` starts a comment. Entries are
    /// normalized to lowercase and deduplicated.
    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon {
            explicit_negatives: BTreeSet::new(),
            negative_prefixes: Vec::new(),
            context_negatives: BTreeSet::new(),
            modal_triggers: BTreeSet::new(),
            comparative_patterns: Vec::new(),
            rhetoric_patterns: Vec::new(),
            stems: BTreeSet::new(),
        };
        let mut section: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = Some(name.to_string());
                continue;
            }
            let entry = line.to_lowercase();
            match section.as_deref() {
                Some("explicit_negatives") => {
                    lex.explicit_negatives.insert(entry);
                }
                Some("negative_prefixes") => {
                    let p = entry.trim_end_matches('-').to_string();
                    if !lex.negative_prefixes.contains(&p) {
                        lex.negative_prefixes.push(p);
                    }
                }
                Some("context_negatives") => {
                    lex.context_negatives.insert(entry);
                }
                Some("modal_triggers") => {
                    lex.modal_triggers.insert(entry);
                }
                Some("comparative_patterns") => {
                    let Some((open, close)) = entry.split_once("...") else {
                        return Err(LexiconError {
                            line: lineno,
                            message: "comparative pattern needs `opening ... word`".to_string(),
                        });
                    };
                    let pair = (open.trim().to_string(), close.trim().to_string());
                    if !lex.comparative_patterns.contains(&pair) {
                        lex.comparative_patterns.push(pair);
                    }
                }
                Some("rhetoric_patterns") => {
                    if !lex.rhetoric_patterns.contains(&entry) {
                        lex.rhetoric_patterns.push(entry);
                    }
                }
                Some("stems") => {
                    lex.stems.insert(entry);
                }
                Some(other) => {
                    return Err(LexiconError {
                        line: lineno,
                        message: format!("unknown section `{other}`"),
                    });
                }
                None => {
                    return Err(LexiconError {
                        line: lineno,
                        message: "entry before any `[section]` header".to_string(),
                    });
                }
            }
        }
        Ok(lex)
    }

    /// Render in the file format `parse` reads.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut section = |name: &str, entries: Vec<String>| {
            out.push_str(&format!("[{name}]\n"));
            for e in entries {
                out.push_str(&e);
                out.push('\n');
            }
            out.push('\n');
        };
        section(
            "explicit_negatives",
            self.explicit_negatives.iter().cloned().collect(),
        );
        section(
            "negative_prefixes",
            self.negative_prefixes.iter().map(|p| format!("{p}-")).collect(),
        );
        section(
            "context_negatives",
            self.context_negatives.iter().cloned().collect(),
        );
        section("modal_triggers", self.modal_triggers.iter().cloned().collect());
        section(
            "comparative_patterns",
            self.comparative_patterns
                .iter()
                .map(|(a, b)| format!("{a} ... {b}"))
                .collect(),
        );
        section("rhetoric_patterns", self.rhetoric_patterns.clone());
        section("stems", self.stems.iter().cloned().collect());
        out
    }
}

/// Detector thresholds and segmentation settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    /// Document verdict thresholds; these are configuration defaults
    /// calibrated on the bundled fixtures, not derived quantities.
    pub min_dnp_count: usize,
    /// Minimum DNPs per 100 sentences.
    pub min_density: f64,
    /// Words (without the dot) that do not end a sentence. Single letters
    /// are always treated as initials.
    pub abbreviations: BTreeSet<String>,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            min_dnp_count: 5,
            min_density: 3.0,
            abbreviations: set(&["dr", "mr", "mrs", "ms", "prof", "st", "vs", "etc", "fig"]),
        }
    }
}

/// Split text into sentence spans on `.`, `!`, `?`, skipping the configured
/// abbreviations; spans are non-overlapping byte ranges covering all
/// non-whitespace content.
pub fn segment_text(text: &str, cfg: &DetectorConfig) -> Vec<(usize, usize)> {
    let bytes = text.as_bytes();
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if start.is_none() && !c.is_whitespace() {
            start = Some(i);
        }
        if matches!(c, '.' | '!' | '?') {
            let is_boundary = if c == '.' {
                let word_end = i;
                let mut word_start = i;
                while word_start > 0 && (bytes[word_start - 1] as char).is_ascii_alphabetic() {
                    word_start -= 1;
                }
                let word = text[word_start..word_end].to_lowercase();
                !(word.len() == 1 || cfg.abbreviations.contains(&word))
            } else {
                true
            };
            if is_boundary {
                if let Some(s) = start {
                    let mut end = i + 1;
                    while end < bytes.len() && matches!(bytes[end] as char, '.' | '!' | '?') {
                        end += 1;
                    }
                    spans.push((s, end));
                    i = end;
                    start = None;
                    continue;
                }
            }
        }
        i += 1;
    }
    if let Some(s) = start {
        let trailing = text[s..].trim_end();
        if !trailing.is_empty() {
            spans.push((s, s + trailing.len()));
        }
    }
    spans
}

struct Token {
    start: usize,
    end: usize,
    lower: String,
}

fn tokenize(sentence: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in sentence.char_indices() {
        let is_word = c.is_alphanumeric() || c == '\'';
        match (start, is_word) {
            (None, true) => start = Some(i),
            (Some(s), false) => {
                tokens.push(Token {
                    start: s,
                    end: i,
                    lower: sentence[s..i].to_lowercase(),
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            start: s,
            end: sentence.len(),
            lower: sentence[s..].to_lowercase(),
        });
    }
    tokens
}

fn is_quantity(token: &str) -> bool {
    token.starts_with(|c: char| c.is_ascii_digit())
}

/// Annotate one sentence. Marker spans are relative to `sentence`.
pub fn annotate_sentence(sentence: &str, lex: &Lexicon, _cfg: &DetectorConfig) -> AnnotationRecord {
    let tokens = tokenize(sentence);
    let mut markers: Vec<Marker> = Vec::new();
    let mut rules: BTreeSet<RuleId> = BTreeSet::new();
    let mut consumed = vec![false; tokens.len()];

    let phrase_at = |tokens: &[Token], i: usize, phrase: &str| -> Option<usize> {
        let words: Vec<&str> = phrase.split_whitespace().collect();
        if i + words.len() > tokens.len() {
            return None;
        }
        words
            .iter()
            .enumerate()
            .all(|(k, w)| tokens[i + k].lower == *w)
            .then_some(words.len())
    };

    // Rhetorical exclusion takes precedence over everything else.
    let mut rhetorical = false;
    for i in 0..tokens.len() {
        for pattern in &lex.rhetoric_patterns {
            if let Some(len) = phrase_at(&tokens, i, pattern) {
                if tokens.get(i + len).is_some_and(|t| is_quantity(&t.lower)) {
                    rhetorical = true;
                    rules.insert(RuleId::R1);
                    markers.push(Marker {
                        span: (tokens[i].start, tokens[i + len - 1].end),
                        kind: MarkerKind::RhetoricPattern,
                        token: pattern.clone(),
                    });
                    for c in consumed.iter_mut().skip(i).take(len) {
                        *c = true;
                    }
                }
            }
        }
    }

    // Comparatives: an opening phrase with its closing word later on.
    for i in 0..tokens.len() {
        if consumed[i] {
            continue;
        }
        for (open, close) in &lex.comparative_patterns {
            let Some(len) = phrase_at(&tokens, i, open) else {
                continue;
            };
            let closes = (i + len..tokens.len()).any(|j| tokens[j].lower == *close);
            if closes {
                rules.insert(RuleId::R4);
                markers.push(Marker {
                    span: (tokens[i].start, tokens[i + len - 1].end),
                    kind: MarkerKind::ComparativeTrigger,
                    token: open.clone(),
                });
                for c in consumed.iter_mut().skip(i).take(len) {
                    *c = true;
                }
            }
        }
    }

    // Single-token markers, one kind per token, in priority order.
    for (i, t) in tokens.iter().enumerate() {
        if consumed[i] {
            continue;
        }
        let mark = |kind: MarkerKind| Marker {
            span: (t.start, t.end),
            kind,
            token: t.lower.clone(),
        };
        if lex.explicit_negatives.contains(&t.lower) {
            markers.push(mark(MarkerKind::ExplicitNegative));
        } else if lex.modal_triggers.contains(&t.lower) {
            rules.insert(RuleId::R3);
            markers.push(mark(MarkerKind::ModalTrigger));
        } else if t.lower == "only" {
            rules.insert(RuleId::R2);
            markers.push(mark(MarkerKind::OnlyTrigger));
        } else if lex.context_negatives.contains(&t.lower) {
            rules.insert(RuleId::R6);
            markers.push(mark(MarkerKind::ContextNegative));
        } else if let Some(()) = lex.negative_prefixes.iter().find_map(|p| {
            let stem = t.lower.strip_prefix(p)?;
            lex.stems.contains(stem).then_some(())
        }) {
            markers.push(mark(MarkerKind::NegativePrefix));
        }
    }
    markers.sort_by_key(|m| m.span);

    // Negative interrogative, on surface form only.
    let interrogative = sentence.trim_end().ends_with('?');
    let explicit_count = markers
        .iter()
        .filter(|m| m.kind == MarkerKind::ExplicitNegative)
        .count();
    if interrogative && explicit_count >= 1 && !rhetorical {
        rules.insert(RuleId::R5);
    }

    let weight: usize = markers.iter().map(|m| m.kind.weight()).sum();
    let classification = if rhetorical {
        Classification::RhetoricalExcluded
    } else if weight >= 2 || rules.contains(&RuleId::R5) {
        Classification::Dnp
    } else if weight == 1 {
        Classification::SingleNegation
    } else {
        Classification::Affirmative
    };
    let low_confidence =
        classification == Classification::Dnp && weight < 2 && rules.contains(&RuleId::R5);

    AnnotationRecord {
        sentence_span: (0, sentence.len()),
        text: sentence.to_string(),
        markers,
        rules_fired: rules,
        classification,
        low_confidence,
    }
}

/// Annotate every sentence of a document; spans are absolute byte offsets.
pub fn annotate_document(
    text: &str,
    lex: &Lexicon,
    cfg: &DetectorConfig,
) -> Vec<AnnotationRecord> {
    segment_text(text, cfg)
        .into_iter()
        .map(|(start, end)| {
            let mut record = annotate_sentence(&text[start..end], lex, cfg);
            record.sentence_span = (start, end);
            for m in &mut record.markers {
                m.span = (m.span.0 + start, m.span.1 + start);
            }
            record
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileVerdict {
    NonClassicalLikely,
    Inconclusive,
    ClassicalLikely,
}

/// Document-level summary of the annotations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocumentProfile {
    pub sentence_count: usize,
    pub dnp_count: usize,
    /// DNPs per 100 sentences.
    pub dnp_density: f64,
    pub rule_histogram: BTreeMap<RuleId, usize>,
    pub verdict: ProfileVerdict,
}

/// Aggregate sentence annotations into a document profile.
pub fn profile_document(text: &str, lex: &Lexicon, cfg: &DetectorConfig) -> DocumentProfile {
    let annotations = annotate_document(text, lex, cfg);
    profile_from_annotations(&annotations, cfg)
}

/// Build the profile from an existing annotation list.
pub fn profile_from_annotations(
    annotations: &[AnnotationRecord],
    cfg: &DetectorConfig,
) -> DocumentProfile {
    let sentence_count = annotations.len();
    let dnp_count = annotations
        .iter()
        .filter(|a| a.classification == Classification::Dnp)
        .count();
    let mut rule_histogram = BTreeMap::new();
    for a in annotations {
        for r in &a.rules_fired {
            *rule_histogram.entry(*r).or_insert(0) += 1;
        }
    }
    let dnp_density = if sentence_count == 0 {
        0.0
    } else {
        dnp_count as f64 * 100.0 / sentence_count as f64
    };
    let verdict = if sentence_count == 0 {
        ProfileVerdict::Inconclusive
    } else if dnp_count >= cfg.min_dnp_count && dnp_density >= cfg.min_density {
        ProfileVerdict::NonClassicalLikely
    } else if dnp_count == 0 {
        ProfileVerdict::ClassicalLikely
    } else {
        ProfileVerdict::Inconclusive
    };
    DocumentProfile {
        sentence_count,
        dnp_count,
        dnp_density,
        rule_histogram,
        verdict,
    }
}

/// One JSON object per annotation, newline-separated, byte-deterministic.
pub fn annotations_to_json_lines(annotations: &[AnnotationRecord]) -> String {
    let mut out = String::new();
    for a in annotations {
        let value = serde_json::json!({
            "span": [a.sentence_span.0, a.sentence_span.1],
            "text": a.text,
            "classification": a.classification,
            "rules": a.rules_fired,
            "markers": a.markers.iter().map(|m| serde_json::json!({
                "span": [m.span.0, m.span.1],
                "kind": m.kind,
                "token": m.token,
            })).collect::<Vec<_>>(),
            "low_confidence": a.low_confidence,
        });
        out.push_str(&serde_json::to_string(&value).expect("annotation serializes"));
        out.push('\n');
    }
    out
}

/// Human-readable rendering with inline bracket markers.
pub fn annotations_to_human(annotations: &[AnnotationRecord]) -> String {
    let mut out = String::new();
    for a in annotations {
        let label = match a.classification {
            Classification::Affirmative => "affirmative",
            Classification::SingleNegation => "single-negation",
            Classification::Dnp => "DNP",
            Classification::RhetoricalExcluded => "rhetorical-excluded",
        };
        let rules: Vec<String> = a.rules_fired.iter().map(|r| r.to_string()).collect();
        let base = a.sentence_span.0;
        let mut text = String::new();
        let mut cursor = 0;
        for m in &a.markers {
            let (s, e) = (m.span.0 - base, m.span.1 - base);
            text.push_str(&a.text[cursor..s]);
            text.push('[');
            text.push_str(&a.text[s..e]);
            text.push(']');
            cursor = e;
        }
        text.push_str(&a.text[cursor..]);
        out.push_str(&format!(
            "{label:20} {rules:12} {text}\n",
            rules = rules.join(",")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annotate(s: &str) -> AnnotationRecord {
        annotate_sentence(s, &Lexicon::default(), &DetectorConfig::default())
    }

    fn marker_tokens(a: &AnnotationRecord) -> Vec<&str> {
        a.markers.iter().map(|m| m.token.as_str()).collect()
    }

    #[test]
    fn segments_on_terminators_outside_abbreviations() {
        let cfg = DetectorConfig::default();
        assert_eq!(
            segment_text("First, do not harm. Thou do not kill.", &cfg).len(),
            2
        );
        assert_eq!(segment_text("Dr. Smith agreed.", &cfg).len(), 1);
        assert_eq!(segment_text("", &cfg).len(), 0);
        assert_eq!(segment_text("No trailing stop", &cfg).len(), 1);
    }

    #[test]
    fn segment_spans_cover_content() {
        let cfg = DetectorConfig::default();
        let text = "  One here. And two!  ";
        let spans = segment_text(text, &cfg);
        assert_eq!(spans.len(), 2);
        assert_eq!(&text[spans[0].0..spans[0].1], "One here.");
        assert_eq!(&text[spans[1].0..spans[1].1], "And two!");
    }

    #[test]
    fn do_not_harm_is_a_dnp_via_context() {
        let a = annotate("First, do not harm.");
        assert_eq!(a.classification, Classification::Dnp);
        assert_eq!(a.rules_fired, [RuleId::R6].into());
        assert_eq!(marker_tokens(&a), vec!["not", "harm"]);
    }

    #[test]
    fn rhetorical_quantity_is_excluded() {
        let a = annotate("I have nothing else than 10$.");
        assert_eq!(a.classification, Classification::RhetoricalExcluded);
        assert!(a.rules_fired.contains(&RuleId::R1));
    }

    #[test]
    fn nothing_without_reason_is_a_plain_double_negative() {
        let a = annotate("Nothing is without reason.");
        assert_eq!(a.classification, Classification::Dnp);
        assert!(a.rules_fired.is_empty());
        assert_eq!(marker_tokens(&a), vec!["nothing", "without"]);
    }

    #[test]
    fn motion_without_end_is_impossible() {
        let a = annotate("A motion without an end is impossible.");
        assert_eq!(a.classification, Classification::Dnp);
        assert_eq!(marker_tokens(&a), vec!["without", "impossible"]);
        assert!(a.rules_fired.contains(&RuleId::R3));
    }

    #[test]
    fn only_and_modals_work_alone() {
        let a = annotate("It works only here.");
        assert_eq!(a.classification, Classification::Dnp);
        assert_eq!(a.rules_fired, [RuleId::R2].into());

        let a = annotate("A proof must exist.");
        assert_eq!(a.classification, Classification::Dnp);
        assert_eq!(a.rules_fired, [RuleId::R3].into());
    }

    #[test]
    fn comparative_works_alone() {
        let a = annotate("It is no more real than a dream.");
        assert_eq!(a.classification, Classification::Dnp);
        assert!(a.rules_fired.contains(&RuleId::R4));
    }

    #[test]
    fn negative_question_is_low_confidence_dnp() {
        let a = annotate("Is it not so?");
        assert_eq!(a.classification, Classification::Dnp);
        assert!(a.rules_fired.contains(&RuleId::R5));
        assert!(a.low_confidence);
    }

    #[test]
    fn prefix_needs_a_known_stem() {
        let a = annotate("The path is irreversible and invisible.");
        assert_eq!(a.classification, Classification::Dnp);
        assert_eq!(marker_tokens(&a), vec!["irreversible", "invisible"]);

        let a = annotate("The university is large.");
        assert_eq!(a.classification, Classification::Affirmative);
        assert!(a.markers.is_empty());
    }

    #[test]
    fn single_negation_and_affirmative() {
        assert_eq!(
            annotate("This is not red.").classification,
            Classification::SingleNegation
        );
        assert_eq!(
            annotate("The sky is blue.").classification,
            Classification::Affirmative
        );
    }

    #[test]
    fn density_thresholds_drive_the_verdict() {
        let lex = Lexicon::default();
        let cfg = DetectorConfig::default();
        let profile = profile_document("", &lex, &cfg);
        assert_eq!(profile.verdict, ProfileVerdict::Inconclusive);
        assert_eq!(profile.sentence_count, 0);

        let profile = profile_document("The sky is blue. Water flows.", &lex, &cfg);
        assert_eq!(profile.verdict, ProfileVerdict::ClassicalLikely);
        assert_eq!(profile.dnp_count, 0);

        let dnp_text = "Nothing is without reason. ".repeat(6);
        let profile = profile_document(&dnp_text, &lex, &cfg);
        assert_eq!(profile.verdict, ProfileVerdict::NonClassicalLikely);
        assert_eq!(profile.dnp_count, 6);
    }

    #[test]
    fn removing_a_context_word_never_increases_dnp_count() {
        let cfg = DetectorConfig::default();
        let text = "First, do not harm. Thou do not kill. A change is coming.";
        let full = Lexicon::default();
        let base = profile_document(text, &full, &cfg).dnp_count;
        for word in &full.context_negatives {
            let mut reduced = full.clone();
            reduced.context_negatives.remove(word);
            let count = profile_document(text, &reduced, &cfg).dnp_count;
            assert!(count <= base, "removing {word} raised the count");
        }
    }

    #[test]
    fn lexicon_round_trips_through_its_file_format() {
        let lex = Lexicon::default();
        let rendered = lex.render();
        let parsed = Lexicon::parse(&rendered).unwrap();
        assert_eq!(parsed, lex);
    }

    #[test]
    fn annotations_are_byte_deterministic() {
        let lex = Lexicon::default();
        let cfg = DetectorConfig::default();
        let text = "First, do not harm. I have nothing else than 10$.";
        let a = annotations_to_json_lines(&annotate_document(text, &lex, &cfg));
        let b = annotations_to_json_lines(&annotate_document(text, &lex, &cfg));
        assert_eq!(a, b);
        assert!(a.lines().count() == 2);
    }

    #[test]
    fn every_dnp_carries_evidence() {
        let lex = Lexicon::default();
        let cfg = DetectorConfig::default();
        let text = "First, do not harm. It works only here. Is it not so? \
                    Nothing is without reason. No more light than before, then.";
        for a in annotate_document(text, &lex, &cfg) {
            if a.classification == Classification::Dnp {
                assert!(!a.markers.is_empty(), "{}", a.text);
                assert!(
                    !a.rules_fired.is_empty() || a.markers.len() >= 2,
                    "{}",
                    a.text
                );
            }
        }
    }
}
