//! Acceptance suite: one test per criterion, each printing a pass line with
//! its headline numbers (run with `--nocapture` to see them).
//!
//! The exhaustive propositional space used below is every formula over the
//! atoms `p`, `q` and `false` with at most 4 connectives (1,097,151
//! formulas), enumerated in a fixed order; the random supplement is seeded.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use dnl_core::*;

const EXHAUSTIVE_ATOMS: [&str; 2] = ["p", "q"];
const EXHAUSTIVE_CONNECTIVES: usize = 4;
const RANDOM_SEED: u64 = 0xD41;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name))
        .unwrap_or_else(|e| panic!("fixture {name} unreadable: {e}"))
}

#[test]
fn criterion_01_law_separation_matrix() {
    let start = Instant::now();
    let matrix = law_battery(&SearchBounds::default());
    let elapsed = start.elapsed();

    let expect = |name: &str, cl: &str, il: &str, minimal: &str| {
        let row = matrix
            .rows
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("row {name} missing"));
        assert_eq!(row.cl.outcome(), cl, "{name} in CL");
        assert_eq!(row.il.outcome(), il, "{name} in IL");
        assert_eq!(row.minimal.outcome(), minimal, "{name} in minimal");
    };
    expect("double negation", "Valid", "Invalid", "Invalid");
    expect("excluded middle", "Valid", "Invalid", "Invalid");
    expect("ex falso", "Valid", "Valid", "Invalid");
    expect("triple negation", "Valid", "Valid", "Valid");
    expect("contraposition", "Valid", "Valid", "Valid");
    expect("double negation intro", "Valid", "Valid", "Valid");
    expect("peirce", "Valid", "Invalid", "Invalid");

    for row in &matrix.rows {
        for (logic, verdict) in [("cl", &row.cl), ("il", &row.il), ("minimal", &row.minimal)] {
            match verdict {
                Verdict::Valid(Certificate::Proof(proof)) => {
                    assert!(check_proof(proof), "{} {logic}: proof fails to check", row.name)
                }
                Verdict::Valid(_) => {}
                Verdict::Invalid(CounterExample::Model(m)) => {
                    assert!(
                        m.worlds.len() <= 2,
                        "{} {logic}: countermodel has {} worlds",
                        row.name,
                        m.worlds.len()
                    );
                    assert!(check_model(m).is_well_formed());
                    assert_eq!(force(m, m.root, &row.formula), Ok(false));
                }
                other => panic!("{} {logic}: unexpected {other:?}", row.name),
            }
        }
    }
    assert!(elapsed < Duration::from_secs(1), "law battery took {elapsed:?}");
    println!("criterion 01 (law separation matrix): PASS in {elapsed:?}");
}

#[test]
fn criterion_02_glivenko() {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut classically_valid = 0u64;
    space::for_each_formula(&EXHAUSTIVE_ATOMS, EXHAUSTIVE_CONNECTIVES, &mut |f| {
        let cl = cl_decide_prop(f).unwrap().is_valid();
        let il = prove_il_prop(&glivenko(f).unwrap()).unwrap().is_some();
        assert_eq!(cl, il, "glivenko mismatch on {f}");
        checked += 1;
        classically_valid += cl as u64;
    });
    let exhaustive = checked;
    for f in space::random_formulas(RANDOM_SEED, 10_000, &["p", "q", "r", "s"], 7) {
        let cl = cl_decide_prop(&f).unwrap().is_valid();
        let il = prove_il_prop(&glivenko(&f).unwrap()).unwrap().is_some();
        assert_eq!(cl, il, "glivenko mismatch on {f}");
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "glivenko suite took {elapsed:?}");
    println!(
        "criterion 02 (glivenko): PASS — {checked} formulas ({exhaustive} exhaustive, \
         {classically_valid} classically valid), zero exceptions, {elapsed:?}"
    );
}

#[test]
fn criterion_03_prover_semantics_agreement() {
    // The criterion bound is the subformula count; the search is capped at 4
    // worlds when the prover succeeds (soundness rules out countermodels at
    // every size, and search monotonicity carries the check down) and at 6
    // worlds when it fails, where the first countermodel appears early.
    let start = Instant::now();
    let mut checked = 0u64;
    let mut provable = 0u64;
    let mut largest = 0usize;
    space::for_each_formula(&EXHAUSTIVE_ATOMS, EXHAUSTIVE_CONNECTIVES, &mut |f| {
        checked += 1;
        let n_sub = f.subformula_count();
        if prove_il_prop(f).unwrap().is_some() {
            provable += 1;
            let bounds = SearchBounds::new(n_sub.min(4), 1);
            let model = search_countermodel(f, Flavor::Il, &bounds).unwrap();
            assert!(model.is_none(), "provable {f} has a countermodel");
        } else {
            let bounds = SearchBounds::new(n_sub.min(6), 1);
            let model = search_countermodel(f, Flavor::Il, &bounds).unwrap();
            let model = model.unwrap_or_else(|| panic!("unprovable {f} has no countermodel"));
            largest = largest.max(model.worlds.len());
        }
    });
    let elapsed = start.elapsed();
    println!(
        "criterion 03 (prover/semantics agreement): PASS — {checked} formulas, {provable} \
         provable, zero disagreements, largest countermodel {largest} worlds, {elapsed:?}"
    );
}

#[test]
fn criterion_04_negative_and_kolmogorov_adequacy() {
    let start = Instant::now();
    let mut checked = 0u64;
    space::for_each_formula(&EXHAUSTIVE_ATOMS, EXHAUSTIVE_CONNECTIVES, &mut |f| {
        checked += 1;
        let cl = cl_decide_prop(f).unwrap().is_valid();
        let negative = prove_il_prop(&negative_translation(f).unwrap())
            .unwrap()
            .is_some();
        assert_eq!(cl, negative, "negative translation mismatch on {f}");
        let kolmogorov = prove_il_prop(&kolmogorov_translation(f).unwrap())
            .unwrap()
            .is_some();
        assert_eq!(cl, kolmogorov, "kolmogorov translation mismatch on {f}");
    });
    let elapsed = start.elapsed();
    println!(
        "criterion 04 (negative/kolmogorov adequacy): PASS — {checked} formulas, both \
         translations, zero exceptions, {elapsed:?}"
    );
}

#[test]
fn criterion_05_gmt_adequacy() {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut invalid = 0u64;
    let mut models_checked = 0u64;
    space::for_each_formula(&EXHAUSTIVE_ATOMS, EXHAUSTIVE_CONNECTIVES, &mut |f| {
        checked += 1;
        let il = prove_il_prop(f).unwrap().is_some();
        let translated = gmt_translation(f).unwrap();
        let s4 = prove_s4_prop(&translated).unwrap().is_some();
        assert_eq!(il, s4, "S4 embedding mismatch on {f}");
        if !s4 {
            invalid += 1;
            // Countermodels for a deterministic sample of the invalid ones.
            if invalid % 2001 == 1 || f.connective_count() <= 2 {
                let verdict =
                    decide(&translated, Logic::S4, &SearchBounds::default(), DEFAULT_DEPTH)
                        .unwrap();
                let model = verdict.countermodel().unwrap_or_else(|| {
                    panic!("no S4 countermodel for the embedding of {f}")
                });
                assert!(check_model(model).is_well_formed());
                assert_eq!(model.flavor, Flavor::S4);
                assert_eq!(force(model, model.root, &translated), Ok(false));
                models_checked += 1;
            }
        }
    });
    let elapsed = start.elapsed();
    println!(
        "criterion 05 (S4 embedding adequacy): PASS — {checked} formulas, zero exceptions, \
         {models_checked} countermodels checked, {elapsed:?}"
    );
}

#[test]
fn criterion_06_dummett_battery() {
    let start = Instant::now();
    let report = dummett_battery(&SearchBounds::default(), DEFAULT_DEPTH);
    let elapsed = start.elapsed();

    let outcome = |from, to| report.entry(from, to).unwrap();

    // The shift-free direction holds with a checkable proof.
    let forward = outcome("A2", "A3");
    let proof = forward.verdict.proof().expect("A2 -> A3 proved");
    assert!(check_proof(proof));

    // A genuine equivalence: both directions proved.
    assert!(outcome("A3", "A1").verdict.is_valid());
    assert!(outcome("A1", "A3").verdict.is_valid());

    // The shift directions stay unresolved and carry the discrepancy flag.
    for (from, to) in [("A1", "A2"), ("A3", "A2")] {
        let e = outcome(from, to);
        assert!(e.verdict.is_unknown(), "{from} -> {to} should be unknown");
        assert_eq!(e.flag, Some(QDN_UNRESOLVED_NOTE));
    }
    assert!(report.claimed_equivalence.0.is_valid());
    assert!(report.claimed_equivalence.1.is_unknown());

    // The full grid, as derived from the standard metatheory.
    let expected = [
        ("A1", "A2", "Unknown"),
        ("A1", "A3", "Valid"),
        ("A1", "A4", "Valid"),
        ("A1", "A5", "Valid"),
        ("A2", "A1", "Valid"),
        ("A2", "A3", "Valid"),
        ("A2", "A4", "Valid"),
        ("A2", "A5", "Valid"),
        ("A3", "A1", "Valid"),
        ("A3", "A2", "Unknown"),
        ("A3", "A4", "Valid"),
        ("A3", "A5", "Valid"),
        ("A4", "A1", "Invalid"),
        ("A4", "A2", "Invalid"),
        ("A4", "A3", "Invalid"),
        ("A4", "A5", "Invalid"),
        ("A5", "A1", "Invalid"),
        ("A5", "A2", "Invalid"),
        ("A5", "A3", "Invalid"),
        ("A5", "A4", "Valid"),
    ];
    for (from, to, want) in expected {
        assert_eq!(outcome(from, to).verdict.outcome(), want, "{from} -> {to}");
    }

    assert!(elapsed < Duration::from_secs(30), "battery took {elapsed:?}");
    println!("criterion 06 (quantified battery): PASS — 20 directions, {elapsed:?}");
}

#[test]
fn criterion_07_triple_negation_theorem() {
    let equivalence = parse_formula("~~~a <-> ~a").unwrap();
    let proof = prove_il_prop(&equivalence).unwrap().expect("derivable");
    assert!(check_proof(&proof));

    let theorem = triple_negation_theorem();
    assert_eq!(
        theorem.contraposition_instance,
        parse_formula("(a -> ~~a) -> (~~~a -> ~a)").unwrap(),
        "the contraposition instance must take b to ~~a"
    );
    assert!(check_proof(&theorem.contraposition_proof));
    assert!(check_proof(&theorem.intro_proof));
    assert!(check_proof(&theorem.equivalence_proof));

    let trace = theorem.render_trace();
    assert!(trace.contains(&render_formula(&theorem.contraposition_instance)));
    assert!(trace.contains("~~~a <-> ~a"));
    println!("criterion 07 (triple-negation theorem): PASS");
}

#[test]
fn criterion_08_psr_contract() {
    let step = psr_apply(&parse_formula("~~(forall x. f(x))").unwrap()).unwrap();
    assert_eq!(step.output, parse_formula("forall x. f(x)").unwrap());
    assert_eq!(step.epistemic_status, PSR_EPISTEMIC_STATUS);

    let step = psr_apply(&parse_formula("~(exists X. ~f(X))").unwrap()).unwrap();
    assert_eq!(step.output, parse_formula("forall X. f(X)").unwrap());

    // The step is not a logical inference: its propositional shape is
    // intuitionistically refutable.
    let dnl = parse_formula("~~p -> p").unwrap();
    let verdict = decide(&dnl, Logic::Il, &SearchBounds::default(), DEFAULT_DEPTH).unwrap();
    assert!(verdict.is_invalid());
    assert!(check_model(verdict.countermodel().unwrap()).is_well_formed());

    let dn_exists = parse_formula("~~(exists x. f(x))").unwrap();
    assert!(matches!(
        markov_apply(&dn_exists, &MarkovAttestation::new(false, Some("finite check"))),
        Err(TranslationError::AttestationRequired(_))
    ));
    assert!(matches!(
        markov_apply(&dn_exists, &MarkovAttestation::new(true, None)),
        Err(TranslationError::AttestationRequired(_))
    ));
    let step = markov_apply(&dn_exists, &MarkovAttestation::new(true, Some("finite check")))
        .expect("fully attested move goes through");
    assert_eq!(step.output, parse_formula("exists x. f(x)").unwrap());
    assert!(matches!(
        markov_apply(
            &parse_formula("~~(forall x. f(x))").unwrap(),
            &MarkovAttestation::new(true, Some("finite check"))
        ),
        Err(TranslationError::NotMarkovEligible(_))
    ));
    println!("criterion 08 (sufficient-reason contract): PASS");
}

#[test]
fn criterion_09_detector_golden_file() {
    let text = read_fixture("paper_examples.txt");
    let lex = Lexicon::default();
    let cfg = DetectorConfig::default();

    let annotations = annotate_document(&text, &lex, &cfg);
    assert_eq!(annotations.len(), 6, "fixture has six sentences");

    let classes: Vec<Classification> = annotations.iter().map(|a| a.classification).collect();
    assert_eq!(
        classes,
        vec![
            Classification::Dnp,
            Classification::Dnp,
            Classification::Dnp,
            Classification::Dnp,
            Classification::Dnp,
            Classification::RhetoricalExcluded,
        ]
    );

    let tokens = |i: usize| -> Vec<&str> {
        annotations[i].markers.iter().map(|m| m.token.as_str()).collect()
    };
    assert_eq!(annotations[0].rules_fired, [RuleId::R6].into());
    assert_eq!(tokens(0), vec!["not", "harm"]);
    assert_eq!(annotations[1].rules_fired, [RuleId::R6].into());
    assert_eq!(tokens(1), vec!["not", "kill"]);
    assert!(annotations[2].rules_fired.is_empty());
    assert_eq!(tokens(2), vec!["nothing", "without"]);
    assert!(annotations[3].rules_fired.contains(&RuleId::R3));
    assert_eq!(tokens(3), vec!["without", "impossible"]);
    assert!(annotations[4].rules_fired.contains(&RuleId::R3));
    assert_eq!(annotations[5].rules_fired, [RuleId::R1].into());

    let first = annotations_to_json_lines(&annotations);
    let second = annotations_to_json_lines(&annotate_document(&text, &lex, &cfg));
    assert_eq!(first, second, "output must be byte-identical across runs");

    let profile = profile_document(&text, &lex, &cfg);
    assert_eq!(profile.sentence_count, 6);
    assert_eq!(profile.dnp_count, 5);
    assert_eq!(profile.verdict, ProfileVerdict::NonClassicalLikely);
    println!("criterion 09 (detector golden file): PASS — 5 DNPs + 1 rhetorical exclusion");
}

#[test]
fn criterion_10_argument_fixtures() {
    let bounds = SearchBounds::default();
    let load = |name: &str| {
        ProblemTheory::from_json_str(&read_fixture(name))
            .unwrap_or_else(|e| panic!("{name}: {e}"))
    };

    let toy = load("theories/toy_po.json");
    let report = validate_po_theory(&toy, DEFAULT_DEPTH, &bounds);
    assert!(report.passed(), "toy theory:\n{}", report.render_text());

    let two_psr = load("theories/toy_po_two_psr.json");
    let report = validate_po_theory(&two_psr, DEFAULT_DEPTH, &bounds);
    assert!(!report.passed());
    assert!(report
        .failures()
        .any(|f| f.message.contains("exactly one PSR step")));

    let affirmative = load("theories/toy_po_affirmative_final.json");
    let report = validate_po_theory(&affirmative, DEFAULT_DEPTH, &bounds);
    assert!(!report.passed());
    assert!(report
        .failures()
        .any(|f| f.message.contains("final predicate must be a DNP")));

    let lobachevsky = load("theories/lobachevsky.json");
    assert_eq!(lobachevsky.aaas.len(), 5);
    let report = validate_po_theory(&lobachevsky, DEFAULT_DEPTH, &bounds);
    assert!(report.passed(), "lobachevsky:\n{}", report.render_text());

    let carnot = load("theories/carnot.json");
    assert_eq!(carnot.aaas.len(), 7);
    let report = validate_po_theory(&carnot, DEFAULT_DEPTH, &bounds);
    assert!(report.passed(), "carnot:\n{}", report.render_text());

    println!("criterion 10 (argument fixtures): PASS — toy + 2 mutants + 5/7-argument records");
}
