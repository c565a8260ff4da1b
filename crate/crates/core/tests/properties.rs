//! Property tests for the structural invariants: printer/parser round-trip,
//! negation-prefix arithmetic and collapse, heredity of forcing, search
//! bound monotonicity, and the provability inclusions between the logics.

use proptest::prelude::*;

use dnl_core::*;

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::atom),
        (prop_oneof![Just("f"), Just("g")], prop_oneof![Just("x"), Just("y")])
            .prop_map(|(p, v)| Formula::pred(p, v)),
        Just(Formula::Falsum),
    ]
}

/// Full-language formulas, depth at most 6, at most 3 atoms.
fn any_formula() -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::dia),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (prop_oneof![Just("x"), Just("y")], inner.clone())
                .prop_map(|(v, body)| Formula::forall(v, body)),
            (prop_oneof![Just("x"), Just("y")], inner)
                .prop_map(|(v, body)| Formula::exists(v, body)),
        ]
    })
}

fn prop_leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        prop_oneof![Just("p"), Just("q")].prop_map(Formula::atom),
        Just(Formula::Falsum),
    ]
}

fn prop_formula(depth: u32) -> impl Strategy<Value = Formula> {
    prop_leaf().prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn parse_inverts_render(f in any_formula()) {
        let rendered = render_formula(&f);
        let parsed = parse_formula(&rendered)
            .unwrap_or_else(|e| panic!("`{rendered}` fails to reparse: {e}"));
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn double_negation_adds_two_to_the_prefix(f in any_formula()) {
        let before = classify_negation_profile(&f).raw_prefix_count;
        let doubled = f.negate().negate();
        let after = classify_negation_profile(&doubled).raw_prefix_count;
        prop_assert_eq!(after, before + 2);
    }

    #[test]
    fn long_prefixes_collapse_il_equivalently(
        core in prop_formula(2),
        extra in 3usize..6,
    ) {
        let mut towered = core;
        for _ in 0..extra {
            towered = Formula::neg(towered);
        }
        let collapsed = collapse_negation_prefix(&towered);
        prop_assert!(classify_negation_profile(&collapsed).raw_prefix_count <= 2);
        let equivalence = Formula::iff(towered, collapsed);
        let proof = prove_il_prop(&equivalence).unwrap();
        prop_assert!(proof.is_some(), "collapse must be IL-derivable");
    }

    #[test]
    fn provability_is_monotone_across_the_logics(f in prop_formula(4)) {
        let minimal = prove_minimal_prop(&f).unwrap().is_some();
        let il = prove_il_prop(&f).unwrap().is_some();
        let cl = cl_decide_prop(&f).unwrap().is_valid();
        prop_assert!(!minimal || il, "minimal-provable must be IL-provable: {}", f);
        prop_assert!(!il || cl, "IL-provable must be classically valid: {}", f);
    }

    #[test]
    fn search_bounds_are_monotone(f in prop_formula(3)) {
        let at3 = search_countermodel(&f, Flavor::Il, &SearchBounds::new(3, 1)).unwrap();
        if at3.is_none() {
            for w in 1..3 {
                let smaller = search_countermodel(&f, Flavor::Il, &SearchBounds::new(w, 1)).unwrap();
                prop_assert!(smaller.is_none());
            }
        }
    }
}

// Random rooted IL models: a poset on up to 4 worlds with an upward-closed
// valuation over two atoms.
fn il_model() -> impl Strategy<Value = KripkeModel> {
    (1usize..=4, any::<u16>(), any::<u16>()).prop_map(|(n, rel_bits, val_bits)| {
        let mut m = KripkeModel::with_worlds(Flavor::Il, n);
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for j in 1..n {
            le[0][j] = true;
        }
        let mut bit = 0;
        for i in 1..n {
            for j in (i + 1)..n {
                if rel_bits & (1 << bit) != 0 {
                    le[i][j] = true;
                }
                bit += 1;
            }
        }
        // transitive closure (antisymmetry holds: only i < j pairs are set)
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    m.order.insert((i, j));
                }
            }
        }
        // upward-closed valuation over p and q
        for (a, atom) in ["p", "q"].iter().enumerate() {
            for w in 0..n {
                if val_bits & (1 << (a * 4 + w)) != 0 {
                    for u in 0..n {
                        if le[w][u] {
                            m.valuation.insert((u, GroundAtom::Prop(atom.to_string())));
                        }
                    }
                }
            }
        }
        m
    })
}

proptest! {
    #[test]
    fn forcing_is_hereditary(m in il_model(), f in prop_formula(4)) {
        prop_assert!(check_model(&m).is_well_formed());
        let worlds = m.worlds.len();
        for w in 0..worlds {
            if !force(&m, w, &f).unwrap() {
                continue;
            }
            for u in 0..worlds {
                if m.order.contains(&(w, u)) {
                    prop_assert!(
                        force(&m, u, &f).unwrap(),
                        "{} forced below but not above", f
                    );
                }
            }
        }
    }
}
