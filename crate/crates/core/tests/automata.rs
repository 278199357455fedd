use lalogic_core::automata::*;
use lalogic_core::random::{seeded, Grammar, TermOp};
use lalogic_core::semantics::formula_unchecked;
use lalogic_core::syntax::{parse_formula_with, Formula, Fragment, ParseOptions};
use proptest::prelude::*;
use rand::Rng;

fn pf(s: &str) -> Formula {
    parse_formula_with(s, &ParseOptions::reserved()).unwrap()
}

fn pdl_minus(rng: &mut impl Rng, size: usize) -> Formula {
    let g = Grammar::new(&["a", "b"], &["P", "Q"], &[TermOp::Seq, TermOp::Union, TermOp::Plus, TermOp::Test]);
    loop {
        let f = g.formula(rng, size);
        if Fragment::PDLMinus.contains_formula(&f) {
            return f;
        }
    }
}

/// Every state at every node of every small tree: acceptance agrees with
/// the state's formula at that node, for both polarities.
fn check_truth_lemma(f: &Formula, dirs: u8, max_nodes: usize) {
    let a = build_with(f, dirs, DEFAULT_MAX_STATES).unwrap();
    for t in enumerate_trees(a.props(), dirs, max_nodes) {
        let s = structure_from_tree(&t);
        let order = t.reachable();
        let table = acceptance_table(&a, &t);
        for q in 0..a.num_states() as StateId {
            let (g, p) = a.state_formula(q).unwrap();
            let truth = formula_unchecked(&s, g);
            for (point, node) in order.iter().enumerate() {
                let acc = table[*node].contains(q as usize);
                assert_eq!(acc, truth.contains(point) == (p == 1), "state {} at node {node} of\n{}", a.render_state(q), t.render());
            }
        }
    }
}

#[test]
fn truth_lemma_on_random_pipeline_formulas() {
    let mut rng = seeded(11);
    let g = Grammar::pipeline(&["P"]);
    for _ in 0..25 {
        let f = g.formula(&mut rng, 6);
        check_truth_lemma(&f, 2, 3);
        check_truth_lemma(&f, 1, 4);
    }
}

#[test]
fn truth_lemma_with_antidomain_and_identity() {
    for text in ["[(S$^a;S$)^=]P -> P", "[(S$^+)^#]P", "[(S$*;?(P))^=]F", "[(S$;S$^a)^+]P", "[((S$^#)^+)^#]P"] {
        check_truth_lemma(&pf(text), 2, 3);
    }
}

#[test]
fn reachable_states_lie_in_the_extended_closure() {
    let mut rng = seeded(12);
    let g = Grammar::pipeline(&["P", "Q"]);
    for _ in 0..100 {
        let f = g.formula(&mut rng, 10);
        let a = build_ata(&f).unwrap();
        let cl = star_closure(&f, true);
        for q in reachable_states(&a) {
            let g = a.state_formula(q).unwrap().0;
            assert!(cl.contains(g) || *g == Formula::False, "{g} escapes the closure of {f}");
        }
    }
}

#[test]
fn emptiness_agrees_with_small_tree_search() {
    let mut rng = seeded(13);
    let g = Grammar::pipeline(&["P"]);
    for i in 0..60 {
        let f = g.formula(&mut rng, 7);
        let dirs = if i % 2 == 0 { 2 } else { 1 };
        let a = build_with(&f, dirs, DEFAULT_MAX_STATES).unwrap();
        let e = emptiness_with(&a, DEFAULT_MACRO_BUDGET).unwrap();
        if let Some(w) = &e.witness {
            assert!(w.is_well_formed());
            assert!(ata_accepts(&a, w));
        }
        let small = enumerate_trees(a.props(), dirs, 4).into_iter().any(|t| ata_accepts(&a, &t));
        if small {
            assert!(!e.empty, "missed a small witness for {f}");
        }
        assert_eq!(e.empty, e.witness.is_none());
    }
}

#[test]
fn string_emptiness_on_random_tables() {
    let mut rng = seeded(14);
    for _ in 0..50 {
        let states = rng.gen_range(1..=4u32);
        let props = 1;
        let letters = 1 << (props + 1);
        let mut table = Vec::new();
        for _ in 0..states {
            let row: Vec<PBool> = (0..letters).map(|_| random_pbool(&mut rng, states, 3)).collect();
            table.push(row);
        }
        let a = Ata::from_table(1, props, table, 0);
        let e = asa_emptiness(&a).unwrap();
        if let Some(w) = &e.witness {
            assert!(ata_accepts(&a, w));
        }
        let small = enumerate_trees(a.props(), 1, 4).into_iter().any(|t| ata_accepts(&a, &t));
        if small {
            assert!(!e.empty);
        }
    }
}

fn random_pbool(rng: &mut impl Rng, states: u32, depth: u32) -> PBool {
    match rng.gen_range(0..if depth == 0 { 3 } else { 5 }) {
        0 => PBool::constant(rng.gen_bool(0.5)),
        1 | 2 => PBool::atom(rng.gen_range(0..=1), rng.gen_range(0..states)),
        3 => PBool::and(random_pbool(rng, states, depth - 1), random_pbool(rng, states, depth - 1)),
        _ => PBool::or(random_pbool(rng, states, depth - 1), random_pbool(rng, states, depth - 1)),
    }
}

#[test]
fn closure_recursion_matches_rules() {
    let mut rng = seeded(15);
    for _ in 0..300 {
        let f = pdl_minus(&mut rng, 12);
        assert_eq!(fl_closure(&f), fl_closure_rules(&f));
        assert!(fl_closure(&f).len() <= 2 * f.size());
    }
}

#[test]
fn closure_size_bounds() {
    let mut rng = seeded(16);
    let g = Grammar::full(&["a", "b"], &["P", "Q"]);
    for _ in 0..1000 {
        let f = g.formula(&mut rng, 14);
        let rec = star_closure_recursive(&f);
        assert!(rec.len() <= f.size());
        assert!(rec.is_subset(&star_closure(&f, false)));
        assert!(extended_closure(&f).len() <= 6 * f.size(), "{f}");
    }
}

#[test]
fn saturation_adds_states() {
    let f = pf("[(b^#*^+)^+]P");
    assert!(extended_closure(&f).len() <= 6 * f.size());
    assert!(star_closure(&f, true).len() > extended_closure(&f).len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_are_accepted(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let f = Grammar::pipeline(&["P"]).formula(&mut rng, 8);
        let a = build_ata(&f).unwrap();
        let e = ata_emptiness(&a).unwrap();
        if let Some(w) = e.witness {
            prop_assert!(ata_accepts(&a, &w));
            let s = structure_from_tree(&w);
            prop_assert!(formula_unchecked(&s, &f).contains(0));
        }
    }

    #[test]
    fn closures_contain_their_formula(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let f = Grammar::full(&["a"], &["P"]).formula(&mut rng, 10);
        prop_assert!(star_closure(&f, false).contains(&f));
        prop_assert!(star_closure(&f, false).is_subset(&star_closure(&f, true)));
    }
}
