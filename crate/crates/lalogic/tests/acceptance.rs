//! Acceptance suite: one PASS/FAIL line per criterion, sub-items indented.
//! Runs without the test harness so the lines always print.

use std::time::{Duration, Instant};

use lalogic_core::automata::{
    acceptance_table, build_ata, enumerate_trees, extended_closure, fl_closure, structure_from_tree, StateId,
};
use lalogic_core::decide::{decide_equivalence, decide_validity, Class, Equiv, Witness};
use lalogic_core::proofs::{
    check_derivation, parse_derivation, rewla_axioms, Assignment, DerivationFile, Justification, System,
};
use lalogic_core::random::{seeded, Grammar, TermOp};
use lalogic_core::semantics::{
    bounded_counterexample, bounded_counterexample_budget, first_difference, formula_unchecked, word_to_string, LangKind,
    StructClass, Triple,
};
use lalogic_core::syntax::{
    map_formula, parse_formula, parse_term_with, sym, Formula, Fragment, ParseOptions, Term,
};
use rand::Rng;

const EXAMPLE1: &str = include_str!("../fixtures/example1.drv");
const EXAMPLE2: &str = include_str!("../fixtures/example2.drv");
const LOB: &str = include_str!("../fixtures/lob.drv");

/// Sub-items expected to fail. The inequality of the second worked
/// example has a four-point countermodel on finite linear orders.
const KNOWN_FAILURES: &[&str] = &["4/example-2"];

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn criterion(&mut self, n: usize, title: &str, limit: Duration, body: impl FnOnce() -> Vec<(String, bool)>) {
        println!("criterion {n}: {title}");
        let start = Instant::now();
        let items = body();
        let took = start.elapsed();
        let in_time = took <= limit;
        let ok = in_time && items.iter().all(|(_, b)| *b);
        println!("{} criterion {n} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, took.as_secs_f64());
        for (name, b) in &items {
            if !b {
                println!("    FAIL {n}/{name}");
                self.failures.push(format!("{n}/{name}"));
            }
        }
        if !in_time {
            println!("    FAIL {n}/runtime over {}s", limit.as_secs());
            self.failures.push(format!("{n}/runtime"));
        }
    }
}

fn re(s: &str) -> Term {
    parse_term_with(s, &ParseOptions::regex()).unwrap()
}

fn fm(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn equiv(m: Equiv, s: &str, t: &str) -> bool {
    decide_equivalence(m, &re(s), &re(t)).unwrap().holds
}

fn word_witness(w: &Option<Witness>) -> Option<Triple> {
    match w {
        Some(Witness::Word(t)) => Some(t.clone()),
        _ => None,
    }
}

fn criterion1() -> Vec<(String, bool)> {
    let (s, t) = ("((?!ab)(a|b))*", "b*a*");
    let start = Instant::now();
    let first = equiv(Equiv::Lang, s, t);
    let t1 = start.elapsed();
    let (s2, t2) = ("((?!aa)(a|a))*", "a*a*");
    let start = Instant::now();
    let second = decide_equivalence(Equiv::Lang, &re(s2), &re(t2)).unwrap();
    let oracle = first_difference(&re(s2), &re(t2), &[sym("a")], 2, LangKind::Word);
    let t2_ = start.elapsed();
    vec![
        ("lang-equivalent".into(), first),
        ("substituted pair not equivalent".into(), !second.holds),
        ("oracle witness of length at most 2".into(), oracle.is_some_and(|(w, _, _)| w.len() <= 2)),
        ("each under 60s".into(), t1.as_secs() < 60 && t2_.as_secs() < 60),
    ]
}

fn criterion2() -> Vec<(String, bool)> {
    let r = decide_equivalence(Equiv::Lang, &re("(?=a)b"), &re("0")).unwrap();
    let r2 = decide_equivalence(Equiv::Lang, &re("(?=a)a"), &re("0")).unwrap();
    let oracle = first_difference(&re("(?=a)a"), &re("0"), &[sym("a")], 3, LangKind::Word);
    let decided = word_witness(&r2.witness);
    vec![
        ("(?=a)b equivalent to 0".into(), r.holds),
        ("(?=a)a not equivalent to 0".into(), !r2.holds),
        ("witness \"a\"".into(), oracle.is_some_and(|(w, _, _)| word_to_string(&w) == "a")
            && decided.is_none_or(|(w, _, _)| word_to_string(&w) == "a")),
    ]
}

fn criterion3() -> Vec<(String, bool)> {
    let s = "(a;a^a)^d";
    let m = decide_equivalence(Equiv::Match, &re(s), &re("0")).unwrap();
    vec![
        ("subst-lang equivalent".into(), equiv(Equiv::SubstLang, s, "0")),
        ("match not equivalent".into(), !m.holds),
        (
            "witness triple (\"a\",0,0)".into(),
            word_witness(&m.witness).is_some_and(|(w, i, j)| word_to_string(&w) == "a" && i == 0 && j == 0),
        ),
    ]
}

fn criterion4() -> Vec<(String, bool)> {
    let identities = [
        ("a^d;b^d", "b^d;a^d"),
        ("a^d;a^d", "a^d"),
        ("(a^d)^+", "a^d"),
        ("(a + b)^d", "a^d + b^d"),
        ("(a^d;b)^d", "a^d;b^d"),
        ("(a;b^d)^d", "(a;b)^d"),
        ("a^d + a^a", "1"),
        ("a^d;a^a", "0"),
        ("(a^d;b)^d;c^d;e", "(a^d;c^d);b^d;e"),
    ];
    let semiring = [("a^a;a", "0"), ("(a;b)^a + (a;b^d)^a", "(a;b^d)^a"), ("a^d + a^a", "1")];
    let mut items = Vec::new();
    for (k, (s, t)) in identities.iter().enumerate() {
        items.push((format!("d-identity {} {s} = {t}", k + 1), equiv(Equiv::SubstMatch, s, t)));
    }
    for (s, t) in semiring {
        items.push((format!("domain semiring {s} = {t}"), equiv(Equiv::SubstMatch, s, t)));
    }
    items.push(("example-1".into(), equiv(Equiv::SubstMatch, "(a + b)^a", "a^a;b^a")));
    let u = "(x;y^a)^+;x;y^d";
    items.push(("example-2".into(), equiv(Equiv::SubstMatch, &format!("{u} + {u};({u})^a"), &format!("{u};({u})^a"))));
    items
}

/// The schema with its metavariables replaced.
fn instance(pattern: &Formula, t1: &str, t2: &str, f1: &str, f2: &str) -> Formula {
    let mut a = Assignment::default();
    a.terms.insert(sym("?t1"), re(t1));
    a.terms.insert(sym("?t2"), re(t2));
    a.formulas.insert(sym("?f1"), fm(f1));
    a.formulas.insert(sym("?f2"), fm(f2));
    a.instantiate(pattern)
}

fn criterion5() -> Vec<(String, bool)> {
    let picks = [("a", "b", "P", "Q"), ("a;b^a", "b^=", "[b]Q", "P"), ("(a + b)^+", "a^#", "P -> Q", "<a>P"), ("a^#", "b*", "F", "Q")];
    let mut items = Vec::new();
    for s in rewla_axioms() {
        let ok = picks.iter().all(|(t1, t2, f1, f2)| {
            let f = instance(&s.pattern, t1, t2, f1, f2);
            decide_validity(&f, Class::FinLin).unwrap().holds
        });
        items.push((format!("axiom {}", s.name), ok));
    }
    let valid = |s: &str, c: Class| decide_validity(&fm(s), c).unwrap().holds;
    items.push(("lob-capnid-plus".into(), valid("[(a^#)^+]([(a^#)^+]P -> P) -> [(a^#)^+]P", Class::FinLin)));
    items.push(("grz-star".into(), valid("[a*]([a*](P -> [a*]P) -> P) -> P", Class::FinLin)));
    let capid_seq = fm("[(a;b)^=]P <-> [a^=;b^=]P");
    let cex = bounded_counterexample(&capid_seq, StructClass::Preorder, 2);
    let cycle = cex.as_ref().is_some_and(|(s, _)| s.size == 2 && s.universal.contains(0, 1) && s.universal.contains(1, 0));
    items.push(("capid-seq refuted by a two-point cycle".into(), cycle));
    items.push(("capid-seq valid on finlin".into(), valid("[(a;b)^=]P <-> [a^=;b^=]P", Class::FinLin)));
    items.push(("det-1 invalid on finlin".into(), !valid("<a>P -> [a]P", Class::FinLin)));
    items.push(("det-1 valid on stfinlin".into(), valid("<a>P -> [a]P", Class::StFinLin)));
    items
}

fn criterion6() -> Vec<(String, bool)> {
    let mut rng = seeded(601);
    let minus = Grammar::new(&["a", "b"], &["P", "Q"], &[TermOp::Seq, TermOp::Union, TermOp::Plus, TermOp::Test]);
    let full = Grammar::full(&["a", "b"], &["P", "Q"]);
    let (mut cl_bad, mut ex_bad, mut minus_seen) = (0, 0, 0);
    while minus_seen < 1000 {
        let size = rng.gen_range(1..=16);
        let f = minus.formula(&mut rng, size);
        if Fragment::PDLMinus.contains_formula(&f) {
            minus_seen += 1;
            if fl_closure(&f).len() > 2 * f.size() {
                cl_bad += 1;
            }
        }
    }
    for _ in 0..1000 {
        let size = rng.gen_range(1..=16);
        let g = full.formula(&mut rng, size);
        if extended_closure(&g).len() > 6 * g.size() {
            ex_bad += 1;
        }
    }
    println!("    cl: {cl_bad} violations in {minus_seen}; clexex: {ex_bad} violations in 1000");
    vec![("cl within 2|f|".into(), cl_bad == 0), ("clexex within 6|f|".into(), ex_bad == 0)]
}

fn criterion7() -> Vec<(String, bool)> {
    let mut rng = seeded(701);
    let g = Grammar::pipeline(&["P"]);
    let (mut root_bad, mut dich_bad, mut trees) = (0usize, 0usize, 0usize);
    for _ in 0..50 {
        let size = rng.gen_range(1..=6);
        let f = g.formula(&mut rng, size);
        let a = build_ata(&f).unwrap();
        let top = a.state_of(&f, 1).unwrap();
        for t in enumerate_trees(a.props(), 2, 4) {
            trees += 1;
            let s = structure_from_tree(&t);
            let table = acceptance_table(&a, &t);
            let order = t.reachable();
            if table[0].contains(top as usize) != formula_unchecked(&s, &f).contains(0) {
                root_bad += 1;
            }
            for q in (0..a.num_states() as StateId).step_by(2) {
                let (h, _) = a.state_formula(q).unwrap();
                let truth = formula_unchecked(&s, h);
                for (point, node) in order.iter().enumerate() {
                    let (neg, pos) = (table[*node].contains(q as usize), table[*node].contains(q as usize + 1));
                    if neg == pos || pos != truth.contains(point) {
                        dich_bad += 1;
                    }
                }
            }
        }
    }
    println!("    {trees} tree checks; {root_bad} root and {dich_bad} dichotomy violations");
    vec![("root acceptance matches evaluation".into(), root_bad == 0), ("polarity dichotomy".into(), dich_bad == 0)]
}

fn criterion8() -> Vec<(String, bool)> {
    let mut rng = seeded(801);
    let g = Grammar::rewla(&["a", "b"]);
    let alphabet = [sym("a"), sym("b")];
    let mut contradictions = 0;
    for _ in 0..200 {
        let (n, m) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let (s, t) = (g.term(&mut rng, n), g.term(&mut rng, m));
        for (mode, kind) in [(Equiv::Match, LangKind::Match), (Equiv::Lang, LangKind::Word)] {
            let holds = decide_equivalence(mode, &s, &t).unwrap().holds;
            let found = if holds {
                first_difference(&s, &t, &alphabet, 5, kind).is_some()
            } else {
                (0..=8).any(|len| first_difference(&s, &t, &alphabet, len, kind).is_some())
            };
            if holds == found {
                println!("    contradiction: {s} vs {t} under {}", mode.name());
                contradictions += 1;
            }
        }
    }
    println!("    {contradictions} contradictions over 200 pairs");
    vec![("no contradictions".into(), contradictions == 0)]
}

fn criterion9() -> Vec<(String, bool)> {
    let mut rng = seeded(901);
    let g = Grammar::full(&["a", "b"], &["P"]);
    let mut bad = 0;
    for _ in 0..200 {
        let size = rng.gen_range(1..=8);
        let f = g.formula(&mut rng, size);
        let r = decide_validity(&f, Class::FinLin).unwrap();
        let cex = bounded_counterexample_budget(&f, StructClass::FinLin, 3, None).unwrap();
        // a refutation the decider itself finds within three points must be seen by the enumeration too
        let small_refutation = matches!(&r.witness, Some(Witness::Structure(s, _)) if s.size <= 3);
        if (r.holds && cex.is_some()) || (small_refutation && cex.is_none()) {
            println!("    disagreement on {f}");
            bad += 1;
        }
    }
    println!("    {bad} disagreements over 200 formulas");
    vec![("no disagreements".into(), bad == 0)]
}

fn mutants(d: &DerivationFile) -> Vec<(String, DerivationFile)> {
    let mut out = Vec::new();
    let goal = d.goal.clone().unwrap();
    let mut m = d.clone();
    m.goal = Some(Formula::implies(goal, Formula::False));
    out.push(("negated goal".into(), m));
    let mut m = d.clone();
    m.steps[0].formula = Formula::implies(m.steps[0].formula.clone(), Formula::False);
    out.push(("first step negated".into(), m));
    let mut m = d.clone();
    let k = m.steps.len() / 2;
    m.steps[k].formula = map_formula(
        &m.steps[k].formula,
        &mut |a| Some(Term::var(&format!("{a}{a}"))),
        &mut |p| Some(Formula::pvar(&format!("{p}{p}"))),
    );
    out.push(("middle step renamed".into(), m));
    let mut m = d.clone();
    let last = m.steps.len() - 1;
    m.steps[last].why = match &m.steps[last].why {
        Justification::Mp(a, b) => Justification::Mp(*b, *a),
        Justification::Derived(r, ps) => Justification::Derived(*r, ps.iter().rev().skip(1).copied().collect()),
        other => other.clone(),
    };
    out.push(("last step premises changed".into(), m));
    let mut m = d.clone();
    m.system = Some(System::Pdl);
    out.push(("checked as plain PDL".into(), m));
    out
}

fn criterion10() -> Vec<(String, bool)> {
    let mut items = Vec::new();
    for (name, text) in [("example-1", EXAMPLE1), ("example-2", EXAMPLE2), ("lob", LOB)] {
        let d = parse_derivation(text).unwrap();
        let check = |d: &DerivationFile| check_derivation(&d.steps, d.system.unwrap(), d.goal.as_ref().unwrap()).accepted;
        items.push((format!("{name} accepted"), check(&d)));
        let ms = mutants(&d);
        let differ = ms.iter().all(|(_, m)| *m != d);
        let rejected = ms.iter().filter(|(_, m)| !check(m)).count();
        for (what, m) in &ms {
            if check(m) {
                println!("    {name}: mutant accepted ({what})");
            }
        }
        items.push((format!("{name} mutants rejected"), differ && rejected == 5 && ms.len() == 5));
        let lines_valid = d.steps.iter().all(|s| decide_validity(&s.formula, Class::FinLin).unwrap().holds);
        items.push((format!("{name} lines finlin-valid"), lines_valid));
    }
    items
}

fn main() {
    // `cargo test -- --list` and filters from the harness are not meaningful here
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut r = Report { failures: Vec::new() };
    let min = |m: u64| Duration::from_secs(60 * m);
    r.criterion(1, "lookahead pair and its substitution instance", min(2), criterion1);
    r.criterion(2, "lookahead followed by a letter", min(1), criterion2);
    r.criterion(3, "match versus substitution-closed language equivalence", min(1), criterion3);
    r.criterion(4, "domain identities and worked examples", min(5), criterion4);
    r.criterion(5, "validity corpus on finite linear orders", min(5), criterion5);
    r.criterion(6, "closure size bounds", min(5), criterion6);
    r.criterion(7, "automaton truth lemma", min(10), criterion7);
    r.criterion(8, "oracle coherence", min(10), criterion8);
    r.criterion(9, "enumeration soundness", min(10), criterion9);
    r.criterion(10, "proof checker", min(2), criterion10);
    let unexpected: Vec<&String> = r.failures.iter().filter(|f| !KNOWN_FAILURES.contains(&f.as_str())).collect();
    let unmet: Vec<&&str> = KNOWN_FAILURES.iter().filter(|k| !r.failures.iter().any(|f| f == *k)).collect();
    if !unmet.is_empty() {
        println!("known failures now passing: {unmet:?}");
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} known failure(s), no others", r.failures.len());
}
