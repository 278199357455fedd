//! Validity on finite linear orders, on strings, and for plain PDL over
//! arbitrary relations; the four equivalences of terms built on top.

mod typelim;

use std::collections::BTreeMap;
use std::fmt;

use crate::automata::{self, AutomatonError, InputTree};
use crate::encodings::{
    binary_tree_encoding, endmarker, equation_to_formula, remove_identity, single_letter_encoding,
    single_proposition_encoding, Variant,
};
use crate::semantics::{bounded_counterexample_budget, first_difference, LangKind, StructClass, Structure, Triple};
use crate::syntax::{classify_fragment, sym, Expr, Formula, Fragment, FreeVars, Term, TermVar};

pub use typelim::{pdl_satisfiable, TypelimStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    FinLin,
    StFinLin,
    RelPdl,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::FinLin => "finlin",
            Class::StFinLin => "stfinlin",
            Class::RelPdl => "rel-pdl",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equiv {
    Match,
    Lang,
    SubstMatch,
    SubstLang,
}

impl Equiv {
    pub fn name(self) -> &'static str {
        match self {
            Equiv::Match => "match",
            Equiv::Lang => "lang",
            Equiv::SubstMatch => "subst-match",
            Equiv::SubstLang => "subst-lang",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecideError {
    Fragment(String),
    Budget(String),
    Unsupported(String),
}

impl fmt::Display for DecideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecideError::Fragment(m) => write!(f, "fragment error: {m}"),
            DecideError::Budget(m) => write!(f, "budget exceeded: {m}"),
            DecideError::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl std::error::Error for DecideError {}

impl From<AutomatonError> for DecideError {
    fn from(e: AutomatonError) -> DecideError {
        match e {
            AutomatonError::Unsupported(m) => DecideError::Unsupported(m),
            e => DecideError::Budget(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A word and a pair of positions on which two terms differ.
    Word(Triple),
    /// A structure and a point where the formula fails.
    Structure(Structure, usize),
    /// An input tree accepted by the automaton of the negation.
    Tree(InputTree),
}

#[derive(Clone, Debug)]
pub struct DecisionReport {
    /// Valid, equivalent, or accepted.
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Stage statistics, keyed by `stage.quantity`.
    pub stats: BTreeMap<String, usize>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_states: usize,
    pub macro_budget: usize,
    /// Largest number of guessed closure members in type elimination.
    pub max_free: usize,
    /// Search for an original-signature countermodel when the verdict is negative.
    pub witness: bool,
    pub witness_size: usize,
    pub witness_len: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            max_states: automata::DEFAULT_MAX_STATES,
            macro_budget: automata::DEFAULT_MACRO_BUDGET,
            max_free: 22,
            witness: true,
            witness_size: 3,
            witness_len: 8,
        }
    }
}

pub fn decide_validity(f: &Formula, c: Class) -> Result<DecisionReport, DecideError> {
    decide_validity_with(f, c, &Options::default())
}

pub fn decide_validity_with(f: &Formula, c: Class, opts: &Options) -> Result<DecisionReport, DecideError> {
    let mut stats = BTreeMap::new();
    stats.insert("input.size".to_string(), f.size());
    match c {
        Class::RelPdl => {
            let frag = classify_fragment(&Expr::Formula(f.clone()));
            if !frag.within(Fragment::PDLPlain) {
                return Err(DecideError::Fragment(format!("rel-pdl needs a plain PDL formula, got {frag:?}")));
            }
            let (sat, st) = pdl_satisfiable(&Formula::not(f.clone()), opts.max_free)
                .map_err(|k| DecideError::Budget(format!("{k} guessed closure members")))?;
            stats.insert("closure.size".into(), st.closure);
            stats.insert("typelim.free".into(), st.free);
            stats.insert("typelim.atoms".into(), st.atoms);
            stats.insert("typelim.surviving".into(), st.surviving);
            stats.insert("typelim.rounds".into(), st.rounds);
            Ok(DecisionReport { holds: !sat, witness: None, stats })
        }
        Class::FinLin | Class::StFinLin => {
            let string = c == Class::StFinLin;
            let g = pipeline(f, string);
            stats.insert("pipeline.size".into(), g.size());
            let a = automata::build_with(&g, if string { 1 } else { 2 }, opts.max_states)?;
            stats.insert("automaton.closure".into(), a.closure_size());
            stats.insert("automaton.states".into(), a.num_states());
            stats.insert("automaton.letters".into(), a.num_letters());
            let e = automata::emptiness_with(&a, opts.macro_budget)?;
            stats.insert("emptiness.macro_states".into(), e.stats.macro_states);
            stats.insert("emptiness.moves".into(), e.stats.moves);
            stats.insert("emptiness.rounds".into(), e.stats.rounds);
            let mut witness = None;
            if !e.empty && opts.witness {
                let class = if string { StructClass::StFinLin } else { StructClass::FinLin };
                if let Ok(Some((s, v))) = bounded_counterexample_budget(f, class, opts.witness_size, Some(1 << 22)) {
                    witness = Some(Witness::Structure(s, v));
                }
            }
            if witness.is_none() {
                witness = e.witness.map(Witness::Tree);
            }
            Ok(DecisionReport { holds: e.empty, witness, stats })
        }
    }
}

/// The formula whose automaton is checked for emptiness: the negation,
/// identity-free, single-letter, (binary-tree,) single-proposition.
pub fn pipeline(f: &Formula, string: bool) -> Formula {
    let variant = if string { Variant::StFinLin } else { Variant::FinLin };
    let g = remove_identity(&Formula::not(f.clone()), variant);
    let (g, side) = single_letter_encoding(&g);
    let g = Formula::and(g, side);
    let g = if string { g } else { binary_tree_encoding(&g) };
    single_proposition_encoding(&g)
}

pub fn decide_equivalence(mode: Equiv, s: &Term, t: &Term) -> Result<DecisionReport, DecideError> {
    decide_equivalence_with(mode, s, t, &Options::default())
}

pub fn decide_equivalence_with(mode: Equiv, s: &Term, t: &Term, opts: &Options) -> Result<DecisionReport, DecideError> {
    let f = match mode {
        Equiv::Match | Equiv::SubstMatch => equation_to_formula(s, t),
        Equiv::Lang | Equiv::SubstLang => {
            let (es, et) = endmarker(s, t, mode == Equiv::SubstLang);
            equation_to_formula(&es, &et)
        }
    };
    let class = match mode {
        Equiv::Match | Equiv::Lang => Class::StFinLin,
        Equiv::SubstMatch | Equiv::SubstLang => Class::FinLin,
    };
    let mut quiet = opts.clone();
    quiet.witness = false;
    let mut report = decide_validity_with(&f, class, &quiet)?;
    if !report.holds && opts.witness {
        let mut fv = FreeVars::of_term(s);
        fv.add_term(t);
        let alphabet: Vec<TermVar> = if fv.terms.is_empty() { vec![sym("a")] } else { fv.terms.into_iter().collect() };
        let kind = match mode {
            Equiv::Match | Equiv::SubstMatch => LangKind::Match,
            Equiv::Lang | Equiv::SubstLang => LangKind::Word,
        };
        report.witness = first_difference(s, t, &alphabet, opts.witness_len, kind).map(Witness::Word);
        if report.witness.is_none() && class == Class::FinLin {
            if let Ok(Some((st, v))) = bounded_counterexample_budget(&f, StructClass::FinLin, opts.witness_size, Some(1 << 22)) {
                report.witness = Some(Witness::Structure(st, v));
            }
        }
    }
    Ok(report)
}

/// Replaces each maximal subterm headed by antidomain or an identity
/// restriction with a fresh variable `v$1, v$2, ...`; equal subterms share one.
pub fn abstract_to_pdl(f: &Formula) -> Formula {
    let mut table: Vec<Term> = Vec::new();
    abs_formula(f, &mut table)
}

fn abs_formula(f: &Formula, table: &mut Vec<Term>) -> Formula {
    match f {
        Formula::PVar(_) | Formula::False => f.clone(),
        Formula::Implies(a, b) => Formula::implies(abs_formula(a, table), abs_formula(b, table)),
        Formula::Box(t, g) => {
            let t = abs_term(t, table);
            Formula::boxed(t, abs_formula(g, table))
        }
    }
}

fn abs_term(t: &Term, table: &mut Vec<Term>) -> Term {
    match t {
        Term::Antidomain(_) | Term::CapId(_) | Term::CapNid(_) => {
            let i = match table.iter().position(|u| u == t) {
                Some(i) => i,
                None => {
                    table.push(t.clone());
                    table.len() - 1
                }
            };
            Term::Var(sym(&format!("v${}", i + 1)))
        }
        Term::Var(_) => t.clone(),
        Term::Seq(a, b) => Term::seq(abs_term(a, table), abs_term(b, table)),
        Term::Union(a, b) => Term::union(abs_term(a, table), abs_term(b, table)),
        Term::Plus(a) => Term::plus(abs_term(a, table)),
        Term::Star(a) => Term::star(abs_term(a, table)),
        Term::Test(g) => Term::test(abs_formula(g, table)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_formula_with, ParseOptions};

    fn valid(s: &str, c: Class) -> bool {
        decide_validity(&parse_formula(s).unwrap(), c).unwrap().holds
    }

    #[test]
    fn abstraction() {
        let o = ParseOptions::reserved();
        let f = parse_formula("[s^a]P <-> [s^a]P").unwrap();
        assert_eq!(abstract_to_pdl(&f), parse_formula_with("[v$1]P <-> [v$1]P", &o).unwrap());
        let f = parse_formula("[s^=]P <-> [s]P").unwrap();
        assert_eq!(abstract_to_pdl(&f), parse_formula_with("[v$1]P <-> [s]P", &o).unwrap());
        assert!(!decide_validity(&abstract_to_pdl(&f), Class::RelPdl).unwrap().holds);
    }

    #[test]
    fn rel_pdl_examples() {
        assert!(valid("[a](P -> Q) -> ([a]P -> [a]Q)", Class::RelPdl));
        assert!(!valid("[a]P -> P", Class::RelPdl));
        assert!(valid("[?([s + t]F)]Q <-> [?([s]F);?([t]F)]Q", Class::RelPdl));
    }

    #[test]
    fn small_validities() {
        assert!(!valid("<a>T", Class::FinLin));
        assert!(valid("<a>P -> [a]P", Class::StFinLin));
        assert!(!valid("<a>P -> [a]P", Class::FinLin));
        assert!(valid("[a^#]P -> [a^#]P", Class::FinLin));
    }

    #[test]
    fn footnote_pair() {
        let q = |s: &str| crate::syntax::parse_term_with(s, &ParseOptions::regex()).unwrap();
        assert!(decide_equivalence(Equiv::Lang, &q("(?=a)b"), &q("0")).unwrap().holds);
        let r = decide_equivalence(Equiv::Lang, &q("(?=a)a"), &q("0")).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Witness::Word((crate::semantics::word_from_str("a"), 0, 1))));
    }
}
