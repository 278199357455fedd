use std::collections::BTreeMap;

use crate::syntax::{map_formula, parse_formula_with, Formula, ParseOptions, Sym, Term};

/// An axiom schema. Metavariables are variables named `?t..` (terms) and
/// `?f..` (formulas); the parser never produces such names for object
/// variables.
#[derive(Clone, Debug)]
pub struct Schema {
    pub name: &'static str,
    pub pattern: Formula,
    /// Term metavariables that only match term variables.
    pub atomic: Vec<Sym>,
    /// Pairs of atomic metavariables that must match different variables.
    pub distinct: Vec<(Sym, Sym)>,
}

impl Schema {
    pub fn parse(name: &'static str, text: &str) -> Schema {
        let opts = ParseOptions { metavars: true, ..ParseOptions::default() };
        let pattern = parse_formula_with(text, &opts).unwrap_or_else(|e| panic!("schema {name}: {e}"));
        Schema { name, pattern, atomic: Vec::new(), distinct: Vec::new() }
    }

    fn atomic(mut self, names: &[&str]) -> Schema {
        self.atomic = names.iter().map(|n| Sym::from(*n)).collect();
        if let [a, b] = names {
            self.distinct.push((Sym::from(*a), Sym::from(*b)));
        }
        self
    }
}

pub fn is_metavar(name: &str) -> bool {
    name.starts_with('?')
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub terms: BTreeMap<Sym, Term>,
    pub formulas: BTreeMap<Sym, Formula>,
}

impl Assignment {
    pub fn instantiate(&self, pattern: &Formula) -> Formula {
        map_formula(pattern, &mut |a| self.terms.get(a).cloned(), &mut |p| self.formulas.get(p).cloned())
    }
}

/// Rewrites every `t*` to `1 + t⁺`; the axiom systems take plus as primitive.
pub fn star_to_plus(f: &Formula) -> Formula {
    fn term(t: &Term) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            Term::Seq(a, b) => Term::seq(term(a), term(b)),
            Term::Union(a, b) => Term::union(term(a), term(b)),
            Term::Plus(a) => Term::plus(term(a)),
            Term::Star(a) => Term::union(Term::one(), Term::plus(term(a))),
            Term::Antidomain(a) => Term::anti(term(a)),
            Term::CapId(a) => Term::cap_id(term(a)),
            Term::CapNid(a) => Term::cap_nid(term(a)),
            Term::Test(g) => Term::test(star_to_plus(g)),
        }
    }
    match f {
        Formula::PVar(_) | Formula::False => f.clone(),
        Formula::Implies(a, b) => Formula::implies(star_to_plus(a), star_to_plus(b)),
        Formula::Box(t, g) => Formula::boxed(term(t), star_to_plus(g)),
    }
}

/// An assignment instantiating the schema to `f` (after star
/// normalization), if there is one.
pub fn match_schema(f: &Formula, s: &Schema) -> Option<Assignment> {
    let f = star_to_plus(f);
    let mut m = Matcher { s, asg: Assignment::default() };
    if !m.formula(&s.pattern, &f) {
        return None;
    }
    for (a, b) in &s.distinct {
        if m.asg.terms.get(a) == m.asg.terms.get(b) {
            return None;
        }
    }
    Some(m.asg)
}

struct Matcher<'a> {
    s: &'a Schema,
    asg: Assignment,
}

impl Matcher<'_> {
    fn formula(&mut self, p: &Formula, f: &Formula) -> bool {
        match (p, f) {
            (Formula::PVar(x), _) if is_metavar(x) => match self.asg.formulas.get(x) {
                Some(g) => g == f,
                None => {
                    self.asg.formulas.insert(x.clone(), f.clone());
                    true
                }
            },
            (Formula::PVar(x), Formula::PVar(y)) => x == y,
            (Formula::False, Formula::False) => true,
            (Formula::Implies(a, b), Formula::Implies(c, d)) => self.formula(a, c) && self.formula(b, d),
            (Formula::Box(t, a), Formula::Box(u, b)) => self.term(t, u) && self.formula(a, b),
            _ => false,
        }
    }

    fn term(&mut self, p: &Term, t: &Term) -> bool {
        match (p, t) {
            (Term::Var(x), _) if is_metavar(x) => {
                if self.s.atomic.contains(x) && !matches!(t, Term::Var(_)) {
                    return false;
                }
                match self.asg.terms.get(x) {
                    Some(u) => u == t,
                    None => {
                        self.asg.terms.insert(x.clone(), t.clone());
                        true
                    }
                }
            }
            (Term::Var(x), Term::Var(y)) => x == y,
            (Term::Seq(a, b), Term::Seq(c, d)) | (Term::Union(a, b), Term::Union(c, d)) => {
                self.term(a, c) && self.term(b, d)
            }
            (Term::Plus(a), Term::Plus(b))
            | (Term::Star(a), Term::Star(b))
            | (Term::Antidomain(a), Term::Antidomain(b))
            | (Term::CapId(a), Term::CapId(b))
            | (Term::CapNid(a), Term::CapNid(b)) => self.term(a, b),
            (Term::Test(a), Term::Test(b)) => self.formula(a, b),
            _ => false,
        }
    }
}

/// Axioms for antidomain and the identity restrictions, plus restricted Löb.
pub fn rewla_axioms() -> Vec<Schema> {
    let s = Schema::parse;
    vec![
        s("adom", "[?t1^a]?f1 <-> [?([?t1]F)]?f1"),
        s("capid-T", "[?t1^=]?f1 <-> [?(<?t1^=>T)]?f1"),
        s("capid-seq", "[(?t1;?t2)^=]?f1 <-> [?t1^=;?t2^=]?f1"),
        s("capid-union", "[(?t1 + ?t2)^=]?f1 <-> [?t1^= + ?t2^=]?f1"),
        s("capid-plus", "[(?t1^+)^=]?f1 <-> [?t1^=]?f1"),
        s("capid-adom", "[(?t1^a)^=]?f1 <-> [?t1^a]?f1"),
        s("capid-capid", "[(?t1^=)^=]?f1 <-> [?t1^=]?f1"),
        s("capid-capnid", "[(?t1^#)^=]?f1 <-> T"),
        s("capid-test", "[(?(?f2))^=]?f1 <-> [?(?f2)]?f1"),
        s("capid-union-capnid", "[?t1]?f1 <-> [?t1^= + ?t1^#]?f1"),
        s("capnid-seq", "[(?t1;?t2)^#]?f1 <-> [?t1^#;?t2^= + ?t1^=;?t2^# + ?t1^#;?t2^#]?f1"),
        s("capnid-union", "[(?t1 + ?t2)^#]?f1 <-> [?t1^# + ?t2^#]?f1"),
        s("capnid-plus", "[(?t1^+)^#]?f1 <-> [(?t1^#)^+]?f1"),
        s("capnid-adom", "[(?t1^a)^#]?f1 <-> T"),
        s("capnid-capid", "[(?t1^=)^#]?f1 <-> T"),
        s("capnid-capnid", "[(?t1^#)^#]?f1 <-> [?t1^#]?f1"),
        s("capnid-test", "[(?(?f2))^#]?f1 <-> T"),
        s("lob-capnid-plus", "[(?t1^#)^+]([(?t1^#)^+]?f1 -> ?f1) -> [(?t1^#)^+]?f1"),
    ]
}

/// Identity-free PDL on finite strict linear orders, without Löb.
pub fn minus_axioms() -> Vec<Schema> {
    let s = Schema::parse;
    vec![
        s("seq", "[?t1;?t2]?f1 <-> [?t1][?t2]?f1"),
        s("union", "[?t1 + ?t2]?f1 <-> [?t1]?f1 && [?t2]?f1"),
        s("plus", "[?t1^+]?f1 <-> [?t1]?f1 && [?t1][?t1^+]?f1"),
        s("ind", "[?t1]?f1 && [?t1^+](?f1 -> [?t1]?f1) -> [?t1^+]?f1"),
        s("test-l", "[?(?f2);?t1]?f1 <-> (?f2 -> [?t1]?f1)"),
        s("test-r", "[?t1;?(?f2)]?f1 <-> [?t1](?f2 -> ?f1)"),
        s("k", "[?t1](?f1 -> ?f2) -> [?t1]?f1 -> [?t1]?f2"),
    ]
}

pub fn lob_axiom() -> Schema {
    Schema::parse("lob-plus", "[?t1^+]([?t1^+]?f1 -> ?f1) -> [?t1^+]?f1")
}

/// Extra axioms for strings: no identity part, determinism.
pub fn string_axioms(identity: bool) -> Vec<Schema> {
    let mut v = Vec::new();
    if identity {
        v.push(Schema::parse("capid-x", "<?tx^=>T <-> F").atomic(&["?tx"]));
    }
    v.push(Schema::parse("det-1", "<?tx>?f1 -> [?tx]?f1").atomic(&["?tx"]));
    v.push(Schema::parse("det-2", "<?tx>?f1 -> [?ty]?f2").atomic(&["?tx", "?ty"]));
    v
}

/// Plain PDL with plus.
pub fn pdl_axioms() -> Vec<Schema> {
    let s = Schema::parse;
    vec![
        s("k", "[?t1](?f1 -> ?f2) -> [?t1]?f1 -> [?t1]?f2"),
        s("union", "[?t1 + ?t2]?f1 <-> [?t1]?f1 && [?t2]?f1"),
        s("seq", "[?t1;?t2]?f1 <-> [?t1][?t2]?f1"),
        s("test", "[?(?f2)]?f1 <-> (?f2 -> ?f1)"),
        s("plus", "[?t1^+]?f1 <-> [?t1]?f1 && [?t1][?t1^+]?f1"),
        s("ind", "[?t1]?f1 && [?t1^+](?f1 -> [?t1]?f1) -> [?t1^+]?f1"),
    ]
}
