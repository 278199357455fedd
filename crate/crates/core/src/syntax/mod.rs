//! Terms and formulas of PDL over regular expressions with lookahead.

mod fragment;
mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use fragment::{classify_fragment, Fragment};
pub use parse::{
    parse_expression, parse_formula, parse_formula_with, parse_term, parse_term_with, parse_with, Mode, ParseError,
    ParseOptions, Sugar,
};
pub use render::{render_expression, render_formula, render_term};

/// Variable name. Generated names contain `$`.
pub type Sym = Arc<str>;
pub type TermVar = Sym;
pub type FmlVar = Sym;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(TermVar),
    Seq(Arc<Term>, Arc<Term>),
    Union(Arc<Term>, Arc<Term>),
    Plus(Arc<Term>),
    Star(Arc<Term>),
    Antidomain(Arc<Term>),
    /// Restriction to the identity relation.
    CapId(Arc<Term>),
    /// Restriction to the complement of the identity relation.
    CapNid(Arc<Term>),
    Test(Arc<Formula>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    PVar(FmlVar),
    Implies(Arc<Formula>, Arc<Formula>),
    False,
    Box(Arc<Term>, Arc<Formula>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Expr {
    Term(Term),
    Formula(Formula),
}

pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(sym(name))
    }
    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Arc::new(a), Arc::new(b))
    }
    pub fn union(a: Term, b: Term) -> Term {
        Term::Union(Arc::new(a), Arc::new(b))
    }
    pub fn plus(t: Term) -> Term {
        Term::Plus(Arc::new(t))
    }
    pub fn star(t: Term) -> Term {
        Term::Star(Arc::new(t))
    }
    pub fn anti(t: Term) -> Term {
        Term::Antidomain(Arc::new(t))
    }
    /// Positive lookahead, `(t^a)^a`.
    pub fn domain(t: Term) -> Term {
        Term::anti(Term::anti(t))
    }
    pub fn cap_id(t: Term) -> Term {
        Term::CapId(Arc::new(t))
    }
    pub fn cap_nid(t: Term) -> Term {
        Term::CapNid(Arc::new(t))
    }
    pub fn test(f: Formula) -> Term {
        Term::Test(Arc::new(f))
    }
    pub fn one() -> Term {
        Term::test(Formula::tt())
    }
    pub fn zero() -> Term {
        Term::test(Formula::False)
    }
    pub fn is_one(&self) -> bool {
        matches!(self, Term::Test(f) if f.is_true())
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Test(f) if **f == Formula::False)
    }

    /// `t^n`: `1` for n = 0, otherwise `t;(t;(...))`.
    pub fn pow(t: &Term, n: usize) -> Term {
        match n {
            0 => Term::one(),
            1 => t.clone(),
            _ => Term::seq(t.clone(), Term::pow(t, n - 1)),
        }
    }

    /// Left-associated sum; the empty sum is `0`.
    pub fn sum<I: IntoIterator<Item = Term>>(items: I) -> Term {
        items
            .into_iter()
            .reduce(Term::union)
            .unwrap_or_else(Term::zero)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Seq(a, b) | Term::Union(a, b) => 1 + a.size() + b.size(),
            Term::Plus(t) | Term::Star(t) | Term::Antidomain(t) | Term::CapId(t) | Term::CapNid(t) => {
                1 + t.size()
            }
            Term::Test(f) => 1 + f.size(),
        }
    }
}

impl Formula {
    pub fn pvar(name: &str) -> Formula {
        Formula::PVar(sym(name))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }
    pub fn boxed(t: Term, f: Formula) -> Formula {
        Formula::Box(Arc::new(t), Arc::new(f))
    }
    pub fn tt() -> Formula {
        Formula::implies(Formula::False, Formula::False)
    }
    pub fn not(f: Formula) -> Formula {
        Formula::implies(f, Formula::False)
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::implies(Formula::not(a), b)
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::or(Formula::not(a), Formula::not(b)))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }
    pub fn dia(t: Term, f: Formula) -> Formula {
        Formula::not(Formula::boxed(t, Formula::not(f)))
    }
    /// Conjunction of all items; `T` when empty.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or_else(Formula::tt)
    }
    /// Disjunction of all items; `F` when empty.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Formula::Implies(a, b) if **a == Formula::False && **b == Formula::False)
    }

    /// `Some(g)` when the formula is `g -> F`.
    pub fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::False => Some(a),
            _ => None,
        }
    }
    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => a.as_not().map(|x| (x, &**b)),
            _ => None,
        }
    }
    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        let (nx, ny) = self.as_not()?.as_or()?;
        Some((nx.as_not()?, ny.as_not()?))
    }
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        let (l, r) = self.as_and()?;
        match (l, r) {
            (Formula::Implies(a, b), Formula::Implies(c, d)) if a == d && b == c => Some((a, b)),
            _ => None,
        }
    }
    pub fn as_dia(&self) -> Option<(&Term, &Formula)> {
        match self.as_not()? {
            Formula::Box(t, g) => g.as_not().map(|g| (&**t, g)),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::PVar(_) | Formula::False => 1,
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::Box(t, f) => 1 + t.size() + f.size(),
        }
    }
}

impl Expr {
    pub fn size(&self) -> usize {
        match self {
            Expr::Term(t) => t.size(),
            Expr::Formula(f) => f.size(),
        }
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Expr {
        Expr::Term(t)
    }
}

impl From<Formula> for Expr {
    fn from(f: Formula) -> Expr {
        Expr::Formula(f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expression(self))
    }
}

/// Term and formula variables occurring in an expression.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct FreeVars {
    pub terms: BTreeSet<TermVar>,
    pub formulas: BTreeSet<FmlVar>,
}

impl FreeVars {
    pub fn of_term(t: &Term) -> FreeVars {
        let mut v = FreeVars::default();
        v.add_term(t);
        v
    }
    pub fn of_formula(f: &Formula) -> FreeVars {
        let mut v = FreeVars::default();
        v.add_formula(f);
        v
    }
    pub fn add_term(&mut self, t: &Term) {
        match t {
            Term::Var(a) => {
                self.terms.insert(a.clone());
            }
            Term::Seq(a, b) | Term::Union(a, b) => {
                self.add_term(a);
                self.add_term(b);
            }
            Term::Plus(t) | Term::Star(t) | Term::Antidomain(t) | Term::CapId(t) | Term::CapNid(t) => {
                self.add_term(t)
            }
            Term::Test(f) => self.add_formula(f),
        }
    }
    pub fn add_formula(&mut self, f: &Formula) {
        match f {
            Formula::PVar(p) => {
                self.formulas.insert(p.clone());
            }
            Formula::False => {}
            Formula::Implies(a, b) => {
                self.add_formula(a);
                self.add_formula(b);
            }
            Formula::Box(t, g) => {
                self.add_term(t);
                self.add_formula(g);
            }
        }
    }
}

pub fn free_variables(e: &Expr) -> FreeVars {
    match e {
        Expr::Term(t) => FreeVars::of_term(t),
        Expr::Formula(f) => FreeVars::of_formula(f),
    }
}

/// Simultaneous substitution of terms for term variables and formulas for formula variables.
#[derive(Clone, Default, Debug)]
pub struct Subst {
    pub terms: BTreeMap<TermVar, Term>,
    pub formulas: BTreeMap<FmlVar, Formula>,
}

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }
    pub fn term(mut self, a: &str, t: Term) -> Subst {
        self.terms.insert(sym(a), t);
        self
    }
    pub fn formula(mut self, p: &str, f: Formula) -> Subst {
        self.formulas.insert(sym(p), f);
        self
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        map_term(t, &mut |a| self.terms.get(a).cloned(), &mut |p| self.formulas.get(p).cloned())
    }
    pub fn apply_formula(&self, f: &Formula) -> Formula {
        map_formula(f, &mut |a| self.terms.get(a).cloned(), &mut |p| self.formulas.get(p).cloned())
    }
}

pub fn substitute(e: &Expr, s: &Subst) -> Expr {
    match e {
        Expr::Term(t) => Expr::Term(s.apply_term(t)),
        Expr::Formula(f) => Expr::Formula(s.apply_formula(f)),
    }
}

/// Rebuilds a term, replacing variables for which a callback returns `Some`.
pub fn map_term(
    t: &Term,
    tv: &mut dyn FnMut(&TermVar) -> Option<Term>,
    fv: &mut dyn FnMut(&FmlVar) -> Option<Formula>,
) -> Term {
    match t {
        Term::Var(a) => tv(a).unwrap_or_else(|| t.clone()),
        Term::Seq(a, b) => Term::seq(map_term(a, tv, fv), map_term(b, tv, fv)),
        Term::Union(a, b) => Term::union(map_term(a, tv, fv), map_term(b, tv, fv)),
        Term::Plus(a) => Term::plus(map_term(a, tv, fv)),
        Term::Star(a) => Term::star(map_term(a, tv, fv)),
        Term::Antidomain(a) => Term::anti(map_term(a, tv, fv)),
        Term::CapId(a) => Term::cap_id(map_term(a, tv, fv)),
        Term::CapNid(a) => Term::cap_nid(map_term(a, tv, fv)),
        Term::Test(f) => Term::test(map_formula(f, tv, fv)),
    }
}

pub fn map_formula(
    f: &Formula,
    tv: &mut dyn FnMut(&TermVar) -> Option<Term>,
    fv: &mut dyn FnMut(&FmlVar) -> Option<Formula>,
) -> Formula {
    match f {
        Formula::PVar(p) => fv(p).unwrap_or_else(|| f.clone()),
        Formula::False => Formula::False,
        Formula::Implies(a, b) => Formula::implies(map_formula(a, tv, fv), map_formula(b, tv, fv)),
        Formula::Box(t, g) => Formula::boxed(map_term(t, tv, fv), map_formula(g, tv, fv)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_forms_expand_to_primitives() {
        assert_eq!(Term::one(), Term::Test(Arc::new(Formula::tt())));
        assert!(Term::zero().is_zero());
        assert_eq!(Term::pow(&Term::var("a"), 0), Term::one());
        assert_eq!(
            Term::pow(&Term::var("a"), 3),
            Term::seq(Term::var("a"), Term::seq(Term::var("a"), Term::var("a")))
        );
        assert_eq!(Term::sum(Vec::new()), Term::zero());
    }

    #[test]
    fn sugar_recognisers_invert_constructors() {
        let p = Formula::pvar("P");
        let q = Formula::pvar("Q");
        let and = Formula::and(p.clone(), q.clone());
        assert_eq!(and.as_and(), Some((&p, &q)));
        let iff = Formula::iff(p.clone(), q.clone());
        assert_eq!(iff.as_iff(), Some((&p, &q)));
        let dia = Formula::dia(Term::var("a"), p.clone());
        assert_eq!(dia.as_dia(), Some((&Term::var("a"), &p)));
    }

    #[test]
    fn free_variables_of_examples() {
        let e = Expr::Term(Term::seq(Term::var("a"), Term::test(Formula::pvar("P"))));
        let fv = free_variables(&e);
        assert_eq!(fv.terms.into_iter().collect::<Vec<_>>(), vec![sym("a")]);
        assert_eq!(fv.formulas.into_iter().collect::<Vec<_>>(), vec![sym("P")]);
        assert_eq!(free_variables(&Expr::Term(Term::one())), FreeVars::default());

        let u = parse_term("(x y^a)^+ x y^d").unwrap();
        let fv = FreeVars::of_term(&u);
        assert_eq!(fv.terms.len(), 2);
        assert!(fv.formulas.is_empty());
    }

    #[test]
    fn substitution_examples() {
        let opts = ParseOptions { sugar: Sugar::Regex, ..ParseOptions::default() };
        let t = parse::parse_term_with("((?!ab)(a|b))*", &opts).unwrap();
        let s = Subst::new().term("b", Term::var("a"));
        let expect = parse::parse_term_with("((?!aa)(a|a))*", &opts).unwrap();
        assert_eq!(s.apply_term(&t), expect);

        let e = Expr::Formula(Formula::boxed(Term::var("a"), Formula::pvar("P")));
        assert_eq!(substitute(&e, &Subst::new()), e);
        let s = Subst::new().formula("P", Formula::False);
        assert_eq!(
            substitute(&e, &s),
            Expr::Formula(Formula::boxed(Term::var("a"), Formula::False))
        );
    }
}
