use super::names;
use crate::syntax::{Formula, FreeVars, Term};

/// Appends the end-of-string marker `#` to both terms. `#` is the antidomain
/// of the sum of all letters, or of their identity-free parts when the
/// equivalence must be closed under substitution.
pub fn endmarker(s: &Term, t: &Term, subst_closed: bool) -> (Term, Term) {
    let mut fv = FreeVars::of_term(s);
    fv.add_term(t);
    let letters = fv.terms.iter().map(|a| {
        let a = Term::Var(a.clone());
        if subst_closed {
            Term::cap_nid(a)
        } else {
            a
        }
    });
    let end = Term::anti(Term::sum(letters));
    (Term::seq(s.clone(), end.clone()), Term::seq(t.clone(), end))
}

/// `[s]q <-> [t]q` for the fresh formula variable `q$eq`.
pub fn equation_to_formula(s: &Term, t: &Term) -> Formula {
    let q = Formula::pvar(names::EQ_VAR);
    Formula::iff(Formula::boxed(s.clone(), q.clone()), Formula::boxed(t.clone(), q))
}

/// Formula-to-term translation: `f` is valid iff the term equals `1`.
/// Each formula variable `P` becomes the domain of a fresh term variable `v$P`.
pub fn formula_to_term(f: &Formula) -> Term {
    match f {
        Formula::PVar(p) => Term::domain(Term::Var(names::var_of(p))),
        Formula::False => Term::zero(),
        Formula::Implies(a, b) => Term::union(Term::anti(formula_to_term(a)), formula_to_term(b)),
        Formula::Box(t, g) => Term::anti(Term::seq(term_to_term(t), Term::anti(formula_to_term(g)))),
    }
}

fn term_to_term(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Seq(a, b) => Term::seq(term_to_term(a), term_to_term(b)),
        Term::Union(a, b) => Term::union(term_to_term(a), term_to_term(b)),
        Term::Plus(a) => Term::plus(term_to_term(a)),
        Term::Star(a) => Term::star(term_to_term(a)),
        Term::Antidomain(a) => Term::anti(term_to_term(a)),
        Term::CapId(a) => Term::cap_id(term_to_term(a)),
        Term::CapNid(a) => Term::cap_nid(term_to_term(a)),
        Term::Test(g) => formula_to_term(g),
    }
}
