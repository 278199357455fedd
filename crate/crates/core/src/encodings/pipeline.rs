use std::collections::BTreeMap;

use super::names;
use super::normal::{normal_form_formula, Variant};
use crate::semantics::{BitSet, Structure};
use crate::syntax::{map_formula, Formula, FreeVars, Sym, Term};

/// Removes `0` and `1` where they are absorbed, and `[0]φ`.
pub fn simplify_zero(f: &Formula) -> Formula {
    match f {
        Formula::PVar(_) | Formula::False => f.clone(),
        Formula::Implies(a, b) => Formula::implies(simplify_zero(a), simplify_zero(b)),
        Formula::Box(t, g) => {
            let t = simplify_term(t);
            let g = simplify_zero(g);
            if t.is_zero() {
                Formula::tt()
            } else if t.is_one() {
                g
            } else {
                Formula::boxed(t, g)
            }
        }
    }
}

fn simplify_term(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Seq(a, b) => {
            let (a, b) = (simplify_term(a), simplify_term(b));
            if a.is_zero() || b.is_zero() {
                Term::zero()
            } else if a.is_one() {
                b
            } else if b.is_one() {
                a
            } else {
                Term::seq(a, b)
            }
        }
        Term::Union(a, b) => {
            let (a, b) = (simplify_term(a), simplify_term(b));
            if a.is_zero() {
                b
            } else if b.is_zero() {
                a
            } else {
                Term::union(a, b)
            }
        }
        Term::Plus(a) => {
            let a = simplify_term(a);
            if a.is_zero() || a.is_one() {
                a
            } else {
                Term::plus(a)
            }
        }
        Term::Star(a) => {
            let a = simplify_term(a);
            if a.is_zero() || a.is_one() {
                Term::one()
            } else {
                Term::star(a)
            }
        }
        Term::Antidomain(a) => Term::anti(simplify_term(a)),
        Term::CapId(a) => Term::cap_id(simplify_term(a)),
        Term::CapNid(a) => Term::cap_nid(simplify_term(a)),
        Term::Test(g) => {
            let g = simplify_zero(g);
            Term::test(g)
        }
    }
}

/// Normal form followed by renaming `<a^=>T` to `id$a` and `a^#` to `nid$a`.
/// The result has no antidomain and no identity restrictions; it is read on
/// structures whose universal relation is strict (see [`strip_identity`]).
pub fn remove_identity(f: &Formula, v: Variant) -> Formula {
    simplify_zero(&rename(&normal_form_formula(f, v)))
}

fn rename(f: &Formula) -> Formula {
    if let Some((Term::CapId(a), g)) = f.as_dia() {
        if let (Term::Var(a), true) = (&**a, g.is_true()) {
            return Formula::PVar(names::id_of(a));
        }
    }
    match f {
        Formula::PVar(_) | Formula::False => f.clone(),
        Formula::Implies(a, b) => Formula::implies(rename(a), rename(b)),
        Formula::Box(t, g) => Formula::boxed(rename_term(t), rename(g)),
    }
}

fn rename_term(t: &Term) -> Term {
    match t {
        Term::CapNid(a) if matches!(**a, Term::Var(_)) => match &**a {
            Term::Var(a) => Term::Var(names::nid_of(a)),
            _ => unreachable!(),
        },
        Term::Var(_) => t.clone(),
        Term::Seq(a, b) => Term::seq(rename_term(a), rename_term(b)),
        Term::Union(a, b) => Term::union(rename_term(a), rename_term(b)),
        Term::Plus(a) => Term::plus(rename_term(a)),
        Term::Star(a) => Term::star(rename_term(a)),
        Term::Antidomain(a) => Term::anti(rename_term(a)),
        Term::CapId(a) => Term::cap_id(rename_term(a)),
        Term::CapNid(a) => Term::cap_nid(rename_term(a)),
        Term::Test(g) => Term::test(rename(g)),
    }
}

/// The structure on which an identity-removed formula is read: diagonal
/// dropped from the universal relation, `nid$a = a` minus loops and
/// `id$a` = points with an `a`-loop.
pub fn strip_identity(s: &Structure) -> Structure {
    let mut out = Structure::new(s.size, s.universal.without_diag());
    out.props = s.props.clone();
    for (a, r) in &s.rels {
        out.rels.insert(names::nid_of(a), r.without_diag());
        out.props.insert(names::id_of(a), BitSet::from_iter(s.size, (0..s.size).filter(|i| r.contains(*i, *i))));
    }
    out
}

fn succ() -> Term {
    Term::var(names::SUCC)
}

/// Replaces each letter `a` by `S$ ; lbl$a?` and returns the side condition
/// that every proper descendant carries exactly one label.
pub fn single_letter_encoding(f: &Formula) -> (Formula, Formula) {
    let letters: Vec<Sym> = FreeVars::of_formula(f).terms.into_iter().collect();
    let encoded = map_formula(
        f,
        &mut |a| Some(Term::seq(succ(), Term::test(Formula::PVar(names::label_of(a))))),
        &mut |_| None,
    );
    let label = |a: &Sym| Formula::PVar(names::label_of(a));
    let some = Formula::disj(letters.iter().map(label));
    let exclusive = letters
        .iter()
        .enumerate()
        .flat_map(|(i, a)| letters[i + 1..].iter().map(move |b| (a, b)))
        .map(|(a, b)| Formula::or(Formula::not(label(a)), Formula::not(label(b))));
    let exclusive: Vec<Formula> = exclusive.collect();
    let body = if exclusive.is_empty() { some } else { Formula::and(some, Formula::conj(exclusive)) };
    (encoded, Formula::boxed(Term::plus(succ()), body))
}

/// First-child/next-sibling encoding: `S$` becomes `S$ D$? (S$ !D$?)*`,
/// conjoined with `[S$]D$`.
pub fn binary_tree_encoding(f: &Formula) -> Formula {
    let d = Formula::pvar(names::FIRST_CHILD);
    let step = Term::seq(
        Term::seq(succ(), Term::test(d.clone())),
        Term::star(Term::seq(succ(), Term::test(Formula::not(d.clone())))),
    );
    let encoded = map_formula(
        f,
        &mut |a| (&**a == names::SUCC).then(|| step.clone()),
        &mut |_| None,
    );
    Formula::and(encoded, Formula::boxed(succ(), d))
}

/// Unary encoding of the formula variables `p0 < p1 < ...` (lexicographic):
/// `p_i` becomes `<S$^i>B$` and `S$` becomes `S$^n`.
pub fn single_proposition_encoding(f: &Formula) -> Formula {
    let vars: Vec<Sym> = FreeVars::of_formula(f).formulas.into_iter().collect();
    let n = vars.len();
    if n == 0 {
        return f.clone();
    }
    let index: BTreeMap<Sym, usize> = vars.into_iter().enumerate().map(|(i, p)| (p, i)).collect();
    let bit = Formula::pvar(names::BIT);
    map_formula(
        f,
        &mut |a| (&**a == names::SUCC).then(|| Term::pow(&succ(), n)),
        &mut |p| index.get(p).map(|i| Formula::dia(Term::pow(&succ(), *i), bit.clone())),
    )
}
