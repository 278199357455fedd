use crate::syntax::{Expr, Formula, Term};

/// Which class the normal form targets. On word structures letters never
/// relate a position to itself, so the identity part of a letter is `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    FinLin,
    StFinLin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Formula(Formula),
    /// Identity part (as a formula) and identity-free part of a term.
    Term(Formula, Term),
}

pub fn normal_form(e: &Expr, v: Variant) -> NormalForm {
    match e {
        Expr::Formula(f) => NormalForm::Formula(normal_form_formula(f, v)),
        Expr::Term(t) => {
            let (one, two) = normal_form_term(t, v);
            NormalForm::Term(one, two)
        }
    }
}

pub fn normal_form_formula(f: &Formula, v: Variant) -> Formula {
    match f {
        Formula::PVar(_) | Formula::False => f.clone(),
        Formula::Implies(a, b) => Formula::implies(normal_form_formula(a, v), normal_form_formula(b, v)),
        Formula::Box(t, g) => {
            let (one, two) = normal_form_term(t, v);
            let g = normal_form_formula(g, v);
            Formula::and(Formula::implies(one, g.clone()), Formula::boxed(two, g))
        }
    }
}

/// `(identity part, identity-free part)`.
pub fn normal_form_term(t: &Term, v: Variant) -> (Formula, Term) {
    match t {
        Term::Var(_) => {
            let one = match v {
                Variant::FinLin => Formula::dia(Term::cap_id(t.clone()), Formula::tt()),
                Variant::StFinLin => Formula::False,
            };
            (one, Term::cap_nid(t.clone()))
        }
        Term::Seq(a, b) => {
            let (a1, a2) = normal_form_term(a, v);
            let (b1, b2) = normal_form_term(b, v);
            let two = Term::union(
                Term::union(Term::seq(a2.clone(), Term::test(b1.clone())), Term::seq(Term::test(a1.clone()), b2.clone())),
                Term::seq(a2, b2),
            );
            (Formula::and(a1, b1), two)
        }
        Term::Union(a, b) => {
            let (a1, a2) = normal_form_term(a, v);
            let (b1, b2) = normal_form_term(b, v);
            (Formula::or(a1, b1), Term::union(a2, b2))
        }
        Term::Plus(a) => {
            let (a1, a2) = normal_form_term(a, v);
            (a1, Term::plus(a2))
        }
        Term::Star(a) => {
            let (_, a2) = normal_form_term(a, v);
            (Formula::tt(), Term::plus(a2))
        }
        Term::Antidomain(a) => {
            let (a1, a2) = normal_form_term(a, v);
            (Formula::and(Formula::not(a1), Formula::boxed(a2, Formula::False)), Term::zero())
        }
        Term::CapId(a) => (normal_form_term(a, v).0, Term::zero()),
        Term::CapNid(a) => (Formula::False, normal_form_term(a, v).1),
        Term::Test(g) => (normal_form_formula(g, v), Term::zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term};

    #[test]
    fn clauses() {
        let a = Term::var("a");
        assert_eq!(
            normal_form_term(&a, Variant::FinLin),
            (Formula::dia(Term::cap_id(a.clone()), Formula::tt()), Term::cap_nid(a.clone()))
        );
        let p = Formula::pvar("P");
        assert_eq!(normal_form_term(&Term::test(p.clone()), Variant::FinLin), (p.clone(), Term::zero()));
        let f = parse_formula("[a]P").unwrap();
        let expect = parse_formula("(<a^=>T -> P) && [a^#]P").unwrap();
        assert_eq!(normal_form_formula(&f, Variant::FinLin), expect);
        assert_eq!(normal_form_term(&parse_term("a").unwrap(), Variant::StFinLin).0, Formula::False);
    }
}
