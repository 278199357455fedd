use std::fmt;

use super::bits::{BitRel, BitSet};
use super::structure::Structure;
use crate::syntax::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// The universal relation is not reflexive and transitive.
    NotPreorder,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NotPreorder => f.write_str("universal relation is not a preorder"),
        }
    }
}

impl std::error::Error for EvalError {}

pub fn eval_term(s: &Structure, t: &Term) -> Result<BitRel, EvalError> {
    if !s.universal.is_preorder() {
        return Err(EvalError::NotPreorder);
    }
    Ok(term_unchecked(s, t))
}

pub fn eval_formula(s: &Structure, f: &Formula) -> Result<BitSet, EvalError> {
    if !s.universal.is_preorder() {
        return Err(EvalError::NotPreorder);
    }
    Ok(formula_unchecked(s, f))
}

/// Relational semantics without the preorder check, for strict structures.
pub fn term_unchecked(s: &Structure, t: &Term) -> BitRel {
    let n = s.size;
    match t {
        Term::Var(a) => s.rels.get(a).cloned().unwrap_or_else(|| BitRel::new(n)),
        Term::Seq(a, b) => term_unchecked(s, a).compose(&term_unchecked(s, b)),
        Term::Union(a, b) => term_unchecked(s, a).union(&term_unchecked(s, b)),
        Term::Plus(a) => term_unchecked(s, a).transitive_closure(),
        Term::Star(a) => BitRel::identity(n).union(&term_unchecked(s, a).transitive_closure()),
        Term::Antidomain(a) => BitRel::diag_of(&term_unchecked(s, a).domain().complement()),
        Term::CapId(a) => term_unchecked(s, a).only_diag(),
        Term::CapNid(a) => term_unchecked(s, a).without_diag(),
        Term::Test(f) => BitRel::diag_of(&formula_unchecked(s, f)),
    }
}

pub fn formula_unchecked(s: &Structure, f: &Formula) -> BitSet {
    let n = s.size;
    match f {
        Formula::PVar(p) => s.props.get(p).cloned().unwrap_or_else(|| BitSet::new(n)),
        Formula::False => BitSet::new(n),
        Formula::Implies(a, b) => {
            let mut r = formula_unchecked(s, a).complement();
            r.union_with(&formula_unchecked(s, b));
            r
        }
        Formula::Box(t, g) => term_unchecked(s, t).boxed(&formula_unchecked(s, g)),
    }
}

/// True at every point.
pub fn holds_everywhere(s: &Structure, f: &Formula) -> bool {
    formula_unchecked(s, f).count() == s.size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::structure::{word_from_str, word_structure};
    use crate::syntax::parse_term;

    #[test]
    fn word_examples() {
        let w = word_structure(&word_from_str("ab"), &[]);
        let a = Term::var("a");
        assert_eq!(eval_term(&w, &a).unwrap(), BitRel::from_pairs(3, [(0, 1)]));
        let t = parse_term("(a;b)^a").unwrap();
        assert_eq!(eval_term(&w, &t).unwrap(), BitRel::from_pairs(3, [(1, 1), (2, 2)]));
        assert_eq!(eval_term(&w, &Term::one()).unwrap(), BitRel::identity(3));
        let f = Formula::boxed(a.clone(), Formula::False);
        assert_eq!(eval_formula(&w, &f).unwrap(), BitSet::from_iter(3, [1, 2]));
        assert_eq!(eval_formula(&w, &Formula::tt()).unwrap(), BitSet::full(3));
        let f = Formula::dia(Term::cap_id(a), Formula::tt());
        assert!(eval_formula(&w, &f).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_preorders() {
        let s = Structure::new(2, BitRel::from_pairs(2, [(0, 1)]));
        assert_eq!(eval_term(&s, &Term::one()), Err(EvalError::NotPreorder));
    }
}
