//! Finite generalized structures, the relational evaluator, word structures,
//! bounded languages and brute-force oracles.

mod bits;
mod enumerate;
mod eval;
mod language;
mod structure;

pub use bits::{BitRel, BitSet};
pub use enumerate::{
    bounded_counterexample, bounded_counterexample_budget, enumerate_structures, BudgetExceeded, Structures,
};
pub use eval::{eval_formula, eval_term, formula_unchecked, holds_everywhere, term_unchecked, EvalError};
pub use language::{bounded_language, first_difference, relation_to_term, words_up_to, LangKind, Triple};
pub use structure::{word_from_str, word_structure, word_to_string, StructClass, Structure, Word};
