//! Closures, alternating tree and string automata for pipeline formulas,
//! acceptance on finite trees and emptiness with witnesses.

mod ata;
mod closure;
mod emptiness;
mod pbool;
mod tree;

use std::fmt;

pub use ata::{build_asa, build_ata, build_with, reachable_states, Ata, Letter, DEFAULT_MAX_STATES, MAX_LETTER_BITS};
pub use closure::{extended_closure, fl_closure, fl_closure_rules, star_closure, star_closure_recursive, ClosureSet};
pub use emptiness::{asa_emptiness, ata_emptiness, emptiness_with, Emptiness, EmptinessStats, DEFAULT_MACRO_BUDGET};
pub use pbool::{PBool, StateId};
pub use tree::{acceptance_table, ata_accepts, enumerate_trees, structure_from_tree, InputTree, TreeNode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomatonError {
    StateBudgetExceeded { limit: usize },
    AlphabetTooLarge { bits: usize },
    Unsupported(String),
}

impl fmt::Display for AutomatonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomatonError::StateBudgetExceeded { limit } => write!(f, "state budget of {limit} exceeded"),
            AutomatonError::AlphabetTooLarge { bits } => write!(f, "alphabet needs {bits} letter bits"),
            AutomatonError::Unsupported(m) => write!(f, "unsupported input: {m}"),
        }
    }
}

impl std::error::Error for AutomatonError {}
