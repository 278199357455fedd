//! Regular expressions with lookahead, PDL over them, and decision procedures
//! for their equivalences via alternating automata.

pub mod syntax;
pub mod semantics;
pub mod encodings;
pub mod automata;
pub mod decide;
pub mod proofs;
pub mod random;
