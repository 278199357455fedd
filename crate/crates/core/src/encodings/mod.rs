//! Translations between equivalence problems, formulas and terms, the
//! identity-splitting normal form, and the encodings feeding the automata.

mod normal;
mod pipeline;
mod translate;

pub use normal::{normal_form, normal_form_formula, normal_form_term, NormalForm, Variant};
pub use pipeline::{
    binary_tree_encoding, remove_identity, simplify_zero, single_letter_encoding, single_proposition_encoding,
    strip_identity,
};
pub use translate::{endmarker, equation_to_formula, formula_to_term};

/// Generated names. All contain `$`, which user input cannot.
pub mod names {
    use crate::syntax::{sym, Sym};

    pub const EQ_VAR: &str = "q$eq";
    pub const SUCC: &str = "S$";
    pub const FIRST_CHILD: &str = "D$";
    pub const BIT: &str = "B$";

    pub fn id_of(a: &str) -> Sym {
        sym(&format!("id${a}"))
    }
    pub fn nid_of(a: &str) -> Sym {
        sym(&format!("nid${a}"))
    }
    pub fn label_of(a: &str) -> Sym {
        sym(&format!("lbl${a}"))
    }
    pub fn var_of(p: &str) -> Sym {
        sym(&format!("v${p}"))
    }
}
