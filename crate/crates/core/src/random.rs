//! Seeded random terms and formulas for property checks and corpora.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{sym, Formula, Sym, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOp {
    Seq,
    Union,
    Plus,
    Star,
    Anti,
    CapId,
    CapNid,
    Test,
}

/// Which variables and constructors may appear.
#[derive(Clone, Debug)]
pub struct Grammar {
    pub term_vars: Vec<Sym>,
    pub fml_vars: Vec<Sym>,
    pub ops: Vec<TermOp>,
    /// Allow the constant `F` as a formula leaf.
    pub falsum: bool,
}

impl Grammar {
    pub fn new(term_vars: &[&str], fml_vars: &[&str], ops: &[TermOp]) -> Grammar {
        Grammar {
            term_vars: term_vars.iter().map(|s| sym(s)).collect(),
            fml_vars: fml_vars.iter().map(|s| sym(s)).collect(),
            ops: ops.to_vec(),
            falsum: true,
        }
    }

    /// Every constructor.
    pub fn full(term_vars: &[&str], fml_vars: &[&str]) -> Grammar {
        use TermOp::*;
        Grammar::new(term_vars, fml_vars, &[Seq, Union, Plus, Star, Anti, CapId, CapNid, Test])
    }

    /// Regular programs with tests.
    pub fn pdl(term_vars: &[&str], fml_vars: &[&str]) -> Grammar {
        use TermOp::*;
        Grammar::new(term_vars, fml_vars, &[Seq, Union, Plus, Star, Test])
    }

    /// The shape of formulas leaving the encodings: one relation `S$`, no
    /// antidomain and no identity restrictions.
    pub fn pipeline(fml_vars: &[&str]) -> Grammar {
        Grammar::pdl(&[crate::encodings::names::SUCC], fml_vars)
    }

    /// Regular expressions with lookahead: no identity restrictions.
    pub fn rewla(term_vars: &[&str]) -> Grammar {
        use TermOp::*;
        Grammar::new(term_vars, &[], &[Seq, Union, Plus, Star, Anti])
    }

    fn leaf_formula<R: Rng>(&self, rng: &mut R) -> Formula {
        if self.fml_vars.is_empty() || (self.falsum && rng.gen_ratio(1, 4)) {
            Formula::False
        } else {
            Formula::PVar(self.fml_vars.choose(rng).unwrap().clone())
        }
    }

    /// A formula with at most `size` nodes.
    pub fn formula<R: Rng>(&self, rng: &mut R, size: usize) -> Formula {
        if size <= 2 {
            return self.leaf_formula(rng);
        }
        let k = rng.gen_range(1..size - 1);
        if !self.term_vars.is_empty() && rng.gen_bool(0.5) {
            let t = self.term(rng, k);
            let rest = size - 1 - t.size();
            Formula::boxed(t, self.formula(rng, rest))
        } else {
            Formula::implies(self.formula(rng, k), self.formula(rng, size - 1 - k))
        }
    }

    /// A term with at most `size` nodes (a variable if `size <= 1`).
    pub fn term<R: Rng>(&self, rng: &mut R, size: usize) -> Term {
        if size <= 1 || self.ops.is_empty() {
            return Term::Var(self.term_vars.choose(rng).unwrap().clone());
        }
        let op = *self.ops.choose(rng).unwrap();
        let binary = matches!(op, TermOp::Seq | TermOp::Union);
        if binary && size < 3 {
            return Term::Var(self.term_vars.choose(rng).unwrap().clone());
        }
        match op {
            TermOp::Seq | TermOp::Union => {
                let k = rng.gen_range(1..size - 1);
                let a = self.term(rng, k);
                let b = self.term(rng, size - 1 - k);
                if op == TermOp::Seq {
                    Term::seq(a, b)
                } else {
                    Term::union(a, b)
                }
            }
            TermOp::Plus => Term::plus(self.term(rng, size - 1)),
            TermOp::Star => Term::star(self.term(rng, size - 1)),
            TermOp::Anti => Term::anti(self.term(rng, size - 1)),
            TermOp::CapId => Term::cap_id(self.term(rng, size - 1)),
            TermOp::CapNid => Term::cap_nid(self.term(rng, size - 1)),
            TermOp::Test => Term::test(self.formula(rng, size - 1)),
        }
    }
}

/// A `ChaCha8` generator from a fixed seed.
pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_bounded() {
        let mut rng = seeded(7);
        let g = Grammar::full(&["a", "b"], &["P", "Q"]);
        for size in 1..12 {
            for _ in 0..50 {
                assert!(g.formula(&mut rng, size).size() <= size.max(1));
                assert!(g.term(&mut rng, size).size() <= size.max(1));
            }
        }
    }
}
