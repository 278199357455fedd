use std::fmt;

use super::bits::{BitRel, BitSet};
use super::eval::formula_unchecked;
use super::structure::{StructClass, Structure};
use crate::syntax::{FmlVar, Formula, FreeVars, TermVar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub budget: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "structure enumeration exceeded its budget of {}", self.budget)
    }
}

impl std::error::Error for BudgetExceeded {}

enum Bit {
    Rel(usize, usize, usize),
    Prop(usize, usize),
}

/// A fixed universe and labelling plus the relation/proposition bits left free.
struct Frame {
    base: Structure,
    free: Vec<Bit>,
}

/// Lazy, duplicate-free (per id assignment) stream of structures of a class.
pub struct Structures {
    alphabet: Vec<TermVar>,
    fml_vars: Vec<FmlVar>,
    class: StructClass,
    max_size: usize,
    size: usize,
    frames: Vec<Frame>,
    frame: usize,
    counter: u128,
    emitted: u64,
    budget: Option<u64>,
    done: bool,
}

pub fn enumerate_structures(
    alphabet: &[TermVar],
    fml_vars: &[FmlVar],
    max_size: usize,
    class: StructClass,
    budget: Option<u64>,
) -> Structures {
    let mut alphabet = alphabet.to_vec();
    alphabet.sort();
    alphabet.dedup();
    let mut fml_vars = fml_vars.to_vec();
    fml_vars.sort();
    fml_vars.dedup();
    Structures {
        alphabet,
        fml_vars,
        class,
        max_size,
        size: 0,
        frames: Vec::new(),
        frame: 0,
        counter: 0,
        emitted: 0,
        budget,
        done: false,
    }
}

impl Structures {
    fn empty_structure(&self, n: usize, universal: BitRel) -> Structure {
        let mut s = Structure::new(n, universal);
        for a in &self.alphabet {
            s.rels.insert(a.clone(), BitRel::new(n));
        }
        for p in &self.fml_vars {
            s.props.insert(p.clone(), BitSet::new(n));
        }
        s
    }

    fn prop_bits(&self, n: usize, with_props: bool) -> Vec<Bit> {
        if !with_props {
            return Vec::new();
        }
        (0..self.fml_vars.len()).flat_map(|p| (0..n).map(move |i| Bit::Prop(p, i))).collect()
    }

    fn frames_for(&self, n: usize) -> Vec<Frame> {
        let k = self.alphabet.len();
        match self.class {
            StructClass::FinLin | StructClass::Preorder => {
                let universals = if self.class == StructClass::FinLin {
                    vec![BitRel::leq(n)]
                } else {
                    preorders(n)
                };
                universals
                    .into_iter()
                    .map(|u| {
                        let pairs: Vec<(usize, usize)> = u.pairs().collect();
                        let mut free: Vec<Bit> =
                            (0..k).flat_map(|a| pairs.iter().map(move |(i, j)| Bit::Rel(a, *i, *j))).collect();
                        free.extend(self.prop_bits(n, true));
                        Frame { base: self.empty_structure(n, u), free }
                    })
                    .collect()
            }
            StructClass::StFinLin | StructClass::WordLike => {
                let props = self.class == StructClass::StFinLin;
                if k == 0 && n > 1 {
                    return Vec::new();
                }
                labellings(n.saturating_sub(1), k)
                    .into_iter()
                    .map(|labels| {
                        let mut s = self.empty_structure(n, BitRel::leq(n));
                        for (i, a) in labels.iter().enumerate() {
                            s.rels.get_mut(&self.alphabet[*a]).unwrap().insert(i, i + 1);
                        }
                        Frame { base: s, free: self.prop_bits(n, props) }
                    })
                    .collect()
            }
            StructClass::StrictTree => {
                if k == 0 && n > 1 {
                    return Vec::new();
                }
                let mut out = Vec::new();
                for parents in parent_arrays(n) {
                    for labels in labellings(n.saturating_sub(1), k) {
                        let mut edges = BitRel::new(n);
                        let mut s = self.empty_structure(n, BitRel::new(n));
                        for (c, p) in parents.iter().enumerate() {
                            let child = c + 1;
                            edges.insert(*p, child);
                            s.rels.get_mut(&self.alphabet[labels[c]]).unwrap().insert(*p, child);
                        }
                        s.universal = BitRel::identity(n).union(&edges.transitive_closure());
                        out.push(Frame { base: s, free: self.prop_bits(n, true) });
                    }
                }
                out
            }
        }
    }

    fn instantiate(&self, frame: &Frame, code: u128) -> Structure {
        let mut s = frame.base.clone();
        for (b, bit) in frame.free.iter().enumerate() {
            if code >> b & 1 == 1 {
                match bit {
                    Bit::Rel(a, i, j) => s.rels.get_mut(&self.alphabet[*a]).unwrap().insert(*i, *j),
                    Bit::Prop(p, i) => s.props.get_mut(&self.fml_vars[*p]).unwrap().insert(*i),
                }
            }
        }
        s
    }
}

impl Iterator for Structures {
    type Item = Result<Structure, BudgetExceeded>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            if self.frame < self.frames.len() {
                let frame = &self.frames[self.frame];
                assert!(frame.free.len() < 127, "too many free bits to enumerate");
                if self.counter < 1u128 << frame.free.len() {
                    if let Some(b) = self.budget {
                        if self.emitted >= b {
                            self.done = true;
                            return Some(Err(BudgetExceeded { budget: b }));
                        }
                    }
                    let s = self.instantiate(frame, self.counter);
                    self.counter += 1;
                    self.emitted += 1;
                    return Some(Ok(s));
                }
                self.frame += 1;
                self.counter = 0;
                continue;
            }
            if self.size >= self.max_size {
                self.done = true;
                return None;
            }
            self.size += 1;
            self.frames = self.frames_for(self.size);
            self.frame = 0;
            self.counter = 0;
        }
    }
}

/// All preorders on `0..n`.
fn preorders(n: usize) -> Vec<BitRel> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    (0u64..1 << off.len())
        .map(|code| {
            let mut r = BitRel::identity(n);
            for (b, (i, j)) in off.iter().enumerate() {
                if code >> b & 1 == 1 {
                    r.insert(*i, *j);
                }
            }
            r
        })
        .filter(BitRel::is_transitive)
        .collect()
}

/// All sequences of length `len` over `0..k`.
fn labellings(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Parent arrays of rooted trees on `0..n` with root 0 and `parent(i) < i`.
fn parent_arrays(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for child in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..child).map(move |q| {
                    let mut p = p.clone();
                    p.push(q);
                    p
                })
            })
            .collect();
    }
    out
}

/// Searches the class up to `max_size` points for a point where `f` fails.
pub fn bounded_counterexample(f: &Formula, class: StructClass, max_size: usize) -> Option<(Structure, usize)> {
    bounded_counterexample_budget(f, class, max_size, None).ok().flatten()
}

pub fn bounded_counterexample_budget(
    f: &Formula,
    class: StructClass,
    max_size: usize,
    budget: Option<u64>,
) -> Result<Option<(Structure, usize)>, BudgetExceeded> {
    let fv = FreeVars::of_formula(f);
    let alphabet: Vec<TermVar> = fv.terms.into_iter().collect();
    let props: Vec<FmlVar> = fv.formulas.into_iter().collect();
    for s in enumerate_structures(&alphabet, &props, max_size, class, budget) {
        let s = s?;
        let sat = formula_unchecked(&s, f);
        if let Some(v) = (0..s.size).find(|v| !sat.contains(*v)) {
            return Ok(Some((s, v)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::structure::{word_from_str, word_structure};
    use crate::syntax::{sym, Term};

    fn count(alpha: &[&str], props: &[&str], max: usize, class: StructClass) -> usize {
        let a: Vec<TermVar> = alpha.iter().map(|s| sym(s)).collect();
        let p: Vec<FmlVar> = props.iter().map(|s| sym(s)).collect();
        enumerate_structures(&a, &p, max, class, None).map(Result::unwrap).count()
    }

    #[test]
    fn finlin_counts() {
        assert_eq!(count(&["a"], &[], 1, StructClass::FinLin), 2);
        assert_eq!(count(&["a"], &[], 2, StructClass::FinLin) - 2, 8);
    }

    #[test]
    fn preorder_counts() {
        // preorders on 2 points: 4; on 3 points: 29
        assert_eq!(preorders(2).len(), 4);
        assert_eq!(preorders(3).len(), 29);
    }

    #[test]
    fn stfinlin_is_words() {
        let a = [sym("a")];
        let all: Vec<Structure> =
            enumerate_structures(&a, &[], 2, StructClass::StFinLin, None).map(Result::unwrap).collect();
        let mut eps = word_structure(&[], &[]);
        eps.rels.insert(sym("a"), BitRel::new(1));
        assert_eq!(all, vec![eps, word_structure(&word_from_str("a"), &[])]);
        for s in enumerate_structures(&[sym("a"), sym("b")], &[sym("P")], 3, StructClass::StFinLin, None) {
            assert!(s.unwrap().validate(StructClass::StFinLin));
        }
        for s in enumerate_structures(&[sym("a"), sym("b")], &[sym("P")], 4, StructClass::StrictTree, None) {
            assert!(s.unwrap().validate(StructClass::StrictTree));
        }
        for s in enumerate_structures(&[sym("a")], &[], 3, StructClass::Preorder, None) {
            assert!(s.unwrap().validate(StructClass::Preorder));
        }
    }

    #[test]
    fn budget_is_reported() {
        let mut it = enumerate_structures(&[sym("a")], &[], 3, StructClass::FinLin, Some(5));
        for _ in 0..5 {
            assert!(it.next().unwrap().is_ok());
        }
        assert_eq!(it.next(), Some(Err(BudgetExceeded { budget: 5 })));
        assert_eq!(it.next(), None);
    }

    #[test]
    fn counterexample_examples() {
        assert!(bounded_counterexample(&Formula::tt(), StructClass::FinLin, 3).is_none());
        let f = Formula::dia(Term::var("a"), Formula::tt());
        let (s, v) = bounded_counterexample(&f, StructClass::FinLin, 1).unwrap();
        assert_eq!((s.size, v), (1, 0));
        assert!(s.rel("a").is_empty());
    }
}
