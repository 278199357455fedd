use std::collections::BTreeSet;

use super::bits::BitRel;
use super::eval::term_unchecked;
use super::structure::{word_structure, Word};
use crate::syntax::{Term, TermVar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LangKind {
    /// Triples `(w, i, j)` with `(i, j)` in the denotation over `w`.
    Match,
    /// Words whose full span `(0, |w|)` is matched.
    Word,
}

/// A matched slice. For word languages `i = 0` and `j = |w|`.
pub type Triple = (Word, usize, usize);

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn words_up_to(alphabet: &[TermVar], max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |c| {
                    let mut w = w.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn bounded_language(t: &Term, alphabet: &[TermVar], max_len: usize, kind: LangKind) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for w in words_up_to(alphabet, max_len) {
        let r = term_unchecked(&word_structure(&w, &[]), t);
        match kind {
            LangKind::Match => out.extend(r.pairs().map(|(i, j)| (w.clone(), i, j))),
            LangKind::Word => {
                if r.contains(0, w.len()) {
                    out.insert((w.clone(), 0, w.len()));
                }
            }
        }
    }
    out
}

/// First word (shortest, then lexicographic in `alphabet` order) on which
/// `s` and `t` differ, with a differing triple.
pub fn first_difference(
    s: &Term,
    t: &Term,
    alphabet: &[TermVar],
    max_len: usize,
    kind: LangKind,
) -> Option<Triple> {
    for w in words_up_to(alphabet, max_len) {
        let ws = word_structure(&w, &[]);
        let rs = term_unchecked(&ws, s);
        let rt = term_unchecked(&ws, t);
        match kind {
            LangKind::Match => {
                if let Some((i, j)) = rs.union(&rt).pairs().find(|(i, j)| rs.contains(*i, *j) != rt.contains(*i, *j)) {
                    return Some((w, i, j));
                }
            }
            LangKind::Word => {
                let n = w.len();
                if rs.contains(0, n) != rt.contains(0, n) {
                    return Some((w, 0, n));
                }
            }
        }
    }
    None
}

/// A term over the single letter `c` denoting `r` on the word `c^m`:
/// the sum over `(i, j)` of `(c^(m-i))^d ; (c^(m-i+1))^a ; c^(j-i)`.
pub fn relation_to_term(m: usize, r: &BitRel) -> Term {
    let c = Term::var("c");
    Term::sum(r.pairs().map(|(i, j)| {
        assert!(i <= j && j <= m, "pair ({i}, {j}) is not an order pair on 0..={m}");
        Term::seq(
            Term::seq(Term::domain(Term::pow(&c, m - i)), Term::anti(Term::pow(&c, m - i + 1))),
            Term::pow(&c, j - i),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::structure::{word_from_str, word_to_string};
    use crate::syntax::{parse_term, parse_term_with, sym, ParseOptions};

    fn ab() -> Vec<TermVar> {
        vec![sym("a"), sym("b")]
    }

    fn words(set: &BTreeSet<Triple>) -> Vec<String> {
        set.iter().map(|(w, _, _)| word_to_string(w)).collect()
    }

    #[test]
    fn lookahead_examples() {
        let t = parse_term_with("(?=a)b", &ParseOptions::regex()).unwrap();
        assert!(bounded_language(&t, &ab(), 3, LangKind::Word).is_empty());
        let t = parse_term_with("((?!ab)(a|b))*", &ParseOptions::regex()).unwrap();
        let mut got = words(&bounded_language(&t, &ab(), 2, LangKind::Word));
        got.sort();
        assert_eq!(got, vec!["", "a", "aa", "b", "ba", "bb"]);
        let t = parse_term("(a;a^a)^d").unwrap();
        let m = bounded_language(&t, &[sym("a")], 1, LangKind::Match);
        assert!(m.contains(&(word_from_str("a"), 0, 0)));
    }

    #[test]
    fn relation_to_term_examples() {
        let r = BitRel::from_pairs(2, [(0, 1)]);
        assert_eq!(relation_to_term(1, &r), parse_term("(c^1)^d;(c^2)^a;c^1").unwrap());
        assert_eq!(relation_to_term(0, &BitRel::new(1)), Term::zero());
    }

    #[test]
    fn relation_to_term_is_exact() {
        for m in 0..=3usize {
            let w: Vec<TermVar> = vec![sym("c"); m];
            let ws = word_structure(&w, &[]);
            let pairs: Vec<(usize, usize)> = (0..=m).flat_map(|i| (i..=m).map(move |j| (i, j))).collect();
            for code in 0u32..1 << pairs.len() {
                let r = BitRel::from_pairs(
                    m + 1,
                    pairs.iter().enumerate().filter(|(b, _)| code >> b & 1 == 1).map(|(_, p)| *p),
                );
                assert_eq!(term_unchecked(&ws, &relation_to_term(m, &r)), r);
            }
        }
    }
}
