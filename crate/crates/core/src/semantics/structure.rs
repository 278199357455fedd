use std::collections::BTreeMap;

use super::bits::{BitRel, BitSet};
use crate::syntax::{sym, FmlVar, Sym, TermVar};

/// A finite generalized structure: universe `0..size`, a universal relation
/// bounding every term-variable relation, and formula-variable point sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub size: usize,
    pub universal: BitRel,
    pub rels: BTreeMap<TermVar, BitRel>,
    pub props: BTreeMap<FmlVar, BitSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructClass {
    Preorder,
    FinLin,
    StFinLin,
    StrictTree,
    WordLike,
}

impl Structure {
    /// Structure with no relations or propositions.
    pub fn new(size: usize, universal: BitRel) -> Structure {
        assert!(size >= 1, "a universe is non-empty");
        Structure { size, universal, rels: BTreeMap::new(), props: BTreeMap::new() }
    }

    /// Universe ordered by `<=` on ids.
    pub fn linear(size: usize) -> Structure {
        Structure::new(size, BitRel::leq(size))
    }

    pub fn set_rel(&mut self, a: &str, pairs: &[(usize, usize)]) -> &mut Self {
        self.rels.insert(sym(a), BitRel::from_pairs(self.size, pairs.iter().copied()));
        self
    }

    pub fn set_prop(&mut self, p: &str, points: &[usize]) -> &mut Self {
        self.props.insert(sym(p), BitSet::from_iter(self.size, points.iter().copied()));
        self
    }

    pub fn rel(&self, a: &str) -> BitRel {
        self.rels.get(a).cloned().unwrap_or_else(|| BitRel::new(self.size))
    }

    pub fn prop(&self, p: &str) -> BitSet {
        self.props.get(p).cloned().unwrap_or_else(|| BitSet::new(self.size))
    }

    fn rels_within_universal(&self) -> bool {
        self.rels.values().all(|r| r.size() == self.size && r.is_subset(&self.universal))
            && self.props.values().all(|p| p.len() == self.size)
    }

    fn is_linear_order(&self) -> bool {
        let u = &self.universal;
        u.is_preorder()
            && (0..self.size).all(|i| {
                (0..self.size).all(|j| i == j || (u.contains(i, j) != u.contains(j, i)))
            })
    }

    /// Points listed in increasing order of a linear universal relation.
    fn linear_order(&self) -> Vec<usize> {
        let mut pts: Vec<usize> = (0..self.size).collect();
        pts.sort_by_key(|i| self.universal.row(*i).count());
        pts.reverse();
        pts
    }

    fn is_word_shaped(&self) -> bool {
        if !self.is_linear_order() {
            return false;
        }
        let order = self.linear_order();
        let mut succ = BitRel::new(self.size);
        for w in order.windows(2) {
            succ.insert(w[0], w[1]);
        }
        let mut hits = BitRel::new(self.size);
        for r in self.rels.values() {
            if !r.is_subset(&succ) || !r.intersect(&hits).is_empty() {
                return false;
            }
            hits = hits.union(r);
        }
        hits == succ
    }

    fn is_strict_tree(&self) -> bool {
        let n = self.size;
        let mut edges = BitRel::new(n);
        let mut indeg = vec![0usize; n];
        for r in self.rels.values() {
            for (i, j) in r.pairs() {
                if i == j || edges.contains(i, j) {
                    return false;
                }
                edges.insert(i, j);
                indeg[j] += 1;
            }
        }
        let roots: Vec<usize> = (0..n).filter(|i| indeg[*i] == 0).collect();
        if roots.len() != 1 || indeg.iter().any(|d| *d > 1) {
            return false;
        }
        let reach = BitRel::identity(n).union(&edges.transitive_closure());
        reach.row(roots[0]).count() == n && reach == self.universal
    }

    pub fn validate(&self, class: StructClass) -> bool {
        if self.size == 0 || self.universal.size() != self.size || !self.rels_within_universal() {
            return false;
        }
        match class {
            StructClass::Preorder => self.universal.is_preorder(),
            StructClass::FinLin => self.is_linear_order(),
            StructClass::StFinLin => self.is_word_shaped(),
            StructClass::WordLike => self.is_word_shaped() && self.props.values().all(BitSet::is_empty),
            StructClass::StrictTree => self.is_strict_tree(),
        }
    }

    /// Relation of the union of all term variables.
    pub fn edges(&self) -> BitRel {
        self.rels.values().fold(BitRel::new(self.size), |acc, r| acc.union(r))
    }

    /// Restriction to the points reachable from `v` along term-variable edges,
    /// renumbered densely in increasing id order. Returns the substructure and
    /// the original id of each new point.
    pub fn generated_substructure(&self, v: usize) -> (Structure, Vec<usize>) {
        let reach = BitRel::identity(self.size).union(&self.edges().transitive_closure());
        let origin: Vec<usize> = reach.row(v).iter().collect();
        let m = origin.len();
        let restrict = |r: &BitRel| {
            BitRel::from_pairs(
                m,
                (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|(i, j)| r.contains(origin[*i], origin[*j])),
            )
        };
        let rels = self.rels.iter().map(|(k, r)| (k.clone(), restrict(r))).collect();
        let props = self
            .props
            .iter()
            .map(|(k, p)| (k.clone(), BitSet::from_iter(m, (0..m).filter(|i| p.contains(origin[*i])))))
            .collect();
        let sub = Structure { size: m, universal: restrict(&self.universal), rels, props };
        (sub, origin)
    }

    /// Same structure with the diagonal removed from the universal relation.
    pub fn strict(&self) -> Structure {
        Structure { universal: self.universal.without_diag(), ..self.clone() }
    }
}

/// A word over term-variable characters.
pub type Word = Vec<Sym>;

pub fn word_from_str(s: &str) -> Word {
    s.chars().map(|c| sym(&c.to_string())).collect()
}

pub fn word_to_string(w: &[Sym]) -> String {
    w.iter().map(|c| &**c).collect::<Vec<_>>().join("")
}

/// The string structure of `w`: positions `0..=|w|`, `i <= j` as universal
/// relation and `{(i, i+1)}` for the character at `i`.
pub fn word_structure(w: &[Sym], fml_vars: &[FmlVar]) -> Structure {
    let n = w.len() + 1;
    let mut s = Structure::linear(n);
    for (i, c) in w.iter().enumerate() {
        s.rels.entry(c.clone()).or_insert_with(|| BitRel::new(n)).insert(i, i + 1);
    }
    for p in fml_vars {
        s.props.insert(p.clone(), BitSet::new(n));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let mut s = Structure::linear(2);
        s.set_rel("a", &[(0, 1)]);
        assert!(s.validate(StructClass::FinLin));
        let mut t = Structure::new(2, BitRel::from_pairs(2, [(0, 0), (1, 1), (0, 1), (1, 0)]));
        t.set_rel("a", &[(0, 1)]);
        assert!(t.validate(StructClass::Preorder));
        assert!(!t.validate(StructClass::FinLin));
        let w = word_structure(&word_from_str("ab"), &[]);
        assert!(w.validate(StructClass::StFinLin));
        assert!(w.validate(StructClass::WordLike));
        assert!(word_structure(&word_from_str("aab"), &[]).validate(StructClass::StFinLin));
    }

    #[test]
    fn word_structure_shape() {
        let w = word_structure(&word_from_str("ab"), &[]);
        assert_eq!(w.size, 3);
        assert_eq!(w.rel("a"), BitRel::from_pairs(3, [(0, 1)]));
        assert_eq!(w.rel("b"), BitRel::from_pairs(3, [(1, 2)]));
        let e = word_structure(&[], &[]);
        assert_eq!(e.size, 1);
        assert!(e.rels.is_empty());
    }

    #[test]
    fn generated_substructure_examples() {
        let w = word_structure(&word_from_str("ab"), &[]);
        let (sub, origin) = w.generated_substructure(1);
        assert_eq!(origin, vec![1, 2]);
        assert_eq!(sub.rel("b"), BitRel::from_pairs(2, [(0, 1)]));
        assert!(sub.rel("a").is_empty());
        let (sub, origin) = w.generated_substructure(2);
        assert_eq!((sub.size, origin), (1, vec![2]));
    }

    #[test]
    fn tree_validation() {
        let mut t = Structure::new(3, BitRel::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]));
        t.set_rel("a", &[(0, 1)]).set_rel("b", &[(0, 2)]);
        assert!(t.validate(StructClass::StrictTree));
        t.set_rel("b", &[(0, 2), (1, 2)]);
        assert!(!t.validate(StructClass::StrictTree));
    }
}
