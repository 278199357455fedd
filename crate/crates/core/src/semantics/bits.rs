use std::fmt;

/// Fixed-width set of points `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> BitSet {
        BitSet { len, words: vec![0; len.div_ceil(64)] }
    }
    pub fn full(len: usize) -> BitSet {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }
    pub fn from_iter<I: IntoIterator<Item = usize>>(len: usize, it: I) -> BitSet {
        let mut s = BitSet::new(len);
        for i in it {
            s.insert(i);
        }
        s
    }
    pub fn len(&self) -> usize {
        self.len
    }
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "point {i} outside universe of size {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub fn union_with(&mut self, o: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a |= b;
        }
    }
    pub fn intersect_with(&mut self, o: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a &= b;
        }
    }
    pub fn difference_with(&mut self, o: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a &= !b;
        }
    }
    pub fn complement(&self) -> BitSet {
        let mut s = BitSet::full(self.len);
        s.difference_with(self);
        s
    }
    pub fn is_subset(&self, o: &BitSet) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & !b == 0)
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |i| self.contains(*i))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Binary relation on `0..n`, one bit row per source point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRel {
    rows: Vec<BitSet>,
}

impl BitRel {
    pub fn new(n: usize) -> BitRel {
        BitRel { rows: vec![BitSet::new(n); n] }
    }
    pub fn identity(n: usize) -> BitRel {
        let mut r = BitRel::new(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, it: I) -> BitRel {
        let mut r = BitRel::new(n);
        for (i, j) in it {
            r.insert(i, j);
        }
        r
    }
    /// Reflexive order `i <= j`.
    pub fn leq(n: usize) -> BitRel {
        BitRel::from_pairs(n, (0..n).flat_map(|i| (i..n).map(move |j| (i, j))))
    }
    pub fn size(&self) -> usize {
        self.rows.len()
    }
    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.rows.len() && self.rows[i].contains(j)
    }
    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }
    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(BitSet::is_empty)
    }
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |j| (i, j)))
    }
    pub fn count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }
    pub fn union(&self, o: &BitRel) -> BitRel {
        let mut r = self.clone();
        for (a, b) in r.rows.iter_mut().zip(&o.rows) {
            a.union_with(b);
        }
        r
    }
    pub fn intersect(&self, o: &BitRel) -> BitRel {
        let mut r = self.clone();
        for (a, b) in r.rows.iter_mut().zip(&o.rows) {
            a.intersect_with(b);
        }
        r
    }
    pub fn compose(&self, o: &BitRel) -> BitRel {
        let n = self.size();
        let mut r = BitRel::new(n);
        for i in 0..n {
            for k in self.rows[i].iter() {
                let row = o.rows[k].clone();
                r.rows[i].union_with(&row);
            }
        }
        r
    }
    pub fn transitive_closure(&self) -> BitRel {
        let n = self.size();
        let mut r = self.clone();
        for k in 0..n {
            let rk = r.rows[k].clone();
            for i in 0..n {
                if r.rows[i].contains(k) {
                    r.rows[i].union_with(&rk);
                }
            }
        }
        r
    }
    /// Points with at least one successor.
    pub fn domain(&self) -> BitSet {
        let n = self.size();
        BitSet::from_iter(n, (0..n).filter(|i| !self.rows[*i].is_empty()))
    }
    /// Identity restricted to a set of points.
    pub fn diag_of(s: &BitSet) -> BitRel {
        BitRel::from_pairs(s.len(), s.iter().map(|i| (i, i)))
    }
    pub fn only_diag(&self) -> BitRel {
        BitRel::from_pairs(self.size(), (0..self.size()).filter(|i| self.contains(*i, *i)).map(|i| (i, i)))
    }
    pub fn without_diag(&self) -> BitRel {
        let mut r = self.clone();
        for i in 0..self.size() {
            r.rows[i].remove(i);
        }
        r
    }
    pub fn is_subset(&self, o: &BitRel) -> bool {
        self.rows.iter().zip(&o.rows).all(|(a, b)| a.is_subset(b))
    }
    /// Points `i` all of whose successors lie in `s`.
    pub fn boxed(&self, s: &BitSet) -> BitSet {
        let n = self.size();
        BitSet::from_iter(n, (0..n).filter(|i| self.rows[*i].is_subset(s)))
    }
    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.contains(i, i))
    }
    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }
    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }
}

impl fmt::Debug for BitRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_composition() {
        let r = BitRel::from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
        let plus = r.transitive_closure();
        assert_eq!(plus.count(), 6);
        assert!(plus.contains(0, 3));
        assert_eq!(r.compose(&r), BitRel::from_pairs(4, [(0, 2), (1, 3)]));
        assert_eq!(r.boxed(&BitSet::new(4)), BitSet::from_iter(4, [3]));
        assert!(BitRel::leq(3).is_preorder());
    }

    #[test]
    fn wide_universe() {
        let n = 130;
        let r = BitRel::from_pairs(n, (0..n - 1).map(|i| (i, i + 1)));
        assert!(r.transitive_closure().contains(0, n - 1));
        assert_eq!(r.domain().count(), n - 1);
    }
}
