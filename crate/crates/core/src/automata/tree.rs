use std::fmt::Write as _;

use super::ata::{Ata, Letter};
use super::pbool::StateId;
use crate::encodings::names;
use crate::semantics::{BitRel, BitSet, Structure};
use crate::syntax::{sym, Sym};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub letter: Letter,
    /// Children in directions 1 and 2.
    pub children: [Option<usize>; 2],
}

/// A finite input tree; node 0 is the root. Letters use the bit layout of
/// [`Ata`]: propositions first, then one "has child" flag per direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputTree {
    pub props: Vec<Sym>,
    pub dirs: u8,
    pub nodes: Vec<TreeNode>,
}

impl InputTree {
    pub fn single(props: Vec<Sym>, dirs: u8, letter: Letter) -> InputTree {
        InputTree { props, dirs, nodes: vec![TreeNode { letter, children: [None, None] }] }
    }

    pub fn for_automaton(a: &Ata, nodes: Vec<TreeNode>) -> InputTree {
        InputTree { props: a.props().to_vec(), dirs: a.dirs(), nodes }
    }

    fn down_bit(&self, d: u8) -> u32 {
        (self.props.len() + d as usize - 1) as u32
    }

    /// The child reached in direction `d`, if it is both present and flagged.
    pub fn child(&self, w: usize, d: u8) -> Option<usize> {
        let node = &self.nodes[w];
        if d == 0 || d > self.dirs || node.letter >> self.down_bit(d) & 1 == 0 {
            return None;
        }
        node.children[d as usize - 1]
    }

    /// Nodes reachable from the root along flagged edges, parents first.
    pub fn reachable(&self) -> Vec<usize> {
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let w = order[i];
            for d in 1..=self.dirs {
                if let Some(c) = self.child(w, d) {
                    order.push(c);
                }
            }
            i += 1;
        }
        order
    }

    /// Every flagged child exists and the nodes form a tree from the root.
    pub fn is_well_formed(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        while let Some(w) = stack.pop() {
            if seen[w] {
                return false;
            }
            seen[w] = true;
            for d in 1..=self.dirs {
                let flagged = self.nodes[w].letter >> self.down_bit(d) & 1 == 1;
                match self.nodes[w].children[d as usize - 1] {
                    Some(c) if c < self.nodes.len() => {
                        if flagged {
                            stack.push(c)
                        }
                    }
                    Some(_) => return false,
                    None if flagged => return false,
                    None => {}
                }
            }
        }
        true
    }

    /// Indented `path letter` lines, root path written `e`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(0usize, String::new())];
        while let Some((w, path)) = stack.pop() {
            let mut parts: Vec<String> = (0..self.props.len())
                .filter(|i| self.nodes[w].letter >> i & 1 == 1)
                .map(|i| self.props[i].to_string())
                .collect();
            for d in 1..=self.dirs {
                if self.nodes[w].letter >> self.down_bit(d) & 1 == 1 {
                    parts.push(format!("{d}v"));
                }
            }
            let shown = if path.is_empty() { "e".to_string() } else { path.clone() };
            let _ = writeln!(out, "{}{shown} {{{}}}", "  ".repeat(path.len()), parts.join(","));
            for d in (1..=self.dirs).rev() {
                if let Some(c) = self.child(w, d) {
                    stack.push((c, format!("{path}{d}")));
                }
            }
        }
        out
    }
}

/// The structure read off a tree: flagged-reachable nodes, `S$` to the
/// flagged children, propositions from the letters, and the universal
/// relation the reflexive-transitive closure of `S$`. The root is point 0.
pub fn structure_from_tree(t: &InputTree) -> Structure {
    let order = t.reachable();
    let mut point = vec![usize::MAX; t.nodes.len()];
    for (i, w) in order.iter().enumerate() {
        point[*w] = i;
    }
    let n = order.len();
    let mut succ = BitRel::new(n);
    for w in &order {
        for d in 1..=t.dirs {
            if let Some(c) = t.child(*w, d) {
                succ.insert(point[*w], point[c]);
            }
        }
    }
    let universal = succ.transitive_closure().union(&BitRel::identity(n));
    let mut s = Structure::new(n, universal);
    for (i, p) in t.props.iter().enumerate() {
        let set = BitSet::from_iter(n, order.iter().enumerate().filter(|(_, w)| t.nodes[**w].letter >> i & 1 == 1).map(|(k, _)| k));
        s.props.insert(p.clone(), set);
    }
    s.rels.insert(sym(names::SUCC), succ);
    s
}

/// For each reachable node, the set of states accepting there (least
/// fixpoint; indexed by node id, unreachable nodes get the empty set).
pub fn acceptance_table(a: &Ata, t: &InputTree) -> Vec<BitSet> {
    let n = a.num_states();
    let mut table = vec![BitSet::new(n); t.nodes.len()];
    for &w in t.reachable().iter().rev() {
        let letter = t.nodes[w].letter;
        let kids: Vec<Option<usize>> = (1..=t.dirs).map(|d| t.child(w, d)).collect();
        let mut cur = BitSet::new(n);
        loop {
            let mut changed = false;
            for &q in a.dir0_order() {
                if cur.contains(q as usize) {
                    continue;
                }
                let ok = a.eval_delta(q, letter, &mut |d: u8, r: StateId| match d {
                    0 => cur.contains(r as usize),
                    d => kids.get(d as usize - 1).copied().flatten().is_some_and(|c| table[c].contains(r as usize)),
                });
                if ok {
                    cur.insert(q as usize);
                    changed = true;
                }
            }
            if !changed || a.dir0_acyclic() {
                break;
            }
        }
        table[w] = cur;
    }
    table
}

pub fn ata_accepts(a: &Ata, t: &InputTree) -> bool {
    acceptance_table(a, t)[0].contains(a.initial() as usize)
}

/// All well-formed trees with at most `max_nodes` nodes whose flags match
/// the children exactly.
pub fn enumerate_trees(props: &[Sym], dirs: u8, max_nodes: usize) -> Vec<InputTree> {
    // shapes as nested child lists
    #[derive(Clone)]
    enum Shape {
        Node(Vec<Option<Box<Shape>>>),
    }
    fn shapes(n: usize, dirs: u8) -> Vec<Shape> {
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        // distribute n - 1 nodes over the child slots
        fn fill(rest: usize, slots: usize, dirs: u8, acc: Vec<Option<Box<Shape>>>, out: &mut Vec<Shape>) {
            if slots == 0 {
                if rest == 0 {
                    out.push(Shape::Node(acc));
                }
                return;
            }
            let mut none = acc.clone();
            none.push(None);
            fill(rest, slots - 1, dirs, none, out);
            for k in 1..=rest {
                for s in shapes(k, dirs) {
                    let mut some = acc.clone();
                    some.push(Some(Box::new(s)));
                    fill(rest - k, slots - 1, dirs, some, out);
                }
            }
        }
        fill(n - 1, dirs as usize, dirs, Vec::new(), &mut out);
        out
    }
    fn flatten(s: &Shape, props_len: usize, nodes: &mut Vec<TreeNode>) -> usize {
        let Shape::Node(kids) = s;
        let me = nodes.len();
        nodes.push(TreeNode { letter: 0, children: [None, None] });
        for (i, k) in kids.iter().enumerate() {
            if let Some(k) = k {
                let c = flatten(k, props_len, nodes);
                nodes[me].children[i] = Some(c);
                nodes[me].letter |= 1 << (props_len + i);
            }
        }
        me
    }
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        for s in shapes(n, dirs) {
            let mut base = Vec::new();
            flatten(&s, props.len(), &mut base);
            let labels = 1usize << (props.len() * n);
            for lab in 0..labels {
                let mut nodes = base.clone();
                for (i, node) in nodes.iter_mut().enumerate() {
                    node.letter |= ((lab >> (i * props.len())) & ((1 << props.len()) - 1)) as Letter;
                }
                out.push(InputTree { props: props.to_vec(), dirs, nodes });
            }
        }
    }
    out
}
