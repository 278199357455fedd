use std::collections::HashMap;
use std::rc::Rc;

use super::ata::{Ata, Letter};
use super::pbool::{PBool, StateId};
use super::tree::{InputTree, TreeNode};
use super::AutomatonError;

pub const DEFAULT_MACRO_BUDGET: usize = 1 << 20;

/// What the children must satisfy: sorted state sets for directions 1, 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Req([Vec<StateId>; 2]);

impl Req {
    fn empty() -> Req {
        Req([Vec::new(), Vec::new()])
    }
    fn subsumes(&self, o: &Req) -> bool {
        is_subset(&self.0[0], &o.0[0]) && is_subset(&self.0[1], &o.0[1])
    }
    fn join(&self, o: &Req) -> Req {
        Req([merge(&self.0[0], &o.0[0]), merge(&self.0[1], &o.0[1])])
    }
}

fn is_subset(a: &[StateId], b: &[StateId]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

fn merge(a: &[StateId], b: &[StateId]) -> Vec<StateId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = if j == b.len() || (i < a.len() && a[i] <= b[j]) {
            i += 1;
            a[i - 1]
        } else {
            j += 1;
            b[j - 1]
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

/// Both polarities of one formula in a sorted set.
fn clashes(s: &[StateId]) -> bool {
    s.windows(2).any(|w| w[0] ^ 1 == w[1])
}

/// Keeps only the subset-minimal requirements.
fn minimize(mut v: Vec<Req>) -> Vec<Req> {
    v.sort_by_key(|r| r.0[0].len() + r.0[1].len());
    v.dedup();
    let mut out: Vec<Req> = Vec::with_capacity(v.len());
    for r in v {
        if !out.iter().any(|o| o.subsumes(&r)) {
            out.push(r);
        }
    }
    out
}

type Options = Rc<Vec<Req>>;

struct Expander<'a> {
    a: &'a Ata,
    complementary: bool,
    memo: HashMap<(StateId, Letter), Options>,
    on_stack: Vec<StateId>,
    max_options: usize,
}

impl Expander<'_> {
    fn options(&mut self, q: StateId, l: Letter) -> Result<Options, AutomatonError> {
        if let Some(o) = self.memo.get(&(q, l)) {
            return Ok(o.clone());
        }
        if self.on_stack.contains(&q) {
            // an unproductive direction-0 cycle contributes nothing
            return Ok(Rc::new(Vec::new()));
        }
        self.on_stack.push(q);
        let p = self.a.delta(q, l);
        let r = self.dnf(&p, l);
        self.on_stack.pop();
        let r = Rc::new(r?);
        if self.a.dir0_acyclic() {
            self.memo.insert((q, l), r.clone());
        }
        Ok(r)
    }

    fn dnf(&mut self, p: &PBool, l: Letter) -> Result<Vec<Req>, AutomatonError> {
        Ok(match p {
            PBool::True => vec![Req::empty()],
            PBool::False => Vec::new(),
            PBool::Atom(0, q) => (*self.options(*q, l)?).clone(),
            PBool::Atom(d, q) => {
                if *d > self.a.dirs() || !self.a.has_down(l, *d) {
                    Vec::new()
                } else {
                    let mut r = Req::empty();
                    r.0[*d as usize - 1].push(*q);
                    vec![r]
                }
            }
            PBool::Or(x, y) => {
                let mut v = self.dnf(x, l)?;
                v.extend(self.dnf(y, l)?);
                minimize(v)
            }
            PBool::And(x, y) => {
                let x = self.dnf(x, l)?;
                if x.is_empty() {
                    return Ok(x);
                }
                let y = self.dnf(y, l)?;
                self.product(&x, &y)?
            }
        })
    }

    fn product(&self, x: &[Req], y: &[Req]) -> Result<Vec<Req>, AutomatonError> {
        let mut v = Vec::with_capacity(x.len() * y.len());
        for a in x {
            for b in y {
                let r = a.join(b);
                if self.complementary && (clashes(&r.0[0]) || clashes(&r.0[1])) {
                    continue;
                }
                v.push(r);
            }
        }
        if v.len() > self.max_options {
            return Err(AutomatonError::StateBudgetExceeded { limit: self.max_options });
        }
        Ok(minimize(v))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmptinessStats {
    pub automaton_states: usize,
    pub macro_states: usize,
    pub moves: usize,
    pub rounds: usize,
}

#[derive(Clone, Debug)]
pub struct Emptiness {
    pub empty: bool,
    pub witness: Option<InputTree>,
    pub stats: EmptinessStats,
}

const EMPTY: usize = usize::MAX;

struct Move {
    letter: Letter,
    kids: [usize; 2],
}

/// Emptiness over finite trees. Macro-states are sets of states that must
/// all accept at one node; a macro-state is good when some letter and
/// some choice of child requirements lead only to good macro-states (or
/// to none). The least such set is computed after exploring all
/// macro-states reachable from the initial one.
pub fn emptiness_with(a: &Ata, budget: usize) -> Result<Emptiness, AutomatonError> {
    let mut ex = Expander {
        a,
        complementary: a.is_complementary(),
        memo: HashMap::new(),
        on_stack: Vec::new(),
        max_options: budget,
    };
    let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
    let mut sets: Vec<Vec<StateId>> = Vec::new();
    let mut moves: Vec<Vec<Move>> = Vec::new();
    let start = vec![a.initial()];
    index.insert(start.clone(), 0);
    sets.push(start);
    let mut i = 0;
    while i < sets.len() {
        let set = sets[i].clone();
        let mut mine = Vec::new();
        if !(ex.complementary && clashes(&set)) {
            for l in 0..a.num_letters() as Letter {
                let mut acc = vec![Req::empty()];
                for q in &set {
                    let o = ex.options(*q, l)?;
                    acc = ex.product(&acc, &o)?;
                    if acc.is_empty() {
                        break;
                    }
                }
                for r in acc {
                    let mut kids = [EMPTY; 2];
                    for d in 0..2 {
                        if r.0[d].is_empty() {
                            continue;
                        }
                        kids[d] = match index.get(&r.0[d]) {
                            Some(k) => *k,
                            None => {
                                if sets.len() >= budget {
                                    return Err(AutomatonError::StateBudgetExceeded { limit: budget });
                                }
                                index.insert(r.0[d].clone(), sets.len());
                                sets.push(r.0[d].clone());
                                sets.len() - 1
                            }
                        };
                    }
                    mine.push(Move { letter: l, kids });
                }
            }
        }
        moves.push(mine);
        i += 1;
    }

    let n = sets.len();
    let mut good: Vec<Option<usize>> = vec![None; n];
    let ok = |good: &Vec<Option<usize>>, k: usize| k == EMPTY || good[k].is_some();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for m in (0..n).rev() {
            if good[m].is_some() {
                continue;
            }
            if let Some(j) = moves[m].iter().position(|mv| ok(&good, mv.kids[0]) && ok(&good, mv.kids[1])) {
                good[m] = Some(j);
                changed = true;
            }
        }
        if !changed || good[0].is_some() {
            break;
        }
    }
    let stats = EmptinessStats {
        automaton_states: a.num_states(),
        macro_states: n,
        moves: moves.iter().map(|m| m.len()).sum(),
        rounds,
    };
    if good[0].is_none() {
        return Ok(Emptiness { empty: true, witness: None, stats });
    }
    let mut nodes = Vec::new();
    build_witness(a, 0, &moves, &good, &mut nodes);
    let witness = InputTree::for_automaton(a, nodes);
    Ok(Emptiness { empty: false, witness: Some(witness), stats })
}

fn build_witness(a: &Ata, m: usize, moves: &[Vec<Move>], good: &[Option<usize>], nodes: &mut Vec<TreeNode>) -> usize {
    let me = nodes.len();
    nodes.push(TreeNode { letter: 0, children: [None, None] });
    if m == EMPTY {
        return me;
    }
    let mv = &moves[m][good[m].expect("good macro-state")];
    nodes[me].letter = mv.letter;
    for d in 1..=a.dirs() {
        if a.has_down(mv.letter, d) {
            let c = build_witness(a, mv.kids[d as usize - 1], moves, good, nodes);
            nodes[me].children[d as usize - 1] = Some(c);
        }
    }
    me
}

pub fn ata_emptiness(a: &Ata) -> Result<Emptiness, AutomatonError> {
    emptiness_with(a, DEFAULT_MACRO_BUDGET)
}

/// String automata use the same procedure restricted to direction 1; the
/// witness is a path.
pub fn asa_emptiness(a: &Ata) -> Result<Emptiness, AutomatonError> {
    debug_assert_eq!(a.dirs(), 1);
    emptiness_with(a, DEFAULT_MACRO_BUDGET)
}
