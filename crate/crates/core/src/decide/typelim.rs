//! Satisfiability of plain PDL over arbitrary relations by elimination of
//! Hintikka sets.

use std::collections::{BTreeSet, HashMap};

use crate::semantics::{BitRel, BitSet};
use crate::syntax::{Formula, Term};

/// Closure for plain PDL with `t⁺` read as `t;t*`.
fn closure(f: &Formula) -> Vec<Formula> {
    let mut seen: BTreeSet<Formula> = BTreeSet::new();
    let mut work = vec![f.clone()];
    while let Some(g) = work.pop() {
        if !seen.insert(g.clone()) {
            continue;
        }
        let mut push = |h: Formula| {
            if !seen.contains(&h) {
                work.push(h)
            }
        };
        match &g {
            Formula::Implies(a, b) => {
                push((**a).clone());
                push((**b).clone());
            }
            Formula::Box(t, h) => {
                push((**h).clone());
                for u in unfold(t, h) {
                    push(u);
                }
            }
            _ => {}
        }
    }
    // children before parents, so derived values can be computed in order
    let mut v: Vec<Formula> = seen.into_iter().collect();
    v.sort_by_key(|g| g.size());
    v
}

/// The formulas `[t]ψ` is locally equivalent to (as a conjunction), or
/// nothing when `t` is atomic.
fn unfold(t: &Term, h: &Formula) -> Vec<Formula> {
    let h = h.clone();
    match t {
        Term::Var(_) => Vec::new(),
        Term::Seq(a, b) => vec![Formula::boxed((**a).clone(), Formula::boxed((**b).clone(), h))],
        Term::Union(a, b) => vec![Formula::boxed((**a).clone(), h.clone()), Formula::boxed((**b).clone(), h)],
        Term::Star(a) => vec![h.clone(), Formula::boxed((**a).clone(), Formula::boxed(t.clone(), h))],
        Term::Plus(a) => vec![Formula::boxed((**a).clone(), Formula::boxed(Term::star((**a).clone()), h))],
        Term::Test(c) => vec![Formula::implies((**c).clone(), h)],
        Term::Antidomain(_) | Term::CapId(_) | Term::CapNid(_) => {
            panic!("type elimination handles plain PDL only")
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TypelimStats {
    pub closure: usize,
    pub free: usize,
    pub atoms: usize,
    pub surviving: usize,
    pub rounds: usize,
}

/// Whether `f` holds at some point of some structure. `max_free` caps the
/// number of independently guessed closure members (2^max_free atoms).
pub fn pdl_satisfiable(f: &Formula, max_free: usize) -> Result<(bool, TypelimStats), usize> {
    let cl = closure(f);
    let pos: HashMap<&Formula, usize> = cl.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let n = cl.len();

    // Members whose value is guessed: propositions, atomic boxes, and any
    // box whose unfolding refers back to itself (nullable iterations).
    let mut free = vec![false; n];
    let mut deps: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, g) in cl.iter().enumerate() {
        match g {
            Formula::PVar(_) => free[i] = true,
            Formula::False => {}
            Formula::Implies(a, b) => deps[i] = vec![pos[&**a], pos[&**b]],
            Formula::Box(t, h) => {
                let u = unfold(t, h);
                if u.is_empty() {
                    free[i] = true;
                } else {
                    deps[i] = u.iter().map(|x| pos[x]).collect();
                }
            }
        }
    }
    let order = eval_order(&mut free, &deps);
    let free_idx: Vec<usize> = (0..n).filter(|i| free[*i]).collect();
    if free_idx.len() > max_free {
        return Err(free_idx.len());
    }

    let value = |bits: &mut BitSet, i: usize| -> bool {
        match &cl[i] {
            Formula::False => false,
            Formula::Implies(..) => !bits.contains(deps[i][0]) || bits.contains(deps[i][1]),
            _ => deps[i].iter().all(|d| bits.contains(*d)),
        }
    };
    let mut atoms: Vec<BitSet> = Vec::new();
    for guess in 0u64..1 << free_idx.len() {
        let mut bits = BitSet::new(n);
        for (k, i) in free_idx.iter().enumerate() {
            if guess >> k & 1 == 1 {
                bits.insert(*i);
            }
        }
        for &i in &order {
            if value(&mut bits, i) {
                bits.insert(i);
            }
        }
        // guessed non-atomic members must agree with their unfolding
        let consistent = free_idx.iter().all(|&i| deps[i].is_empty() || value(&mut bits, i) == bits.contains(i));
        if consistent {
            atoms.push(bits);
        }
    }
    let mut stats = TypelimStats { closure: n, free: free_idx.len(), atoms: atoms.len(), ..Default::default() };

    let boxes: Vec<(usize, &Term, usize)> = cl
        .iter()
        .enumerate()
        .filter_map(|(i, g)| match g {
            Formula::Box(t, h) => Some((i, &**t, pos[&**h])),
            _ => None,
        })
        .collect();
    let mut alive: Vec<usize> = (0..atoms.len()).collect();
    loop {
        stats.rounds += 1;
        let m = alive.len();
        let mut memo: HashMap<Term, BitRel> = HashMap::new();
        let keep: Vec<bool> = (0..m)
            .map(|x| {
                boxes.iter().all(|(i, t, h)| {
                    if atoms[alive[x]].contains(*i) {
                        return true;
                    }
                    let r = relation(t, &alive, &atoms, &cl, &pos, &mut memo);
                    let found = r.row(x).iter().any(|y| !atoms[alive[y]].contains(*h));
                    found
                })
            })
            .collect();
        if keep.iter().all(|k| *k) {
            break;
        }
        alive = alive.iter().zip(&keep).filter(|(_, k)| **k).map(|(a, _)| *a).collect();
    }
    stats.surviving = alive.len();
    let root = pos[f];
    Ok((alive.iter().any(|a| atoms[*a].contains(root)), stats))
}

/// Evaluation order for the derived members; members on a dependency cycle
/// become guessed instead.
fn eval_order(free: &mut [bool], deps: &[Vec<usize>]) -> Vec<usize> {
    let n = free.len();
    let mut mark = vec![0u8; n];
    let mut order = Vec::new();
    fn visit(i: usize, free: &mut [bool], deps: &[Vec<usize>], mark: &mut [u8], order: &mut Vec<usize>) {
        if free[i] || mark[i] == 2 {
            return;
        }
        if mark[i] == 1 {
            free[i] = true;
            return;
        }
        mark[i] = 1;
        for d in &deps[i] {
            visit(*d, free, deps, mark, order);
        }
        mark[i] = 2;
        if !free[i] {
            order.push(i);
        }
    }
    for i in 0..n {
        visit(i, free, deps, &mut mark, &mut order);
    }
    order
}

/// The relation a term denotes on the surviving atoms (indexed by position
/// in `alive`); atomic steps go to every atom satisfying the box contents.
fn relation(
    t: &Term,
    alive: &[usize],
    atoms: &[BitSet],
    cl: &[Formula],
    pos: &HashMap<&Formula, usize>,
    memo: &mut HashMap<Term, BitRel>,
) -> BitRel {
    if let Some(r) = memo.get(t) {
        return r.clone();
    }
    let m = alive.len();
    let r = match t {
        Term::Var(a) => {
            let mut r = BitRel::new(m);
            let mine: Vec<(usize, usize)> = cl
                .iter()
                .enumerate()
                .filter_map(|(i, g)| match g {
                    Formula::Box(u, h) if matches!(&**u, Term::Var(b) if b == a) => Some((i, pos[&**h])),
                    _ => None,
                })
                .collect();
            for x in 0..m {
                for y in 0..m {
                    if mine.iter().all(|(i, h)| !atoms[alive[x]].contains(*i) || atoms[alive[y]].contains(*h)) {
                        r.insert(x, y);
                    }
                }
            }
            r
        }
        Term::Seq(a, b) => {
            let ra = relation(a, alive, atoms, cl, pos, memo);
            ra.compose(&relation(b, alive, atoms, cl, pos, memo))
        }
        Term::Union(a, b) => {
            let ra = relation(a, alive, atoms, cl, pos, memo);
            ra.union(&relation(b, alive, atoms, cl, pos, memo))
        }
        Term::Plus(a) => relation(a, alive, atoms, cl, pos, memo).transitive_closure(),
        Term::Star(a) => relation(a, alive, atoms, cl, pos, memo).transitive_closure().union(&BitRel::identity(m)),
        Term::Test(c) => {
            let i = pos[&**c];
            BitRel::diag_of(&BitSet::from_iter(m, (0..m).filter(|x| atoms[alive[*x]].contains(i))))
        }
        _ => panic!("type elimination handles plain PDL only"),
    };
    memo.insert(t.clone(), r.clone());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn sat(s: &str) -> bool {
        pdl_satisfiable(&parse_formula(s).unwrap(), 20).unwrap().0
    }

    #[test]
    fn basics() {
        assert!(sat("P"));
        assert!(!sat("P && !P"));
        assert!(!sat("!([a](P -> Q) -> [a]P -> [a]Q)"));
        assert!(sat("<a>P && <a>!P"));
        assert!(!sat("<a^+>P && [a][a*]!P"));
        // induction
        assert!(!sat("!((P && [a*](P -> [a]P)) -> [a*]P)"));
        assert!(sat("!([a]P -> P)"));
        assert!(!sat("!([?(P)]Q <-> (P -> Q))"));
        assert!(!sat("<(?(P))*>!Q && Q"));
    }
}
