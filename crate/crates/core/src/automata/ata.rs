use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::closure::star_closure;
use super::pbool::{PBool, StateId};
use super::AutomatonError;
use crate::syntax::{render_formula, Formula, FreeVars, Sym, Term};

/// A letter: bit `i` for the `i`-th proposition, then one bit per
/// direction for "this node has a child there".
pub type Letter = u32;

/// Largest number of letter bits accepted; the alphabet is never listed
/// eagerly, but emptiness does iterate over it.
pub const MAX_LETTER_BITS: usize = 16;
pub const DEFAULT_MAX_STATES: usize = 1 << 20;

#[derive(Clone, Debug)]
enum Tmpl {
    True,
    False,
    /// Iverson bracket on a letter bit: true iff the bit equals the flag.
    Bit(u8, bool),
    Atom(u8, StateId),
    And(Box<Tmpl>, Box<Tmpl>),
    Or(Box<Tmpl>, Box<Tmpl>),
}

impl Tmpl {
    fn and(a: Tmpl, b: Tmpl) -> Tmpl {
        Tmpl::And(Box::new(a), Box::new(b))
    }
    fn or(a: Tmpl, b: Tmpl) -> Tmpl {
        Tmpl::Or(Box::new(a), Box::new(b))
    }

    fn dual(&self) -> Tmpl {
        match self {
            Tmpl::True => Tmpl::False,
            Tmpl::False => Tmpl::True,
            Tmpl::Bit(b, v) => Tmpl::Bit(*b, !*v),
            Tmpl::Atom(d, q) => Tmpl::Atom(*d, q ^ 1),
            Tmpl::And(a, b) => Tmpl::or(a.dual(), b.dual()),
            Tmpl::Or(a, b) => Tmpl::and(a.dual(), b.dual()),
        }
    }

    fn instantiate(&self, l: Letter) -> PBool {
        match self {
            Tmpl::True => PBool::True,
            Tmpl::False => PBool::False,
            Tmpl::Bit(b, v) => PBool::constant((l >> b & 1 == 1) == *v),
            Tmpl::Atom(d, q) => PBool::atom(*d, *q),
            Tmpl::And(a, b) => PBool::and(a.instantiate(l), b.instantiate(l)),
            Tmpl::Or(a, b) => PBool::or(a.instantiate(l), b.instantiate(l)),
        }
    }

    fn eval(&self, l: Letter, atom: &mut dyn FnMut(u8, StateId) -> bool) -> bool {
        match self {
            Tmpl::True => true,
            Tmpl::False => false,
            Tmpl::Bit(b, v) => (l >> b & 1 == 1) == *v,
            Tmpl::Atom(d, q) => atom(*d, *q),
            Tmpl::And(a, b) => a.eval(l, atom) && b.eval(l, atom),
            Tmpl::Or(a, b) => a.eval(l, atom) || b.eval(l, atom),
        }
    }

    fn atoms(&self, out: &mut Vec<(u8, StateId)>) {
        match self {
            Tmpl::Atom(d, q) => out.push((*d, *q)),
            Tmpl::And(a, b) | Tmpl::Or(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
            _ => {}
        }
    }
}

#[derive(Clone, Debug)]
enum Delta {
    Formula(Vec<Tmpl>),
    Table(Vec<Vec<PBool>>),
}

/// Alternating automaton over finite trees with `dirs` child directions
/// (2 for trees, 1 for strings). Built from a formula, state `2i + p` is
/// formula `i` with polarity `p`.
#[derive(Clone, Debug)]
pub struct Ata {
    props: Vec<Sym>,
    dirs: u8,
    delta: Delta,
    initial: StateId,
    formulas: Vec<Formula>,
    closure_size: usize,
    dir0_order: Vec<StateId>,
    dir0_acyclic: bool,
}

impl Ata {
    /// An automaton given by an explicit `state × letter` table.
    pub fn from_table(dirs: u8, num_props: usize, table: Vec<Vec<PBool>>, initial: StateId) -> Ata {
        let props = (0..num_props).map(|i| crate::syntax::sym(&format!("P{i}"))).collect();
        let mut a = Ata {
            props,
            dirs,
            delta: Delta::Table(table),
            initial,
            formulas: Vec::new(),
            closure_size: 0,
            dir0_order: Vec::new(),
            dir0_acyclic: false,
        };
        assert!(a.letter_bits() <= MAX_LETTER_BITS);
        if let Delta::Table(t) = &a.delta {
            assert!(t.iter().all(|row| row.len() == a.num_letters()), "table must be total");
        }
        a.order_dir0();
        a
    }

    pub fn props(&self) -> &[Sym] {
        &self.props
    }
    pub fn dirs(&self) -> u8 {
        self.dirs
    }
    pub fn initial(&self) -> StateId {
        self.initial
    }
    pub fn num_states(&self) -> usize {
        match &self.delta {
            Delta::Formula(t) => t.len(),
            Delta::Table(t) => t.len(),
        }
    }
    pub fn letter_bits(&self) -> usize {
        self.props.len() + self.dirs as usize
    }
    pub fn num_letters(&self) -> usize {
        1 << self.letter_bits()
    }
    /// `|clexex(f0)|` for automata built from a formula.
    pub fn closure_size(&self) -> usize {
        self.closure_size
    }
    /// Whether states come in complementary pairs (built from a formula).
    pub fn is_complementary(&self) -> bool {
        matches!(self.delta, Delta::Formula(_))
    }
    pub(crate) fn dir0_acyclic(&self) -> bool {
        self.dir0_acyclic
    }
    pub(crate) fn dir0_order(&self) -> &[StateId] {
        &self.dir0_order
    }

    pub fn down_bit(&self, d: u8) -> u8 {
        (self.props.len() + d as usize - 1) as u8
    }
    pub fn has_down(&self, l: Letter, d: u8) -> bool {
        l >> self.down_bit(d) & 1 == 1
    }
    pub fn with_down(&self, l: Letter, d: u8) -> Letter {
        l | 1 << self.down_bit(d)
    }
    pub fn has_prop(&self, l: Letter, i: usize) -> bool {
        l >> i & 1 == 1
    }

    pub fn delta(&self, q: StateId, l: Letter) -> PBool {
        match &self.delta {
            Delta::Formula(t) => t[q as usize].instantiate(l),
            Delta::Table(t) => t[q as usize][l as usize].clone(),
        }
    }

    /// Evaluates `δ(q, l)` under an atom valuation without building it.
    pub fn eval_delta(&self, q: StateId, l: Letter, atom: &mut dyn FnMut(u8, StateId) -> bool) -> bool {
        match &self.delta {
            Delta::Formula(t) => t[q as usize].eval(l, atom),
            Delta::Table(t) => t[q as usize][l as usize].eval(atom),
        }
    }

    pub fn state_formula(&self, q: StateId) -> Option<(&Formula, u8)> {
        self.formulas.get(q as usize / 2).map(|f| (f, (q & 1) as u8))
    }

    pub fn state_of(&self, f: &Formula, polarity: u8) -> Option<StateId> {
        self.formulas.iter().position(|g| g == f).map(|i| 2 * i as StateId + polarity as StateId)
    }

    pub fn render_letter(&self, l: Letter) -> String {
        let mut parts: Vec<String> = (0..self.props.len()).filter(|i| self.has_prop(l, *i)).map(|i| self.props[i].to_string()).collect();
        for d in 1..=self.dirs {
            if self.has_down(l, d) {
                parts.push(format!("{d}v"));
            }
        }
        format!("{{{}}}", parts.join(","))
    }

    pub fn render_state(&self, q: StateId) -> String {
        match self.state_formula(q) {
            Some((f, p)) => format!("({})_{p}", render_formula(f)),
            None => format!("q{q}"),
        }
    }

    /// One line per state naming it, then one line per `(state, letter)`
    /// with the transition in prefix notation.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "props {}", self.props.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "));
        let _ = writeln!(out, "dirs {}", self.dirs);
        let _ = writeln!(out, "initial q{}", self.initial);
        for q in 0..self.num_states() as StateId {
            let _ = writeln!(out, "state q{q} = {}", self.render_state(q));
        }
        for q in 0..self.num_states() as StateId {
            for l in 0..self.num_letters() as Letter {
                let _ = writeln!(out, "q{q} {} : {}", self.render_letter(l), self.delta(q, l));
            }
        }
        out
    }

    fn order_dir0(&mut self) {
        let n = self.num_states();
        let succ: Vec<Vec<StateId>> = (0..n)
            .map(|q| {
                let mut atoms = Vec::new();
                match &self.delta {
                    Delta::Formula(t) => t[q].atoms(&mut atoms),
                    Delta::Table(t) => t[q].iter().for_each(|p| p.atoms(&mut atoms)),
                }
                let mut v: Vec<StateId> = atoms.into_iter().filter(|a| a.0 == 0).map(|a| a.1).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        // iterative DFS post-order; a grey hit means a cycle
        let mut mark = vec![0u8; n];
        let mut order = Vec::with_capacity(n);
        let mut acyclic = true;
        for root in 0..n {
            if mark[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            mark[root] = 1;
            while let Some((v, i)) = stack.pop() {
                if i < succ[v].len() {
                    stack.push((v, i + 1));
                    let w = succ[v][i] as usize;
                    match mark[w] {
                        0 => {
                            mark[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => acyclic = false,
                        _ => {}
                    }
                } else {
                    mark[v] = 2;
                    order.push(v as StateId);
                }
            }
        }
        self.dir0_order = order;
        self.dir0_acyclic = acyclic;
    }
}

struct Builder {
    props: Vec<Sym>,
    dirs: u8,
    index: HashMap<Formula, u32>,
    formulas: Vec<Formula>,
    max_states: usize,
}

impl Builder {
    fn id(&mut self, f: Formula) -> Result<u32, AutomatonError> {
        if let Some(i) = self.index.get(&f) {
            return Ok(*i);
        }
        if 2 * (self.formulas.len() + 1) > self.max_states {
            return Err(AutomatonError::StateBudgetExceeded { limit: self.max_states });
        }
        let i = self.formulas.len() as u32;
        self.index.insert(f.clone(), i);
        self.formulas.push(f);
        Ok(i)
    }

    fn at(&mut self, dir: u8, f: Formula, polarity: u32) -> Result<Tmpl, AutomatonError> {
        Ok(Tmpl::Atom(dir, 2 * self.id(f)? + polarity))
    }

    fn positive(&mut self, f: &Formula) -> Result<Tmpl, AutomatonError> {
        Ok(match f {
            Formula::PVar(p) => {
                let i = self.props.binary_search(p).expect("proposition collected");
                Tmpl::Bit(i as u8, true)
            }
            Formula::False => Tmpl::False,
            Formula::Implies(a, b) => Tmpl::or(self.at(0, (**a).clone(), 0)?, self.at(0, (**b).clone(), 1)?),
            Formula::Box(t, g) => {
                let g = (**g).clone();
                match &**t {
                    Term::CapId(u) => self.cap_id(u, g)?,
                    Term::CapNid(u) => self.cap_nid(u, g)?,
                    t => Tmpl::and(
                        self.at(0, Formula::boxed(Term::cap_id(t.clone()), g.clone()), 1)?,
                        self.at(0, Formula::boxed(Term::cap_nid(t.clone()), g), 1)?,
                    ),
                }
            }
        })
    }

    /// `[u^=]g`. On partial orders `(x,x) ∈ u;v` forces both loops, which
    /// is why sequencing becomes `[u^=]F ∨ [v^=]g`.
    fn cap_id(&mut self, u: &Term, g: Formula) -> Result<Tmpl, AutomatonError> {
        let id = |t: &Term, g: Formula| Formula::boxed(Term::cap_id(t.clone()), g);
        Ok(match u {
            Term::Var(_) => Tmpl::True,
            Term::Seq(a, b) => Tmpl::or(self.at(0, id(a, Formula::False), 1)?, self.at(0, id(b, g), 1)?),
            Term::Union(a, b) => Tmpl::and(self.at(0, id(a, g.clone()), 1)?, self.at(0, id(b, g), 1)?),
            Term::Plus(a) => Tmpl::or(self.at(0, id(a, Formula::False), 1)?, self.at(0, g, 1)?),
            Term::Star(_) => self.at(0, g, 1)?,
            Term::Antidomain(a) => Tmpl::or(self.at(0, Formula::boxed((**a).clone(), Formula::False), 0)?, self.at(0, g, 1)?),
            Term::Test(c) => Tmpl::or(self.at(0, (**c).clone(), 0)?, self.at(0, g, 1)?),
            Term::CapId(a) => self.at(0, id(a, g), 1)?,
            Term::CapNid(_) => Tmpl::True,
        })
    }

    /// `[u^#]g`: the non-loop part moves strictly down the tree.
    fn cap_nid(&mut self, u: &Term, g: Formula) -> Result<Tmpl, AutomatonError> {
        let nid = |t: &Term, g: Formula| Formula::boxed(Term::cap_nid(t.clone()), g);
        Ok(match u {
            Term::Var(_) => {
                let mut acc = Tmpl::True;
                for d in 1..=self.dirs {
                    let bit = (self.props.len() + d as usize - 1) as u8;
                    let step = Tmpl::or(Tmpl::Bit(bit, false), self.at(d, g.clone(), 1)?);
                    acc = if d == 1 { step } else { Tmpl::and(acc, step) };
                }
                acc
            }
            Term::Seq(a, b) => {
                let first = self.at(0, nid(a, Formula::boxed((**b).clone(), g.clone())), 1)?;
                let stay = Formula::boxed(Term::cap_id((**a).clone()), Formula::False);
                let second = Tmpl::or(self.at(0, stay, 1)?, self.at(0, nid(b, g), 1)?);
                Tmpl::and(first, second)
            }
            Term::Union(a, b) => Tmpl::and(self.at(0, nid(a, g.clone()), 1)?, self.at(0, nid(b, g), 1)?),
            Term::Plus(a) | Term::Star(a) => {
                self.at(0, nid(a, Formula::boxed(Term::star((**a).clone()), g)), 1)?
            }
            Term::Antidomain(_) | Term::Test(_) | Term::CapId(_) => Tmpl::True,
            Term::CapNid(a) => self.at(0, nid(a, g), 1)?,
        })
    }
}

/// The tree automaton of a pipeline formula over the single relation `S$`.
pub fn build_ata(f0: &Formula) -> Result<Ata, AutomatonError> {
    build_with(f0, 2, DEFAULT_MAX_STATES)
}

/// The string automaton: only the first child direction exists.
pub fn build_asa(f0: &Formula) -> Result<Ata, AutomatonError> {
    build_with(f0, 1, DEFAULT_MAX_STATES)
}

/// States are `clexex(f0) × {0,1}`, plus any successor a transition names
/// outside that set (only possible with antidomain in `f0`).
pub fn build_with(f0: &Formula, dirs: u8, max_states: usize) -> Result<Ata, AutomatonError> {
    let fv = FreeVars::of_formula(f0);
    if let Some(a) = fv.terms.iter().find(|a| &***a != crate::encodings::names::SUCC) {
        return Err(AutomatonError::Unsupported(format!("term variable `{a}`; only S$ is allowed")));
    }
    let props: Vec<Sym> = fv.formulas.into_iter().collect();
    if props.len() + dirs as usize > MAX_LETTER_BITS {
        return Err(AutomatonError::AlphabetTooLarge { bits: props.len() + dirs as usize });
    }
    let closure = star_closure(f0, true);
    let mut b = Builder { props, dirs, index: HashMap::new(), formulas: Vec::new(), max_states };
    let initial = 2 * b.id(f0.clone())? + 1;
    for g in &closure {
        b.id(g.clone())?;
    }
    let mut templates: Vec<Tmpl> = Vec::new();
    let mut i = 0;
    while i < b.formulas.len() {
        let f = b.formulas[i].clone();
        let pos = b.positive(&f)?;
        templates.push(pos.dual());
        templates.push(pos);
        i += 1;
    }
    let mut a = Ata {
        props: b.props,
        dirs,
        delta: Delta::Formula(templates),
        initial,
        formulas: b.formulas,
        closure_size: closure.len(),
        dir0_order: Vec::new(),
        dir0_acyclic: false,
    };
    a.order_dir0();
    Ok(a)
}

/// States reachable from the initial state through any transition.
pub fn reachable_states(a: &Ata) -> BTreeSet<StateId> {
    let mut seen = BTreeSet::new();
    let mut work = vec![a.initial()];
    while let Some(q) = work.pop() {
        if !seen.insert(q) {
            continue;
        }
        for l in 0..a.num_letters() as Letter {
            let mut atoms = Vec::new();
            a.delta(q, l).atoms(&mut atoms);
            work.extend(atoms.into_iter().map(|x| x.1).filter(|q| !seen.contains(q)));
        }
    }
    seen
}
