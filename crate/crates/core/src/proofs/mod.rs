//! Hilbert systems, derivations and a step checker.

mod schema;
mod text;

use std::collections::BTreeMap;
use std::fmt;

pub use schema::{
    lob_axiom, match_schema, minus_axioms, pdl_axioms, rewla_axioms, star_to_plus, string_axioms, Assignment, Schema,
};
pub use text::{parse_derivation, render_derivation, DerivationFile, TextError};

use crate::decide::{abstract_to_pdl, decide_validity, Class, DecideError};
use crate::syntax::{Formula, FreeVars, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    /// Antidomain and identity restrictions over finite linear orders.
    Rewla,
    /// Identity-free PDL on finite strict linear orders.
    MinusSfinlin,
    /// The previous system without Löb.
    Minus,
    /// `Rewla` with the string axioms.
    StRewla,
    /// `MinusSfinlin` with determinism.
    StMinus,
    /// Plain PDL with plus.
    Pdl,
}

impl System {
    pub const ALL: [System; 6] =
        [System::Rewla, System::MinusSfinlin, System::Minus, System::StRewla, System::StMinus, System::Pdl];

    pub fn name(self) -> &'static str {
        match self {
            System::Rewla => "rewla",
            System::MinusSfinlin => "minus-sfinlin",
            System::Minus => "minus",
            System::StRewla => "st-rewla",
            System::StMinus => "st-minus",
            System::Pdl => "pdl",
        }
    }

    pub fn from_name(s: &str) -> Option<System> {
        System::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn axioms(self) -> Vec<Schema> {
        match self {
            System::Rewla => rewla_axioms(),
            System::StRewla => {
                let mut v = rewla_axioms();
                v.extend(string_axioms(true));
                v
            }
            System::Minus => minus_axioms(),
            System::MinusSfinlin => {
                let mut v = minus_axioms();
                v.push(lob_axiom());
                v
            }
            System::StMinus => {
                let mut v = minus_axioms();
                v.push(lob_axiom());
                v.extend(string_axioms(false));
                v
            }
            System::Pdl => pdl_axioms(),
        }
    }

    /// Whether every substitution instance of a valid PDL formula is an axiom.
    pub fn has_pdl_meta(self) -> bool {
        matches!(self, System::Rewla | System::StRewla)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CongKind {
    /// `φ1 ↔ ψ1, φ2 ↔ ψ2 ⊢ (φ1 → φ2) ↔ (ψ1 → ψ2)`
    Imp,
    /// `φ ↔ ψ ⊢ [t]φ ↔ [t]ψ`
    Box,
    /// `ψ ↔ χ ⊢ [ψ?]φ ↔ [χ?]φ`
    Test,
    /// `[s1]p ↔ [t1]p, [s2]p ↔ [t2]p ⊢ [s1;s2]φ ↔ [t1;t2]φ` for `p` fresh.
    Seq,
    Union,
    Plus,
}

impl CongKind {
    pub const ALL: [CongKind; 6] =
        [CongKind::Imp, CongKind::Box, CongKind::Test, CongKind::Seq, CongKind::Union, CongKind::Plus];

    pub fn name(self) -> &'static str {
        match self {
            CongKind::Imp => "imp",
            CongKind::Box => "box",
            CongKind::Test => "test",
            CongKind::Seq => "seq",
            CongKind::Union => "union",
            CongKind::Plus => "plus",
        }
    }

    pub fn from_name(s: &str) -> Option<CongKind> {
        CongKind::ALL.into_iter().find(|k| k.name() == s)
    }

    fn arity(self) -> usize {
        match self {
            CongKind::Imp | CongKind::Seq | CongKind::Union => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedRule {
    /// `φ → [t]φ ⊢ φ → [t⁺]φ`
    Li,
    /// `φ → [t]φ, φ → [t]ψ ⊢ φ → [t⁺]ψ`
    Tc,
    /// `φ1 → … → ψ ⊢ [t]φ1 → … → [t]ψ`
    Mon,
    /// `φ1, …, φn ⊢ ψ` when `φ1 → … → φn → ψ` is a tautology.
    MpProp,
    Cong(CongKind),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(String),
    Prop,
    Pdl,
    /// `Mp(j, k)`: step `k` is `step j → this`.
    Mp(usize, usize),
    /// Necessitation of step `j`; the box term is read off the formula when absent.
    Nec(usize, Option<Term>),
    Derived(DerivedRule, Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub why: Justification,
}

/// Steps in order; premises are 0-based indices of earlier steps.
pub type Derivation = Vec<Step>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofError {
    Index { step: usize, premise: usize },
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofError::Index { step, premise } => {
                write!(f, "step {} cites step {}, which does not come before it", step + 1, premise + 1)
            }
        }
    }
}

impl std::error::Error for ProofError {}

/// Whether step `i` is licensed; `Err` for bad premise indices, `Ok(Err)`
/// with a reason when the step does not follow.
pub fn check_step(d: &[Step], i: usize, sys: System) -> Result<Result<(), String>, ProofError> {
    let step = &d[i];
    let prem = |j: usize| -> Result<&Formula, ProofError> {
        if j < i {
            Ok(&d[j].formula)
        } else {
            Err(ProofError::Index { step: i, premise: j })
        }
    };
    let f = &step.formula;
    let ok = |b: bool, why: &str| if b { Ok(()) } else { Err(why.to_string()) };
    Ok(match &step.why {
        Justification::Axiom(name) => match sys.axioms().iter().find(|s| s.name == name) {
            None => Err(format!("{} has no axiom `{name}`", sys.name())),
            Some(s) => ok(match_schema(f, s).is_some(), "not an instance of the axiom"),
        },
        Justification::Prop => ok(is_prop_tautology(f), "not a propositional tautology"),
        Justification::Pdl => {
            if !sys.has_pdl_meta() {
                Err(format!("{} has no PDL meta-axiom", sys.name()))
            } else {
                match is_pdl_axiom_instance(f) {
                    Ok(b) => ok(b, "abstraction is not valid PDL"),
                    Err(e) => Err(e.to_string()),
                }
            }
        }
        Justification::Mp(j, k) => {
            let (a, b) = (prem(*j)?, prem(*k)?);
            ok(*b == Formula::implies(a.clone(), f.clone()), "the second premise is not `first -> conclusion`")
        }
        Justification::Nec(j, t) => {
            let a = prem(*j)?;
            match f {
                Formula::Box(u, g) => ok(
                    **g == *a && t.as_ref().is_none_or(|t| **u == *t),
                    "conclusion is not the premise under the given box",
                ),
                _ => Err("conclusion is not a box".into()),
            }
        }
        Justification::Derived(rule, ps) => {
            let mut fs = Vec::with_capacity(ps.len());
            for p in ps {
                fs.push(prem(*p)?);
            }
            derived(*rule, &fs, f)
        }
    })
}

fn derived(rule: DerivedRule, ps: &[&Formula], f: &Formula) -> Result<(), String> {
    let arity = |n: usize| {
        if ps.len() == n {
            Ok(())
        } else {
            Err(format!("expects {n} premise(s), got {}", ps.len()))
        }
    };
    match rule {
        DerivedRule::Li => {
            arity(1)?;
            let (phi, t, body) = imp_box(ps[0]).ok_or("premise is not `φ -> [t]φ`")?;
            if *body != *phi {
                return Err("premise is not `φ -> [t]φ`".into());
            }
            expect(f, &Formula::implies(phi.clone(), Formula::boxed(Term::plus(t.clone()), phi.clone())))
        }
        DerivedRule::Tc => {
            arity(2)?;
            let (phi, t, b1) = imp_box(ps[0]).ok_or("first premise is not `φ -> [t]φ`")?;
            let (phi2, t2, psi) = imp_box(ps[1]).ok_or("second premise is not `φ -> [t]ψ`")?;
            if b1 != phi || phi2 != phi || t2 != t {
                return Err("premises do not share φ and t".into());
            }
            expect(f, &Formula::implies(phi.clone(), Formula::boxed(Term::plus(t.clone()), psi.clone())))
        }
        DerivedRule::Mon => {
            arity(1)?;
            let t = first_box(f).ok_or("conclusion has no box")?;
            if monotone(ps[0], f, t) {
                Ok(())
            } else {
                Err("conclusion is not the premise with every member boxed".into())
            }
        }
        DerivedRule::MpProp => {
            let chain = ps.iter().rev().fold(f.clone(), |acc, p| Formula::implies((*p).clone(), acc));
            if is_prop_tautology(&chain) {
                Ok(())
            } else {
                Err("premises do not imply the conclusion propositionally".into())
            }
        }
        DerivedRule::Cong(k) => {
            arity(k.arity())?;
            cong(k, ps, f)
        }
    }
}

fn expect(f: &Formula, want: &Formula) -> Result<(), String> {
    if f == want {
        Ok(())
    } else {
        Err(format!("expected {want}"))
    }
}

/// `φ -> [t]ψ` as `(φ, t, ψ)`.
fn imp_box(f: &Formula) -> Option<(&Formula, &Term, &Formula)> {
    match f {
        Formula::Implies(a, b) => match &**b {
            Formula::Box(t, c) => Some((a, t, c)),
            _ => None,
        },
        _ => None,
    }
}

fn first_box(f: &Formula) -> Option<&Term> {
    match f {
        Formula::Box(t, _) => Some(t),
        Formula::Implies(a, _) => match &**a {
            Formula::Box(t, _) => Some(t),
            _ => None,
        },
        _ => None,
    }
}

fn monotone(p: &Formula, c: &Formula, t: &Term) -> bool {
    if let Formula::Box(u, g) = c {
        if **u == *t && **g == *p {
            return true;
        }
    }
    match (p, c) {
        (Formula::Implies(a, rest), Formula::Implies(b, crest)) => match &**b {
            Formula::Box(u, g) => **u == *t && **g == **a && monotone(rest, crest, t),
            _ => false,
        },
        _ => false,
    }
}

fn cong(k: CongKind, ps: &[&Formula], f: &Formula) -> Result<(), String> {
    let (l, r) = f.as_iff().ok_or("conclusion is not an equivalence")?;
    let iff = |p: &Formula| -> Result<(Formula, Formula), String> {
        p.as_iff().map(|(a, b)| (a.clone(), b.clone())).ok_or_else(|| "premise is not an equivalence".to_string())
    };
    match k {
        CongKind::Imp => {
            let (a1, b1) = iff(ps[0])?;
            let (a2, b2) = iff(ps[1])?;
            expect(f, &Formula::iff(Formula::implies(a1, a2), Formula::implies(b1, b2)))
        }
        CongKind::Box => {
            let (a, b) = iff(ps[0])?;
            match l {
                Formula::Box(t, _) => expect(f, &Formula::iff(Formula::boxed((**t).clone(), a), Formula::boxed((**t).clone(), b))),
                _ => Err("conclusion is not boxed".into()),
            }
        }
        CongKind::Test => {
            let (a, b) = iff(ps[0])?;
            match l {
                Formula::Box(_, g) => expect(
                    f,
                    &Formula::iff(Formula::boxed(Term::test(a), (**g).clone()), Formula::boxed(Term::test(b), (**g).clone())),
                ),
                _ => Err("conclusion is not boxed".into()),
            }
        }
        CongKind::Seq | CongKind::Union | CongKind::Plus => {
            let (Formula::Box(s, g), Formula::Box(t, h)) = (l, r) else {
                return Err("conclusion is not `[s]φ <-> [t]φ`".into());
            };
            if g != h {
                return Err("conclusion boxes different formulas".into());
            }
            let mut pairs = Vec::new();
            for p in ps {
                pairs.push(term_pair(p)?);
            }
            let want = match k {
                CongKind::Seq => (Term::seq(pairs[0].0.clone(), pairs[1].0.clone()), Term::seq(pairs[0].1.clone(), pairs[1].1.clone())),
                CongKind::Union => {
                    (Term::union(pairs[0].0.clone(), pairs[1].0.clone()), Term::union(pairs[0].1.clone(), pairs[1].1.clone()))
                }
                _ => (Term::plus(pairs[0].0.clone()), Term::plus(pairs[0].1.clone())),
            };
            if **s == want.0 && **t == want.1 {
                Ok(())
            } else {
                Err(format!("expected [{}]φ <-> [{}]φ", want.0, want.1))
            }
        }
    }
}

/// `[s]p <-> [t]p` with `p` a formula variable free in neither term, which
/// stands for the family over all formulas.
fn term_pair(p: &Formula) -> Result<(Term, Term), String> {
    let bad = || "term premise must be `[s]P <-> [t]P` with P not in s, t".to_string();
    let (l, r) = p.as_iff().ok_or_else(bad)?;
    match (l, r) {
        (Formula::Box(s, a), Formula::Box(t, b)) if a == b => {
            let Formula::PVar(v) = &**a else { return Err(bad()) };
            let mut fv = FreeVars::of_term(s);
            fv.add_term(t);
            if fv.formulas.contains(v) {
                return Err(bad());
            }
            Ok(((**s).clone(), (**t).clone()))
        }
        _ => Err(bad()),
    }
}

/// Tautology check with every maximal box or variable as an atom.
pub fn is_prop_tautology(f: &Formula) -> bool {
    let mut atoms: Vec<&Formula> = Vec::new();
    collect_atoms(f, &mut atoms);
    let mut val = vec![false; atoms.len()];
    all_valuations(f, &atoms, &mut val, 0)
}

fn collect_atoms<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::False => {}
        Formula::Implies(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
        _ => {
            if !out.contains(&f) {
                out.push(f)
            }
        }
    }
}

fn all_valuations(f: &Formula, atoms: &[&Formula], val: &mut Vec<bool>, k: usize) -> bool {
    if k == atoms.len() {
        return prop_eval(f, atoms, val);
    }
    for b in [false, true] {
        val[k] = b;
        if !all_valuations(f, atoms, val, k + 1) {
            return false;
        }
    }
    true
}

fn prop_eval(f: &Formula, atoms: &[&Formula], val: &[bool]) -> bool {
    match f {
        Formula::False => false,
        Formula::Implies(a, b) => !prop_eval(a, atoms, val) || prop_eval(b, atoms, val),
        _ => val[atoms.iter().position(|x| *x == f).expect("collected atom")],
    }
}

/// Valid over arbitrary relations once antidomain and identity-restricted
/// subterms are replaced by fresh variables.
pub fn is_pdl_axiom_instance(f: &Formula) -> Result<bool, DecideError> {
    Ok(decide_validity(&abstract_to_pdl(f), Class::RelPdl)?.holds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReport {
    pub accepted: bool,
    /// First failing step (0-based) and the reason.
    pub failure: Option<(usize, String)>,
    pub stats: BTreeMap<String, usize>,
}

/// Accepted when every step checks and the last step is `goal`.
pub fn check_derivation(d: &[Step], sys: System, goal: &Formula) -> ProofReport {
    let mut stats = BTreeMap::new();
    stats.insert("steps".to_string(), d.len());
    let fail = |i: usize, why: String, stats| ProofReport { accepted: false, failure: Some((i, why)), stats };
    for i in 0..d.len() {
        match check_step(d, i, sys) {
            Err(e) => return fail(i, e.to_string(), stats),
            Ok(Err(why)) => return fail(i, why, stats),
            Ok(Ok(())) => {}
        }
    }
    match d.last() {
        None => fail(0, "empty derivation".into(), stats),
        Some(s) if s.formula != *goal => fail(d.len() - 1, format!("last step is not the goal {goal}"), stats),
        Some(_) => ProofReport { accepted: true, failure: None, stats },
    }
}
