use std::collections::BTreeSet;

use crate::syntax::{Formula, Term};

pub type ClosureSet = BTreeSet<Formula>;

/// Fischer-Ladner closure of a PDL⁻ formula, computed by the recursive
/// equations (formula part and box part).
pub fn fl_closure(f: &Formula) -> ClosureSet {
    let mut out = ClosureSet::new();
    cl_formula(f, &mut out);
    out
}

fn cl_formula(f: &Formula, out: &mut ClosureSet) {
    match f {
        Formula::PVar(_) | Formula::False => {
            out.insert(f.clone());
        }
        Formula::Implies(a, b) => {
            out.insert(f.clone());
            cl_formula(a, out);
            cl_formula(b, out);
        }
        Formula::Box(t, g) => {
            cl_formula(g, out);
            cl_box(t, g, out);
        }
    }
}

fn cl_box(t: &Term, g: &Formula, out: &mut ClosureSet) {
    out.insert(Formula::boxed(t.clone(), g.clone()));
    match t {
        Term::Union(a, b) => {
            cl_box(a, g, out);
            cl_box(b, g, out);
        }
        Term::Plus(a) => cl_box(a, &Formula::boxed(t.clone(), g.clone()), out),
        Term::Seq(a, b) => match (&**a, &**b) {
            (Term::Test(c), _) => {
                let rest = Formula::boxed((**b).clone(), g.clone());
                out.insert(Formula::implies((**c).clone(), rest));
                cl_formula(c, out);
                cl_box(b, g, out);
            }
            (_, Term::Test(c)) => {
                let g2 = Formula::implies((**c).clone(), g.clone());
                out.insert(g2.clone());
                cl_box(a, &g2, out);
                cl_formula(c, out);
            }
            _ => {
                cl_box(a, &Formula::boxed((**b).clone(), g.clone()), out);
                cl_box(b, g, out);
            }
        },
        // Outside PDL⁻; handled like the plain-PDL closure so the function is total.
        Term::Star(a) => cl_box(a, &Formula::boxed(t.clone(), g.clone()), out),
        Term::Test(c) => {
            out.insert(Formula::implies((**c).clone(), g.clone()));
            cl_formula(c, out);
        }
        Term::Var(_) | Term::Antidomain(_) | Term::CapId(_) | Term::CapNid(_) => {}
    }
}

/// The same closure as the least set closed under the generating rules;
/// used to cross-check [`fl_closure`].
pub fn fl_closure_rules(f: &Formula) -> ClosureSet {
    saturate(f, |g, push| match g {
        Formula::Implies(a, b) => {
            push((**a).clone());
            push((**b).clone());
        }
        Formula::Box(t, h) => {
            push((**h).clone());
            let bx = |t: &Term, h: Formula| Formula::boxed(t.clone(), h);
            match &**t {
                Term::Union(a, b) => {
                    push(bx(a, (**h).clone()));
                    push(bx(b, (**h).clone()));
                }
                Term::Plus(a) => push(bx(a, g.clone())),
                Term::Seq(a, b) => match (&**a, &**b) {
                    (Term::Test(c), _) => push(Formula::implies((**c).clone(), bx(b, (**h).clone()))),
                    (_, Term::Test(c)) => push(bx(a, Formula::implies((**c).clone(), (**h).clone()))),
                    _ => push(bx(a, bx(b, (**h).clone()))),
                },
                _ => {}
            }
        }
        _ => {}
    })
}

fn saturate(f: &Formula, mut rules: impl FnMut(&Formula, &mut dyn FnMut(Formula))) -> ClosureSet {
    let mut out = ClosureSet::new();
    let mut work = vec![f.clone()];
    while let Some(g) = work.pop() {
        if out.contains(&g) {
            continue;
        }
        let mut found = Vec::new();
        rules(&g, &mut |h| found.push(h));
        out.insert(g);
        work.extend(found.into_iter().filter(|h| !out.contains(h)));
    }
    out
}

/// The closure with Kleene star as a primitive (the least set closed under
/// its rules). With `extended`, every `[t]ψ` also contributes
/// `[t^=]ψ`, `[t^#]ψ`, `[t]F`, `[t^=]F` and `[t^#]F`.
pub fn star_closure(f: &Formula, extended: bool) -> ClosureSet {
    let base = saturate(f, |g, push| match g {
        Formula::Implies(a, b) => {
            push((**a).clone());
            push((**b).clone());
        }
        Formula::Box(t, h) => {
            push((**h).clone());
            let h = || (**h).clone();
            match &**t {
                Term::Union(a, b) => {
                    push(Formula::boxed((**a).clone(), h()));
                    push(Formula::boxed((**b).clone(), h()));
                }
                Term::Plus(a) | Term::Star(a) => {
                    push(Formula::boxed((**a).clone(), Formula::boxed(Term::star((**a).clone()), h())));
                }
                Term::Seq(a, b) => push(Formula::boxed((**a).clone(), Formula::boxed((**b).clone(), h()))),
                Term::Antidomain(a) | Term::CapId(a) | Term::CapNid(a) => push(Formula::boxed((**a).clone(), h())),
                Term::Test(c) => push((**c).clone()),
                Term::Var(_) => {}
            }
        }
        _ => {}
    });
    if extended {
        extend(base)
    } else {
        base
    }
}

/// The recursively defined closure with identity-restricted and falsum
/// variants of every box added; at most six times the formula size.
pub fn extended_closure(f: &Formula) -> ClosureSet {
    extend(star_closure_recursive(f))
}

fn extend(base: ClosureSet) -> ClosureSet {
    let mut out = base.clone();
    for g in &base {
        if let Formula::Box(t, h) = g {
            let t = &**t;
            for body in [(**h).clone(), Formula::False] {
                out.insert(Formula::boxed(Term::cap_id(t.clone()), body.clone()));
                out.insert(Formula::boxed(Term::cap_nid(t.clone()), body));
            }
            out.insert(Formula::boxed(t.clone(), Formula::False));
        }
    }
    out
}

/// The star closure by its recursive equations, at most the formula size.
/// [`star_closure`] also saturates under unfolding, adding `[t*]ψ` next
/// to `[t][t*]ψ`; the automaton needs that larger set.
pub fn star_closure_recursive(f: &Formula) -> ClosureSet {
    fn fml(f: &Formula, out: &mut ClosureSet) {
        match f {
            Formula::PVar(_) | Formula::False => {
                out.insert(f.clone());
            }
            Formula::Implies(a, b) => {
                out.insert(f.clone());
                fml(a, out);
                fml(b, out);
            }
            Formula::Box(t, g) => {
                bx(t, g, out);
                fml(g, out);
            }
        }
    }
    fn bx(t: &Term, g: &Formula, out: &mut ClosureSet) {
        out.insert(Formula::boxed(t.clone(), g.clone()));
        match t {
            Term::Var(_) => {}
            Term::Union(a, b) => {
                bx(a, g, out);
                bx(b, g, out);
            }
            Term::Seq(a, b) => {
                bx(a, &Formula::boxed((**b).clone(), g.clone()), out);
                bx(b, g, out);
            }
            Term::Plus(a) | Term::Star(a) => bx(a, &Formula::boxed(Term::star((**a).clone()), g.clone()), out),
            Term::Antidomain(a) | Term::CapId(a) | Term::CapNid(a) => bx(a, g, out),
            Term::Test(c) => fml(c, out),
        }
    }
    let mut out = ClosureSet::new();
    fml(f, &mut out);
    out
}
