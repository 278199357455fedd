use lalogic_core::decide::{decide_validity, Class};
use lalogic_core::proofs::{check_derivation, parse_derivation, DerivationFile, Justification, System}
;

const EXAMPLE1: &str = include_str!("../fixtures/example1.drv");
const EXAMPLE2: &str = include_str!("../fixtures/example2.drv");
const LOB: &str = include_str!("../fixtures/lob.drv");

fn load(text: &str) -> DerivationFile {
    parse_derivation(text).unwrap()
}

fn check(d: &DerivationFile) -> lalogic_core::proofs::ProofReport {
    check_derivation(&d.steps, d.system.unwrap(), d.goal.as_ref().unwrap())
}

#[test]
fn shipped_derivations_check() {
    for (name, text) in [("example1", EXAMPLE1), ("example2", EXAMPLE2), ("lob", LOB)] {
        let d = load(text);
        let r = check(&d);
        assert!(r.accepted, "{name}: {:?}", r.failure);
    }
}

#[test]
fn accepted_steps_are_valid_on_finite_linear_orders() {
    for text in [EXAMPLE1, EXAMPLE2, LOB] {
        let d = load(text);
        assert_eq!(d.system, Some(System::Rewla));
        for s in &d.steps {
            assert!(decide_validity(&s.formula, Class::FinLin).unwrap().holds, "{}", s.formula);
        }
    }
}

/// Every single-occurrence swap of `s` and `t` inside a step formula.
fn variable_swaps(text: &str) -> Vec<String> {
    let lines: Vec<&str> = text.lines().collect();
    let mut out = Vec::new();
    for (k, line) in lines.iter().enumerate() {
        let Some((head, _)) = line.split_once(" ; ") else { continue };
        if !line.starts_with(|c: char| c.is_ascii_digit()) && !line.starts_with("goal") {
            continue;
        }
        for (i, c) in head.char_indices() {
            let other = match c {
                's' => 't',
                't' => 's',
                _ => continue,
            };
            let b = head.as_bytes();
            let isolated = (i == 0 || !b[i - 1].is_ascii_alphanumeric()) && (i + 1 == b.len() || !b[i + 1].is_ascii_alphanumeric());
            if !isolated {
                continue;
            }
            let mut m = lines.clone();
            let changed = format!("{}{}{}", &line[..i], other, &line[i + 1..]);
            m[k] = Box::leak(changed.into_boxed_str());
            out.push(m.join("\n"));
        }
    }
    out
}

#[test]
fn mutated_example1_is_rejected() {
    let mutants = variable_swaps(EXAMPLE1);
    assert_eq!(mutants.len(), 20);
    for m in &mutants {
        let d = load(m);
        assert!(!check(&d).accepted, "accepted mutant:\n{m}");
    }
    // redirect one cited premise to another earlier step
    let base = load(EXAMPLE1);
    for i in 0..base.steps.len() {
        let cited: Vec<usize> = match &base.steps[i].why {
            Justification::Mp(a, b) => vec![*a, *b],
            Justification::Nec(a, _) => vec![*a],
            Justification::Derived(_, ps) => ps.clone(),
            _ => continue,
        };
        for slot in 0..cited.len() {
            for j in 0..i {
                if j == cited[slot] || cited.contains(&j) {
                    continue;
                }
                let mut d = base.clone();
                let mut ps = cited.clone();
                ps[slot] = j;
                d.steps[i].why = match &base.steps[i].why {
                    Justification::Mp(..) => Justification::Mp(ps[0], ps[1]),
                    Justification::Nec(_, t) => Justification::Nec(ps[0], t.clone()),
                    Justification::Derived(r, _) => Justification::Derived(*r, ps),
                    _ => unreachable!(),
                };
                assert!(!check(&d).accepted, "step {} citing {j} instead of {}", i + 1, cited[slot] + 1);
            }
        }
    }
}
