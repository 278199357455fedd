//! Line-oriented derivation files.
//!
//! ```text
//! # comment
//! system rewla
//! goal [a^a]P <-> [?([a]F)]P
//! 1: [a^a]P <-> [?([a]F)]P ; axiom adom
//! ```
//!
//! Justifications: `axiom NAME`, `prop`, `pdl`, `mp N M`, `nec N [TERM]`,
//! `li N`, `tc N M`, `mon N`, `mpprop N...`, `cong KIND N...`.

use std::collections::HashMap;
use std::fmt;

use super::{CongKind, Derivation, DerivedRule, Justification, Step, System};
use crate::syntax::{parse_formula_with, parse_term_with, Formula, ParseOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextError {
    /// 1-based line number.
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for TextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for TextError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationFile {
    pub system: Option<System>,
    pub goal: Option<Formula>,
    pub steps: Derivation,
    /// The label written before each step.
    pub labels: Vec<String>,
}

const KEYWORDS: [&str; 10] = ["axiom", "prop", "pdl", "mp", "nec", "li", "tc", "mon", "mpprop", "cong"];

pub fn parse_derivation(text: &str) -> Result<DerivationFile, TextError> {
    let opts = ParseOptions::reserved();
    let mut out = DerivationFile { system: None, goal: None, steps: Vec::new(), labels: Vec::new() };
    let mut index: HashMap<String, usize> = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |msg: String| TextError { line, msg };
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(rest) = l.strip_prefix("system ") {
            out.system = Some(System::from_name(rest.trim()).ok_or_else(|| err(format!("unknown system `{}`", rest.trim())))?);
            continue;
        }
        if let Some(rest) = l.strip_prefix("goal ") {
            out.goal = Some(parse_formula_with(rest, &opts).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let (label, body) = l.split_once(':').ok_or_else(|| err("expected `N: formula ; justification`".into()))?;
        let label = label.trim().to_string();
        if index.contains_key(&label) {
            return Err(err(format!("label {label} is used twice")));
        }
        let (formula, why) = split_step(body, &opts).map_err(err)?;
        let why = justification(why, &index, &opts).map_err(err)?;
        index.insert(label.clone(), out.steps.len());
        out.labels.push(label);
        out.steps.push(Step { formula, why });
    }
    Ok(out)
}

/// Splits at the first `;` that starts a justification and leaves a
/// parsable formula before it (terms use `;` too).
fn split_step<'a>(body: &'a str, opts: &ParseOptions) -> Result<(Formula, &'a str), String> {
    let mut last_err = "missing justification".to_string();
    for (i, _) in body.match_indices(';') {
        let rest = body[i + 1..].trim_start();
        let word = rest.split_whitespace().next().unwrap_or("");
        if !KEYWORDS.contains(&word) {
            continue;
        }
        match parse_formula_with(&body[..i], opts) {
            Ok(f) => return Ok((f, rest)),
            Err(e) => last_err = e.to_string(),
        }
    }
    Err(last_err)
}

fn justification(s: &str, index: &HashMap<String, usize>, opts: &ParseOptions) -> Result<Justification, String> {
    let (word, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
    let rest = rest.trim();
    let refs = |r: &str| -> Result<Vec<usize>, String> {
        r.split_whitespace()
            .map(|x| index.get(x).copied().ok_or_else(|| format!("unknown or later step `{x}`")))
            .collect()
    };
    let exactly = |v: Vec<usize>, n: usize| -> Result<Vec<usize>, String> {
        if v.len() == n {
            Ok(v)
        } else {
            Err(format!("`{word}` takes {n} step reference(s)"))
        }
    };
    Ok(match word {
        "axiom" if !rest.is_empty() => Justification::Axiom(rest.to_string()),
        "prop" if rest.is_empty() => Justification::Prop,
        "pdl" if rest.is_empty() => Justification::Pdl,
        "mp" => {
            let v = exactly(refs(rest)?, 2)?;
            Justification::Mp(v[0], v[1])
        }
        "nec" => {
            let (r, term) = match rest.find('[') {
                Some(k) => {
                    let t = rest[k..].trim();
                    let inner = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or("expected `[term]`")?;
                    (&rest[..k], Some(parse_term_with(inner, opts).map_err(|e| e.to_string())?))
                }
                None => (rest, None),
            };
            let v = exactly(refs(r)?, 1)?;
            Justification::Nec(v[0], term)
        }
        "li" => Justification::Derived(DerivedRule::Li, exactly(refs(rest)?, 1)?),
        "tc" => Justification::Derived(DerivedRule::Tc, exactly(refs(rest)?, 2)?),
        "mon" => Justification::Derived(DerivedRule::Mon, exactly(refs(rest)?, 1)?),
        "mpprop" => Justification::Derived(DerivedRule::MpProp, refs(rest)?),
        "cong" => {
            let (kind, r) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let k = CongKind::from_name(kind).ok_or_else(|| format!("unknown congruence `{kind}`"))?;
            Justification::Derived(DerivedRule::Cong(k), refs(r)?)
        }
        _ => return Err(format!("bad justification `{s}`")),
    })
}

pub fn render_derivation(d: &DerivationFile) -> String {
    let mut out = String::new();
    if let Some(s) = d.system {
        out.push_str(&format!("system {}\n", s.name()));
    }
    if let Some(g) = &d.goal {
        out.push_str(&format!("goal {g}\n"));
    }
    let label = |i: usize| d.labels.get(i).cloned().unwrap_or_else(|| (i + 1).to_string());
    for (i, s) in d.steps.iter().enumerate() {
        let why = match &s.why {
            Justification::Axiom(n) => format!("axiom {n}"),
            Justification::Prop => "prop".into(),
            Justification::Pdl => "pdl".into(),
            Justification::Mp(a, b) => format!("mp {} {}", label(*a), label(*b)),
            Justification::Nec(a, None) => format!("nec {}", label(*a)),
            Justification::Nec(a, Some(t)) => format!("nec {} [{t}]", label(*a)),
            Justification::Derived(r, ps) => {
                let ps: Vec<String> = ps.iter().map(|p| label(*p)).collect();
                let name = match r {
                    DerivedRule::Li => "li".to_string(),
                    DerivedRule::Tc => "tc".into(),
                    DerivedRule::Mon => "mon".into(),
                    DerivedRule::MpProp => "mpprop".into(),
                    DerivedRule::Cong(k) => format!("cong {}", k.name()),
                };
                format!("{name} {}", ps.join(" "))
            }
        };
        out.push_str(&format!("{}: {} ; {}\n", label(i), s.formula, why.trim_end()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Term};

    #[test]
    fn round_trip() {
        let text = "system pdl\ngoal [a]P\n\n# a comment\n1: P -> P ; prop\n2: [a;b](P -> P) ; nec 1 [a;b]\n";
        let d = parse_derivation(text).unwrap();
        assert_eq!(d.system, Some(System::Pdl));
        assert_eq!(d.steps[1].formula, parse_formula("[a;b](P -> P)").unwrap());
        assert_eq!(d.steps[1].why, Justification::Nec(0, Some(Term::seq(Term::var("a"), Term::var("b")))));
        assert_eq!(parse_derivation(&render_derivation(&d)).unwrap(), d);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_derivation("1: P ; prop\n2: P ; mp 1 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_derivation("1: P -> ; prop").is_err());
        assert!(parse_derivation("1: P ; frobnicate").is_err());
    }
}
