//! Plain-text finite structures.
//!
//! ```text
//! size 3
//! class finlin        # or `universal i j` lines
//! rel a 0 1
//! prop P 2
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use lalogic_core::semantics::{BitRel, BitSet, Structure};
use lalogic_core::syntax::sym;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for FormatError {}

pub fn parse_structure(text: &str) -> Result<Structure, FormatError> {
    let mut size = None;
    let mut linear = false;
    let mut universal: Vec<(usize, usize)> = Vec::new();
    let mut rels: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    let mut props: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |msg: String| FormatError { line, msg };
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        let num = |w: &str| -> Result<usize, FormatError> {
            let v: usize = w.parse().map_err(|_| err(format!("expected a point, got `{w}`")))?;
            match size {
                Some(s) if v >= s => Err(err(format!("point {v} outside a universe of size {s}"))),
                None => Err(err("`size` must come first".into())),
                _ => Ok(v),
            }
        };
        match words.as_slice() {
            ["size", n] => {
                let s: usize = n.parse().map_err(|_| err(format!("bad size `{n}`")))?;
                if s == 0 || size.is_some() {
                    return Err(err("size must be positive and given once".into()));
                }
                size = Some(s);
            }
            ["class", "finlin"] => linear = true,
            ["class", c] => return Err(err(format!("unknown class `{c}`"))),
            ["universal", i, j] => universal.push((num(i)?, num(j)?)),
            ["rel", a, rest @ ..] if rest.len() % 2 == 0 => {
                let e = rels.entry(a.to_string()).or_default();
                for p in rest.chunks(2) {
                    e.push((num(p[0])?, num(p[1])?));
                }
            }
            ["prop", p, rest @ ..] => {
                let e = props.entry(p.to_string()).or_default();
                for v in rest {
                    e.push(num(v)?);
                }
            }
            _ => return Err(err(format!("cannot read `{l}`"))),
        }
    }
    let size = size.ok_or(FormatError { line: 0, msg: "missing `size`".into() })?;
    let mut u = if linear { BitRel::leq(size) } else { BitRel::new(size) };
    for (i, j) in universal {
        u.insert(i, j);
    }
    let mut s = Structure::new(size, u);
    for (a, pairs) in rels {
        s.rels.insert(sym(&a), BitRel::from_pairs(size, pairs));
    }
    for (p, pts) in props {
        s.props.insert(sym(&p), BitSet::from_iter(size, pts));
    }
    Ok(s)
}

pub fn render_structure(s: &Structure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "size {}", s.size);
    if s.universal == BitRel::leq(s.size) {
        let _ = writeln!(out, "class finlin");
    } else {
        for (i, j) in s.universal.pairs() {
            let _ = writeln!(out, "universal {i} {j}");
        }
    }
    for (a, r) in &s.rels {
        let pairs: Vec<String> = r.pairs().map(|(i, j)| format!("{i} {j}")).collect();
        let _ = writeln!(out, "{}", format!("rel {a} {}", pairs.join(" ")).trim_end());
    }
    for (p, v) in &s.props {
        let pts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{}", format!("prop {p} {}", pts.join(" ")).trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "size 3\nclass finlin\nrel a 0 1 1 2\nprop P 2\n";
        let s = parse_structure(text).unwrap();
        assert_eq!(s.rel("a").count(), 2);
        assert_eq!(render_structure(&s), text);
        let t = parse_structure("size 2 # two points\nuniversal 0 0\nuniversal 1 1\nrel b\n").unwrap();
        assert_eq!(parse_structure(&render_structure(&t)).unwrap(), t);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_structure("size 2\nrel a 0 2\n").unwrap_err().line, 2);
        assert!(parse_structure("rel a 0 1\n").is_err());
        assert!(parse_structure("size 2\nprob P 1\n").is_err());
    }
}
