use std::fmt;

pub type StateId = u32;

/// Positive boolean combination of `(direction, state)` atoms. Direction 0
/// stays at the current node; 1 and 2 move to the children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PBool {
    True,
    False,
    Atom(u8, StateId),
    And(Box<PBool>, Box<PBool>),
    Or(Box<PBool>, Box<PBool>),
}

impl PBool {
    pub fn atom(dir: u8, q: StateId) -> PBool {
        PBool::Atom(dir, q)
    }

    /// Conjunction with the constants folded away.
    pub fn and(a: PBool, b: PBool) -> PBool {
        match (a, b) {
            (PBool::False, _) | (_, PBool::False) => PBool::False,
            (PBool::True, x) | (x, PBool::True) => x,
            (a, b) => PBool::And(Box::new(a), Box::new(b)),
        }
    }

    pub fn or(a: PBool, b: PBool) -> PBool {
        match (a, b) {
            (PBool::True, _) | (_, PBool::True) => PBool::True,
            (PBool::False, x) | (x, PBool::False) => x,
            (a, b) => PBool::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn constant(b: bool) -> PBool {
        if b {
            PBool::True
        } else {
            PBool::False
        }
    }

    pub fn eval(&self, atom: &mut dyn FnMut(u8, StateId) -> bool) -> bool {
        match self {
            PBool::True => true,
            PBool::False => false,
            PBool::Atom(d, q) => atom(*d, *q),
            PBool::And(a, b) => a.eval(atom) && b.eval(atom),
            PBool::Or(a, b) => a.eval(atom) || b.eval(atom),
        }
    }

    pub fn atoms(&self, out: &mut Vec<(u8, StateId)>) {
        match self {
            PBool::Atom(d, q) => out.push((*d, *q)),
            PBool::And(a, b) | PBool::Or(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
            _ => {}
        }
    }

    pub fn max_direction(&self) -> u8 {
        let mut v = Vec::new();
        self.atoms(&mut v);
        v.iter().map(|a| a.0).max().unwrap_or(0)
    }
}

/// Prefix notation: `T`, `F`, `<d q>`, `(and x y)`, `(or x y)`.
impl fmt::Display for PBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PBool::True => write!(f, "T"),
            PBool::False => write!(f, "F"),
            PBool::Atom(d, q) => write!(f, "<{d} q{q}>"),
            PBool::And(a, b) => write!(f, "(and {a} {b})"),
            PBool::Or(a, b) => write!(f, "(or {a} {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding_and_eval() {
        assert_eq!(PBool::and(PBool::True, PBool::atom(1, 3)), PBool::atom(1, 3));
        assert_eq!(PBool::or(PBool::True, PBool::atom(1, 3)), PBool::True);
        let f = PBool::or(PBool::atom(0, 1), PBool::and(PBool::atom(1, 2), PBool::atom(2, 2)));
        assert!(f.eval(&mut |d, _| d > 0));
        assert!(!f.eval(&mut |d, _| d == 1));
        assert_eq!(f.to_string(), "(or <0 q1> (and <1 q2> <2 q2>))");
        assert_eq!(f.max_direction(), 2);
    }
}
