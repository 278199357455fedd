use std::fmt;

use super::{Expr, Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Sugar {
    #[default]
    Plain,
    /// Adds `(?!t)`, `(?=t)`, `|` and single-letter atoms.
    Regex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Term,
    Formula,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    pub sugar: Sugar,
    /// Accept `$` in identifiers (names produced by the encodings).
    pub allow_reserved: bool,
    /// Accept schema metavariables `?t..` (terms) and `?f..` (formulas).
    pub metavars: bool,
}

impl ParseOptions {
    pub fn reserved() -> ParseOptions {
        ParseOptions { allow_reserved: true, ..ParseOptions::default() }
    }
    pub fn regex() -> ParseOptions {
        ParseOptions { sugar: Sugar::Regex, ..ParseOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_expression(text: &str, mode: Mode, sugar: Sugar) -> Result<Expr, ParseError> {
    let opts = ParseOptions { sugar, ..ParseOptions::default() };
    parse_with(text, mode, &opts)
}

pub fn parse_with(text: &str, mode: Mode, opts: &ParseOptions) -> Result<Expr, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, opts };
    let e = match mode {
        Mode::Term => Expr::Term(p.term()?),
        Mode::Formula => Expr::Formula(p.formula()?),
    };
    p.ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, &ParseOptions::default())
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, &ParseOptions::default())
}

pub fn parse_term_with(text: &str, opts: &ParseOptions) -> Result<Term, ParseError> {
    match parse_with(text, Mode::Term, opts)? {
        Expr::Term(t) => Ok(t),
        Expr::Formula(_) => unreachable!(),
    }
}

pub fn parse_formula_with(text: &str, opts: &ParseOptions) -> Result<Formula, ParseError> {
    match parse_with(text, Mode::Formula, opts)? {
        Expr::Formula(f) => Ok(f),
        Expr::Term(_) => unreachable!(),
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    opts: &'a ParseOptions,
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'$'
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.s.get(self.pos + k).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && is_ident_char(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn check_reserved(&self, name: &str, start: usize) -> Result<(), ParseError> {
        if name.contains('$') && !self.opts.allow_reserved {
            return Err(ParseError { pos: start, msg: format!("`$` is reserved for generated names: `{name}`") });
        }
        Ok(())
    }

    // formulas, lowest precedence first

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.implication()?;
        while self.eat("<->") {
            let r = self.implication()?;
            l = Formula::iff(l, r);
        }
        Ok(l)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let l = self.disjunction()?;
        if self.eat("->") {
            let r = self.implication()?;
            return Ok(Formula::implies(l, r));
        }
        Ok(l)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.conjunction()?;
        while self.eat("||") {
            let r = self.conjunction()?;
            l = Formula::or(l, r);
        }
        Ok(l)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.unary()?;
        while self.eat("&&") {
            let r = self.unary()?;
            l = Formula::and(l, r);
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(b'[') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect("]")?;
                Ok(Formula::boxed(t, self.unary()?))
            }
            Some(b'<') if !self.s[self.pos..].starts_with(b"<->") => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(">")?;
                Ok(Formula::dia(t, self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(")")?;
                Ok(f)
            }
            Some(b'?') if self.opts.metavars && self.peek_at(1) == Some(b'f') => {
                self.pos += 1;
                let name = format!("?{}", self.ident());
                Ok(Formula::PVar(name.into()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_string();
                match name.as_str() {
                    "F" => return Ok(Formula::False),
                    "T" => return Ok(Formula::tt()),
                    _ => {}
                }
                self.check_reserved(&name, start)?;
                if !name.contains('$') && !name.as_bytes()[0].is_ascii_uppercase() {
                    return Err(ParseError {
                        pos: start,
                        msg: format!("formula variable `{name}` must start with an uppercase letter"),
                    });
                }
                Ok(Formula::PVar(name.into()))
            }
            Some(_) => Err(self.err("expected a formula")),
            None => Err(self.err("unexpected end of input, expected a formula")),
        }
    }

    // terms

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut l = self.sequence()?;
        loop {
            if self.eat("+") || (self.opts.sugar == Sugar::Regex && self.eat("|")) {
                let r = self.sequence()?;
                l = Term::union(l, r);
            } else {
                return Ok(l);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            Some(b'(') | Some(b'0') | Some(b'1') => true,
            Some(b'?') => matches!(self.peek_at(1), Some(b'(')) || (self.opts.metavars && self.peek_at(1) == Some(b't')),
            Some(c) => c.is_ascii_alphabetic(),
            None => false,
        }
    }

    fn sequence(&mut self) -> Result<Term, ParseError> {
        let mut l = self.postfix()?;
        loop {
            // juxtaposition is sequencing too
            if self.eat(";") || self.starts_atom() {
                let r = self.postfix()?;
                l = Term::seq(l, r);
            } else {
                return Ok(l);
            }
        }
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        loop {
            if self.eat("*") {
                t = Term::star(t);
            } else if self.eat("^") {
                match self.s.get(self.pos).copied() {
                    Some(b'a') => t = Term::anti(t),
                    Some(b'd') => t = Term::domain(t),
                    Some(b'=') => t = Term::cap_id(t),
                    Some(b'#') => t = Term::cap_nid(t),
                    Some(b'+') => t = Term::plus(t),
                    Some(c) if c.is_ascii_digit() => {
                        let start = self.pos;
                        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                            self.pos += 1;
                        }
                        let n: usize = std::str::from_utf8(&self.s[start..self.pos])
                            .unwrap()
                            .parse()
                            .map_err(|_| ParseError { pos: start, msg: "iteration count too large".into() })?;
                        t = Term::pow(&t, n);
                        continue;
                    }
                    _ => return Err(self.err("unknown postfix operator after `^`")),
                }
                self.pos += 1;
            } else {
                return Ok(t);
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'(') => {
                if self.opts.sugar == Sugar::Regex {
                    if self.eat("(?!") {
                        let t = self.term()?;
                        self.expect(")")?;
                        return Ok(Term::anti(t));
                    }
                    if self.eat("(?=") {
                        let t = self.term()?;
                        self.expect(")")?;
                        return Ok(Term::domain(t));
                    }
                }
                self.pos += 1;
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            Some(b'?') if self.peek_at(1) == Some(b'(') => {
                self.pos += 2;
                let f = self.formula()?;
                self.expect(")")?;
                Ok(Term::test(f))
            }
            Some(b'?') if self.opts.metavars && self.peek_at(1) == Some(b't') => {
                self.pos += 1;
                let name = format!("?{}", self.ident());
                Ok(Term::Var(name.into()))
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Term::zero())
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::one())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                if self.opts.sugar == Sugar::Regex {
                    if !c.is_ascii_lowercase() {
                        return Err(self.err("regex atoms are single lowercase letters"));
                    }
                    self.pos += 1;
                    return Ok(Term::Var((c as char).to_string().into()));
                }
                let name = self.ident().to_string();
                self.check_reserved(&name, start)?;
                if !name.contains('$') && !c.is_ascii_lowercase() {
                    return Err(ParseError {
                        pos: start,
                        msg: format!("term variable `{name}` must start with a lowercase letter"),
                    });
                }
                Ok(Term::Var(name.into()))
            }
            Some(_) => Err(self.err("expected a term")),
            None => Err(self.err("unexpected end of input, expected a term")),
        }
    }
}
