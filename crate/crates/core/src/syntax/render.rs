use super::{Expr, Formula, Term};

// term precedence: union < seq < postfix < atom
const T_UNION: u8 = 0;
const T_SEQ: u8 = 1;
const T_POST: u8 = 2;

// formula precedence: iff < implies < or < and < unary
const F_IFF: u8 = 0;
const F_IMP: u8 = 1;
const F_OR: u8 = 2;
const F_AND: u8 = 3;
const F_UNARY: u8 = 4;

pub fn render_expression(e: &Expr) -> String {
    match e {
        Expr::Term(t) => render_term(t),
        Expr::Formula(f) => render_formula(f),
    }
}

pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    term(t, T_UNION, &mut out);
    out
}

pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    formula(f, F_IFF, &mut out);
    out
}

fn paren(out: &mut String, wrap: bool, body: impl FnOnce(&mut String)) {
    if wrap {
        out.push('(');
    }
    body(out);
    if wrap {
        out.push(')');
    }
}

fn term(t: &Term, min: u8, out: &mut String) {
    match t {
        Term::Var(a) => out.push_str(a),
        Term::Test(f) if f.is_true() => out.push('1'),
        Term::Test(f) if **f == Formula::False => out.push('0'),
        Term::Test(f) => {
            out.push_str("?(");
            formula(f, F_IFF, out);
            out.push(')');
        }
        Term::Union(a, b) => paren(out, min > T_UNION, |out| {
            term(a, T_UNION, out);
            out.push_str(" + ");
            term(b, T_SEQ, out);
        }),
        Term::Seq(a, b) => paren(out, min > T_SEQ, |out| {
            term(a, T_SEQ, out);
            out.push(';');
            term(b, T_POST, out);
        }),
        Term::Antidomain(inner) => match &**inner {
            Term::Antidomain(x) => postfix(x, "^d", out),
            _ => postfix(inner, "^a", out),
        },
        Term::Plus(x) => postfix(x, "^+", out),
        Term::Star(x) => postfix(x, "*", out),
        Term::CapId(x) => postfix(x, "^=", out),
        Term::CapNid(x) => postfix(x, "^#", out),
    }
}

fn postfix(x: &Term, op: &str, out: &mut String) {
    term(x, T_POST, out);
    out.push_str(op);
}

fn formula(f: &Formula, min: u8, out: &mut String) {
    if let Some((a, b)) = f.as_iff() {
        return paren(out, min > F_IFF, |out| {
            formula(a, F_IFF, out);
            out.push_str(" <-> ");
            formula(b, F_IMP, out);
        });
    }
    if let Some((a, b)) = f.as_and() {
        return paren(out, min > F_AND, |out| {
            formula(a, F_AND, out);
            out.push_str(" && ");
            formula(b, F_UNARY, out);
        });
    }
    if let Some((a, b)) = f.as_or() {
        if *b != Formula::False {
            return paren(out, min > F_OR, |out| {
                formula(a, F_OR, out);
                out.push_str(" || ");
                formula(b, F_AND, out);
            });
        }
    }
    if let Some((t, g)) = f.as_dia() {
        out.push('<');
        term(t, T_UNION, out);
        out.push('>');
        return formula(g, F_UNARY, out);
    }
    if f.is_true() {
        return out.push('T');
    }
    if let Some(g) = f.as_not() {
        out.push('!');
        return formula(g, F_UNARY, out);
    }
    match f {
        Formula::PVar(p) => out.push_str(p),
        Formula::False => out.push('F'),
        Formula::Implies(a, b) => paren(out, min > F_IMP, |out| {
            formula(a, F_OR, out);
            out.push_str(" -> ");
            formula(b, F_IMP, out);
        }),
        Formula::Box(t, g) => {
            out.push('[');
            term(t, T_UNION, out);
            out.push(']');
            formula(g, F_UNARY, out);
        }
    }
}
