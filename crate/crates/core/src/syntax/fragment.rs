use super::{Expr, Formula, Term};

/// Syntactic fragments. `REwLA ⊂ REwLAPlus ⊂ PDLREwLAPlus` and
/// `PDLMinus ⊂ PDLPlain ⊂ PDLREwLAPlus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fragment {
    REwLA,
    REwLAPlus,
    PDLMinus,
    PDLPlain,
    PDLREwLAPlus,
}

impl Fragment {
    /// Inclusion of the fragments as classes of expressions.
    pub fn within(self, other: Fragment) -> bool {
        use Fragment::*;
        self == other
            || other == PDLREwLAPlus
            || matches!((self, other), (REwLA, REwLAPlus) | (PDLMinus, PDLPlain))
    }

    pub fn contains_term(self, t: &Term) -> bool {
        match self {
            Fragment::REwLA => rewla(t, false),
            Fragment::REwLAPlus => rewla(t, true),
            Fragment::PDLMinus => minus_term(t),
            Fragment::PDLPlain => plain_term(t),
            Fragment::PDLREwLAPlus => true,
        }
    }

    pub fn contains_formula(self, f: &Formula) -> bool {
        match self {
            Fragment::REwLA | Fragment::REwLAPlus => false,
            Fragment::PDLMinus => minus_formula(f),
            Fragment::PDLPlain => plain_formula(f),
            Fragment::PDLREwLAPlus => true,
        }
    }

    pub fn contains(self, e: &Expr) -> bool {
        match e {
            Expr::Term(t) => self.contains_term(t),
            Expr::Formula(f) => self.contains_formula(f),
        }
    }
}

/// The first fragment containing `e`, trying the regex fragments before the PDL ones for terms.
pub fn classify_fragment(e: &Expr) -> Fragment {
    use Fragment::*;
    let order: &[Fragment] = match e {
        Expr::Term(_) => &[REwLA, REwLAPlus, PDLMinus, PDLPlain],
        Expr::Formula(_) => &[PDLMinus, PDLPlain],
    };
    order.iter().copied().find(|fr| fr.contains(e)).unwrap_or(PDLREwLAPlus)
}

fn rewla(t: &Term, caps: bool) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Seq(a, b) | Term::Union(a, b) => rewla(a, caps) && rewla(b, caps),
        Term::Plus(a) | Term::Star(a) | Term::Antidomain(a) => rewla(a, caps),
        Term::CapId(a) | Term::CapNid(a) => caps && rewla(a, caps),
        Term::Test(f) => f.is_true() || **f == Formula::False,
    }
}

fn minus_term(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Seq(a, b) => match (&**a, &**b) {
            (Term::Test(f), u) | (u, Term::Test(f)) if minus_formula(f) && minus_term(u) => true,
            _ => minus_term(a) && minus_term(b),
        },
        Term::Union(a, b) => minus_term(a) && minus_term(b),
        Term::Plus(a) => minus_term(a),
        _ => false,
    }
}

fn minus_formula(f: &Formula) -> bool {
    match f {
        Formula::PVar(_) | Formula::False => true,
        Formula::Implies(a, b) => minus_formula(a) && minus_formula(b),
        Formula::Box(t, g) => minus_term(t) && minus_formula(g),
    }
}

fn plain_term(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Seq(a, b) | Term::Union(a, b) => plain_term(a) && plain_term(b),
        Term::Plus(a) | Term::Star(a) => plain_term(a),
        Term::Antidomain(_) | Term::CapId(_) | Term::CapNid(_) => false,
        Term::Test(f) => plain_formula(f),
    }
}

fn plain_formula(f: &Formula) -> bool {
    match f {
        Formula::PVar(_) | Formula::False => true,
        Formula::Implies(a, b) => plain_formula(a) && plain_formula(b),
        Formula::Box(t, g) => plain_term(t) && plain_formula(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = Term::var("a");
        let b = Term::var("b");
        let e = Expr::Term(Term::seq(Term::anti(a.clone()), b.clone()));
        assert_eq!(classify_fragment(&e), Fragment::REwLA);
        assert_eq!(classify_fragment(&Expr::Term(Term::cap_nid(a.clone()))), Fragment::REwLAPlus);
        let f = Formula::boxed(Term::seq(Term::test(Formula::pvar("P")), a.clone()), Formula::pvar("Q"));
        assert_eq!(classify_fragment(&Expr::Formula(f)), Fragment::PDLMinus);
        let f = Formula::boxed(Term::star(a.clone()), Formula::pvar("Q"));
        assert_eq!(classify_fragment(&Expr::Formula(f)), Fragment::PDLPlain);
        let f = Formula::boxed(Term::test(Formula::pvar("P")), Formula::pvar("Q"));
        assert_eq!(classify_fragment(&Expr::Formula(f)), Fragment::PDLPlain);
        let f = Formula::boxed(Term::anti(a), Formula::pvar("Q"));
        assert_eq!(classify_fragment(&Expr::Formula(f)), Fragment::PDLREwLAPlus);
    }

    #[test]
    fn chains_are_inclusions() {
        use Fragment::*;
        assert!(REwLA.within(REwLAPlus));
        assert!(REwLAPlus.within(PDLREwLAPlus));
        assert!(PDLMinus.within(PDLPlain));
        assert!(!PDLPlain.within(PDLMinus));
        assert!(!REwLA.within(PDLMinus));
    }
}
