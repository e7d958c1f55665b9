use std::collections::BTreeSet;
use std::fmt;

/// Which operation symbols a term may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    /// `+ . ~ 0 1`
    Dm,
    /// `+ . ' ~ * 0 1`
    Bdm,
}

/// Terms over the Boole-De Morgan signature extended with star.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Bneg(Box<Term>),
    Dmneg(Box<Term>),
    Star(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::Join(Box::new(l), Box::new(r))
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::Meet(Box::new(l), Box::new(r))
    }

    pub fn bneg(t: Term) -> Term {
        Term::Bneg(Box::new(t))
    }

    pub fn dmneg(t: Term) -> Term {
        Term::Dmneg(Box::new(t))
    }

    pub fn star(t: Term) -> Term {
        Term::Star(Box::new(t))
    }

    /// Meet of a nonempty list, associated to the left.
    pub fn meet_all(mut terms: Vec<Term>) -> Term {
        let first = terms.remove(0);
        terms.into_iter().fold(first, Term::meet)
    }

    /// Whether the term uses only symbols of `sig`.
    pub fn fits(&self, sig: Signature) -> bool {
        match self {
            Term::Zero | Term::One | Term::Var(_) => true,
            Term::Join(l, r) | Term::Meet(l, r) => l.fits(sig) && r.fits(sig),
            Term::Dmneg(t) => t.fits(sig),
            Term::Bneg(t) | Term::Star(t) => sig == Signature::Bdm && t.fits(sig),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Join(l, r) | Term::Meet(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Bneg(t) | Term::Dmneg(t) | Term::Star(t) => t.collect_vars(out),
        }
    }

    /// Replaces every star node by `(~t)'`.
    pub fn expand_star(&self) -> Term {
        match self {
            Term::Zero | Term::One | Term::Var(_) => self.clone(),
            Term::Join(l, r) => Term::join(l.expand_star(), r.expand_star()),
            Term::Meet(l, r) => Term::meet(l.expand_star(), r.expand_star()),
            Term::Bneg(t) => Term::bneg(t.expand_star()),
            Term::Dmneg(t) => Term::dmneg(t.expand_star()),
            Term::Star(t) => Term::bneg(Term::dmneg(t.expand_star())),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Var(_) => 1,
            Term::Join(l, r) | Term::Meet(l, r) => 1 + l.size() + r.size(),
            Term::Bneg(t) | Term::Dmneg(t) | Term::Star(t) => 1 + t.size(),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::Join(..) => 0,
            Term::Meet(..) => 1,
            Term::Dmneg(_) => 2,
            Term::Bneg(_) | Term::Star(_) => 3,
            Term::Zero | Term::One | Term::Var(_) => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Var(v) => f.write_str(v),
            Term::Join(l, r) => {
                l.fmt_at(f, 0)?;
                f.write_str(" + ")?;
                r.fmt_at(f, 1)
            }
            Term::Meet(l, r) => {
                l.fmt_at(f, 1)?;
                f.write_str(" . ")?;
                r.fmt_at(f, 2)
            }
            Term::Dmneg(t) => {
                f.write_str("~")?;
                t.fmt_at(f, 2)
            }
            Term::Bneg(t) => {
                t.fmt_at(f, 3)?;
                f.write_str("'")
            }
            Term::Star(t) => {
                t.fmt_at(f, 3)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// First-order formulas whose atomic parts are term equations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Ne(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn ne(l: Term, r: Term) -> Formula {
        Formula::Ne(l, r)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    /// Conjunction of a nonempty list, associated to the left.
    pub fn and_all(mut parts: Vec<Formula>) -> Formula {
        let first = parts.remove(0);
        parts.into_iter().fold(first, Formula::and)
    }

    pub fn fits(&self, sig: Signature) -> bool {
        match self {
            Formula::Eq(l, r) | Formula::Ne(l, r) => l.fits(sig) && r.fits(sig),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.fits(sig) && r.fits(sig)
            }
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.fits(sig),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Eq(l, r) | Formula::Ne(l, r) => {
                let mut s = l.vars();
                s.extend(r.vars());
                s
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
            Formula::Not(g) => g.free_vars(),
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let mut s = g.free_vars();
                s.remove(v);
                s
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Eq(l, r) | Formula::Ne(l, r) => {
                let mut s = l.vars();
                s.extend(r.vars());
                s
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                let mut s = l.all_vars();
                s.extend(r.all_vars());
                s
            }
            Formula::Not(g) => g.all_vars(),
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let mut s = g.all_vars();
                s.insert(v.clone());
                s
            }
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Ne(..) => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.quantifier_depth().max(r.quantifier_depth())
            }
            Formula::Not(g) => g.quantifier_depth(),
            Formula::Exists(_, g) | Formula::Forall(_, g) => 1 + g.quantifier_depth(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.quantifier_depth() == 0
    }

    fn level(&self) -> u8 {
        match self {
            Formula::Exists(..) | Formula::Forall(..) => 0,
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            Formula::Eq(..) | Formula::Ne(..) => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Ne(l, r) => write!(f, "{l} != {r}"),
            Formula::Implies(l, r) => {
                l.fmt_at(f, 2)?;
                f.write_str(" -> ")?;
                r.fmt_at(f, 1)
            }
            Formula::Or(l, r) => {
                l.fmt_at(f, 2)?;
                f.write_str(" | ")?;
                r.fmt_at(f, 3)
            }
            Formula::And(l, r) => {
                l.fmt_at(f, 3)?;
                f.write_str(" & ")?;
                r.fmt_at(f, 4)
            }
            Formula::Not(g) => {
                f.write_str("!")?;
                if matches!(**g, Formula::Not(_)) {
                    g.fmt_at(f, 4)
                } else {
                    f.write_str("(")?;
                    g.fmt_at(f, 0)?;
                    f.write_str(")")
                }
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let q = if matches!(self, Formula::Exists(..)) {
                    "exists"
                } else {
                    "forall"
                };
                write!(f, "{q} {v}. (")?;
                g.fmt_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
