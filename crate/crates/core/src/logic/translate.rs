//! Moving formulas between the De Morgan and Boole-De Morgan signatures.
//!
//! The De Morgan signature is a reduct, so going up is the identity. Going down
//! replaces every Boolean complement `t'` by a fresh existentially quantified
//! `z` pinned down by `t + z = 1 & t . z = 0`; a star `t*` becomes the
//! complement of `~t`.

use std::collections::BTreeSet;

use super::ast::{Formula, Signature, Term};
use super::eval::EvalError;

/// Reads a De Morgan formula as a Boole-De Morgan one.
pub fn to_bdm(f: &Formula) -> Result<Formula, EvalError> {
    if f.fits(Signature::Dm) {
        Ok(f.clone())
    } else {
        Err(EvalError::Signature)
    }
}

/// Eliminates `'` and `*`, producing an equivalent formula in the De Morgan
/// signature (equivalent in every algebra whose lattice is complemented).
pub fn to_dm(f: &Formula) -> Formula {
    let used = f.all_vars();
    rewrite(f, &used)
}

fn rewrite(f: &Formula, used: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Eq(l, r) | Formula::Ne(l, r) => {
            let mut fresh = Fresh { used, next: 0 };
            let mut defs = Vec::new();
            let l = extract(l, &mut defs, &mut fresh);
            let r = extract(r, &mut defs, &mut fresh);
            let atom = if matches!(f, Formula::Eq(..)) {
                Formula::eq(l, r)
            } else {
                Formula::ne(l, r)
            };
            if defs.is_empty() {
                return atom;
            }
            let mut parts = Vec::with_capacity(2 * defs.len() + 1);
            for (z, t) in &defs {
                parts.push(Formula::eq(Term::join(t.clone(), Term::var(z)), Term::One));
                parts.push(Formula::eq(Term::meet(t.clone(), Term::var(z)), Term::Zero));
            }
            parts.push(atom);
            defs.iter()
                .rev()
                .fold(Formula::and_all(parts), |body, (z, _)| {
                    Formula::exists(z, body)
                })
        }
        Formula::And(l, r) => Formula::and(rewrite(l, used), rewrite(r, used)),
        Formula::Or(l, r) => Formula::or(rewrite(l, used), rewrite(r, used)),
        Formula::Implies(l, r) => Formula::implies(rewrite(l, used), rewrite(r, used)),
        Formula::Not(g) => Formula::not(rewrite(g, used)),
        Formula::Exists(v, g) => Formula::exists(v, rewrite(g, used)),
        Formula::Forall(v, g) => Formula::forall(v, rewrite(g, used)),
    }
}

struct Fresh<'a> {
    used: &'a BTreeSet<String>,
    next: usize,
}

impl Fresh<'_> {
    fn take(&mut self) -> String {
        loop {
            let name = if self.next == 0 {
                "z".to_string()
            } else {
                format!("z{}", self.next)
            };
            self.next += 1;
            if !self.used.contains(&name) {
                return name;
            }
        }
    }
}

fn extract(t: &Term, defs: &mut Vec<(String, Term)>, fresh: &mut Fresh<'_>) -> Term {
    match t {
        Term::Zero | Term::One | Term::Var(_) => t.clone(),
        Term::Join(l, r) => Term::join(extract(l, defs, fresh), extract(r, defs, fresh)),
        Term::Meet(l, r) => Term::meet(extract(l, defs, fresh), extract(r, defs, fresh)),
        Term::Dmneg(s) => Term::dmneg(extract(s, defs, fresh)),
        Term::Bneg(s) => {
            let inner = extract(s, defs, fresh);
            let z = fresh.take();
            defs.push((z.clone(), inner));
            Term::Var(z)
        }
        Term::Star(s) => {
            let inner = Term::dmneg(extract(s, defs, fresh));
            let z = fresh.take();
            defs.push((z.clone(), inner));
            Term::Var(z)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parser::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s, Signature::Bdm).unwrap()
    }

    #[test]
    fn dm_to_bdm_is_identity() {
        let g = f("~x = x");
        assert_eq!(to_bdm(&g).unwrap(), g);
        assert_eq!(to_bdm(&f("x' = x")), Err(EvalError::Signature));
    }

    #[test]
    fn star_becomes_complement_of_bar() {
        assert_eq!(
            to_dm(&f("y . (x . x*) = 0")),
            f("exists z. (~x + z = 1 & ~x . z = 0 & y . (x . z) = 0)")
        );
    }

    #[test]
    fn prime_becomes_complement() {
        assert_eq!(
            to_dm(&f("x' . ~x = 0")),
            f("exists z. (x + z = 1 & x.z = 0 & z . ~x = 0)")
        );
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let g = to_dm(&f("z'' = z"));
        assert!(g.fits(Signature::Dm));
        assert_eq!(
            g,
            f("exists z1. exists z2. (z + z1 = 1 & z . z1 = 0 & z1 + z2 = 1 & z1 . z2 = 0 & z2 = z)")
        );
    }

    #[test]
    fn leaves_dm_formulas_alone() {
        let g = f("forall x. (x + ~x = 1 | x = 0)");
        assert_eq!(to_dm(&g), g);
    }
}
