use std::collections::BTreeMap;

use thiserror::Error;

use super::ast::{Formula, Signature, Term};
use crate::algebra::{Element, FiniteAlgebra};

/// Variable assignment.
pub type Env = BTreeMap<String, Element>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("value of `{0}` does not belong to the algebra")]
    Foreign(String),
    #[error("quantified formulas cannot be evaluated directly in a finite algebra")]
    Quantified,
    #[error("term uses operations outside the De Morgan signature")]
    Signature,
}

pub fn eval_term(alg: &FiniteAlgebra, t: &Term, env: &Env) -> Result<Element, EvalError> {
    Ok(match t {
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Var(v) => {
            let x = env.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?;
            if !alg.contains(x) {
                return Err(EvalError::Foreign(v.clone()));
            }
            x.clone()
        }
        Term::Join(l, r) => alg.join(&eval_term(alg, l, env)?, &eval_term(alg, r, env)?),
        Term::Meet(l, r) => alg.meet(&eval_term(alg, l, env)?, &eval_term(alg, r, env)?),
        Term::Bneg(s) => alg.bneg(&eval_term(alg, s, env)?),
        Term::Dmneg(s) => alg.dmneg(&eval_term(alg, s, env)?),
        Term::Star(s) => alg.star(&eval_term(alg, s, env)?),
    })
}

/// Truth of a quantifier-free formula in `alg`.
pub fn eval_qf(alg: &FiniteAlgebra, f: &Formula, env: &Env) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Eq(l, r) => eval_term(alg, l, env)? == eval_term(alg, r, env)?,
        Formula::Ne(l, r) => eval_term(alg, l, env)? != eval_term(alg, r, env)?,
        Formula::And(l, r) => eval_qf(alg, l, env)? && eval_qf(alg, r, env)?,
        Formula::Or(l, r) => eval_qf(alg, l, env)? || eval_qf(alg, r, env)?,
        Formula::Implies(l, r) => !eval_qf(alg, l, env)? || eval_qf(alg, r, env)?,
        Formula::Not(g) => !eval_qf(alg, g, env)?,
        Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::Quantified),
    })
}

/// Outcome of an identity check over `4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Valid,
    /// A falsifying assignment into `4`.
    Invalid(Env),
}

impl IdentityCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, IdentityCheck::Valid)
    }
}

/// Name of an element of `4`: `0`, `a`, `b` or `1`.
pub fn four_name(x: &Element) -> &'static str {
    match x.to_mask() {
        Some(0) => "0",
        Some(1) => "a",
        Some(2) => "b",
        _ => "1",
    }
}

/// Decides whether `t1 = t2` holds in every algebra of the variety.
///
/// Every Boole-De Morgan algebra embeds in a power of `4`, so it suffices to try
/// all `4^k` assignments of the `k` variables into `4`. Assignments are tried in
/// lexicographic order over sorted variable names with `0 < a < b < 1`, so the
/// reported counterexample is the least one.
pub fn valid_identity(t1: &Term, t2: &Term, sig: Signature) -> Result<IdentityCheck, EvalError> {
    if !t1.fits(sig) || !t2.fits(sig) {
        return Err(EvalError::Signature);
    }
    let four = FiniteAlgebra::four();
    let mut vars = t1.vars();
    vars.extend(t2.vars());
    let vars: Vec<String> = vars.into_iter().collect();
    let k = vars.len() as u32;
    for code in 0..4u64.pow(k) {
        // most significant digit belongs to the first variable
        let env: Env = vars
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let digit = code / 4u64.pow(k - 1 - j as u32) % 4;
                (v.clone(), Element::from_mask(2, digit))
            })
            .collect();
        if eval_term(&four, t1, &env)? != eval_term(&four, t2, &env)? {
            return Ok(IdentityCheck::Invalid(env));
        }
    }
    Ok(IdentityCheck::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parser::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s, Signature::Bdm).unwrap()
    }

    fn env(pairs: &[(&str, Element)]) -> Env {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn evaluates_in_four() {
        let four = FiniteAlgebra::four();
        let a = four.atom(0);
        let e = env(&[("x", a.clone())]);
        assert_eq!(eval_term(&four, &t("~x"), &e).unwrap(), a);
        assert_eq!(eval_term(&four, &t("x + x'"), &e).unwrap(), four.one());
        assert_eq!(eval_term(&four, &t("x*"), &e).unwrap(), four.atom(1));
    }

    #[test]
    fn star_swaps_coordinates_in_four_squared() {
        let p = FiniteAlgebra::four_power(2).unwrap();
        // (a, b) is atoms {1, 4}; (b, a) is atoms {3, 2}
        let ab = Element::from_one_based(4, &[1, 4]).unwrap();
        let ba = Element::from_one_based(4, &[2, 3]).unwrap();
        assert_eq!(eval_term(&p, &t("x*"), &env(&[("x", ab)])).unwrap(), ba);
    }

    #[test]
    fn unbound_and_foreign() {
        let four = FiniteAlgebra::four();
        assert_eq!(
            eval_term(&four, &t("y"), &Env::new()),
            Err(EvalError::Unbound("y".into()))
        );
        assert_eq!(
            eval_term(&four, &t("y"), &env(&[("y", Element::empty(3))])),
            Err(EvalError::Foreign("y".into()))
        );
    }

    #[test]
    fn identities() {
        let ok = |l: &str, r: &str| valid_identity(&t(l), &t(r), Signature::Bdm).unwrap();
        assert!(ok("~(x+y)", "~x . ~y").is_valid());
        assert!(ok("~(x')", "(~x)'").is_valid());
        let IdentityCheck::Invalid(cex) = ok("x + ~x", "1") else {
            panic!("excluded middle must fail for the De Morgan negation");
        };
        assert_eq!(four_name(&cex["x"]), "a");
    }

    #[test]
    fn identity_signature_check() {
        assert_eq!(
            valid_identity(&t("x'"), &t("x"), Signature::Dm),
            Err(EvalError::Signature)
        );
    }
}
