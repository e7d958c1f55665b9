//! Truth of first-order formulas in existentially closed extensions.
//!
//! Every existential step is resolved by listing the possible types of the new
//! element over the algebra generated by the parameters in scope: one type per
//! sigma-consistent triple, each realized by its abstract witness. Atomic
//! formulas are then evaluated in the finite extension reached so far.
//!
//! An innermost quantifier is settled without building witnesses. In the
//! witness for a triple, every atom `(i, g)` sees the same local data: whether
//! `i` and `sigma(i)` lie in each parameter, and the pattern `g` for the new
//! element. Each equation of the body therefore holds iff no present atom is
//! one where its two sides differ, and the achievable combinations of
//! equations are collected orbit by orbit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use std::collections::{BTreeMap, BTreeSet};

use super::triple::{consistent_triples_within, Pattern};
use super::witness::{witness_abstract, WitnessError};
use crate::algebra::{Element, FiniteAlgebra};
use crate::logic::{eval_term, Env, EvalError, Formula, Term};
use crate::refinement::{generated_subalgebra, RefinementError};

/// Resource limits for [`decide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest intermediate algebra, in atoms.
    pub max_atoms: usize,
    pub max_depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_atoms: 12,
            max_depth: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("quantifier depth {depth} exceeds the limit {limit}")]
    DepthExceeded { depth: usize, limit: usize },
    #[error("a witness needs more than {limit} atoms")]
    AtomsExceeded { limit: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Refinement(#[from] RefinementError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

impl DecideError {
    /// Whether the failure is a resource limit rather than a malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            DecideError::DepthExceeded { .. } | DecideError::AtomsExceeded { .. }
        )
    }
}

/// Truth of `f` in every existentially closed extension of `params`, with the
/// free variables of `f` interpreted by `env`.
///
/// Existential steps that build witnesses skip types whose witness would
/// exceed `caps.max_atoms`; if no remaining type succeeds the result is
/// [`DecideError::AtomsExceeded`]. Innermost steps build nothing and are exact.
pub fn decide(
    params: &FiniteAlgebra,
    f: &Formula,
    env: &Env,
    caps: &Caps,
) -> Result<bool, DecideError> {
    validate(params, f, env, caps)?;
    Solver { caps, local: true }.holds(params, f, env)
}

/// As [`decide`], but every quantifier step builds and inspects each witness.
pub fn decide_enumerative(
    params: &FiniteAlgebra,
    f: &Formula,
    env: &Env,
    caps: &Caps,
) -> Result<bool, DecideError> {
    validate(params, f, env, caps)?;
    Solver { caps, local: false }.holds(params, f, env)
}

fn validate(
    params: &FiniteAlgebra,
    f: &Formula,
    env: &Env,
    caps: &Caps,
) -> Result<(), DecideError> {
    let depth = f.quantifier_depth();
    if depth > caps.max_depth {
        return Err(DecideError::DepthExceeded {
            depth,
            limit: caps.max_depth,
        });
    }
    for v in f.free_vars() {
        let x = env.get(&v).ok_or_else(|| EvalError::Unbound(v.clone()))?;
        if !params.contains(x) {
            return Err(EvalError::Foreign(v).into());
        }
    }
    Ok(())
}

struct Solver<'a> {
    caps: &'a Caps,
    /// Settle innermost quantifiers atom by atom.
    local: bool,
}

impl Solver<'_> {
    fn holds(&self, alg: &FiniteAlgebra, f: &Formula, env: &Env) -> Result<bool, DecideError> {
        Ok(match f {
            Formula::Eq(l, r) => eval_term(alg, l, env)? == eval_term(alg, r, env)?,
            Formula::Ne(l, r) => eval_term(alg, l, env)? != eval_term(alg, r, env)?,
            Formula::And(l, r) => self.holds(alg, l, env)? && self.holds(alg, r, env)?,
            Formula::Or(l, r) => self.holds(alg, l, env)? || self.holds(alg, r, env)?,
            Formula::Implies(l, r) => !self.holds(alg, l, env)? || self.holds(alg, r, env)?,
            Formula::Not(g) => !self.holds(alg, g, env)?,
            Formula::Exists(x, g) => self.exists(alg, x, g, env)?,
            Formula::Forall(x, g) => !self.exists(alg, x, &Formula::not((**g).clone()), env)?,
        })
    }

    fn exists(
        &self,
        alg: &FiniteAlgebra,
        x: &str,
        body: &Formula,
        env: &Env,
    ) -> Result<bool, DecideError> {
        let caps = self.caps;
        let mut free = body.free_vars();
        free.remove(x);
        let names: Vec<String> = free.into_iter().collect();
        let mut values = Vec::with_capacity(names.len());
        for v in &names {
            values.push(
                env.get(v)
                    .cloned()
                    .ok_or_else(|| EvalError::Unbound(v.clone()))?,
            );
        }
        let (sub, inc) = generated_subalgebra(alg, &values)?;
        if sub.n() > caps.max_atoms {
            return Err(DecideError::AtomsExceeded {
                limit: caps.max_atoms,
            });
        }
        let local: Vec<(String, Element)> = names
            .into_iter()
            .zip(&values)
            .map(|(v, w)| {
                (
                    v,
                    inc.preimage(w)
                        .expect("value lies in the generated subalgebra"),
                )
            })
            .collect();
        if self.local && body.is_quantifier_free() {
            if let Some(answer) = exists_locally(&sub, x, body, &local) {
                return Ok(answer);
            }
        }
        let (triples, skipped) = consistent_triples_within(&sub, caps.max_atoms);
        for t in &triples {
            let w = witness_abstract(t)?;
            let mut next: Env = local
                .iter()
                .map(|(v, e)| (v.clone(), w.embedding.map(e)))
                .collect();
            next.insert(x.to_string(), w.element.clone());
            if self.holds(w.extension(), body, &next)? {
                return Ok(true);
            }
        }
        if skipped > 0 {
            return Err(DecideError::AtomsExceeded {
                limit: caps.max_atoms,
            });
        }
        Ok(false)
    }
}

/// Most distinct equations handled by [`exists_locally`].
const MAX_LOCAL_EQUATIONS: usize = 16;

/// Membership of an atom `q` and of `sigma(q)` in a value.
type Local = (bool, bool);

fn eval_local(t: &Term, vars: &BTreeMap<&str, Local>) -> Local {
    match t {
        Term::Zero => (false, false),
        Term::One => (true, true),
        Term::Var(v) => vars[v.as_str()],
        Term::Join(l, r) => {
            let (a, b) = (eval_local(l, vars), eval_local(r, vars));
            (a.0 || b.0, a.1 || b.1)
        }
        Term::Meet(l, r) => {
            let (a, b) = (eval_local(l, vars), eval_local(r, vars));
            (a.0 && b.0, a.1 && b.1)
        }
        Term::Bneg(s) => {
            let a = eval_local(s, vars);
            (!a.0, !a.1)
        }
        Term::Star(s) => {
            let a = eval_local(s, vars);
            (a.1, a.0)
        }
        Term::Dmneg(s) => {
            let a = eval_local(s, vars);
            (!a.1, !a.0)
        }
    }
}

fn collect_equations<'f>(f: &'f Formula, out: &mut BTreeSet<(&'f Term, &'f Term)>) {
    match f {
        Formula::Eq(l, r) | Formula::Ne(l, r) => {
            out.insert((l, r));
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            collect_equations(l, out);
            collect_equations(r, out);
        }
        Formula::Not(g) => collect_equations(g, out),
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("body is quantifier-free"),
    }
}

fn eval_with(f: &Formula, index: &BTreeMap<(&Term, &Term), usize>, failed: u32) -> bool {
    match f {
        Formula::Eq(l, r) => failed >> index[&(l, r)] & 1 == 0,
        Formula::Ne(l, r) => failed >> index[&(l, r)] & 1 == 1,
        Formula::And(l, r) => eval_with(l, index, failed) && eval_with(r, index, failed),
        Formula::Or(l, r) => eval_with(l, index, failed) || eval_with(r, index, failed),
        Formula::Implies(l, r) => !eval_with(l, index, failed) || eval_with(r, index, failed),
        Formula::Not(g) => !eval_with(g, index, failed),
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("body is quantifier-free"),
    }
}

/// Decides `exists x. body` over `sub` for a quantifier-free body without
/// building witnesses. `None` when the body has too many equations.
fn exists_locally(
    sub: &FiniteAlgebra,
    x: &str,
    body: &Formula,
    params: &[(String, Element)],
) -> Option<bool> {
    let mut eqs = BTreeSet::new();
    collect_equations(body, &mut eqs);
    if eqs.len() > MAX_LOCAL_EQUATIONS {
        return None;
    }
    let eqs: Vec<(&Term, &Term)> = eqs.into_iter().collect();
    let index: BTreeMap<(&Term, &Term), usize> =
        eqs.iter().enumerate().map(|(k, &e)| (e, k)).collect();

    // equations failing at the witness atom (i, g)
    let fails = |i: usize, g: Pattern| -> u32 {
        let mut vars: BTreeMap<&str, Local> = params
            .iter()
            .map(|(v, e)| (v.as_str(), (e.contains(i), e.contains(sub.sigma(i)))))
            .collect();
        vars.insert(x, (g.in_x(), g.star().in_x()));
        eqs.iter().enumerate().fold(0, |acc, (k, (l, r))| {
            if eval_local(l, &vars).0 == eval_local(r, &vars).0 {
                acc
            } else {
                acc | 1 << k
            }
        })
    };

    // achievable sets of failed equations, orbit by orbit
    let mut reach: BTreeSet<u32> = [0].into_iter().collect();
    for orbit in sub.orbits() {
        let mut local_fails = BTreeSet::new();
        if let [i] = orbit[..] {
            let [xbar, xstar, cobar] =
                [Pattern::XBar, Pattern::XStar, Pattern::CoBar].map(|g| fails(i, g));
            let xbar = xbar | fails(i, Pattern::CoStar);
            for code in 1..8u8 {
                // at least one of the three kinds is present
                let mut m = 0;
                for (bit, f) in [(4, xbar), (2, xstar), (1, cobar)] {
                    if code & bit != 0 {
                        m |= f;
                    }
                }
                local_fails.insert(m);
            }
        } else {
            let (i, j) = (orbit[0], orbit[1]);
            let at_i = Pattern::ALL.map(|g| fails(i, g));
            let at_j = Pattern::ALL.map(|g| fails(j, g));
            for code in 1..16u8 {
                // present patterns below i; those below j are their stars
                let mut m = 0;
                for g in Pattern::ALL {
                    if code >> g.index() & 1 == 1 {
                        m |= at_i[g.index()] | at_j[g.star().index()];
                    }
                }
                local_fails.insert(m);
            }
        }
        reach = reach
            .iter()
            .flat_map(|&a| local_fails.iter().map(move |&b| a | b))
            .collect();
    }
    Some(
        reach
            .into_iter()
            .any(|failed| eval_with(body, &index, failed)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Signature};
    use crate::solver::triple::{atom_env, consistent_triples, is_sigma_consistent, Triple};

    fn f(s: &str) -> Formula {
        parse_formula(s, Signature::Bdm).unwrap()
    }

    fn two() -> FiniteAlgebra {
        FiniteAlgebra::two()
    }

    #[test]
    fn examples_over_two() {
        let caps = Caps::default();
        let env = Env::new();
        let d = |s: &str| decide(&two(), &f(s), &env, &caps).unwrap();
        assert!(d("exists x. (~x = x & x != 0 & x != 1)"));
        assert!(d("forall x. (x + x' = 1)"));
        assert!(!d("forall x. (x + ~x = 1)"));
    }

    #[test]
    fn caps_are_errors() {
        let g = f("exists x. exists y. (x != y)");
        let caps = Caps {
            max_atoms: 12,
            max_depth: 1,
        };
        assert!(matches!(
            decide(&two(), &g, &Env::new(), &caps),
            Err(DecideError::DepthExceeded { depth: 2, limit: 1 })
        ));
        // only the types of 0 and 1 have one-atom witnesses
        let caps = Caps {
            max_atoms: 1,
            max_depth: 4,
        };
        let g = f("exists x. (x != 0 & x != 1)");
        assert!(decide(&two(), &g, &Env::new(), &caps).unwrap());
        assert!(decide_enumerative(&two(), &g, &Env::new(), &caps)
            .unwrap_err()
            .is_cap());
        let g = f("exists x. exists y. (x != 0 & x != 1 & y = x)");
        let e = decide(&two(), &g, &Env::new(), &caps).unwrap_err();
        assert!(e.is_cap());
    }

    #[test]
    fn unbound_variables_rejected() {
        let e = decide(&two(), &f("y = 0"), &Env::new(), &Caps::default()).unwrap_err();
        assert_eq!(e, DecideError::Eval(EvalError::Unbound("y".into())));
    }

    #[test]
    fn parameters_are_used() {
        let four = FiniteAlgebra::four();
        let mut env = Env::new();
        env.insert("p".into(), four.atom(0));
        let caps = Caps::default();
        assert!(decide(&four, &f("exists x. (x* = p)"), &env, &caps).unwrap());
        // existentially closed models are atomless
        assert!(decide(
            &four,
            &f("exists x. (x . p = x & x != 0 & x != p)"),
            &env,
            &caps
        )
        .unwrap());
        assert!(!decide(
            &four,
            &f("exists x. (x . p = x & x* . p = x* & x != 0)"),
            &env,
            &caps
        )
        .unwrap());
    }

    #[test]
    fn local_and_enumerative_agree() {
        let four = FiniteAlgebra::four();
        let mut env = Env::new();
        env.insert("p".into(), four.atom(0));
        let caps = Caps {
            max_atoms: 16,
            max_depth: 4,
        };
        for text in [
            "exists x. (x* = p)",
            "exists x. (x . p = x & x != 0 & x != p)",
            "exists x. (x . p = x & x* . p = x* & x != 0)",
            "forall x. (x + ~x = 1 | x . p != 0)",
            "exists x. (~x = x' & x . ~p = 0 -> x = p)",
            "forall x. (x . x* = 0 -> ~x . x = x)",
        ] {
            let g = f(text);
            assert_eq!(
                decide(&four, &g, &env, &caps).unwrap(),
                decide_enumerative(&four, &g, &env, &caps).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn ec_axiom_matches_consistency() {
        let caps = Caps {
            max_atoms: 16,
            max_depth: 4,
        };
        for n in 1..=2 {
            for alg in crate::algebra::all_involutions(n) {
                let env = atom_env(&alg, "p");
                for code in 0..1u64 << (3 * n) {
                    let mask = (1u64 << n) - 1;
                    let t = Triple::from_masks(
                        &alg,
                        code >> (2 * n) & mask,
                        code >> n & mask,
                        code & mask,
                    );
                    let g = Formula::exists("x", t.phi_formula(|i| format!("p{}", i + 1), "x"));
                    assert_eq!(
                        decide(&alg, &g, &env, &caps).unwrap(),
                        is_sigma_consistent(&t),
                        "{t}"
                    );
                }
                assert!(consistent_triples(&alg).is_ok());
            }
        }
    }
}
