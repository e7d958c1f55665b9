#![allow(dead_code)]

use bdm::algebra::FiniteAlgebra;
use bdm::logic::{Formula, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_term<R: Rng>(rng: &mut R, vars: &[&str], depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Term::Zero,
            1 => Term::One,
            _ => Term::var(vars.choose(rng).expect("at least one variable")),
        };
    }
    let sub = |rng: &mut R| random_term(rng, vars, depth - 1);
    match rng.gen_range(0..5) {
        0 => Term::join(sub(rng), sub(rng)),
        1 => Term::meet(sub(rng), sub(rng)),
        2 => Term::bneg(sub(rng)),
        3 => Term::dmneg(sub(rng)),
        _ => Term::star(sub(rng)),
    }
}

pub fn random_qf<R: Rng>(rng: &mut R, vars: &[&str], size: u32) -> Formula {
    if size == 0 || rng.gen_bool(0.35) {
        let (l, r) = (random_term(rng, vars, 2), random_term(rng, vars, 2));
        return if rng.gen_bool(0.5) {
            Formula::eq(l, r)
        } else {
            Formula::ne(l, r)
        };
    }
    let sub = |rng: &mut R| random_qf(rng, vars, size - 1);
    match rng.gen_range(0..4) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::not(sub(rng)),
    }
}

/// A formula with free variable `p` and quantifier depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: u32) -> Formula {
    build(rng, &["p"], depth, 2)
}

fn build<R: Rng>(rng: &mut R, scope: &[&str], depth: u32, size: u32) -> Formula {
    const BOUND: [&str; 2] = ["x", "y"];
    let quantify = depth > 0 && rng.gen_bool(0.75);
    if !quantify {
        return random_qf(rng, scope, size);
    }
    let v = BOUND[scope.len() - 1];
    let mut inner: Vec<&str> = scope.to_vec();
    inner.push(v);
    let body = if rng.gen_bool(0.5) {
        build(rng, &inner, depth - 1, size)
    } else {
        let rest = build(rng, &inner, depth - 1, size.saturating_sub(1));
        let side = random_qf(rng, &inner, 1);
        if rng.gen_bool(0.5) {
            Formula::and(side, rest)
        } else {
            Formula::or(side, rest)
        }
    };
    if rng.gen_bool(0.5) {
        Formula::exists(v, body)
    } else {
        Formula::forall(v, body)
    }
}

/// Algebras with at most two atoms: 2, 2 x 2 and 4.
pub fn small_bases() -> Vec<FiniteAlgebra> {
    let mut v = bdm::algebra::all_involutions(1);
    v.extend(bdm::algebra::all_involutions(2));
    v
}

pub fn random_involution<R: Rng>(rng: &mut R, n: usize) -> FiniteAlgebra {
    let mut atoms: Vec<usize> = (0..n).collect();
    atoms.shuffle(rng);
    let mut sigma: Vec<usize> = (0..n).collect();
    for pair in atoms.chunks(2) {
        if pair.len() == 2 && rng.gen_bool(0.5) {
            sigma[pair[0]] = pair[1];
            sigma[pair[1]] = pair[0];
        }
    }
    FiniteAlgebra::from_zero_based(sigma).expect("built as an involution")
}
