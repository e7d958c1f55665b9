//! Brute-force ground truth.
//!
//! Nothing here calls the triple machinery it is meant to check: realizations
//! are found by scanning every element and evaluating the defining products
//! with the algebra operations directly.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAlgebra};
use crate::refinement::{embed_into_four_power, generated_subalgebra, AtomRefinement};
use crate::solver::{Triple, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("free algebra on {0} generators is beyond the oracle's reach (k <= 2)")]
    TooManyGenerators(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Whether `u` has zero pattern `t` against the images of the base atoms.
fn realizes(r: &AtomRefinement, t: &Triple, u: &Element) -> bool {
    let b = r.target();
    let products = [
        b.meet(u, &b.dmneg(u)),
        b.meet(u, &b.star(u)),
        b.meet(&b.bneg(u), &b.dmneg(u)),
    ];
    (0..r.source().n()).all(|i| {
        let p = r.cell(i);
        products
            .iter()
            .zip(t.sets())
            .all(|(prod, set)| b.meet(p, prod).is_empty() == set.contains(i))
    })
}

/// Every element of the target of `r` realizing `t`, in ascending order.
pub fn all_realizations_in(r: &AtomRefinement, t: &Triple) -> Result<Vec<Element>, AlgebraError> {
    if t.algebra() != r.source() {
        return Ok(Vec::new());
    }
    Ok(r.target()
        .elements()?
        .filter(|u| realizes(r, t, u))
        .collect())
}

/// The refinement `4^m -> 4^(m k)` sending every coordinate to `k` copies.
pub fn diagonal(m: usize, k: usize) -> AtomRefinement {
    let source = FiniteAlgebra::four_power(m).expect("m >= 1");
    let target = FiniteAlgebra::four_power(m * k).expect("m k >= 1");
    let mk = m * k;
    let cells = (0..2 * m)
        .map(|q| {
            let (c, half) = (q % m, q / m);
            Element::from_atoms(2 * mk, (0..k).map(|j| half * mk + c * k + j))
        })
        .collect();
    AtomRefinement::new(source, target, cells).expect("diagonal cells are a refinement")
}

/// Searches `4^(m k)` for `k = 1, 2, ...` above the canonical embedding of the
/// base in `4^m`, returning the least realizer in the first power that has one.
pub fn oracle_witness_search(t: &Triple, max_atoms: usize) -> Option<Witness> {
    let base = t.algebra();
    let (power, e) = match base.as_four_power() {
        Some(_) => (base.clone(), AtomRefinement::identity(base)),
        None => embed_into_four_power(base),
    };
    let m = power.n() / 2;
    let mut k = 1;
    while 2 * m * k <= max_atoms {
        let embedding = e
            .compose(&diagonal(m, k))
            .expect("diagonal starts at the power");
        if let Ok(mut found) = all_realizations_in(&embedding, t) {
            if !found.is_empty() {
                let element = found.swap_remove(0);
                return Some(Witness { embedding, element });
            }
        } else {
            return None;
        }
        k += 1;
    }
    None
}

/// Scans every subset `I` of the base atoms for the triple of the element `I`.
pub fn brute_force_trivial(t: &Triple) -> Option<Element> {
    let alg = t.algebra();
    let id = AtomRefinement::identity(alg);
    alg.elements().ok()?.find(|i| realizes(&id, t, i))
}

/// Size of the free Boole-De Morgan algebra on `k` generators, computed as
/// the subalgebra of functions `4^k -> 4` generated by the projections.
pub fn free_function_count(k: usize) -> Result<u64, OracleError> {
    if k > 2 {
        return Err(OracleError::TooManyGenerators(k));
    }
    let points = 4usize.pow(k as u32);
    let functions = FiniteAlgebra::four_power(points)?;
    let projections: Vec<Element> = (0..k).map(|j| projection(k, j)).collect();
    let (sub, _) = generated_subalgebra(&functions, &projections)
        .map_err(|_| AlgebraError::TooLarge { n: points })?;
    Ok(1u64 << sub.n())
}

/// The `j`-th projection `4^k -> 4` as an element of `4^(4^k)`.
fn projection(k: usize, j: usize) -> Element {
    let points = 4usize.pow(k as u32);
    let mut f = Element::empty(2 * points);
    for p in 0..points {
        let v = p / 4usize.pow((k - 1 - j) as u32) % 4;
        if v & 1 == 1 {
            f.insert(p);
        }
        if v & 2 == 2 {
            f.insert(points + p);
        }
    }
    f
}

/// The same count by naive closure under all five operations; feasible for `k <= 1`.
pub fn free_function_count_naive(k: usize) -> Result<u64, OracleError> {
    if k > 1 {
        return Err(OracleError::TooManyGenerators(k));
    }
    let points = 4usize.pow(k as u32);
    let alg = FiniteAlgebra::four_power(points)?;
    let mut seen: BTreeSet<Element> = [alg.zero(), alg.one()].into_iter().collect();
    seen.extend((0..k).map(|j| projection(k, j)));
    loop {
        let current: Vec<Element> = seen.iter().cloned().collect();
        let mut grown = false;
        for x in &current {
            for y in [alg.bneg(x), alg.dmneg(x), alg.star(x)] {
                grown |= seen.insert(y);
            }
            for z in &current {
                grown |= seen.insert(alg.join(x, z));
                grown |= seen.insert(alg.meet(x, z));
            }
        }
        if !grown {
            return Ok(seen.len() as u64);
        }
    }
}

/// Every refinement of `base` into a target with at most `max_target_atoms`
/// atoms, one target per atom count and number of fixed atoms (fixed atoms
/// first, then consecutive swapped pairs), with every equivariant owner map.
pub fn all_refinements(base: &FiniteAlgebra, max_target_atoms: usize) -> Vec<AtomRefinement> {
    let mut out = Vec::new();
    let n = base.n();
    let fixed_base: Vec<usize> = (0..n).filter(|&i| base.is_fixed(i)).collect();
    for m in n..=max_target_atoms {
        for pairs in 0..=m / 2 {
            let fixed = m - 2 * pairs;
            let mut sigma: Vec<usize> = (0..fixed).collect();
            for p in 0..pairs {
                sigma.push(fixed + 2 * p + 1);
                sigma.push(fixed + 2 * p);
            }
            let target = FiniteAlgebra::from_zero_based(sigma).expect("valid involution");
            if fixed > 0 && fixed_base.is_empty() {
                continue;
            }
            let choices = fixed_base.len().pow(fixed as u32) * n.pow(pairs as u32);
            for code in 0..choices {
                let mut rest = code;
                let mut owner = vec![0; m];
                for slot in owner.iter_mut().take(fixed) {
                    *slot = fixed_base[rest % fixed_base.len()];
                    rest /= fixed_base.len();
                }
                for p in 0..pairs {
                    let i = rest % n;
                    rest /= n;
                    owner[fixed + 2 * p] = i;
                    owner[fixed + 2 * p + 1] = base.sigma(i);
                }
                if let Ok(r) = AtomRefinement::from_owner(base.clone(), target.clone(), &owner) {
                    out.push(r);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(alg: &FiniteAlgebra, i1: &[usize], i2: &[usize], i3: &[usize]) -> Triple {
        Triple::from_one_based(alg, i1, i2, i3).unwrap()
    }

    #[test]
    fn realizations_in_four() {
        let f = FiniteAlgebra::four();
        let id = AtomRefinement::identity(&f);
        assert_eq!(
            all_realizations_in(&id, &tr(&f, &[1, 2], &[1, 2], &[])).unwrap(),
            vec![f.zero()]
        );
        let two = FiniteAlgebra::two();
        let r = AtomRefinement::new(two.clone(), f.clone(), vec![f.one()]).unwrap();
        assert!(all_realizations_in(&r, &tr(&two, &[1], &[1], &[1]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn realizations_on_the_diagonal() {
        let f = FiniteAlgebra::four();
        let d = diagonal(1, 2);
        let found = all_realizations_in(&d, &tr(&f, &[1, 2], &[], &[])).unwrap();
        // (1,0) is atoms {1,3}, (0,1) is atoms {2,4}
        assert!(found.contains(&Element::from_one_based(4, &[1, 3]).unwrap()));
        assert!(found.contains(&Element::from_one_based(4, &[2, 4]).unwrap()));
    }

    #[test]
    fn witness_search() {
        let f = FiniteAlgebra::four();
        let w = oracle_witness_search(&tr(&f, &[], &[], &[]), 8).unwrap();
        assert_eq!(w.extension().as_four_power(), Some(4));
        // least realizer is (1, b, a, 0)
        assert_eq!(
            w.element,
            Element::from_one_based(8, &[1, 3, 5, 6]).unwrap()
        );
        assert!(oracle_witness_search(&tr(&f, &[1, 2], &[1, 2], &[1, 2]), 12).is_none());
    }

    #[test]
    fn trivial_scan() {
        let f = FiniteAlgebra::four();
        assert_eq!(
            brute_force_trivial(&tr(&f, &[2], &[1, 2], &[1, 2])),
            Some(f.atom(0))
        );
        let two = FiniteAlgebra::two();
        assert_eq!(brute_force_trivial(&tr(&two, &[], &[1], &[1])), None);
    }

    #[test]
    fn free_counts() {
        assert_eq!(free_function_count(0).unwrap(), 2);
        let one = free_function_count(1).unwrap();
        assert_eq!(one, free_function_count_naive(1).unwrap());
        assert_eq!(free_function_count_naive(0).unwrap(), 2);
        assert!(free_function_count(2).unwrap() > one);
        assert!(free_function_count(3).is_err());
    }

    #[test]
    fn refinement_enumeration() {
        let two = FiniteAlgebra::two();
        let rs = all_refinements(&two, 2);
        // 2 -> 2, 2 -> 2x2, 2 -> 4
        assert_eq!(rs.len(), 3);
        let four = FiniteAlgebra::four();
        assert!(all_refinements(&four, 4)
            .iter()
            .all(|r| r.target().n() >= 2 && r.source() == &four));
    }
}
