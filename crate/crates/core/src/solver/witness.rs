use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::triple::{is_sigma_consistent, refine_triple, Pattern, Triple};
use crate::algebra::{AlgebraError, Element, FiniteAlgebra};
use crate::refinement::{embed_into_four_power, AtomRefinement, RefinementError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("triple {0} is not sigma-consistent")]
    Inconsistent(String),
    #[error("triple {0} is trivial and has a single realization")]
    Trivial(String),
    #[error("k must be positive")]
    ZeroCount,
    #[error(transparent)]
    Refinement(#[from] RefinementError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An extension of a base algebra together with an element realizing a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub embedding: AtomRefinement,
    pub element: Element,
}

impl Witness {
    pub fn base(&self) -> &FiniteAlgebra {
        self.embedding.source()
    }

    pub fn extension(&self) -> &FiniteAlgebra {
        self.embedding.target()
    }
}

fn require_consistent(t: &Triple) -> Result<(), WitnessError> {
    if is_sigma_consistent(t) {
        Ok(())
    } else {
        Err(WitnessError::Inconsistent(t.to_string()))
    }
}

/// The smallest extension realizing `t`: one atom `(i, g)` for every pattern
/// `g` the triple allows below base atom `i`, ordered by `(i, g)`.
pub fn witness_abstract(t: &Triple) -> Result<Witness, WitnessError> {
    require_consistent(t)?;
    let base = t.algebra();
    let atoms: Vec<(usize, Pattern)> = (0..base.n())
        .flat_map(|i| Pattern::ALL.into_iter().map(move |g| (i, g)))
        .filter(|&(i, g)| t.allows(i, g))
        .collect();
    let index = |i: usize, g: Pattern| {
        atoms
            .binary_search(&(i, g))
            .expect("allowed patterns are closed under the involution")
    };
    let sigma: Vec<usize> = atoms
        .iter()
        .map(|&(i, g)| index(base.sigma(i), g.star()))
        .collect();
    let extension = FiniteAlgebra::from_zero_based(sigma)?;
    let owner: Vec<usize> = atoms.iter().map(|&(i, _)| i).collect();
    let embedding = AtomRefinement::from_owner(base.clone(), extension, &owner)?;
    let m = atoms.len();
    let element = Element::from_atoms(
        m,
        atoms
            .iter()
            .enumerate()
            .filter(|(_, (_, g))| g.in_x())
            .map(|(q, _)| q),
    );
    Ok(Witness { embedding, element })
}

/// A coordinate value in `4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coord {
    Zero,
    A,
    B,
    One,
}

impl Coord {
    pub fn star(self) -> Coord {
        match self {
            Coord::A => Coord::B,
            Coord::B => Coord::A,
            c => c,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coord::Zero => "0",
            Coord::A => "a",
            Coord::B => "b",
            Coord::One => "1",
        }
    }
}

/// A solution in `4^k` of the equation system given by a consistent triple
/// over `4`. Index sets are bitmasks over the atoms `a` (bit 0) and `b` (bit 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i1: u8,
    pub i2: u8,
    pub i3: u8,
    pub solution: Vec<Coord>,
    /// Obtained from a listed entry by swapping `a` and `b`.
    pub derived: bool,
}

impl TableEntry {
    pub fn triple(&self) -> Triple {
        Triple::from_masks(
            &FiniteAlgebra::four(),
            self.i1.into(),
            self.i2.into(),
            self.i3.into(),
        )
    }

    /// The solution as an element of `4^k`.
    pub fn element(&self) -> Element {
        let k = self.solution.len();
        let mut x = Element::empty(2 * k);
        for (j, c) in self.solution.iter().enumerate() {
            if matches!(c, Coord::A | Coord::One) {
                x.insert(j);
            }
            if matches!(c, Coord::B | Coord::One) {
                x.insert(k + j);
            }
        }
        x
    }
}

use Coord::{One as I, Zero as O, A, B};

/// Published solutions, one per consistent triple over `4` with `I1 != {2}`.
const LISTED: [(u8, u8, u8, &[Coord]); 11] = [
    (0b11, 0b11, 0b00, &[O]),
    (0b11, 0b00, 0b00, &[I, O]),
    (0b11, 0b00, 0b11, &[I]),
    (0b01, 0b00, 0b00, &[B, I, O]),
    (0b01, 0b11, 0b11, &[B]),
    (0b01, 0b11, 0b00, &[B, O]),
    (0b01, 0b00, 0b11, &[B, I]),
    (0b00, 0b00, 0b00, &[A, B, O, I]),
    (0b00, 0b00, 0b11, &[A, B, I]),
    (0b00, 0b11, 0b00, &[A, B, O]),
    (0b00, 0b11, 0b11, &[A, B]),
];

/// The full solution table over `4`: the listed entries followed by the
/// four `I1 = {2}` entries, which mirror the `I1 = {1}` ones under star.
pub fn solution_table() -> Vec<TableEntry> {
    let mut table: Vec<TableEntry> = LISTED
        .iter()
        .map(|&(i1, i2, i3, sol)| TableEntry {
            i1,
            i2,
            i3,
            solution: sol.to_vec(),
            derived: false,
        })
        .collect();
    let mirrored: Vec<TableEntry> = table
        .iter()
        .filter(|e| e.i1 == 0b01)
        .map(|e| TableEntry {
            i1: 0b10,
            i2: e.i2,
            i3: e.i3,
            solution: e.solution.iter().map(|c| c.star()).collect(),
            derived: true,
        })
        .collect();
    table.extend(mirrored);
    table
}

fn lookup(table: &[TableEntry], i1: u8, i2: u8, i3: u8) -> &TableEntry {
    table
        .iter()
        .find(|e| (e.i1, e.i2, e.i3) == (i1, i2, i3))
        .expect("table covers every consistent triple over 4")
}

/// Realizes `t` in a power of `4`: embed the base in `4^m`, push the triple
/// forward, solve each coordinate from the table and concatenate.
pub fn witness_via_four_power(t: &Triple) -> Result<Witness, WitnessError> {
    require_consistent(t)?;
    let base = t.algebra();
    let (power, e) = match base.as_four_power() {
        Some(_) => (base.clone(), AtomRefinement::identity(base)),
        None => embed_into_four_power(base),
    };
    let m = power.n() / 2;
    let tp = refine_triple(&e, t);
    let table = solution_table();
    let bits = |s: &Element, c: usize| u8::from(s.contains(c)) | u8::from(s.contains(m + c)) << 1;
    let solutions: Vec<&[Coord]> = (0..m)
        .map(|c| {
            let [s1, s2, s3] = tp.sets();
            lookup(&table, bits(s1, c), bits(s2, c), bits(s3, c))
                .solution
                .as_slice()
        })
        .collect();
    let k: usize = solutions.iter().map(|s| s.len()).sum();
    let target = FiniteAlgebra::four_power(k)?;
    let mut cells = vec![Element::empty(2 * k); 2 * m];
    let mut element = Element::empty(2 * k);
    let mut offset = 0;
    for (c, sol) in solutions.iter().enumerate() {
        for (j, v) in sol.iter().enumerate() {
            let q = offset + j;
            cells[c].insert(q);
            cells[m + c].insert(k + q);
            if matches!(v, Coord::A | Coord::One) {
                element.insert(q);
            }
            if matches!(v, Coord::B | Coord::One) {
                element.insert(k + q);
            }
        }
        offset += sol.len();
    }
    let spread = AtomRefinement::new(power, target, cells)?;
    let embedding = e.compose(&spread)?;
    Ok(Witness { embedding, element })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::triple::{consistent_triples, holds_phi, triple_of_element};

    fn tr(alg: &FiniteAlgebra, i1: &[usize], i2: &[usize], i3: &[usize]) -> Triple {
        Triple::from_one_based(alg, i1, i2, i3).unwrap()
    }

    #[test]
    fn abstract_square_root_of_bar() {
        let two = FiniteAlgebra::two();
        let w = witness_abstract(&tr(&two, &[], &[1], &[1])).unwrap();
        assert_eq!(*w.extension(), FiniteAlgebra::four());
        assert_eq!(w.element, FiniteAlgebra::four().atom(0));
    }

    #[test]
    fn abstract_zero_over_four() {
        let f = FiniteAlgebra::four();
        let w = witness_abstract(&tr(&f, &[1, 2], &[1, 2], &[])).unwrap();
        assert_eq!(*w.extension(), f);
        assert!(w.embedding.is_identity());
        assert!(w.element.is_empty());
    }

    #[test]
    fn abstract_rejects_inconsistent() {
        let two = FiniteAlgebra::two();
        assert!(matches!(
            witness_abstract(&tr(&two, &[1], &[1], &[1])),
            Err(WitnessError::Inconsistent(_))
        ));
    }

    #[test]
    fn table_has_every_consistent_triple_once() {
        let table = solution_table();
        assert_eq!(table.len(), 15);
        assert_eq!(table.iter().filter(|e| e.derived).count(), 4);
        let four = FiniteAlgebra::four();
        for t in consistent_triples(&four).unwrap() {
            let hits = table.iter().filter(|e| e.triple() == t).count();
            assert_eq!(hits, 1, "{t}");
        }
    }

    #[test]
    fn table_entries_solve_their_triples() {
        let four = FiniteAlgebra::four();
        for entry in solution_table() {
            let k = entry.solution.len();
            let target = FiniteAlgebra::four_power(k).unwrap();
            let diag = AtomRefinement::new(
                four.clone(),
                target,
                vec![
                    Element::from_atoms(2 * k, 0..k),
                    Element::from_atoms(2 * k, k..2 * k),
                ],
            )
            .unwrap();
            let x = entry.element();
            assert_eq!(triple_of_element(&diag, &x), entry.triple(), "{entry:?}");
        }
    }

    #[test]
    fn four_power_examples() {
        let f = FiniteAlgebra::four();
        let w = witness_via_four_power(&tr(&f, &[1], &[1, 2], &[1, 2])).unwrap();
        assert_eq!(*w.extension(), f);
        assert_eq!(w.element, f.atom(1));

        let w = witness_via_four_power(&tr(&f, &[], &[], &[1, 2])).unwrap();
        assert_eq!(w.extension().as_four_power(), Some(3));
        // (a, b, 1): a-atoms {1, 3}, b-atoms {5, 6}
        assert_eq!(
            w.element,
            Element::from_one_based(6, &[1, 3, 5, 6]).unwrap()
        );

        let w = witness_via_four_power(&tr(&f, &[], &[], &[])).unwrap();
        assert_eq!(w.extension().as_four_power(), Some(4));
        assert_eq!(
            w.element,
            Element::from_one_based(8, &[1, 4, 6, 8]).unwrap()
        );
    }

    #[test]
    fn both_constructors_realize_small_triples() {
        for n in 1..=2 {
            for alg in crate::algebra::all_involutions(n) {
                for t in consistent_triples(&alg).unwrap() {
                    for w in [
                        witness_abstract(&t).unwrap(),
                        witness_via_four_power(&t).unwrap(),
                    ] {
                        assert!(holds_phi(&w.embedding, &t, &w.element), "{t}");
                    }
                }
            }
        }
    }
}
