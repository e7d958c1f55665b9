//! Finite Boole-De Morgan algebras presented by their atoms.
//!
//! A finite Boole-De Morgan algebra is a powerset algebra on `n` atoms together
//! with an involution `sigma` of the atoms. The star map `x* = (~x)'` acts on
//! atoms as `sigma`, and the De Morgan negation is recovered as
//! `~x = (sigma(x))'`. Every element is a set of atoms.
//!
//! Atoms are 0-based inside the library. All text and JSON forms are 1-based.

use std::cmp::Ordering;
use std::fmt;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

type AtomBits = BitVec<u64, Lsb0>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one atom")]
    NoAtoms,
    #[error("sigma has {got} entries, expected {expected}")]
    SigmaLength { expected: usize, got: usize },
    #[error("sigma image {image} of atom {atom} is out of range 1..={n}")]
    SigmaOutOfRange { atom: usize, image: usize, n: usize },
    #[error("sigma is not an involution: sigma(sigma({atom})) = {back}")]
    NotInvolution { atom: usize, back: usize },
    #[error("atom {atom} is out of range 1..={n}")]
    AtomOutOfRange { atom: usize, n: usize },
    #[error("element has {got} atom slots but the algebra has {expected} atoms")]
    ForeignElement { expected: usize, got: usize },
    #[error("operation {op} takes {expected} argument(s), got {got}")]
    Arity { op: Op, expected: usize, got: usize },
    #[error("{n} atoms is too many to enumerate elements")]
    TooLarge { n: usize },
}

/// An element of a finite algebra: a set of atoms.
///
/// The element remembers how many atoms its algebra has, so that elements of
/// differently sized algebras are never mixed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    bits: AtomBits,
}

impl Element {
    pub fn empty(n: usize) -> Self {
        Element {
            bits: bitvec![u64, Lsb0; 0; n],
        }
    }

    pub fn full(n: usize) -> Self {
        Element {
            bits: bitvec![u64, Lsb0; 1; n],
        }
    }

    /// Builds an element from 0-based atom indices. Panics on out-of-range atoms.
    pub fn from_atoms<I: IntoIterator<Item = usize>>(n: usize, atoms: I) -> Self {
        let mut e = Element::empty(n);
        for a in atoms {
            e.bits.set(a, true);
        }
        e
    }

    /// Builds an element from 1-based atom indices.
    pub fn from_one_based(n: usize, atoms: &[usize]) -> Result<Self, AlgebraError> {
        let mut e = Element::empty(n);
        for &a in atoms {
            if a == 0 || a > n {
                return Err(AlgebraError::AtomOutOfRange { atom: a, n });
            }
            e.bits.set(a - 1, true);
        }
        Ok(e)
    }

    /// Element whose atom `i` is present iff bit `i` of `mask` is set.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        Element::from_atoms(n, (0..n).filter(|&i| mask >> i & 1 == 1))
    }

    /// The bitmask of this element, when it has at most 64 atoms.
    pub fn to_mask(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        Some(self.atoms().fold(0u64, |m, i| m | 1 << i))
    }

    /// Number of atoms of the owning algebra.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.bits[atom]
    }

    pub fn insert(&mut self, atom: usize) {
        self.bits.set(atom, true);
    }

    pub fn remove(&mut self, atom: usize) {
        self.bits.set(atom, false);
    }

    /// Present atoms, 0-based, ascending.
    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// Present atoms, 1-based, ascending.
    pub fn one_based(&self) -> Vec<usize> {
        self.atoms().map(|a| a + 1).collect()
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn is_full(&self) -> bool {
        self.bits.all()
    }

    pub fn union(&self, other: &Element) -> Element {
        let mut bits = self.bits.clone();
        bits |= &other.bits;
        Element { bits }
    }

    pub fn intersection(&self, other: &Element) -> Element {
        let mut bits = self.bits.clone();
        bits &= &other.bits;
        Element { bits }
    }

    pub fn difference(&self, other: &Element) -> Element {
        self.intersection(&other.complement())
    }

    pub fn complement(&self) -> Element {
        Element {
            bits: !self.bits.clone(),
        }
    }

    pub fn is_subset(&self, other: &Element) -> bool {
        self.atoms().all(|a| other.contains(a))
    }

    pub fn is_disjoint(&self, other: &Element) -> bool {
        self.atoms().all(|a| !other.contains(a))
    }

    /// Formats as a braced 1-based set, never abbreviating to `0`/`1`.
    pub fn set_string(&self) -> String {
        let parts: Vec<String> = self.one_based().iter().map(|a| a.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Numeric order on the bitmask (atom 1 is the least significant bit).
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            for i in (0..self.len()).rev() {
                match (self.bits[i], other.bits[i]) {
                    (true, false) => return Ordering::Greater,
                    (false, true) => return Ordering::Less,
                    _ => {}
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "0")
        } else if self.is_full() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.set_string())
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.set_string(), self.len())
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawElement {
            atoms: self.len(),
            members: self.one_based(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawElement::deserialize(d)?;
        Element::from_one_based(raw.atoms, &raw.members).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    atoms: usize,
    members: Vec<usize>,
}

/// The basic operations of the Boole-De Morgan signature plus star.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Join,
    Meet,
    Bneg,
    Dmneg,
    Star,
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Join | Op::Meet => 2,
            Op::Bneg | Op::Dmneg | Op::Star => 1,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Op::Join => "join",
            Op::Meet => "meet",
            Op::Bneg => "bneg",
            Op::Dmneg => "dmneg",
            Op::Star => "star",
        };
        f.write_str(s)
    }
}

/// A finite Boole-De Morgan algebra given by an involution on its atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    sigma: Vec<usize>,
}

impl FiniteAlgebra {
    /// Builds an algebra from a 1-based involution table.
    pub fn new(n: usize, sigma: &[usize]) -> Result<Self, AlgebraError> {
        if sigma.len() != n {
            return Err(AlgebraError::SigmaLength {
                expected: n,
                got: sigma.len(),
            });
        }
        for (i, &img) in sigma.iter().enumerate() {
            if img == 0 || img > n {
                return Err(AlgebraError::SigmaOutOfRange {
                    atom: i + 1,
                    image: img,
                    n,
                });
            }
        }
        Self::from_zero_based(sigma.iter().map(|&s| s - 1).collect())
    }

    /// Builds an algebra from a 0-based involution table.
    pub fn from_zero_based(sigma: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = sigma.len();
        if n == 0 {
            return Err(AlgebraError::NoAtoms);
        }
        for (i, &img) in sigma.iter().enumerate() {
            if img >= n {
                return Err(AlgebraError::SigmaOutOfRange {
                    atom: i + 1,
                    image: img + 1,
                    n,
                });
            }
            if sigma[img] != i {
                return Err(AlgebraError::NotInvolution {
                    atom: i + 1,
                    back: sigma[img] + 1,
                });
            }
        }
        Ok(FiniteAlgebra { sigma })
    }

    /// The two-element algebra `2`.
    pub fn two() -> Self {
        FiniteAlgebra { sigma: vec![0] }
    }

    /// The four-element algebra `4`: atoms `a = {1}` and `b = {2}` swapped by star.
    pub fn four() -> Self {
        FiniteAlgebra { sigma: vec![1, 0] }
    }

    /// The Boolean algebra on `n` atoms with the identity involution (`~x = x'`).
    pub fn boolean(n: usize) -> Result<Self, AlgebraError> {
        Self::from_zero_based((0..n).collect())
    }

    /// The direct power `4^m`.
    ///
    /// Atom `i` (for `i < m`) is the element whose `i`-th coordinate is `a` and
    /// all others `0`; atom `m + i` has `b` in coordinate `i`.
    pub fn four_power(m: usize) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::NoAtoms);
        }
        let sigma = (0..2 * m)
            .map(|i| if i < m { i + m } else { i - m })
            .collect();
        Ok(FiniteAlgebra { sigma })
    }

    /// `Some(m)` when this algebra is literally `four_power(m)`.
    pub fn as_four_power(&self) -> Option<usize> {
        let n = self.n();
        if !n.is_multiple_of(2) {
            return None;
        }
        let m = n / 2;
        (0..m).all(|i| self.sigma[i] == i + m).then_some(m)
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Image of a 0-based atom under the involution.
    pub fn sigma(&self, atom: usize) -> usize {
        self.sigma[atom]
    }

    pub fn sigma_table(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_one_based(&self) -> Vec<usize> {
        self.sigma.iter().map(|s| s + 1).collect()
    }

    pub fn is_fixed(&self, atom: usize) -> bool {
        self.sigma[atom] == atom
    }

    /// Orbits of the involution, each listed with its least atom first.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .filter(|&i| self.sigma[i] >= i)
            .map(|i| {
                if self.sigma[i] == i {
                    vec![i]
                } else {
                    vec![i, self.sigma[i]]
                }
            })
            .collect()
    }

    pub fn zero(&self) -> Element {
        Element::empty(self.n())
    }

    pub fn one(&self) -> Element {
        Element::full(self.n())
    }

    pub fn atom(&self, i: usize) -> Element {
        Element::from_atoms(self.n(), [i])
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.len() == self.n()
    }

    fn check(&self, x: &Element) -> Result<(), AlgebraError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::ForeignElement {
                expected: self.n(),
                got: x.len(),
            })
        }
    }

    pub fn join(&self, x: &Element, y: &Element) -> Element {
        x.union(y)
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Element {
        x.intersection(y)
    }

    pub fn bneg(&self, x: &Element) -> Element {
        x.complement()
    }

    /// Pointwise image under the involution.
    pub fn star(&self, x: &Element) -> Element {
        Element::from_atoms(self.n(), x.atoms().map(|a| self.sigma[a]))
    }

    pub fn dmneg(&self, x: &Element) -> Element {
        self.star(x).complement()
    }

    /// Applies `op` after checking arity and membership of every argument.
    pub fn apply(&self, op: Op, args: &[&Element]) -> Result<Element, AlgebraError> {
        if args.len() != op.arity() {
            return Err(AlgebraError::Arity {
                op,
                expected: op.arity(),
                got: args.len(),
            });
        }
        for x in args {
            self.check(x)?;
        }
        Ok(match op {
            Op::Join => self.join(args[0], args[1]),
            Op::Meet => self.meet(args[0], args[1]),
            Op::Bneg => self.bneg(args[0]),
            Op::Dmneg => self.dmneg(args[0]),
            Op::Star => self.star(args[0]),
        })
    }

    /// Whether `x` is fixed by star, i.e. is a union of orbits.
    pub fn is_star_invariant(&self, x: &Element) -> bool {
        x.atoms().all(|a| x.contains(self.sigma[a]))
    }

    /// All `2^n` elements in ascending bitmask order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Element>, AlgebraError> {
        let n = self.n();
        if n > 24 {
            return Err(AlgebraError::TooLarge { n });
        }
        Ok((0..1u64 << n).map(move |m| Element::from_mask(n, m)))
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAlgebra(sigma={:?})", self.sigma_one_based())
    }
}

impl Serialize for FiniteAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawAlgebra {
            atoms: self.n(),
            sigma: self.sigma_one_based(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawAlgebra::deserialize(d)?;
        FiniteAlgebra::new(raw.atoms, &raw.sigma).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    atoms: usize,
    sigma: Vec<usize>,
}

/// Every involution on `n` atoms, in lexicographic order of the 0-based table.
pub fn all_involutions(n: usize) -> Vec<FiniteAlgebra> {
    fn go(sigma: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = sigma.iter().position(Option::is_none) else {
            out.push(sigma.iter().map(|s| s.unwrap()).collect());
            return;
        };
        sigma[i] = Some(i);
        go(sigma, out);
        for j in i + 1..sigma.len() {
            if sigma[j].is_none() {
                sigma[i] = Some(j);
                sigma[j] = Some(i);
                go(sigma, out);
                sigma[j] = None;
            }
        }
        sigma[i] = None;
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut vec![None; n], &mut out);
    }
    out.sort();
    out.into_iter()
        .map(|s| FiniteAlgebra::from_zero_based(s).expect("generated involution"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_matches_the_diamond() {
        let four = FiniteAlgebra::new(2, &[2, 1]).unwrap();
        assert_eq!(four, FiniteAlgebra::four());
        let a = four.atom(0);
        let b = four.atom(1);
        assert_eq!(four.bneg(&a), b);
        assert_eq!(four.bneg(&b), a);
        assert_eq!(four.dmneg(&a), a);
        assert_eq!(four.dmneg(&b), b);
        assert_eq!(four.star(&a), b);
        assert_eq!(four.dmneg(&four.zero()), four.one());
        assert_eq!(four.bneg(&four.one()), four.zero());
    }

    #[test]
    fn two_is_boolean() {
        let two = FiniteAlgebra::new(1, &[1]).unwrap();
        assert_eq!(two, FiniteAlgebra::two());
        for x in two.elements().unwrap() {
            assert_eq!(two.dmneg(&x), two.bneg(&x));
        }
    }

    #[test]
    fn rejects_bad_involutions() {
        assert!(matches!(
            FiniteAlgebra::new(2, &[1, 1]),
            Err(AlgebraError::NotInvolution { .. })
        ));
        assert!(matches!(
            FiniteAlgebra::new(0, &[]),
            Err(AlgebraError::NoAtoms)
        ));
        assert!(matches!(
            FiniteAlgebra::new(3, &[2, 3, 1]),
            Err(AlgebraError::NotInvolution { .. })
        ));
        assert!(matches!(
            FiniteAlgebra::new(2, &[3, 1]),
            Err(AlgebraError::SigmaOutOfRange { .. })
        ));
        assert!(FiniteAlgebra::four_power(0).is_err());
    }

    #[test]
    fn apply_checks_arity_and_membership() {
        let four = FiniteAlgebra::four();
        let a = four.atom(0);
        assert_eq!(four.apply(Op::Dmneg, &[&a]).unwrap(), a);
        assert_eq!(four.apply(Op::Star, &[&a]).unwrap(), four.atom(1));
        assert!(matches!(
            four.apply(Op::Join, &[&a]),
            Err(AlgebraError::Arity { .. })
        ));
        let foreign = Element::empty(3);
        assert!(matches!(
            four.apply(Op::Meet, &[&a, &foreign]),
            Err(AlgebraError::ForeignElement { .. })
        ));
    }

    #[test]
    fn four_power_layout() {
        let p = FiniteAlgebra::four_power(2).unwrap();
        assert_eq!(p.sigma_one_based(), vec![3, 4, 1, 2]);
        assert_eq!(p.as_four_power(), Some(2));
        assert_eq!(FiniteAlgebra::four_power(1).unwrap(), FiniteAlgebra::four());
        // (b, 1, 0) in 4^3
        let p3 = FiniteAlgebra::four_power(3).unwrap();
        let x = Element::from_one_based(6, &[4, 2, 5]).unwrap();
        assert_eq!(x.one_based(), vec![2, 4, 5]);
        assert!(p3.contains(&x));
        assert_eq!(FiniteAlgebra::boolean(2).unwrap().as_four_power(), None);
    }

    #[test]
    fn laws_hold_exhaustively() {
        for n in 1..=4 {
            for alg in all_involutions(n) {
                let elems: Vec<_> = alg.elements().unwrap().collect();
                for x in &elems {
                    let xb = alg.dmneg(x);
                    assert_eq!(&alg.dmneg(&xb), x);
                    assert_eq!(alg.join(x, &alg.bneg(x)), alg.one());
                    assert_eq!(alg.meet(x, &alg.bneg(x)), alg.zero());
                    assert_eq!(alg.dmneg(&alg.bneg(x)), alg.bneg(&xb));
                    assert_eq!(alg.star(x), alg.bneg(&xb));
                    assert_eq!(&alg.star(&alg.star(x)), x);
                    for y in &elems {
                        assert_eq!(alg.dmneg(&alg.join(x, y)), alg.meet(&xb, &alg.dmneg(y)));
                        assert_eq!(alg.dmneg(&alg.meet(x, y)), alg.join(&xb, &alg.dmneg(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn involution_counts() {
        // telephone numbers
        let counts: Vec<usize> = (1..=6).map(|n| all_involutions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 10, 26, 76]);
    }

    #[test]
    fn element_order_is_numeric() {
        let a = Element::from_mask(3, 0b011);
        let b = Element::from_mask(3, 0b100);
        assert!(a < b);
        assert_eq!(b.to_mask(), Some(4));
        assert_eq!(a.to_string(), "{1,2}");
        assert_eq!(Element::full(3).to_string(), "1");
        assert_eq!(Element::empty(3).to_string(), "0");
    }
}
