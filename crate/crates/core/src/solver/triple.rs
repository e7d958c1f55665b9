use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, Element, FiniteAlgebra};
use crate::logic::{Env, Formula, Term};
use crate::refinement::AtomRefinement;

/// The four candidate atoms of `A<x>` below a base atom `p`:
/// `p.x.~x`, `p.x.x*`, `p.x'.~x` and `p.x'.x*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    XBar,
    XStar,
    CoBar,
    CoStar,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::XBar,
        Pattern::XStar,
        Pattern::CoBar,
        Pattern::CoStar,
    ];

    /// The pattern of `q*` given the pattern of `q`.
    pub fn star(self) -> Pattern {
        match self {
            Pattern::XBar => Pattern::CoStar,
            Pattern::CoStar => Pattern::XBar,
            other => other,
        }
    }

    /// Pattern of a target atom from whether it and its star image lie in `x`.
    pub fn classify(in_x: bool, star_in_x: bool) -> Pattern {
        match (in_x, star_in_x) {
            (true, false) => Pattern::XBar,
            (true, true) => Pattern::XStar,
            (false, false) => Pattern::CoBar,
            (false, true) => Pattern::CoStar,
        }
    }

    /// Whether an atom with this pattern lies in `x`.
    pub fn in_x(self) -> bool {
        matches!(self, Pattern::XBar | Pattern::XStar)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Zero pattern of `x.~x`, `x.x*` and `x'.~x` against the atoms of a finite
/// algebra: `i` is in `I1` iff `p_i . x . ~x = 0`, and likewise for `I2`, `I3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Triple {
    algebra: FiniteAlgebra,
    sets: [Element; 3],
}

impl Triple {
    pub fn new(
        algebra: FiniteAlgebra,
        i1: Element,
        i2: Element,
        i3: Element,
    ) -> Result<Self, AlgebraError> {
        for s in [&i1, &i2, &i3] {
            if !algebra.contains(s) {
                return Err(AlgebraError::ForeignElement {
                    expected: algebra.n(),
                    got: s.len(),
                });
            }
        }
        Ok(Triple {
            algebra,
            sets: [i1, i2, i3],
        })
    }

    /// Builds a triple from 1-based index lists.
    pub fn from_one_based(
        algebra: &FiniteAlgebra,
        i1: &[usize],
        i2: &[usize],
        i3: &[usize],
    ) -> Result<Self, AlgebraError> {
        let n = algebra.n();
        Triple::new(
            algebra.clone(),
            Element::from_one_based(n, i1)?,
            Element::from_one_based(n, i2)?,
            Element::from_one_based(n, i3)?,
        )
    }

    pub fn from_masks(algebra: &FiniteAlgebra, m1: u64, m2: u64, m3: u64) -> Self {
        let n = algebra.n();
        Triple {
            algebra: algebra.clone(),
            sets: [
                Element::from_mask(n, m1),
                Element::from_mask(n, m2),
                Element::from_mask(n, m3),
            ],
        }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn i1(&self) -> &Element {
        &self.sets[0]
    }

    pub fn i2(&self) -> &Element {
        &self.sets[1]
    }

    pub fn i3(&self) -> &Element {
        &self.sets[2]
    }

    pub fn sets(&self) -> &[Element; 3] {
        &self.sets
    }

    /// Whether an element realizing this triple has an atom with pattern `g`
    /// below base atom `i`.
    pub fn allows(&self, i: usize, g: Pattern) -> bool {
        match g {
            Pattern::XBar => !self.i1().contains(i),
            Pattern::XStar => !self.i2().contains(i),
            Pattern::CoBar => !self.i3().contains(i),
            // p.x'.x* = 0 iff p*.x.~x = 0
            Pattern::CoStar => !self.i1().contains(self.algebra.sigma(i)),
        }
    }

    /// The formula `phi_(I1,I2,I3)(p, x)` where `p_i` is named by `atom_var(i)`.
    pub fn phi_formula(&self, atom_var: impl Fn(usize) -> String, x: &str) -> Formula {
        let xv = Term::var(x);
        let products = [
            Term::meet(xv.clone(), Term::dmneg(xv.clone())),
            Term::meet(xv.clone(), Term::star(xv.clone())),
            Term::meet(Term::bneg(xv.clone()), Term::dmneg(xv)),
        ];
        let mut parts = Vec::new();
        for (set, product) in self.sets.iter().zip(&products) {
            for i in 0..self.algebra.n() {
                let lhs = Term::meet(Term::var(&atom_var(i)), product.clone());
                parts.push(if set.contains(i) {
                    Formula::eq(lhs, Term::Zero)
                } else {
                    Formula::ne(lhs, Term::Zero)
                });
            }
        }
        Formula::and_all(parts)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "I1={} I2={} I3={}",
            self.i1().set_string(),
            self.i2().set_string(),
            self.i3().set_string()
        )
    }
}

impl Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawTriple {
            algebra: self.algebra.clone(),
            i1: self.i1().one_based(),
            i2: self.i2().one_based(),
            i3: self.i3().one_based(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawTriple::deserialize(d)?;
        Triple::from_one_based(&raw.algebra, &raw.i1, &raw.i2, &raw.i3)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    algebra: FiniteAlgebra,
    i1: Vec<usize>,
    i2: Vec<usize>,
    i3: Vec<usize>,
}

/// Environment binding `p1..pn` to the atoms of `alg`.
pub fn atom_env(alg: &FiniteAlgebra, prefix: &str) -> Env {
    (0..alg.n())
        .map(|i| (format!("{prefix}{}", i + 1), alg.atom(i)))
        .collect()
}

/// `sigma(I2) = I2`, `sigma(I3) = I3`, and no `i` with `i, sigma(i)` both in
/// `I1 & I2 & I3`.
pub fn is_sigma_consistent(t: &Triple) -> bool {
    let alg = t.algebra();
    if !alg.is_star_invariant(t.i2()) || !alg.is_star_invariant(t.i3()) {
        return false;
    }
    let all = t.i1().intersection(t.i2()).intersection(t.i3());
    all.is_disjoint(&alg.star(&all))
}

/// For every base atom, the set of patterns occurring below it in `u`.
pub(crate) fn present_patterns(r: &AtomRefinement, u: &Element) -> Vec<[bool; 4]> {
    let b = r.target();
    let mut present = vec![[false; 4]; r.source().n()];
    for q in 0..b.n() {
        let g = Pattern::classify(u.contains(q), u.contains(b.sigma(q)));
        present[r.owner(q)][g.index()] = true;
    }
    present
}

/// The triple of `u` over the source of `r`.
pub fn triple_of_element(r: &AtomRefinement, u: &Element) -> Triple {
    let a = r.source();
    let n = a.n();
    let present = present_patterns(r, u);
    let set = |g: Pattern| Element::from_atoms(n, (0..n).filter(|&i| !present[i][g.index()]));
    Triple {
        algebra: a.clone(),
        sets: [set(Pattern::XBar), set(Pattern::XStar), set(Pattern::CoBar)],
    }
}

/// Whether `u` satisfies `phi_t(p, x)`, the `p_i` being the images of the
/// source atoms.
pub fn holds_phi(r: &AtomRefinement, t: &Triple, u: &Element) -> bool {
    t.algebra() == r.source() && r.target().contains(u) && triple_of_element(r, u) == *t
}

/// Pushes a triple along a refinement: `J_k` is the union of the cells of `I_k`.
pub fn refine_triple(r: &AtomRefinement, t: &Triple) -> Triple {
    Triple {
        algebra: r.target().clone(),
        sets: [r.map(t.i1()), r.map(t.i2()), r.map(t.i3())],
    }
}

/// Largest algebra whose consistent triples are listed exhaustively.
pub const MAX_ENUMERATION_ATOMS: usize = 8;

/// Number of atoms of the abstract witness for `t`.
pub fn witness_size(t: &Triple) -> usize {
    (0..t.algebra().n())
        .map(|i| Pattern::ALL.iter().filter(|&&g| t.allows(i, g)).count())
        .sum()
}

/// Membership bits of I1, I2, I3 over an orbit's atoms, and the witness atoms
/// the choice costs.
type LocalOption = ([bool; 3], [bool; 3], usize);

/// Sigma-consistent triples whose abstract witness has at most `budget` atoms,
/// ordered lexicographically by `(I1, I2, I3)`, together with the number of
/// consistent triples left out by the budget.
pub fn consistent_triples_within(alg: &FiniteAlgebra, budget: usize) -> (Vec<Triple>, u128) {
    let n = alg.n();
    let mut local: LocalOptions = Vec::new();
    for orbit in alg.orbits() {
        let mut opts = Vec::new();
        if orbit.len() == 1 {
            for code in 0..7u8 {
                let (b1, b2, b3) = (code & 4 != 0, code & 2 != 0, code & 1 != 0);
                let size = 2 * usize::from(!b1) + usize::from(!b2) + usize::from(!b3);
                opts.push(([b1, false, false], [b2, b3, false], size));
            }
        } else {
            for code in 0..16u8 {
                let (b1i, b1j, b2, b3) =
                    (code & 8 != 0, code & 4 != 0, code & 2 != 0, code & 1 != 0);
                if b1i && b1j && b2 && b3 {
                    continue;
                }
                let size = 2 * [!b1i, !b1j, !b2, !b3].iter().filter(|&&b| b).count();
                opts.push(([b1i, b1j, false], [b2, b3, false], size));
            }
        }
        local.push((orbit, opts));
    }
    let total: u128 = local.iter().map(|(_, o)| o.len() as u128).product();
    let min_rest: Vec<usize> = {
        let mut v = vec![0; local.len() + 1];
        for k in (0..local.len()).rev() {
            v[k] = v[k + 1] + local[k].1.iter().map(|o| o.2).min().unwrap_or(0);
        }
        v
    };
    let mut out = Vec::new();
    let mut sets = [Element::empty(n), Element::empty(n), Element::empty(n)];
    collect(&local, &min_rest, 0, budget, &mut sets, &mut |sets| {
        out.push(Triple {
            algebra: alg.clone(),
            sets: sets.clone(),
        })
    });
    out.sort_by(|a, b| a.sets.cmp(&b.sets));
    let skipped = total - out.len() as u128;
    (out, skipped)
}

type LocalOptions = Vec<(Vec<usize>, Vec<LocalOption>)>;

fn collect(
    local: &LocalOptions,
    min_rest: &[usize],
    k: usize,
    budget: usize,
    sets: &mut [Element; 3],
    emit: &mut dyn FnMut(&[Element; 3]),
) {
    if k == local.len() {
        emit(sets);
        return;
    }
    let (orbit, opts) = &local[k];
    for (i1_bits, i23, size) in opts {
        if size + min_rest[k + 1] > budget {
            continue;
        }
        for (slot, &atom) in orbit.iter().enumerate() {
            set_bit(&mut sets[0], atom, i1_bits[slot]);
            set_bit(&mut sets[1], atom, i23[0]);
            set_bit(&mut sets[2], atom, i23[1]);
        }
        collect(local, min_rest, k + 1, budget - size, sets, emit);
    }
}

fn set_bit(e: &mut Element, atom: usize, on: bool) {
    if on {
        e.insert(atom);
    } else {
        e.remove(atom);
    }
}

/// Every sigma-consistent triple over `alg`, ordered lexicographically by the
/// bitmasks `(I1, I2, I3)`.
pub fn consistent_triples(alg: &FiniteAlgebra) -> Result<Vec<Triple>, AlgebraError> {
    let n = alg.n();
    if n > MAX_ENUMERATION_ATOMS {
        return Err(AlgebraError::TooLarge { n });
    }
    Ok(consistent_triples_within(alg, 4 * n).0)
}

/// Every triple over `alg`, consistent or not, in the same order.
pub fn all_triples(alg: &FiniteAlgebra) -> Result<impl Iterator<Item = Triple> + '_, AlgebraError> {
    let n = alg.n();
    if n > 6 {
        return Err(AlgebraError::TooLarge { n });
    }
    let size = 1u64 << n;
    Ok((0..size * size * size).map(move |code| {
        Triple::from_masks(alg, code / (size * size), code / size % size, code % size)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::all_involutions;

    fn four() -> FiniteAlgebra {
        FiniteAlgebra::four()
    }

    fn tr(alg: &FiniteAlgebra, i1: &[usize], i2: &[usize], i3: &[usize]) -> Triple {
        Triple::from_one_based(alg, i1, i2, i3).unwrap()
    }

    #[test]
    fn consistency_examples() {
        let f = four();
        assert!(is_sigma_consistent(&tr(&f, &[1, 2], &[1, 2], &[])));
        assert!(!is_sigma_consistent(&tr(&f, &[1, 2], &[1, 2], &[1, 2])));
        assert!(!is_sigma_consistent(&tr(&f, &[], &[1], &[])));
        assert!(!is_sigma_consistent(&tr(
            &FiniteAlgebra::two(),
            &[1],
            &[1],
            &[1]
        )));
    }

    #[test]
    fn consistent_counts_by_orbit() {
        // a fixed atom contributes 7 local choices, a swapped pair 15
        for n in 1..=3 {
            for alg in all_involutions(n) {
                let orbits = alg.orbits();
                let expected: usize = orbits
                    .iter()
                    .map(|o| if o.len() == 1 { 7 } else { 15 })
                    .product();
                assert_eq!(consistent_triples(&alg).unwrap().len(), expected);
                let brute = all_triples(&alg)
                    .unwrap()
                    .filter(is_sigma_consistent)
                    .count();
                assert_eq!(brute, expected);
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let f = four();
        let v = consistent_triples(&f).unwrap();
        let key = |t: &Triple| {
            (
                t.i1().to_mask().unwrap(),
                t.i2().to_mask().unwrap(),
                t.i3().to_mask().unwrap(),
            )
        };
        assert!(v.windows(2).all(|w| key(&w[0]) < key(&w[1])));
        assert_eq!(v[0], tr(&f, &[], &[], &[]));
    }

    #[test]
    fn triples_of_elements() {
        let two = FiniteAlgebra::two();
        let f = four();
        let r = AtomRefinement::new(two.clone(), f.clone(), vec![f.one()]).unwrap();
        assert_eq!(triple_of_element(&r, &f.atom(0)), tr(&two, &[], &[1], &[1]));

        let id = AtomRefinement::identity(&f);
        assert_eq!(
            triple_of_element(&id, &f.zero()),
            tr(&f, &[1, 2], &[1, 2], &[])
        );
        assert_eq!(
            triple_of_element(&id, &f.atom(0)),
            tr(&f, &[2], &[1, 2], &[1, 2])
        );
    }

    #[test]
    fn phi_examples() {
        let f = four();
        let id = AtomRefinement::identity(&f);
        assert!(holds_phi(&id, &tr(&f, &[1, 2], &[1, 2], &[]), &f.zero()));
        let t = tr(&f, &[1], &[1, 2], &[1, 2]);
        assert!(!holds_phi(&id, &t, &f.atom(0)));
        assert!(holds_phi(&id, &t, &f.atom(1)));
        // diagonal 4 -> 4^2, x = (1, 0) is atoms {1, 3}
        let p2 = FiniteAlgebra::four_power(2).unwrap();
        let diag = AtomRefinement::new(
            f.clone(),
            p2.clone(),
            vec![
                Element::from_one_based(4, &[1, 2]).unwrap(),
                Element::from_one_based(4, &[3, 4]).unwrap(),
            ],
        )
        .unwrap();
        let x = Element::from_one_based(4, &[1, 3]).unwrap();
        assert!(holds_phi(&diag, &tr(&f, &[1, 2], &[], &[]), &x));
    }

    #[test]
    fn refine_examples() {
        let two = FiniteAlgebra::two();
        let f = four();
        let r = AtomRefinement::new(two.clone(), f.clone(), vec![f.one()]).unwrap();
        assert_eq!(
            refine_triple(&r, &tr(&two, &[1], &[1], &[1])),
            tr(&f, &[1, 2], &[1, 2], &[1, 2])
        );
        assert_eq!(
            refine_triple(&r, &tr(&two, &[], &[1], &[1])),
            tr(&f, &[], &[1, 2], &[1, 2])
        );
        let t = tr(&f, &[2], &[], &[1, 2]);
        assert_eq!(refine_triple(&AtomRefinement::identity(&f), &t), t);
    }

    #[test]
    fn budget_counts_skipped() {
        let f = four();
        let (fits, skipped) = consistent_triples_within(&f, 4);
        assert_eq!(fits.len() as u128 + skipped, 15);
        assert!(fits.iter().all(|t| witness_size(t) <= 4));
        let all = consistent_triples(&f).unwrap();
        let small = all.iter().filter(|t| witness_size(t) <= 4).count();
        assert_eq!(small, fits.len());
    }

    #[test]
    fn display() {
        let t = tr(&four(), &[1, 2], &[1, 2], &[]);
        assert_eq!(t.to_string(), "I1={1,2} I2={1,2} I3={}");
    }
}
