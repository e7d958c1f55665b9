//! Embeddings between finite algebras, described by how target atoms refine
//! source atoms.
//!
//! An [`AtomRefinement`] from `A` (n atoms) to `B` (m atoms) assigns to every
//! atom `i` of `A` a nonempty cell `Q_i` of atoms of `B`. The cells partition
//! the atoms of `B` and are permuted by the involutions:
//! `Q_{sigma_A(i)} = sigma_B(Q_i)`. The induced map `x -> union of Q_i, i in x`
//! is then an injective homomorphism for join, meet, both negations and star.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefinementError {
    #[error("expected {expected} cells, one per source atom, got {got}")]
    CellCount { expected: usize, got: usize },
    #[error("cell {cell} is empty")]
    EmptyCell { cell: usize },
    #[error("target atom {atom} lies in more than one cell")]
    Overlap { atom: usize },
    #[error("target atom {atom} lies in no cell")]
    Uncovered { atom: usize },
    #[error("cells are not permuted by the involutions at source atom {atom}")]
    NotEquivariant { atom: usize },
    #[error("cell {cell} does not belong to the target algebra")]
    ForeignCell { cell: usize },
    #[error("refinements do not compose: target and source algebras differ")]
    Mismatch,
    #[error("refinements do not share a source algebra")]
    SourceMismatch,
    #[error("the first refinement's image is not contained in the second's")]
    NotFactorable,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An embedding of finite algebras given by a sigma-equivariant partition.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AtomRefinement {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    cells: Vec<Element>,
    owner: Vec<usize>,
}

impl AtomRefinement {
    /// Validates and builds a refinement from one target element per source atom.
    pub fn new(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        cells: Vec<Element>,
    ) -> Result<Self, RefinementError> {
        let (n, m) = (source.n(), target.n());
        if cells.len() != n {
            return Err(RefinementError::CellCount {
                expected: n,
                got: cells.len(),
            });
        }
        let mut owner = vec![usize::MAX; m];
        for (i, cell) in cells.iter().enumerate() {
            if !target.contains(cell) {
                return Err(RefinementError::ForeignCell { cell: i + 1 });
            }
            if cell.is_empty() {
                return Err(RefinementError::EmptyCell { cell: i + 1 });
            }
            for q in cell.atoms() {
                if owner[q] != usize::MAX {
                    return Err(RefinementError::Overlap { atom: q + 1 });
                }
                owner[q] = i;
            }
        }
        if let Some(q) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(RefinementError::Uncovered { atom: q + 1 });
        }
        for (i, cell) in cells.iter().enumerate() {
            if target.star(cell) != cells[source.sigma(i)] {
                return Err(RefinementError::NotEquivariant { atom: i + 1 });
            }
        }
        Ok(AtomRefinement {
            source,
            target,
            cells,
            owner,
        })
    }

    /// Builds a refinement from the source atom owning each target atom.
    pub fn from_owner(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        owner: &[usize],
    ) -> Result<Self, RefinementError> {
        let m = target.n();
        if owner.len() != m {
            return Err(RefinementError::CellCount {
                expected: m,
                got: owner.len(),
            });
        }
        let mut cells = vec![Element::empty(m); source.n()];
        for (q, &i) in owner.iter().enumerate() {
            if i >= source.n() {
                return Err(RefinementError::CellCount {
                    expected: source.n(),
                    got: i + 1,
                });
            }
            cells[i].insert(q);
        }
        Self::new(source, target, cells)
    }

    pub fn identity(alg: &FiniteAlgebra) -> Self {
        let n = alg.n();
        AtomRefinement {
            source: alg.clone(),
            target: alg.clone(),
            cells: (0..n).map(|i| alg.atom(i)).collect(),
            owner: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    /// Cell of a 0-based source atom.
    pub fn cell(&self, i: usize) -> &Element {
        &self.cells[i]
    }

    pub fn cells(&self) -> &[Element] {
        &self.cells
    }

    /// Source atom whose cell contains the 0-based target atom `q`.
    pub fn owner(&self, q: usize) -> usize {
        self.owner[q]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.owner.iter().enumerate().all(|(q, &i)| q == i)
    }

    /// The induced element map.
    pub fn map(&self, x: &Element) -> Element {
        debug_assert!(self.source.contains(x));
        Element::from_atoms(
            self.target.n(),
            (0..self.target.n()).filter(|&q| x.contains(self.owner[q])),
        )
    }

    /// The source element mapping to `w`, if `w` is in the image.
    pub fn preimage(&self, w: &Element) -> Option<Element> {
        let x = Element::from_atoms(
            self.source.n(),
            (0..self.source.n()).filter(|&i| !self.cells[i].is_disjoint(w)),
        );
        (self.map(&x) == *w).then_some(x)
    }

    pub fn image_contains(&self, w: &Element) -> bool {
        self.preimage(w).is_some()
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &AtomRefinement) -> Result<AtomRefinement, RefinementError> {
        if self.target != next.source {
            return Err(RefinementError::Mismatch);
        }
        let owner: Vec<usize> = (0..next.target.n())
            .map(|q| self.owner[next.owner[q]])
            .collect();
        let cells = self.cells.iter().map(|c| next.map(c)).collect();
        Ok(AtomRefinement {
            source: self.source.clone(),
            target: next.target.clone(),
            cells,
            owner,
        })
    }

    /// Given `self: A -> B` and `sub: S -> B` whose image contains the image of
    /// `self`, returns the refinement `A -> S` through which `self` factors.
    pub fn factor_through(&self, sub: &AtomRefinement) -> Result<AtomRefinement, RefinementError> {
        if self.target != sub.target {
            return Err(RefinementError::Mismatch);
        }
        let mut owner = Vec::with_capacity(sub.source.n());
        for cell in &sub.cells {
            let first = cell.atoms().next().ok_or(RefinementError::NotFactorable)?;
            let i = self.owner[first];
            if cell.atoms().any(|q| self.owner[q] != i) {
                return Err(RefinementError::NotFactorable);
            }
            owner.push(i);
        }
        AtomRefinement::from_owner(self.source.clone(), sub.source.clone(), &owner)
    }

    /// Renames target atoms: `perm[q]` is the new index of target atom `q`.
    pub fn relabel_target(
        &self,
        new_target: FiniteAlgebra,
        perm: &[usize],
    ) -> Result<AtomRefinement, RefinementError> {
        let mut owner = vec![0; perm.len()];
        for (q, &p) in perm.iter().enumerate() {
            owner[p] = self.owner[q];
        }
        AtomRefinement::from_owner(self.source.clone(), new_target, &owner)
    }
}

impl Serialize for AtomRefinement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawRefinement {
            source: self.source.clone(),
            target: self.target.clone(),
            cells: self.cells.iter().map(Element::one_based).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AtomRefinement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRefinement::deserialize(d)?;
        let m = raw.target.n();
        let cells = raw
            .cells
            .iter()
            .map(|c| Element::from_one_based(m, c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        AtomRefinement::new(raw.source, raw.target, cells).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawRefinement {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    cells: Vec<Vec<usize>>,
}

/// The twist product `L x L^op` of the underlying lattice with the embedding
/// `x -> (x, ~x)`.
///
/// Target atoms `0..n` are `(i,+)` and `n..2n` are `(i,-)`; the involution
/// swaps `(i,+)` with `(i,-)`. The cell of `i` is `{(i,+), (sigma(i),-)}`.
pub fn twist_product(alg: &FiniteAlgebra) -> (FiniteAlgebra, AtomRefinement) {
    let n = alg.n();
    let target = FiniteAlgebra::four_power(n).expect("n >= 1");
    let cells = (0..n)
        .map(|i| Element::from_atoms(2 * n, [i, n + alg.sigma(i)]))
        .collect();
    let r = AtomRefinement::new(alg.clone(), target.clone(), cells)
        .expect("twist cells are a valid refinement");
    (target, r)
}

/// Embeds `alg` into `4^n`.
///
/// The twist target already uses the `4^m` atom layout (`(i,+)` is the `a`
/// atom of coordinate `i`, `(i,-)` its `b` atom), so the reindexing step is
/// the identity.
pub fn embed_into_four_power(alg: &FiniteAlgebra) -> (FiniteAlgebra, AtomRefinement) {
    let (twist, r) = twist_product(alg);
    let n = alg.n();
    let power = FiniteAlgebra::four_power(n).expect("n >= 1");
    let reindex: Vec<usize> = (0..2 * n).collect();
    let r = r
        .relabel_target(power.clone(), &reindex)
        .expect("reindexing preserves validity");
    debug_assert_eq!(twist, power);
    (power, r)
}

/// The subalgebra generated by `elems` (together with 0 and 1), with its
/// embedding into `alg`.
///
/// Its atoms are the blocks of the partition of `alg`'s atoms induced by
/// `{v, v*}` for `v` in `elems`, ordered by least member.
pub fn generated_subalgebra(
    alg: &FiniteAlgebra,
    elems: &[Element],
) -> Result<(FiniteAlgebra, AtomRefinement), RefinementError> {
    for e in elems {
        if !alg.contains(e) {
            return Err(AlgebraError::ForeignElement {
                expected: alg.n(),
                got: e.len(),
            }
            .into());
        }
    }
    let mut gens: Vec<Element> = Vec::with_capacity(2 * elems.len());
    for e in elems {
        gens.push(e.clone());
        gens.push(alg.star(e));
    }
    let m = alg.n();
    let mut block_of: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    let mut owner = Vec::with_capacity(m);
    for q in 0..m {
        let sig: Vec<bool> = gens.iter().map(|g| g.contains(q)).collect();
        let next = block_of.len();
        owner.push(*block_of.entry(sig).or_insert(next));
    }
    let k = block_of.len();
    let mut first = vec![usize::MAX; k];
    for (q, &b) in owner.iter().enumerate() {
        if first[b] == usize::MAX {
            first[b] = q;
        }
    }
    let sigma: Vec<usize> = (0..k).map(|b| owner[alg.sigma(first[b])]).collect();
    let sub = FiniteAlgebra::from_zero_based(sigma)?;
    let r = AtomRefinement::from_owner(sub.clone(), alg.clone(), &owner)?;
    Ok((sub, r))
}

/// Result of amalgamating two refinements over a common source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amalgam {
    pub algebra: FiniteAlgebra,
    pub left: AtomRefinement,
    pub right: AtomRefinement,
}

/// The fibered product of `r1: A -> B1` and `r2: A -> B2`.
///
/// Atoms of the amalgam are pairs `(q, r)` with `q` and `r` over the same
/// source atom, in lexicographic order; the involution acts componentwise.
pub fn amalgamate(r1: &AtomRefinement, r2: &AtomRefinement) -> Result<Amalgam, RefinementError> {
    if r1.source != r2.source {
        return Err(RefinementError::SourceMismatch);
    }
    let mut pairs = Vec::new();
    for q in 0..r1.target.n() {
        for r in r2.cells[r1.owner[q]].atoms() {
            pairs.push((q, r));
        }
    }
    let index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let sigma: Vec<usize> = pairs
        .iter()
        .map(|&(q, r)| index[&(r1.target.sigma(q), r2.target.sigma(r))])
        .collect();
    let algebra = FiniteAlgebra::from_zero_based(sigma)?;
    let left_owner: Vec<usize> = pairs.iter().map(|&(q, _)| q).collect();
    let right_owner: Vec<usize> = pairs.iter().map(|&(_, r)| r).collect();
    let left = AtomRefinement::from_owner(r1.target.clone(), algebra.clone(), &left_owner)?;
    let right = AtomRefinement::from_owner(r2.target.clone(), algebra.clone(), &right_owner)?;
    Ok(Amalgam {
        algebra,
        left,
        right,
    })
}

/// Looks for an isomorphism between the targets of `r1` and `r2` that fixes the
/// common source. Returns the lexicographically least atom bijection.
pub fn find_isomorphism_over(
    r1: &AtomRefinement,
    r2: &AtomRefinement,
) -> Result<Option<Vec<usize>>, RefinementError> {
    find_isomorphism_over_pinned(r1, r2, &[])
}

/// As [`find_isomorphism_over`], additionally requiring that for every pair
/// `(v, u)` in `pins` the bijection maps the element `v` onto `u`.
pub fn find_isomorphism_over_pinned(
    r1: &AtomRefinement,
    r2: &AtomRefinement,
    pins: &[(Element, Element)],
) -> Result<Option<Vec<usize>>, RefinementError> {
    if r1.source != r2.source {
        return Err(RefinementError::SourceMismatch);
    }
    let (b1, b2) = (&r1.target, &r2.target);
    for (v, u) in pins {
        if !b1.contains(v) || !b2.contains(u) {
            return Err(RefinementError::Mismatch);
        }
    }
    if b1.n() != b2.n() {
        return Ok(None);
    }
    let sig1 = |q: usize| -> Vec<bool> { pins.iter().map(|(v, _)| v.contains(q)).collect() };
    let sig2 = |q: usize| -> Vec<bool> { pins.iter().map(|(_, u)| u.contains(q)).collect() };

    // Orbit signatures must agree as multisets before any search.
    let orbit_key = |r: &AtomRefinement, sig: &dyn Fn(usize) -> Vec<bool>, q: usize| {
        let t = &r.target;
        let here = (r.owner[q], sig(q));
        if t.is_fixed(q) {
            (here, None)
        } else {
            let there = (r.owner[t.sigma(q)], sig(t.sigma(q)));
            if here <= there {
                (here, Some(there))
            } else {
                (there, Some(here))
            }
        }
    };
    let mut census: BTreeMap<_, isize> = BTreeMap::new();
    for orbit in b1.orbits() {
        *census.entry(orbit_key(r1, &sig1, orbit[0])).or_default() += 1;
    }
    for orbit in b2.orbits() {
        *census.entry(orbit_key(r2, &sig2, orbit[0])).or_default() -= 1;
    }
    if census.values().any(|&c| c != 0) {
        return Ok(None);
    }

    let m = b1.n();
    let sigs1: Vec<Vec<bool>> = (0..m).map(sig1).collect();
    let sigs2: Vec<Vec<bool>> = (0..m).map(sig2).collect();
    let mut assign: Vec<Option<usize>> = vec![None; m];
    let mut used = vec![false; m];

    fn dfs(
        r1: &AtomRefinement,
        r2: &AtomRefinement,
        sigs1: &[Vec<bool>],
        sigs2: &[Vec<bool>],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(q) = assign.iter().position(Option::is_none) else {
            return true;
        };
        let (b1, b2) = (&r1.target, &r2.target);
        let sq = b1.sigma(q);
        let candidates: Vec<usize> = r2.cells[r1.owner[q]].atoms().collect();
        for c in candidates {
            if used[c] || b2.is_fixed(c) != b1.is_fixed(q) || sigs1[q] != sigs2[c] {
                continue;
            }
            let sc = b2.sigma(c);
            if sigs1[sq] != sigs2[sc] {
                continue;
            }
            assign[q] = Some(c);
            assign[sq] = Some(sc);
            used[c] = true;
            used[sc] = true;
            if dfs(r1, r2, sigs1, sigs2, assign, used) {
                return true;
            }
            assign[q] = None;
            assign[sq] = None;
            used[c] = false;
            used[sc] = false;
        }
        false
    }

    if dfs(r1, r2, &sigs1, &sigs2, &mut assign, &mut used) {
        Ok(Some(assign.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

/// Checks that an atom bijection is an isomorphism over the common source that
/// maps each pinned `v` onto `u`.
pub fn is_isomorphism_over(
    r1: &AtomRefinement,
    r2: &AtomRefinement,
    map: &[usize],
    pins: &[(Element, Element)],
) -> bool {
    let (b1, b2) = (&r1.target, &r2.target);
    if map.len() != b1.n() || b1.n() != b2.n() || r1.source != r2.source {
        return false;
    }
    let mut seen = vec![false; b2.n()];
    for (q, &c) in map.iter().enumerate() {
        if c >= b2.n() || seen[c] {
            return false;
        }
        seen[c] = true;
        if r1.owner[q] != r2.owner[c] || map[b1.sigma(q)] != b2.sigma(c) {
            return false;
        }
    }
    pins.iter()
        .all(|(v, u)| Element::from_atoms(b2.n(), v.atoms().map(|q| map[q])) == *u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::all_involutions;

    fn set(n: usize, atoms: &[usize]) -> Element {
        Element::from_one_based(n, atoms).unwrap()
    }

    /// Exhaustive homomorphism and injectivity check of the element map.
    fn assert_embedding(r: &AtomRefinement) {
        let (a, b) = (r.source(), r.target());
        let elems: Vec<_> = a.elements().unwrap().collect();
        let mut images = std::collections::HashSet::new();
        assert_eq!(r.map(&a.zero()), b.zero());
        assert_eq!(r.map(&a.one()), b.one());
        for x in &elems {
            let ex = r.map(x);
            assert!(images.insert(ex.clone()), "not injective");
            assert_eq!(r.map(&a.bneg(x)), b.bneg(&ex));
            assert_eq!(r.map(&a.dmneg(x)), b.dmneg(&ex));
            assert_eq!(r.map(&a.star(x)), b.star(&ex));
            for y in &elems {
                let ey = r.map(y);
                assert_eq!(r.map(&a.join(x, y)), b.join(&ex, &ey));
                assert_eq!(r.map(&a.meet(x, y)), b.meet(&ex, &ey));
            }
        }
    }

    #[test]
    fn validation_errors() {
        let two = FiniteAlgebra::two();
        let four = FiniteAlgebra::four();
        assert!(matches!(
            AtomRefinement::new(two.clone(), four.clone(), vec![set(2, &[1])]),
            Err(RefinementError::Uncovered { .. })
        ));
        assert!(matches!(
            AtomRefinement::new(
                four.clone(),
                four.clone(),
                vec![set(2, &[1]), set(2, &[1, 2])]
            ),
            Err(RefinementError::Overlap { .. })
        ));
        assert!(matches!(
            AtomRefinement::new(
                four.clone(),
                four.clone(),
                vec![set(2, &[]), set(2, &[1, 2])]
            ),
            Err(RefinementError::EmptyCell { .. })
        ));
        let bool2 = FiniteAlgebra::boolean(2).unwrap();
        // a swapped pair of atoms cannot land on two fixed atoms
        assert!(matches!(
            AtomRefinement::new(four.clone(), bool2, vec![set(2, &[1]), set(2, &[2])]),
            Err(RefinementError::NotEquivariant { .. })
        ));
    }

    #[test]
    fn twist_of_two_is_four() {
        let (t, r) = twist_product(&FiniteAlgebra::two());
        assert_eq!(t, FiniteAlgebra::four());
        assert_eq!(r.cell(0), &set(2, &[1, 2]));
        assert_eq!(r.map(&Element::empty(1)), Element::empty(2));
        assert_embedding(&r);
    }

    #[test]
    fn twist_of_four() {
        let (t, r) = twist_product(&FiniteAlgebra::four());
        assert_eq!(t.n(), 4);
        // (1,+),(2,-) and (2,+),(1,-)
        assert_eq!(r.cell(0), &set(4, &[1, 4]));
        assert_eq!(r.cell(1), &set(4, &[2, 3]));
        assert_embedding(&r);
    }

    #[test]
    fn twist_of_boolean_three() {
        let b3 = FiniteAlgebra::boolean(3).unwrap();
        let (t, r) = twist_product(&b3);
        assert_eq!(t.n(), 6);
        assert_eq!(t.orbits().len(), 3);
        assert!(t.orbits().iter().all(|o| o.len() == 2));
        assert_embedding(&r);
        // the twist map is x -> (x, ~x): first coordinate x, second ~x
        for x in b3.elements().unwrap() {
            let ex = r.map(&x);
            let first: Vec<usize> = ex.atoms().filter(|&q| q < 3).collect();
            assert_eq!(first, x.atoms().collect::<Vec<_>>());
        }
    }

    #[test]
    fn embeddings_into_four_powers() {
        let (p, r) = embed_into_four_power(&FiniteAlgebra::two());
        assert_eq!(p, FiniteAlgebra::four());
        assert_eq!(r.cell(0), &set(2, &[1, 2]));

        let (p, r) = embed_into_four_power(&FiniteAlgebra::four());
        assert_eq!(p, FiniteAlgebra::four_power(2).unwrap());
        assert_eq!(r.cell(0), &set(4, &[1, 4]));
        assert_eq!(r.cell(1), &set(4, &[2, 3]));

        let mixed = FiniteAlgebra::new(3, &[2, 1, 3]).unwrap();
        let (p, r) = embed_into_four_power(&mixed);
        assert_eq!(p, FiniteAlgebra::four_power(3).unwrap());
        assert_embedding(&r);
        for n in 1..=3 {
            for alg in all_involutions(n) {
                assert_embedding(&embed_into_four_power(&alg).1);
            }
        }
    }

    #[test]
    fn generated_subalgebras() {
        let four = FiniteAlgebra::four();
        let (sub, r) = generated_subalgebra(&four, &[]).unwrap();
        assert_eq!(sub, FiniteAlgebra::two());
        assert_eq!(r.cell(0), &set(2, &[1, 2]));

        let (sub, r) = generated_subalgebra(&four, &[four.atom(0)]).unwrap();
        assert_eq!(sub, four);
        assert!(r.is_identity());

        // (a, a) in 4^2 generates a copy of 4 with atoms (a,a) and (b,b)
        let p2 = FiniteAlgebra::four_power(2).unwrap();
        let aa = set(4, &[1, 2]);
        let (sub, r) = generated_subalgebra(&p2, std::slice::from_ref(&aa)).unwrap();
        assert_eq!(sub, four);
        assert_eq!(r.cell(0), &aa);
        assert_eq!(r.cell(1), &set(4, &[3, 4]));
        assert_embedding(&r);

        for n in 1..=4 {
            for alg in all_involutions(n) {
                let atoms: Vec<_> = (0..n).map(|i| alg.atom(i)).collect();
                let (sub, r) = generated_subalgebra(&alg, &atoms).unwrap();
                assert_eq!(sub, alg);
                assert!(r.is_identity());
            }
        }
    }

    #[test]
    fn compose_and_factor() {
        let two = FiniteAlgebra::two();
        let four = FiniteAlgebra::four();
        let (_, r1) = embed_into_four_power(&two);
        let (_, r2) = embed_into_four_power(&four);
        let c = r1.compose(&r2).unwrap();
        assert_eq!(c.cell(0), &Element::full(4));
        assert_eq!(AtomRefinement::identity(&two).compose(&r1).unwrap(), r1);
        assert_eq!(r1.compose(&AtomRefinement::identity(&four)).unwrap(), r1);
        assert!(matches!(r2.compose(&r1), Err(RefinementError::Mismatch)));

        let f = c.factor_through(&r2).unwrap();
        assert_eq!(f, r1);
        assert!(matches!(
            r2.factor_through(&c),
            Err(RefinementError::NotFactorable)
        ));
    }

    #[test]
    fn amalgamation_over_two() {
        let two = FiniteAlgebra::two();
        let (_, r) = embed_into_four_power(&two);
        let am = amalgamate(&r, &r).unwrap();
        assert_eq!(am.algebra.n(), 4);
        assert_eq!(am.algebra.orbits().len(), 2);
        assert!(am.algebra.orbits().iter().all(|o| o.len() == 2));
        for x in two.elements().unwrap() {
            assert_eq!(am.left.map(&r.map(&x)), am.right.map(&r.map(&x)));
        }
        assert_embedding(&am.left);
        assert_embedding(&am.right);

        let bool2 = FiniteAlgebra::boolean(2).unwrap();
        let r_bool = AtomRefinement::new(two.clone(), bool2, vec![Element::full(2)]).unwrap();
        let am = amalgamate(&r, &r_bool).unwrap();
        assert_eq!(am.algebra.n(), 4);
        // (q, r) -> (sigma q, r)
        assert_eq!(am.algebra.sigma_one_based(), vec![3, 4, 1, 2]);
        assert_embedding(&am.left);
        assert_embedding(&am.right);
    }

    #[test]
    fn amalgam_over_full_component() {
        let four = FiniteAlgebra::four();
        let id = AtomRefinement::identity(&four);
        let (_, r2) = embed_into_four_power(&four);
        let am = amalgamate(&id, &r2).unwrap();
        assert_eq!(am.algebra.n(), r2.target().n());
        // every cell of the second leg is a single atom: it is an isomorphism
        assert!(am.right.cells().iter().all(|c| c.count() == 1));
        assert_embedding(&am.right);
        assert!(matches!(
            amalgamate(&id, &AtomRefinement::identity(&FiniteAlgebra::two())),
            Err(RefinementError::SourceMismatch)
        ));
    }

    #[test]
    fn isomorphisms() {
        let two = FiniteAlgebra::two();
        let four = FiniteAlgebra::four();
        let r = AtomRefinement::new(two.clone(), four.clone(), vec![Element::full(2)]).unwrap();
        let iso = find_isomorphism_over(&r, &r).unwrap().unwrap();
        assert_eq!(iso, vec![0, 1]);
        assert!(is_isomorphism_over(&r, &r, &iso, &[]));
        // pinning a -> b forces the swap
        let pins = [(four.atom(0), four.atom(1))];
        let iso = find_isomorphism_over_pinned(&r, &r, &pins)
            .unwrap()
            .unwrap();
        assert_eq!(iso, vec![1, 0]);
        assert!(is_isomorphism_over(&r, &r, &iso, &pins));

        // cells of sizes {1,3} versus {2,2} over the Boolean algebra on 2 atoms
        let bool2 = FiniteAlgebra::boolean(2).unwrap();
        let bool4 = FiniteAlgebra::boolean(4).unwrap();
        let r13 = AtomRefinement::new(
            bool2.clone(),
            bool4.clone(),
            vec![set(4, &[1]), set(4, &[2, 3, 4])],
        )
        .unwrap();
        let r22 =
            AtomRefinement::new(bool2, bool4, vec![set(4, &[1, 2]), set(4, &[3, 4])]).unwrap();
        assert_eq!(find_isomorphism_over(&r13, &r22).unwrap(), None);
    }
}
