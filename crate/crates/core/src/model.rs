//! Finite stages of the countable existentially closed model.
//!
//! A stage over `A` refines every atom of `A` into a fixed saturated cell: six
//! atoms in three swapped pairs for a fixed atom, four atoms for each atom of a
//! swapped pair. Such a cell admits every local zero pattern, so one stage
//! realizes every sigma-consistent triple over `A`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAlgebra};
use crate::refinement::{
    find_isomorphism_over_pinned, generated_subalgebra, AtomRefinement, RefinementError,
};
use crate::solver::{consistent_triples, triple_of_element, Caps, Pattern, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("stage {stage} needs {needed} atoms, limit is {limit}")]
    AtomsExceeded {
        stage: usize,
        needed: usize,
        limit: usize,
    },
    #[error("no element of the stage realizes {0}")]
    NoRealizer(String),
    #[error("an orbit spans {0} atoms, too many to search")]
    SearchTooLarge(usize),
    #[error(transparent)]
    Refinement(#[from] RefinementError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Atoms a stage over `alg` has.
pub fn stage_size(alg: &FiniteAlgebra) -> usize {
    (0..alg.n())
        .map(|i| if alg.is_fixed(i) { 6 } else { 4 })
        .sum()
}

/// One stage: an extension of the base realizing every consistent triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub embedding: AtomRefinement,
}

impl Stage {
    pub fn base(&self) -> &FiniteAlgebra {
        self.embedding.source()
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.embedding.target()
    }

    /// A realizer of a consistent triple over the base.
    ///
    /// Fixed atoms: each pair of the cell takes one of the kinds "first atom
    /// only", "both", "neither". Swapped atoms: each of the four positions takes
    /// one allowed pattern. Kinds are listed in order and the last one repeats.
    pub fn realizer(&self, t: &Triple) -> Option<Element> {
        let base = self.base();
        if t.algebra() != base || !crate::solver::is_sigma_consistent(t) {
            return None;
        }
        let m = self.algebra().n();
        let mut u = Element::empty(m);
        for i in 0..base.n() {
            let cell: Vec<usize> = self.embedding.cell(i).atoms().collect();
            if base.is_fixed(i) {
                let kinds: Vec<Pattern> = [Pattern::XBar, Pattern::XStar, Pattern::CoBar]
                    .into_iter()
                    .filter(|&g| t.allows(i, g))
                    .collect();
                for (k, pair) in cell.chunks(2).enumerate() {
                    match kinds[k.min(kinds.len() - 1)] {
                        Pattern::XBar => u.insert(pair[0]),
                        Pattern::XStar => {
                            u.insert(pair[0]);
                            u.insert(pair[1]);
                        }
                        _ => {}
                    }
                }
            } else if i < base.sigma(i) {
                let allowed: Vec<Pattern> = Pattern::ALL
                    .into_iter()
                    .filter(|&g| t.allows(i, g))
                    .collect();
                for (k, &q) in cell.iter().enumerate() {
                    let g = allowed[k.min(allowed.len() - 1)];
                    if g.in_x() {
                        u.insert(q);
                    }
                    // the partner atom carries the starred pattern
                    if g.star().in_x() {
                        u.insert(self.algebra().sigma(q));
                    }
                }
            }
        }
        Some(u)
    }

    /// Every consistent triple over the base with its realizer, in triple order.
    pub fn realizers(&self) -> Result<Vec<(Triple, Element)>, AlgebraError> {
        Ok(consistent_triples(self.base())?
            .into_iter()
            .map(|t| {
                let u = self.realizer(&t).expect("consistent triples are realized");
                (t, u)
            })
            .collect())
    }
}

/// Builds one stage over `alg`, failing if it exceeds `caps.max_atoms`.
pub fn ec_stage(alg: &FiniteAlgebra, caps: &Caps) -> Result<Stage, ModelError> {
    stage_at(alg, caps, 1)
}

fn stage_at(alg: &FiniteAlgebra, caps: &Caps, stage: usize) -> Result<Stage, ModelError> {
    let needed = stage_size(alg);
    if needed > caps.max_atoms {
        return Err(ModelError::AtomsExceeded {
            stage,
            needed,
            limit: caps.max_atoms,
        });
    }
    let n = alg.n();
    let mut offset = vec![0; n];
    let mut next = 0;
    for (i, off) in offset.iter_mut().enumerate() {
        *off = next;
        next += if alg.is_fixed(i) { 6 } else { 4 };
    }
    let mut sigma = vec![0; needed];
    let mut owner = vec![0; needed];
    for i in 0..n {
        let j = alg.sigma(i);
        if i == j {
            for k in (0..6).step_by(2) {
                sigma[offset[i] + k] = offset[i] + k + 1;
                sigma[offset[i] + k + 1] = offset[i] + k;
            }
            owner[offset[i]..offset[i] + 6].fill(i);
        } else {
            for k in 0..4 {
                sigma[offset[i] + k] = offset[j] + k;
            }
            owner[offset[i]..offset[i] + 4].fill(i);
        }
    }
    let target = FiniteAlgebra::from_zero_based(sigma)?;
    let embedding = AtomRefinement::from_owner(alg.clone(), target, &owner)?;
    Ok(Stage { embedding })
}

/// A chain `A0 -> A1 -> ...` of stages; only the refinements are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub base: FiniteAlgebra,
    pub stages: Vec<AtomRefinement>,
}

impl Chain {
    /// The embedding of the base into the last stage.
    pub fn composite(&self) -> AtomRefinement {
        self.stages
            .iter()
            .fold(AtomRefinement::identity(&self.base), |acc, r| {
                acc.compose(r).expect("consecutive stages compose")
            })
    }
}

/// Iterates [`ec_stage`] `depth` times.
pub fn build_chain(alg: &FiniteAlgebra, depth: usize, caps: &Caps) -> Result<Chain, ModelError> {
    let mut stages = Vec::with_capacity(depth);
    let mut current = alg.clone();
    for k in 1..=depth {
        let s = stage_at(&current, caps, k)?;
        current = s.algebra().clone();
        stages.push(s.embedding);
    }
    Ok(Chain {
        base: alg.clone(),
        stages,
    })
}

/// Outcome of matching an element of some extension inside a stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub u: Element,
    /// `A0 -> A0<v>`.
    pub left: AtomRefinement,
    /// `A0 -> A0<u>`.
    pub right: AtomRefinement,
    /// `v` and `u` as elements of `A0<v>` and `A0<u>`.
    pub pin: (Element, Element),
    /// Atom bijection from `A0<v>` to `A0<u>` over `A0` sending `v` to `u`.
    pub iso: Vec<usize>,
}

/// Largest number of stage atoms above one base orbit that is searched.
const MAX_ORBIT_SEARCH: usize = 20;

/// Finds the least `u` in the target of `r0` with the same triple over `A0`
/// as `v` has along `rv`, and the isomorphism `A0<v> = A0<u>` fixing `A0`.
pub fn find_matching_element(
    r0: &AtomRefinement,
    rv: &AtomRefinement,
    v: &Element,
) -> Result<Matching, ModelError> {
    if r0.source() != rv.source() {
        return Err(RefinementError::SourceMismatch.into());
    }
    let a0 = r0.source();
    let a = r0.target();
    let t = triple_of_element(rv, v);
    let mut u = Element::empty(a.n());
    for orbit in a0.orbits() {
        let atoms: Vec<usize> = orbit
            .iter()
            .flat_map(|&i| r0.cell(i).atoms().collect::<Vec<_>>())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        if atoms.len() > MAX_ORBIT_SEARCH {
            return Err(ModelError::SearchTooLarge(atoms.len()));
        }
        let want: Vec<[bool; 3]> = orbit
            .iter()
            .map(|&i| [0, 1, 2].map(|k| t.sets()[k].contains(i)))
            .collect();
        let found = (0..1u64 << atoms.len()).find(|&mask| {
            let mut present = vec![[false; 4]; orbit.len()];
            for &q in &atoms {
                let in_x = |p: usize| mask >> atoms.binary_search(&p).unwrap() & 1 == 1;
                let g = Pattern::classify(in_x(q), in_x(a.sigma(q)));
                let slot = orbit.iter().position(|&i| i == r0.owner(q)).unwrap();
                present[slot][g.index()] = true;
            }
            present
                .iter()
                .zip(&want)
                .all(|(p, w)| [!p[0], !p[1], !p[2]] == *w)
        });
        let mask = found.ok_or_else(|| ModelError::NoRealizer(t.to_string()))?;
        for (k, &q) in atoms.iter().enumerate() {
            if mask >> k & 1 == 1 {
                u.insert(q);
            }
        }
    }

    let (left, v_sub) = one_generated(rv, v)?;
    let (right, u_sub) = one_generated(r0, &u)?;
    let pin = (v_sub, u_sub);
    let iso = find_isomorphism_over_pinned(&left, &right, std::slice::from_ref(&pin))?
        .ok_or_else(|| ModelError::NoRealizer(t.to_string()))?;
    Ok(Matching {
        u,
        left,
        right,
        pin,
        iso,
    })
}

/// `A0 -> A0<w>` together with `w` as an element of `A0<w>`.
fn one_generated(r: &AtomRefinement, w: &Element) -> Result<(AtomRefinement, Element), ModelError> {
    let mut gens: Vec<Element> = (0..r.source().n()).map(|i| r.cell(i).clone()).collect();
    gens.push(w.clone());
    let (_, inc) = generated_subalgebra(r.target(), &gens)?;
    let factored = r.factor_through(&inc)?;
    let w_sub = inc.preimage(w).expect("generator lies in its subalgebra");
    Ok((factored, w_sub))
}
