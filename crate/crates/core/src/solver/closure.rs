use serde::{Deserialize, Serialize};

use super::triple::{is_sigma_consistent, refine_triple, triple_of_element, Triple};
use super::witness::{witness_abstract, WitnessError};
use crate::algebra::{Element, FiniteAlgebra};
use crate::refinement::AtomRefinement;

/// The set `I` making `t` the triple of the base element `I` itself, if any.
///
/// Such triples have exactly one realization in every extension.
pub fn is_trivial(t: &Triple) -> Option<Element> {
    let alg = t.algebra();
    let i = t.i1().complement().union(&t.i2().complement());
    let si = alg.star(&i);
    let ok = *t.i1() == i.complement().union(&si)
        && *t.i2() == i.intersection(&si).complement()
        && *t.i3() == i.union(&si);
    ok.then_some(i)
}

/// Several distinct realizations of a non-trivial triple in one extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizations {
    pub embedding: AtomRefinement,
    pub elements: Vec<Element>,
}

impl Realizations {
    pub fn extension(&self) -> &FiniteAlgebra {
        self.embedding.target()
    }
}

/// Builds `k` distinct realizations of `t` by repeatedly realizing the pushed
/// forward triple over the previous extension.
pub fn realizations(t: &Triple, k: usize) -> Result<Realizations, WitnessError> {
    if !is_sigma_consistent(t) {
        return Err(WitnessError::Inconsistent(t.to_string()));
    }
    if is_trivial(t).is_some() {
        return Err(WitnessError::Trivial(t.to_string()));
    }
    if k == 0 {
        return Err(WitnessError::ZeroCount);
    }
    let mut embedding = AtomRefinement::identity(t.algebra());
    let mut elements: Vec<Element> = Vec::with_capacity(k);
    for _ in 0..k {
        let w = witness_abstract(&refine_triple(&embedding, t))?;
        elements = elements.iter().map(|x| w.embedding.map(x)).collect();
        elements.push(w.element);
        embedding = embedding.compose(&w.embedding)?;
    }
    Ok(Realizations {
        embedding,
        elements,
    })
}

/// Whether `w` is algebraic over the image of `r`, i.e. lies in it.
pub fn in_acl(r: &AtomRefinement, w: &Element) -> bool {
    is_trivial(&triple_of_element(r, w)).is_some()
}
