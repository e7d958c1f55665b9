//! Algebraic closure: an element is algebraic over the base iff it lies in it.

use bdm::algebra::FiniteAlgebra;
use bdm::solver::{consistent_triples, in_acl, is_trivial, realizations};

fn main() {
    let four = FiniteAlgebra::four();
    for t in consistent_triples(&four).unwrap() {
        match is_trivial(&t) {
            Some(x) => println!("{t}: only {x}, already in 4"),
            None => {
                let rs = realizations(&t, 3).unwrap();
                let algebraic = rs.elements.iter().any(|e| in_acl(&rs.embedding, e));
                println!(
                    "{t}: 3 distinct realizers in {} atoms, algebraic: {algebraic}",
                    rs.extension().n()
                );
            }
        }
    }
}
