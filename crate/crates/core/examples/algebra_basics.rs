//! Finite Boole-De Morgan algebras as an involution on atoms.

use bdm::algebra::{Element, FiniteAlgebra};

fn main() {
    // 4: two atoms swapped by sigma, so a = {1} and b = {2}
    let four = FiniteAlgebra::four();
    let a = Element::from_one_based(2, &[1]).unwrap();
    println!("4 has sigma {:?}", four.sigma_one_based());
    println!(
        "a' = {}  ~a = {}  a* = {}",
        four.bneg(&a),
        four.dmneg(&a),
        four.star(&a)
    );

    let alg = FiniteAlgebra::new(3, &[2, 1, 3]).unwrap();
    println!("orbits of (2 1 3): {:?}", alg.orbits());
    for x in alg.elements().unwrap() {
        let fixed = if alg.dmneg(&x) == x {
            "  <- ~x = x"
        } else {
            ""
        };
        println!(
            "{:>8}  ~x = {:<8}{fixed}",
            x.to_string(),
            alg.dmneg(&x).to_string()
        );
    }
}
