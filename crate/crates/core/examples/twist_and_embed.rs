//! Every finite algebra embeds into a power of 4 via x -> (x, ~x).

use bdm::algebra::FiniteAlgebra;
use bdm::refinement::{embed_into_four_power, twist_product};

fn main() {
    let alg = FiniteAlgebra::boolean(2).unwrap();
    let (power, r) = embed_into_four_power(&alg);
    println!("2x2 embeds into 4^{}", power.as_four_power().unwrap());
    for x in alg.elements().unwrap() {
        println!("  {:>6} -> {}", x.to_string(), r.map(&x));
    }

    let (_, t) = twist_product(&FiniteAlgebra::four());
    for (i, cell) in t.cells().iter().enumerate() {
        println!("twist of 4, cell {}: {}", i + 1, cell);
    }
}
