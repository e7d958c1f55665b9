//! Building extensions that realize a sigma-consistent triple, two ways.

use bdm::algebra::FiniteAlgebra;
use bdm::solver::{consistent_triples, holds_phi, witness_abstract, witness_via_four_power};
use bdm::text::format_witness;

fn main() {
    let four = FiniteAlgebra::four();
    let triples = consistent_triples(&four).unwrap();
    println!("{} consistent triples over 4", triples.len());
    for t in &triples {
        let wa = witness_abstract(t).unwrap();
        let wp = witness_via_four_power(t).unwrap();
        assert!(
            holds_phi(&wa.embedding, t, &wa.element) && holds_phi(&wp.embedding, t, &wp.element)
        );
        println!(
            "{t}: abstract {} atoms, via 4^k {} atoms",
            wa.extension().n(),
            wp.extension().n()
        );
    }
    println!(
        "\n{}",
        format_witness(&witness_abstract(&triples[0]).unwrap())
    );
}
