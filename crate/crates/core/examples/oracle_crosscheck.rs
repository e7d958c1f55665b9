//! Brute-force references checked against the solver.

use bdm::algebra::all_involutions;
use bdm::oracle::{brute_force_trivial, free_function_count, oracle_witness_search};
use bdm::solver::{all_triples, is_sigma_consistent, is_trivial};

fn main() {
    let mut checked = 0;
    for n in 1..=3 {
        for base in all_involutions(n) {
            for t in all_triples(&base).unwrap() {
                assert_eq!(is_trivial(&t), brute_force_trivial(&t), "{t}");
                checked += 1;
            }
        }
    }
    println!("triviality agrees on {checked} triples");

    for base in all_involutions(2) {
        let (mut found, mut consistent) = (0, 0);
        for t in all_triples(&base).unwrap() {
            if is_sigma_consistent(&t) {
                consistent += 1;
                found += usize::from(oracle_witness_search(&t, 16).is_some());
            }
        }
        println!(
            "sigma {:?}: oracle realized {found} of {consistent} consistent triples",
            base.sigma_one_based()
        );
    }

    for k in 0..=2 {
        println!(
            "free algebra on {k} generators: {} elements",
            free_function_count(k).unwrap()
        );
    }
}
