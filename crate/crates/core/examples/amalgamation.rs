//! Amalgamating two extensions of a common base.

use bdm::algebra::FiniteAlgebra;
use bdm::refinement::{amalgamate, find_isomorphism_over, AtomRefinement};

fn main() {
    let two = FiniteAlgebra::two();
    let into_four =
        AtomRefinement::from_owner(two.clone(), FiniteAlgebra::four(), &[0, 0]).unwrap();
    let into_boolean =
        AtomRefinement::from_owner(two, FiniteAlgebra::boolean(2).unwrap(), &[0, 0]).unwrap();

    let am = amalgamate(&into_four, &into_boolean).unwrap();
    println!(
        "amalgam of 4 and 2x2 over 2: sigma {:?}",
        am.algebra.sigma_one_based()
    );
    println!(
        "4 -> C cells: {:?}",
        am.left
            .cells()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );
    println!(
        "2x2 -> C cells: {:?}",
        am.right
            .cells()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );

    let same = find_isomorphism_over(&into_four, &into_four).unwrap();
    let different = find_isomorphism_over(&into_four, &into_boolean).unwrap();
    println!("4 = 4 over 2: {same:?}; 4 = 2x2 over 2: {different:?}");
}
