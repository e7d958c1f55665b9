//! One saturated stage over a base realizes every type; matching an element of
//! an arbitrary extension inside it is the back-and-forth step.

use bdm::algebra::{Element, FiniteAlgebra};
use bdm::model::{build_chain, ec_stage, find_matching_element};
use bdm::refinement::AtomRefinement;
use bdm::solver::Caps;
use bdm::text::format_stage;

fn main() {
    let caps = Caps::default();
    let two = FiniteAlgebra::two();
    let stage = ec_stage(&two, &caps).unwrap();
    print!("{}", format_stage(&stage, &stage.realizers().unwrap()));

    // v = (a, 0) in 4 x 2, over 2
    let rv = AtomRefinement::from_owner(
        two.clone(),
        FiniteAlgebra::new(3, &[2, 1, 3]).unwrap(),
        &[0, 0, 0],
    )
    .unwrap();
    let v = Element::from_one_based(3, &[1]).unwrap();
    let m = find_matching_element(&stage.embedding, &rv, &v).unwrap();
    println!(
        "\nv = {v} matches u = {} in the stage; A0<v> -> A0<u> by {:?}",
        m.u, m.iso
    );

    match build_chain(&two, 2, &caps) {
        Ok(chain) => println!("chain of {} stages", chain.stages.len()),
        Err(e) => println!("two stages under the default cap: {e}"),
    }
    let roomy = Caps {
        max_atoms: 24,
        ..caps
    };
    let chain = build_chain(&two, 2, &roomy).unwrap();
    println!(
        "with 24 atoms allowed: {} atoms after 2 stages",
        chain.composite().target().n()
    );
}
