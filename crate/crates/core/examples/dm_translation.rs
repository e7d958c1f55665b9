//! Eliminating the Boolean complement in favour of an existential.

use bdm::algebra::FiniteAlgebra;
use bdm::logic::{parse_formula, to_dm, Env, Signature};
use bdm::solver::{decide, Caps};

fn main() {
    let two = FiniteAlgebra::two();
    for s in [
        "exists x. x' = ~x",
        "exists x. (x* = x & x != 0)",
        "forall x. x . x' = 0",
    ] {
        let f = parse_formula(s, Signature::Bdm).unwrap();
        let g = to_dm(&f);
        let caps = Caps::default();
        println!("{f}\n  -> {g}");
        println!(
            "  decide: {} / {}",
            decide(&two, &f, &Env::new(), &caps).unwrap(),
            decide(&two, &g, &Env::new(), &caps).unwrap()
        );
    }
}
