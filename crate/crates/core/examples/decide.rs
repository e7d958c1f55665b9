//! Deciding sentences in the existentially closed models over a finite algebra
//! of parameters.

use bdm::algebra::{Element, FiniteAlgebra};
use bdm::logic::{parse_formula, Env, Signature};
use bdm::solver::{decide, Caps};

fn main() {
    let caps = Caps::default();
    let two = FiniteAlgebra::two();
    let sentences = [
        "exists x. (~x = x & x != 0 & x != 1)",
        "forall x. (x != 0 -> exists y. (y . x = y & y != 0 & y != x))",
        "exists x. (x . ~x = 0 & x != 0 & x != 1)",
        "forall x. x + ~x = 1",
    ];
    for s in sentences {
        let f = parse_formula(s, Signature::Bdm).unwrap();
        println!("{:>5}  {s}", decide(&two, &f, &Env::new(), &caps).unwrap());
    }

    // parameters: p = a in 4
    let four = FiniteAlgebra::four();
    let env: Env = [("p".to_string(), Element::from_one_based(2, &[1]).unwrap())]
        .into_iter()
        .collect();
    let f = parse_formula(
        "exists x. (x . p = x & x != 0 & x != p & ~x = x)",
        Signature::Bdm,
    )
    .unwrap();
    println!(
        "{:>5}  {f}   with p = a",
        decide(&four, &f, &env, &caps).unwrap()
    );

    let tight = Caps {
        max_atoms: 1,
        ..caps
    };
    let nested = parse_formula(
        "exists x. exists y. (x != 0 & x != 1 & y = x)",
        Signature::Bdm,
    )
    .unwrap();
    match decide(&two, &nested, &Env::new(), &tight) {
        Ok(v) => println!("{v}"),
        Err(e) => println!("with a 1-atom cap: {e}"),
    }
}
