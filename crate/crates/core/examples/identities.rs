//! Identity checking over the four-element algebra.

use bdm::logic::{four_name, parse_term, valid_identity, IdentityCheck, Signature};

fn main() {
    let cases = [
        ("~(x + y)", "~x . ~y", Signature::Dm),
        ("x + ~x", "1", Signature::Dm),
        ("~(x')", "(~x)'", Signature::Bdm),
        ("x**", "x", Signature::Bdm),
        ("x . x*", "0", Signature::Bdm),
    ];
    for (l, r, sig) in cases {
        let verdict = valid_identity(
            &parse_term(l, sig).unwrap(),
            &parse_term(r, sig).unwrap(),
            sig,
        )
        .unwrap();
        match verdict {
            IdentityCheck::Valid => println!("{l} = {r}: valid"),
            IdentityCheck::Invalid(env) => {
                let cex: Vec<String> = env
                    .iter()
                    .map(|(v, e)| format!("{v}={}", four_name(e)))
                    .collect();
                println!("{l} = {r}: fails at {}", cex.join(", "));
            }
        }
    }
}
