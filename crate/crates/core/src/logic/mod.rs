//! Terms and formulas over the De Morgan and Boole-De Morgan signatures.

mod ast;
mod eval;
mod parser;
mod translate;

pub use ast::{Formula, Signature, Term};
pub use eval::{eval_qf, eval_term, four_name, valid_identity, Env, EvalError, IdentityCheck};
pub use parser::{parse, parse_formula, parse_term, Ast, Kind, ParseError};
pub use translate::{to_bdm, to_dm};
