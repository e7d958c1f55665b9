//! The `bdm` command line.
//!
//! Exit codes: 0 true or success, 1 false or absent, 2 usage or parse error,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Element, FiniteAlgebra};
use crate::logic::{
    four_name, parse_formula, parse_term, to_bdm, to_dm, valid_identity, Env, Formula,
    IdentityCheck, Signature,
};
use crate::model::{build_chain, ec_stage, ModelError};
use crate::oracle::{
    all_realizations_in, brute_force_trivial, free_function_count, oracle_witness_search,
};
use crate::refinement::{amalgamate, AtomRefinement};
use crate::solver::{
    decide, in_acl, is_sigma_consistent, is_trivial, realizations, triple_of_element,
    witness_abstract, witness_via_four_power, Caps, DecideError, Triple, WitnessError,
    MAX_ENUMERATION_ATOMS,
};
use crate::text::{
    format_algebra, format_refinement, format_stage, format_witness, parse_algebra, parse_element,
    parse_refinement, parse_triple,
};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bdm",
    version,
    about = "Finite Boole-De Morgan algebras and their existentially closed theory"
)]
struct Cli {
    /// Algebra file (`atoms <n>` / `sigma ...`); defaults to the two-element algebra.
    #[arg(long, global = true, value_name = "FILE")]
    algebra: Option<PathBuf>,
    /// Largest intermediate algebra, in atoms.
    #[arg(long, global = true, default_value_t = 12, value_name = "N")]
    max_atoms: usize,
    /// Largest quantifier depth accepted by `decide`.
    #[arg(long, global = true, default_value_t = 4, value_name = "N")]
    max_depth: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Via {
    Abstract,
    Power4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Dm,
    Bdm,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether `LHS = RHS` is an identity of all Boole-De Morgan algebras.
    Check {
        lhs: String,
        rhs: String,
        /// Restrict terms to the De Morgan signature.
        #[arg(long)]
        dm: bool,
    },
    /// Is the triple sigma-consistent?
    Consistent { triple: String },
    /// Build an extension with an element realizing the triple.
    Witness {
        triple: String,
        #[arg(long, value_enum, default_value = "abstract")]
        via: Via,
    },
    /// Decide a formula in the existentially closed extensions of the algebra.
    Decide {
        formula: String,
        /// Parse in the De Morgan signature.
        #[arg(long)]
        dm: bool,
        /// Bind a free variable, e.g. `--let p={1}`.
        #[arg(long = "let", value_name = "VAR=ELEMENT")]
        bindings: Vec<String>,
    },
    /// Triple of an element over the base of a refinement (or over the algebra itself).
    TypeOf {
        element: String,
        #[arg(long, value_name = "FILE")]
        refinement: Option<PathBuf>,
    },
    /// Is the triple realized by an element of the base itself?
    Trivial { triple: String },
    /// Build several distinct realizations of a non-trivial triple.
    Realize {
        triple: String,
        #[arg(long, default_value_t = 2)]
        count: usize,
    },
    /// Is the element in the algebraic closure of the refinement's source?
    Acl {
        element: String,
        #[arg(long, value_name = "FILE")]
        refinement: PathBuf,
    },
    /// Are two formulas equivalent in every existentially closed model over the algebra?
    Equiv {
        left: String,
        right: String,
        #[arg(long)]
        dm: bool,
    },
    /// Move a formula between the De Morgan and Boole-De Morgan signatures.
    Translate {
        formula: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Amalgamate two refinements with a common source.
    Amalgamate { left: PathBuf, right: PathBuf },
    /// Build finite stages of the existentially closed model.
    ExtendStage {
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Every element realizing the triple, by exhaustive scan.
    Realizations {
        triple: String,
        /// Scan the target of this refinement instead of the algebra itself.
        #[arg(long, value_name = "FILE")]
        refinement: Option<PathBuf>,
    },
    /// Search powers of 4 for a realizer, up to `--max-atoms`.
    Witness { triple: String },
    /// Scan all subsets for the triviality equalities.
    Trivial { triple: String },
    /// Size of the free algebra on k generators (k <= 2).
    FreeCount { k: usize },
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn cap(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_CAP,
        message: message.to_string(),
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        if e.is_cap() {
            cap(e)
        } else {
            usage(e)
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::AtomsExceeded { .. } | ModelError::SearchTooLarge(_) => cap(e),
            other => usage(other),
        }
    }
}

/// Result text and exit code of a successful command.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        Outcome {
            code,
            text: text.into(),
            json,
        }
    }

    fn truth(b: bool) -> Self {
        Outcome::new(
            if b { EXIT_TRUE } else { EXIT_FALSE },
            b.to_string(),
            json!(b),
        )
    }
}

/// Runs the command line; writes results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_TRUE
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json values serialize")
                );
            } else {
                let _ = write!(out, "{}", o.text);
                if !o.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_algebra(cli: &Cli) -> Result<FiniteAlgebra, Failure> {
    match &cli.algebra {
        None => Ok(FiniteAlgebra::two()),
        Some(p) => parse_algebra(&read(p)?)
            .map(|a| a.algebra)
            .map_err(|e| usage(format!("{}: {e}", p.display()))),
    }
}

fn load_refinement(path: &Path) -> Result<AtomRefinement, Failure> {
    parse_refinement(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn triple_arg(alg: &FiniteAlgebra, text: &str) -> Result<Triple, Failure> {
    parse_triple(alg, text).map_err(|e| usage(e.message))
}

fn element_arg(n: usize, text: &str) -> Result<Element, Failure> {
    parse_element(n, text).map_err(|e| usage(e.message))
}

fn formula_arg(text: &str, dm: bool) -> Result<Formula, Failure> {
    let sig = if dm { Signature::Dm } else { Signature::Bdm };
    let f = parse_formula(text, sig).map_err(usage)?;
    if dm {
        to_bdm(&f).map_err(usage)
    } else {
        Ok(f)
    }
}

fn caps(cli: &Cli) -> Caps {
    Caps {
        max_atoms: cli.max_atoms,
        max_depth: cli.max_depth,
    }
}

fn witness_failure(e: WitnessError) -> Failure {
    match e {
        WitnessError::Inconsistent(_) | WitnessError::Trivial(_) => Failure {
            code: EXIT_FALSE,
            message: e.to_string(),
        },
        other => usage(other),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library values serialize")
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Check { lhs, rhs, dm } => {
            let sig = if *dm { Signature::Dm } else { Signature::Bdm };
            let l = parse_term(lhs, sig).map_err(usage)?;
            let r = parse_term(rhs, sig).map_err(usage)?;
            Ok(match valid_identity(&l, &r, sig).map_err(usage)? {
                IdentityCheck::Valid => Outcome::new(EXIT_TRUE, "valid", json!({ "valid": true })),
                IdentityCheck::Invalid(env) => {
                    let names: Vec<(String, &str)> =
                        env.iter().map(|(v, x)| (v.clone(), four_name(x))).collect();
                    let shown: Vec<String> =
                        names.iter().map(|(v, x)| format!("{v}={x}")).collect();
                    let map: serde_json::Map<String, Value> =
                        names.iter().map(|(v, x)| (v.clone(), json!(x))).collect();
                    Outcome::new(
                        EXIT_FALSE,
                        format!("invalid\ncounterexample: {}", shown.join(" ")),
                        json!({ "valid": false, "counterexample": map }),
                    )
                }
            })
        }
        Command::Consistent { triple } => {
            let alg = load_algebra(cli)?;
            Ok(Outcome::truth(is_sigma_consistent(&triple_arg(
                &alg, triple,
            )?)))
        }
        Command::Witness { triple, via } => {
            let alg = load_algebra(cli)?;
            let t = triple_arg(&alg, triple)?;
            let w = match via {
                Via::Abstract => witness_abstract(&t),
                Via::Power4 => witness_via_four_power(&t),
            }
            .map_err(witness_failure)?;
            Ok(Outcome::new(EXIT_TRUE, format_witness(&w), to_json(&w)))
        }
        Command::Decide {
            formula,
            dm,
            bindings,
        } => {
            let alg = load_algebra(cli)?;
            let f = formula_arg(formula, *dm)?;
            let mut env = Env::new();
            for b in bindings {
                let (v, x) = b
                    .split_once('=')
                    .ok_or_else(|| usage(format!("expected VAR=ELEMENT, found `{b}`")))?;
                env.insert(v.trim().to_string(), element_arg(alg.n(), x)?);
            }
            Ok(Outcome::truth(decide(&alg, &f, &env, &caps(cli))?))
        }
        Command::TypeOf {
            element,
            refinement,
        } => {
            let r = match refinement {
                Some(p) => load_refinement(p)?,
                None => AtomRefinement::identity(&load_algebra(cli)?),
            };
            let u = element_arg(r.target().n(), element)?;
            let t = triple_of_element(&r, &u);
            Ok(Outcome::new(EXIT_TRUE, t.to_string(), to_json(&t)))
        }
        Command::Trivial { triple } => {
            let alg = load_algebra(cli)?;
            Ok(trivial_outcome(is_trivial(&triple_arg(&alg, triple)?)))
        }
        Command::Realize { triple, count } => {
            let alg = load_algebra(cli)?;
            let r = realizations(&triple_arg(&alg, triple)?, *count).map_err(witness_failure)?;
            let mut text = String::from("extension:\n");
            text += &format_algebra(r.extension(), None);
            text += "refinement:\n";
            for (i, cell) in r.embedding.cells().iter().enumerate() {
                text += &format!("cell {}: {}\n", i + 1, cell.set_string());
            }
            for (k, x) in r.elements.iter().enumerate() {
                text += &format!("element {}: {x}\n", k + 1);
            }
            Ok(Outcome::new(EXIT_TRUE, text, to_json(&r)))
        }
        Command::Acl {
            element,
            refinement,
        } => {
            let r = load_refinement(refinement)?;
            let w = element_arg(r.target().n(), element)?;
            Ok(Outcome::truth(in_acl(&r, &w)))
        }
        Command::Equiv { left, right, dm } => {
            let alg = load_algebra(cli)?;
            let (l, r) = (formula_arg(left, *dm)?, formula_arg(right, *dm)?);
            let mut both = Formula::and(
                Formula::implies(l.clone(), r.clone()),
                Formula::implies(r, l),
            );
            let mut free = both.free_vars();
            while let Some(v) = free.pop_last() {
                both = Formula::forall(&v, both);
            }
            Ok(Outcome::truth(decide(
                &alg,
                &both,
                &Env::new(),
                &caps(cli),
            )?))
        }
        Command::Translate { formula, to } => {
            let g = match to {
                Target::Dm => to_dm(&formula_arg(formula, false)?),
                Target::Bdm => formula_arg(formula, true)?,
            };
            let s = g.to_string();
            Ok(Outcome::new(EXIT_TRUE, s.clone(), json!(s)))
        }
        Command::Amalgamate { left, right } => {
            let (r1, r2) = (load_refinement(left)?, load_refinement(right)?);
            let am = amalgamate(&r1, &r2).map_err(usage)?;
            let mut text = String::from("amalgam:\n");
            text += &format_algebra(&am.algebra, None);
            text += "left:\n";
            text += &format_refinement(&am.left);
            text += "right:\n";
            text += &format_refinement(&am.right);
            Ok(Outcome::new(EXIT_TRUE, text, to_json(&am)))
        }
        Command::ExtendStage { depth } => {
            let alg = load_algebra(cli)?;
            let caps = caps(cli);
            if *depth == 1 {
                let stage = ec_stage(&alg, &caps)?;
                let realizers = if alg.n() <= MAX_ENUMERATION_ATOMS {
                    stage.realizers().map_err(usage)?
                } else {
                    Vec::new()
                };
                let json = json!({
                    "stage": to_json(&stage),
                    "realizers": realizers
                        .iter()
                        .map(|(t, u)| json!({ "triple": to_json(t), "element": to_json(u) }))
                        .collect::<Vec<_>>(),
                });
                Ok(Outcome::new(
                    EXIT_TRUE,
                    format_stage(&stage, &realizers),
                    json,
                ))
            } else {
                let chain = build_chain(&alg, *depth, &caps)?;
                let mut text = String::new();
                for (k, r) in chain.stages.iter().enumerate() {
                    text += &format!("stage {}: atoms {}\n", k + 1, r.target().n());
                }
                text += &format_refinement(&chain.composite());
                Ok(Outcome::new(EXIT_TRUE, text, to_json(&chain)))
            }
        }
        Command::Oracle { command } => oracle(cli, command),
    }
}

fn trivial_outcome(found: Option<Element>) -> Outcome {
    match found {
        Some(i) => Outcome::new(
            EXIT_TRUE,
            format!("I={}\nrealizer: {i}", i.set_string()),
            json!({ "trivial": true, "I": i.one_based(), "realizer": to_json(&i) }),
        ),
        None => Outcome::new(EXIT_FALSE, "absent", json!({ "trivial": false })),
    }
}

fn oracle(cli: &Cli, command: &OracleCommand) -> Result<Outcome, Failure> {
    let alg = load_algebra(cli)?;
    match command {
        OracleCommand::Realizations { triple, refinement } => {
            let r = match refinement {
                Some(p) => load_refinement(p)?,
                None => AtomRefinement::identity(&alg),
            };
            let t = triple_arg(r.source(), triple)?;
            let found = all_realizations_in(&r, &t).map_err(cap)?;
            let text = if found.is_empty() {
                "none".to_string()
            } else {
                found.iter().map(|x| format!("{x}\n")).collect()
            };
            let code = if found.is_empty() {
                EXIT_FALSE
            } else {
                EXIT_TRUE
            };
            Ok(Outcome::new(code, text, to_json(&found)))
        }
        OracleCommand::Witness { triple } => {
            let t = triple_arg(&alg, triple)?;
            Ok(match oracle_witness_search(&t, cli.max_atoms) {
                Some(w) => Outcome::new(EXIT_TRUE, format_witness(&w), to_json(&w)),
                None => Outcome::new(EXIT_FALSE, "absent", Value::Null),
            })
        }
        OracleCommand::Trivial { triple } => Ok(trivial_outcome(brute_force_trivial(&triple_arg(
            &alg, triple,
        )?))),
        OracleCommand::FreeCount { k } => {
            let n = free_function_count(*k).map_err(cap)?;
            Ok(Outcome::new(EXIT_TRUE, n.to_string(), json!(n)))
        }
    }
}
