//! Command-line front end. Every report is a single JSON document on stdout.
//!
//! Exit codes: 0 success, 1 bad input, 2 a violated identity (internal bug).

use crate::aomoto::{beta_p, brute_force_beta_p, os2_matrix_beta, WeightVector, BRUTE_FORCE_CAP};
use crate::arrangement::{build_arrangement, Arrangement, Flat, FULL_LATTICE_CAP};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::graph::{enumerate_graphs, parse_graph, SignedGraph};
use crate::milnor::{
    classify_exceptional, classify_exceptional_checked, h1_decomposition_of,
    CyclotomicDecomposition, ExceptionalClass,
};
use crate::resonance::vanishing_certificate;
use crate::verify::run_verification;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Parser)]
#[command(
    name = "milnor",
    version,
    about = "Milnor fiber monodromy of graphic arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph JSON file; reads standard input when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Checks {
    /// Recompute β through the A^2 matrix and classify by pattern matching as well.
    #[arg(long)]
    cross_check: bool,
    /// Compare against brute-force enumeration where p^n is small enough.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: graph, arrangement, rank-2 profile, β table, decomposition.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long = "p")]
        primes: Vec<u64>,
        #[command(flatten)]
        checks: Checks,
    },
    /// β_p table for p in {2, 3, 5, 7} and any extra --p.
    Beta {
        #[command(flatten)]
        input: Input,
        #[arg(long = "p")]
        primes: Vec<u64>,
        #[command(flatten)]
        checks: Checks,
    },
    /// Cyclotomic decomposition of H_1 of the Milnor fiber.
    Milnor {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        checks: Checks,
    },
    /// Every flat of the intersection lattice.
    Lattice {
        #[command(flatten)]
        input: Input,
    },
    /// Single-hyperplane vanishing certificate for b_{q,d}, q <= k.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// One canonical graph per switching/relabelling class, with β_3.
    Enumerate {
        #[arg(long)]
        vmax: usize,
        /// Keep only graphs with connected underlying graph.
        #[arg(long)]
        connected: bool,
    },
    /// Run the property suites over all classes up to --vmax vertices.
    Verify {
        #[arg(long)]
        vmax: usize,
    },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_sentinel() {
            Failure::Violation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run_cli<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin) {
        Ok((report, code)) => {
            let text =
                serde_json::to_string_pretty(&report).expect("reports are plain JSON values");
            if writeln!(stdout, "{text}").is_err() {
                return 1;
            }
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn read_graph(input: &Input, stdin: &mut dyn Read) -> std::result::Result<SignedGraph, Failure> {
    let text = match &input.file {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        _ => {
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            buf
        }
    };
    Ok(parse_graph(&text)?)
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> std::result::Result<(Value, i32), Failure> {
    match command {
        Command::Analyze {
            input,
            primes,
            checks,
        } => {
            let g = read_graph(&input, stdin)?;
            Ok((analyze_report(&g, &primes, &checks)?, 0))
        }
        Command::Beta {
            input,
            primes,
            checks,
        } => {
            let g = read_graph(&input, stdin)?;
            let a = build_arrangement(&g)?;
            Ok((
                json!({"n": a.n(), "rank": a.rank(), "beta": beta_table(&a, &primes, &checks)?}),
                0,
            ))
        }
        Command::Milnor { input, checks } => {
            let g = read_graph(&input, stdin)?;
            let a = build_arrangement(&g)?;
            let decomposition = h1_decomposition_of(&a)?;
            let class = exceptional_class(&g, &a, &checks)?;
            Ok((milnor_report(&decomposition, class), 0))
        }
        Command::Lattice { input } => {
            let g = read_graph(&input, stdin)?;
            Ok((lattice_report(&build_arrangement(&g)?)?, 0))
        }
        Command::Certify { input, d, k } => {
            let g = read_graph(&input, stdin)?;
            Ok((certify_report(&build_arrangement(&g)?, d, k)?, 0))
        }
        Command::Enumerate { vmax, connected } => {
            let mut classes = Vec::new();
            for g in enumerate_graphs(vmax, connected)? {
                let a = build_arrangement(&g)?;
                classes.push(json!({"graph": g.to_value(), "n": a.n(), "rank": a.rank(), "beta3": beta_p(&a, 3)?}));
            }
            Ok((Value::Array(classes), 0))
        }
        Command::Verify { vmax } => {
            let report = run_verification(vmax)?;
            let code = if report.all_passed { 0 } else { 2 };
            Ok((
                serde_json::to_value(&report).expect("report serializes"),
                code,
            ))
        }
    }
}

fn prime_list(extra: &[u64]) -> Result<Vec<u64>> {
    let mut primes = DEFAULT_PRIMES.to_vec();
    for &p in extra {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    Ok(primes)
}

fn beta_table(a: &Arrangement, extra: &[u64], checks: &Checks) -> Result<Map<String, Value>> {
    let mut table = Map::new();
    for p in prime_list(extra)? {
        let b = beta_p(a, p)?;
        if checks.cross_check {
            let m = os2_matrix_beta(a, &WeightVector::ones_mod(p, a.n())?)?;
            if m != b {
                return Err(Error::TheoremViolation(format!(
                    "β_{p}: flat-local {b}, A^2 matrix {m}"
                )));
            }
        }
        let small = (p as u128)
            .checked_pow(a.n() as u32)
            .is_some_and(|s| s <= BRUTE_FORCE_CAP as u128);
        if checks.oracle && small {
            let o = brute_force_beta_p(a, p)?;
            if o != b {
                return Err(Error::TheoremViolation(format!(
                    "β_{p}: flat-local {b}, brute force {o}"
                )));
            }
        }
        table.insert(p.to_string(), json!(b));
    }
    Ok(table)
}

fn exceptional_class(
    g: &SignedGraph,
    a: &Arrangement,
    checks: &Checks,
) -> Result<ExceptionalClass> {
    if a.rank() < 3 {
        return Ok(ExceptionalClass::NotExceptional);
    }
    if checks.cross_check {
        classify_exceptional_checked(g)
    } else {
        classify_exceptional(g)
    }
}

fn decomposition_value(decomposition: &CyclotomicDecomposition) -> Value {
    Value::Array(
        decomposition
            .exponents()
            .iter()
            .map(|(d, b)| json!({"d": d, "exp": b}))
            .collect(),
    )
}

fn milnor_report(decomposition: &CyclotomicDecomposition, class: ExceptionalClass) -> Value {
    json!({
        "n": decomposition.n(),
        "rank": decomposition.rank(),
        "decomposition": decomposition_value(decomposition),
        "class": class.label(),
        "formula": decomposition.formula(),
    })
}

fn shape_of(profile: &[(Flat, crate::arrangement::Rank2Shape)], x: &Flat) -> Value {
    profile
        .iter()
        .find(|(f, _)| f == x)
        .map_or(Value::Null, |(_, s)| json!(s))
}

fn lattice_report(a: &Arrangement) -> Result<Value> {
    let profile = a.rank2_profile()?;
    let mut flats = Vec::new();
    for x in a.full_lattice()? {
        flats.push(json!({
            "members": x.members,
            "rank": x.rank,
            "m": x.multiplicity(),
            "dense": a.is_dense(&x)?,
            "shape": shape_of(&profile, &x),
        }));
    }
    Ok(Value::Array(flats))
}

fn certify_report(a: &Arrangement, d: u64, k: usize) -> Result<Value> {
    let certificate = vanishing_certificate(a, d, k)?;
    let (tag, statement) = match certificate {
        Some(h) => {
            let tag = a.hyperplanes()[h]
                .origin
                .map_or_else(|| format!("H{h}"), |o| o.to_string());
            (
                tag.clone(),
                format!("b_{{q,{d}}} = 0 for all q <= {k}, certified by {tag}"),
            )
        }
        None => (
            "none".to_string(),
            format!("no single-hyperplane certificate; vanishing of b_{{q,{d}}} is not implied"),
        ),
    };
    Ok(
        json!({"d": d, "k": k, "certificate": tag, "hyperplane": certificate, "statement": statement}),
    )
}

fn analyze_report(g: &SignedGraph, primes: &[u64], checks: &Checks) -> Result<Value> {
    let a = build_arrangement(g)?;
    let profile: Vec<Value> = a
        .rank2_profile()?
        .into_iter()
        .map(|(x, shape)| json!({"members": x.members, "m": x.members.len(), "shape": shape}))
        .collect();
    let poincare = if a.n() <= FULL_LATTICE_CAP {
        json!(a.poincare_polynomial()?.to_string())
    } else {
        Value::Null
    };
    let decomposition = h1_decomposition_of(&a)?;
    let class = exceptional_class(g, &a, checks)?;
    Ok(json!({
        "graph": g.to_value(),
        "n": a.n(),
        "rank": a.rank(),
        "ambient_dim": a.ambient_dim(),
        "hyperplanes": a.hyperplanes().iter().map(|h| h.origin.map(|o| o.to_string())).collect::<Vec<_>>(),
        "poincare": poincare,
        "rank2_profile": profile,
        "beta": beta_table(&a, primes, checks)?,
        "decomposition": decomposition_value(&decomposition),
        "class": class.label(),
        "formula": decomposition.formula(),
    }))
}
