//! Command-line front end. Every command prints one JSON report on stdout;
//! errors go to stderr. Exit codes: 0 success, 2 input error, 3 budget
//! exceeded, 4 unmet precondition. Randomized commands take explicit seeds.

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use k3twist::constructions::{
    example_counter_report, fm_partner_family, match_twist, match_twist_integral,
};
use k3twist::error::Error;
use k3twist::exactlin::{Int, IntMatrix, Rat};
use k3twist::hodge::{
    brauer_class, enumerate_brauer, surface_from_period, surface_from_transcendental, BField,
    Period, SurfaceDatum,
};
use k3twist::lattice::IntLattice;
use k3twist::mukai::{lambda_lattice, minus_e8_lattice, mukai_lattice, Domain, Isometry, LAMBDA_RANK};
use k3twist::orientation::{
    criterion_data, criterion_orientation, is_orientation_preserving, oriented_frame,
};
use k3twist::report::{self, Assertion};
use k3twist::suites;

#[derive(Parser)]
#[command(name = "k3twist", version, about = "Exact lattice computations for twisted K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, signature, determinant, parity and discriminant data of a lattice
    LatticeInvariants(GramInput),
    /// Run a named verification suite
    Verify {
        #[command(subcommand)]
        subject: VerifySubject,
    },
    /// Match an isometry of the full cohomology lattice to a twisted period
    MatchTwist(MatchTwistArgs),
    /// Brauer-class enumeration and order computations
    Brauer {
        #[command(subcommand)]
        action: BrauerAction,
    },
    /// Orientation verdict for an isometry between framed surfaces
    Orientation(OrientationArgs),
}

#[derive(Args)]
struct GramInput {
    /// JSON file holding the Gram matrix (array of integer rows)
    #[arg(long, conflicts_with_all = ["inline", "builtin"])]
    gram: Option<String>,
    /// Inline JSON Gram matrix
    #[arg(long, conflicts_with = "builtin")]
    inline: Option<String>,
    /// Builtin alias: u, e8neg, k3, mukai, counter-pic-b, counter-pic-2b
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum VerifySubject {
    /// The order-five counterexample pipeline
    ExampleCounter {
        /// sweep bound for the rank-3 variant
        #[arg(long, default_value_t = 10_000)]
        z_max: u64,
    },
    /// The partner family over the first n primes
    FmPartners {
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// The period-displacement suite for gap isometries
    Gap {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// exp bridge between twisted transcendental lattices and class kernels
    Bridge {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
    /// discriminant bookkeeping for Brauer classes
    OrderDisc {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
    /// orientation verdicts and criterion agreement
    OrientationSuite {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct MatchTwistArgs {
    /// JSON file with {"domain": "mukai", "matrix": [[...]]}
    #[arg(long, conflicts_with = "random_word")]
    isometry: Option<String>,
    /// Generate the isometry as a random generator word of this length
    #[arg(long)]
    random_word: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search an integral matching instead of the rational one
    #[arg(long)]
    integral: bool,
    /// Coefficient bound for the integral search
    #[arg(long, default_value_t = 6)]
    bound: u32,
}

#[derive(Subcommand)]
enum BrauerAction {
    /// List all homomorphisms T → Z/k with kernel invariants and buckets
    Enumerate {
        #[arg(long)]
        gram: Option<String>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        surjective: bool,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Order and kernel data of the class induced by a B-field
    Order {
        /// comma-separated rational coordinates, padded with zeros to 22
        #[arg(long)]
        b: String,
        /// JSON file with basis rows of T inside the K3 lattice (default: all of it)
        #[arg(long)]
        t_basis: Option<String>,
    },
}

#[derive(Args)]
struct OrientationArgs {
    #[arg(long)]
    isometry: String,
    /// JSON file {"x1": [...], "x2": [...], "omega": [...], "b": [...]}
    #[arg(long)]
    src: String,
    #[arg(long)]
    dst: String,
    /// Also evaluate the positive-cone criterion and assert agreement
    #[arg(long)]
    criterion: bool,
}

#[derive(Serialize)]
struct JsonReport {
    command: String,
    inputs: Value,
    results: Value,
    assertions: Vec<Assertion>,
    timing_ms: u128,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli, started) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::MissingPeriod
        | Error::CriterionInapplicable
        | Error::NotPositivePlane
        | Error::OddLattice
        | Error::SearchBoundExhausted
        | Error::NonPrimitivePair => 4,
        _ => 2,
    }
}

fn run(cli: Cli, started: Instant) -> Result<ExitCode, Error> {
    match cli.command {
        Command::LatticeInvariants(input) => {
            let (lattice, echo) = load_gram(&input)?;
            let inv = lattice.invariants();
            emit(JsonReport {
                command: "lattice-invariants".into(),
                inputs: echo,
                results: serde_json::to_value(&inv).unwrap(),
                assertions: vec![],
                timing_ms: started.elapsed().as_millis(),
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { subject } => run_verify(subject, started),
        Command::MatchTwist(args) => run_match_twist(args, started),
        Command::Brauer { action } => run_brauer(action, started),
        Command::Orientation(args) => run_orientation(args, started),
    }
}

fn emit(report: JsonReport) {
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}

fn report_exit(assertions: &[Assertion]) -> ExitCode {
    if assertions.iter().all(|a| a.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_verify(subject: VerifySubject, started: Instant) -> Result<ExitCode, Error> {
    let (name, inputs, results, assertions) = match subject {
        VerifySubject::ExampleCounter { z_max } => {
            let rep = example_counter_report(z_max);
            (
                "verify example-counter".to_string(),
                json!({ "z_max": z_max }),
                serde_json::to_value(&rep).unwrap(),
                rep.assertions.clone(),
            )
        }
        VerifySubject::FmPartners { n } => {
            let rep = fm_partner_family(n)?;
            let assertion = Assertion::with_detail(
                "partner family verifies",
                rep.passed,
                format!("n = {}", rep.n),
            );
            (
                "verify fm-partners".to_string(),
                json!({ "n": n }),
                serde_json::to_value(&rep).unwrap(),
                vec![assertion],
            )
        }
        VerifySubject::Gap { trials, seed } => {
            let rep = suites::gap_suite(trials, seed);
            (
                "verify gap".to_string(),
                json!({ "trials": trials, "seed": seed }),
                serde_json::to_value(&rep).unwrap(),
                rep.assertions.clone(),
            )
        }
        VerifySubject::Bridge { seed, instances } => {
            let rep = suites::bridge_order_suite(instances, seed);
            (
                "verify bridge".to_string(),
                json!({ "seed": seed, "instances": instances }),
                serde_json::to_value(&rep).unwrap(),
                rep.assertions.clone(),
            )
        }
        VerifySubject::OrderDisc { seed, instances } => {
            let rep = suites::bridge_order_suite(instances, seed);
            (
                "verify order-disc".to_string(),
                json!({ "seed": seed, "instances": instances }),
                serde_json::to_value(&rep).unwrap(),
                rep.assertions.clone(),
            )
        }
        VerifySubject::OrientationSuite { cases, seed } => {
            let rep = suites::orientation_suite(cases, seed);
            (
                "verify orientation-suite".to_string(),
                json!({ "cases": cases, "seed": seed }),
                serde_json::to_value(&rep).unwrap(),
                rep.assertions.clone(),
            )
        }
    };
    let code = report_exit(&assertions);
    emit(JsonReport {
        command: name,
        inputs,
        results,
        assertions,
        timing_ms: started.elapsed().as_millis(),
    });
    Ok(code)
}

fn run_match_twist(args: MatchTwistArgs, started: Instant) -> Result<ExitCode, Error> {
    let (g, echo) = match (&args.isometry, args.random_word) {
        (Some(path), None) => {
            let g = load_isometry(path)?;
            (g, json!({ "isometry": path }))
        }
        (None, Some(len)) => (
            k3twist::mukai::random_word(args.seed, len),
            json!({ "random_word": len, "seed": args.seed }),
        ),
        _ => {
            return Err(Error::InvalidInput(
                "provide exactly one of --isometry and --random-word".into(),
            ))
        }
    };
    let result = if args.integral {
        match_twist_integral(&g, args.bound)?
    } else {
        match_twist(&g)?
    };
    let assertions = vec![
        Assertion::new("certificate identities hold", result.certificate_holds),
        Assertion::new("matched period is valid", result.x.norm() == result.y.norm()),
    ];
    let results = json!({
        "x1": report::rat_vec_strings(&result.x.x1),
        "x2": report::rat_vec_strings(&result.x.x2),
        "y1": report::rat_vec_strings(&result.y.x1),
        "y2": report::rat_vec_strings(&result.y.x2),
        "b": report::rat_vec_strings(&result.b),
        "b_integral": result.b_integral,
    });
    let code = report_exit(&assertions);
    emit(JsonReport {
        command: if args.integral {
            "match-twist --integral".into()
        } else {
            "match-twist".into()
        },
        inputs: echo,
        results,
        assertions,
        timing_ms: started.elapsed().as_millis(),
    });
    Ok(code)
}

fn run_brauer(action: BrauerAction, started: Instant) -> Result<ExitCode, Error> {
    match action {
        BrauerAction::Enumerate {
            gram,
            builtin,
            k,
            surjective,
            budget,
        } => {
            let input = GramInput {
                gram,
                inline: None,
                builtin,
            };
            let (lattice, echo) = load_gram(&input)?;
            let enumeration = enumerate_brauer(&lattice, k, surjective, budget)?;
            emit(JsonReport {
                command: "brauer enumerate".into(),
                inputs: json!({ "gram": echo, "k": k, "surjective": surjective }),
                results: serde_json::to_value(&enumeration).unwrap(),
                assertions: vec![],
                timing_ms: started.elapsed().as_millis(),
            });
            Ok(ExitCode::SUCCESS)
        }
        BrauerAction::Order { b, t_basis } => {
            let bfield = parse_b_field(&b)?;
            let surface = match &t_basis {
                Some(path) => {
                    let rows = load_int_matrix(path)?;
                    surface_from_transcendental(rows)?
                }
                None => SurfaceDatum::maximal(),
            };
            let class = brauer_class(&surface, &bfield);
            let od = k3twist::hodge::order_disc_report(&surface, &bfield);
            emit(JsonReport {
                command: "brauer order".into(),
                inputs: json!({ "b": b, "t_basis": t_basis }),
                results: json!({
                    "class": serde_json::to_value(&class).unwrap(),
                    "order_disc": serde_json::to_value(&od).unwrap(),
                }),
                assertions: vec![],
                timing_ms: started.elapsed().as_millis(),
            });
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_orientation(args: OrientationArgs, started: Instant) -> Result<ExitCode, Error> {
    let g = load_isometry(&args.isometry)?;
    let (src_surface, src_b, src_omega) = load_framed_surface(&args.src)?;
    let (dst_surface, dst_b, dst_omega) = load_framed_surface(&args.dst)?;
    let src = oriented_frame(&src_surface, &src_b, &src_omega)?;
    let dst = oriented_frame(&dst_surface, &dst_b, &dst_omega)?;
    let direct = is_orientation_preserving(&g, &src, &dst);
    let mut assertions = vec![Assertion::with_detail(
        "orientation verdict computed",
        true,
        if direct { "preserving".into() } else { "reversing".into() },
    )];
    let data = criterion_data(&g, &src.omega);
    let mut results = json!({
        "preserving": direct,
        "criterion_data": serde_json::to_value(&data).unwrap(),
    });
    if args.criterion {
        if data.r.is_zero() {
            return Err(Error::CriterionInapplicable);
        }
        let crit = criterion_orientation(&g, &src, &dst)?;
        results["criterion_preserving"] = json!(crit);
        assertions.push(Assertion::new(
            "criterion agrees with the direct test",
            crit == direct,
        ));
    }
    let code = report_exit(&assertions);
    emit(JsonReport {
        command: "orientation".into(),
        inputs: json!({ "isometry": args.isometry, "src": args.src, "dst": args.dst }),
        results,
        assertions,
        timing_ms: started.elapsed().as_millis(),
    });
    Ok(code)
}

// ---- input parsing -------------------------------------------------------

fn parse_int(v: &Value) -> Result<Int, Error> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| Error::InvalidInput(format!("not an integer: {n}"))),
        Value::String(s) => {
            Int::from_str(s).map_err(|_| Error::InvalidInput(format!("not an integer: {s}")))
        }
        _ => Err(Error::InvalidInput(format!("expected integer, got {v}"))),
    }
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = Int::from_str(p.trim())
                .map_err(|_| Error::InvalidInput(format!("bad numerator in {s}")))?;
            let q = Int::from_str(q.trim())
                .map_err(|_| Error::InvalidInput(format!("bad denominator in {s}")))?;
            if q.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            Ok(Rat::new(p, q))
        }
        None => Int::from_str(s)
            .map(Rat::from_integer)
            .map_err(|_| Error::InvalidInput(format!("not a rational: {s}"))),
    }
}

fn parse_rat_value(v: &Value) -> Result<Rat, Error> {
    match v {
        Value::Number(_) => parse_int(v).map(Rat::from_integer),
        Value::String(s) => parse_rat(s),
        _ => Err(Error::InvalidInput(format!("expected rational, got {v}"))),
    }
}

fn value_to_int_matrix(v: &Value) -> Result<IntMatrix, Error> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rows".into()))?;
    let parsed: Result<Vec<Vec<Int>>, Error> = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::InvalidInput("expected a row array".into()))?
                .iter()
                .map(parse_int)
                .collect()
        })
        .collect();
    let parsed = parsed?;
    let width = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != width) {
        return Err(Error::InvalidInput("ragged matrix".into()));
    }
    Ok(IntMatrix::from_row_vectors(parsed))
}

fn load_json(path: &str) -> Result<Value, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))
}

fn load_int_matrix(path: &str) -> Result<IntMatrix, Error> {
    let v = load_json(path)?;
    let m = v.get("gram").or_else(|| v.get("matrix")).unwrap_or(&v);
    value_to_int_matrix(m)
}

fn builtin_lattice(name: &str) -> Result<IntLattice, Error> {
    match name {
        "u" | "U" => Ok(k3twist::lattice::hyperbolic_plane()),
        "e8neg" | "-e8" | "-E8" => Ok(minus_e8_lattice()),
        "k3" | "lambda" => Ok(lambda_lattice()),
        "mukai" => Ok(mukai_lattice()),
        "counter-pic-b" => {
            IntLattice::new(IntMatrix::from_rows_i64(&[vec![0, -5], vec![-5, 2]]))
        }
        "counter-pic-2b" => {
            IntLattice::new(IntMatrix::from_rows_i64(&[vec![0, -5], vec![-5, 8]]))
        }
        other => Err(Error::InvalidInput(format!("unknown builtin lattice: {other}"))),
    }
}

fn load_gram(input: &GramInput) -> Result<(IntLattice, Value), Error> {
    if let Some(name) = &input.builtin {
        let l = builtin_lattice(name)?;
        return Ok((l, json!({ "builtin": name })));
    }
    let value = if let Some(path) = &input.gram {
        load_json(path)?
    } else if let Some(inline) = &input.inline {
        serde_json::from_str(inline).map_err(|e| Error::InvalidInput(e.to_string()))?
    } else {
        return Err(Error::InvalidInput(
            "one of --gram, --inline, --builtin is required".into(),
        ));
    };
    let m = value.get("gram").unwrap_or(&value);
    let matrix = value_to_int_matrix(m)?;
    if matrix.rows() != matrix.cols() {
        return Err(Error::InvalidInput("gram matrix must be square".into()));
    }
    let lattice = IntLattice::new(matrix)?;
    Ok((lattice, json!({ "gram": value })))
}

fn load_isometry(path: &str) -> Result<Isometry, Error> {
    let v = load_json(path)?;
    let domain = match v.get("domain").and_then(|d| d.as_str()) {
        Some("lambda") => Domain::Lambda,
        _ => Domain::Mukai,
    };
    let m = v
        .get("matrix")
        .ok_or_else(|| Error::InvalidInput("isometry file needs a \"matrix\" field".into()))?;
    Isometry::from_matrix(value_to_int_matrix(m)?, domain)
}

fn parse_rat_vector(v: &Value) -> Result<Vec<Rat>, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rationals".into()))?;
    if arr.len() > LAMBDA_RANK {
        return Err(Error::InvalidInput(format!(
            "vector has {} coordinates, at most 22 allowed",
            arr.len()
        )));
    }
    let mut out: Vec<Rat> = arr.iter().map(parse_rat_value).collect::<Result<_, _>>()?;
    out.resize(LAMBDA_RANK, Rat::zero());
    Ok(out)
}

fn parse_b_field(text: &str) -> Result<BField, Error> {
    let mut coords: Vec<Rat> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rat)
        .collect::<Result<_, _>>()?;
    if coords.len() > LAMBDA_RANK {
        return Err(Error::InvalidInput("B-field has more than 22 coordinates".into()));
    }
    coords.resize(LAMBDA_RANK, Rat::zero());
    Ok(BField::new(coords))
}

fn load_framed_surface(path: &str) -> Result<(SurfaceDatum, BField, Vec<Rat>), Error> {
    let v = load_json(path)?;
    let x1 = parse_rat_vector(
        v.get("x1")
            .ok_or_else(|| Error::InvalidInput(format!("{path}: missing x1")))?,
    )?;
    let x2 = parse_rat_vector(
        v.get("x2")
            .ok_or_else(|| Error::InvalidInput(format!("{path}: missing x2")))?,
    )?;
    let omega = parse_rat_vector(
        v.get("omega")
            .ok_or_else(|| Error::InvalidInput(format!("{path}: missing omega")))?,
    )?;
    let b = match v.get("b") {
        Some(bv) => BField::new(parse_rat_vector(bv)?),
        None => BField::zero(),
    };
    let period = Period::new(x1, x2)?;
    let surface = surface_from_period(period)?;
    Ok((surface, b, omega))
}
