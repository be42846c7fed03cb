//! Batch CLI over the library: exact JSON in, exact JSON out.
//! Exit codes: 0 success, 2 input error, 1 verification failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use deltaspace::gradedspace::{default_dmax, hilbert_report, GradedBasis};
use deltaspace::geometricity::decompose;
use deltaspace::matrix::subsets_by_cardinality;
use deltaspace::mpoly::MPoly;
use deltaspace::rational::{parse_rat, render_rat, Rat};
use deltaspace::rootsys::{CartanSystem, Convention, DEFAULT_ORBIT_CAP};
use deltaspace::verify::{run_all, VerifyOptions};
use deltaspace::volumes::{
    face_volume_polynomial, permutohedron_volume, volume_polynomial, Normalization,
};
use deltaspace::QMatrix;

#[derive(Parser)]
#[command(name = "deltaspace", version, about = "Exact polynomial spaces of square rational matrices and Weyl volume polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizationArg {
    Weight,
    Root,
}

impl From<NormalizationArg> for Normalization {
    fn from(a: NormalizationArg) -> Self {
        match a {
            NormalizationArg::Weight => Normalization::Weight,
            NormalizationArg::Root => Normalization::Root,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Row,
    Column,
}

impl From<ConventionArg> for Convention {
    fn from(a: ConventionArg) -> Self {
        match a {
            ConventionArg::Row => Convention::Row,
            ConventionArg::Column => Convention::Column,
        }
    }
}

/// Matrix source: exactly one of a labeled type or a matrix JSON file.
#[derive(Args)]
struct MatrixInput {
    /// Labeled Cartan type, e.g. A3 or G2
    #[arg(long = "type", value_name = "LABEL", conflicts_with = "matrix")]
    type_label: Option<String>,
    /// Path to a matrix JSON file {"n": ..., "rows": [["p/q", ...], ...]}
    #[arg(long, value_name = "FILE")]
    matrix: Option<String>,
}

#[derive(Args)]
struct SystemFlags {
    #[arg(long, value_enum, default_value = "row")]
    convention: ConventionArg,
    #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,
}

#[derive(Args)]
struct PolyInput {
    /// Polynomial in the text grammar, e.g. "3/2*x1^2 + 6*x1*x2"
    #[arg(long, conflicts_with = "poly_file")]
    poly: Option<String>,
    /// Path to a file containing the polynomial text
    #[arg(long, value_name = "FILE")]
    poly_file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// All nonempty principal minors of the matrix
    Minors {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Graded basis of the polynomial space, degree by degree
    Basis {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// Dimension profile with the dual quotient cross-check
    Hilbert {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// Weyl orbit of a weight
    Orbit {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        sys: SystemFlags,
        /// Weight coordinates, e.g. "1,1" or "1/2,3"
        #[arg(long)]
        weight: String,
    },
    /// Exact volume of the orbit polytope of a weight
    Volume {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        sys: SystemFlags,
        #[arg(long)]
        weight: String,
    },
    /// The volume polynomial of the full system
    Volpoly {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        sys: SystemFlags,
        #[arg(long, value_enum, default_value = "weight")]
        normalization: NormalizationArg,
    },
    /// Face volume polynomial on a subset of the simple roots
    Facevol {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        sys: SystemFlags,
        /// 1-based indices, e.g. "1,3"
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value = "weight")]
        normalization: NormalizationArg,
    },
    /// Decide geometricity of a polynomial, with certificate
    Geometric {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        sys: SystemFlags,
        #[command(flatten)]
        poly: PolyInput,
        #[arg(long, value_enum, default_value = "weight")]
        normalization: NormalizationArg,
    },
    /// Run the acceptance criteria
    Verify {
        /// Extra types for the volume criteria, e.g. "A4,D4"
        #[arg(long, value_delimiter = ',')]
        include: Vec<String>,
        /// Overrides the built-in per-criterion seeds
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn load_matrix(input: &MatrixInput) -> CliResult<QMatrix> {
    match (&input.type_label, &input.matrix) {
        (Some(label), None) => Ok(CartanSystem::from_label(label)?.matrix().clone()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            Ok(QMatrix::from_json_str(&text)?)
        }
        _ => Err(CliError("exactly one of --type or --matrix is required".into())),
    }
}

fn load_system(input: &MatrixInput, flags: &SystemFlags) -> CliResult<CartanSystem> {
    let sys = match (&input.type_label, &input.matrix) {
        (Some(label), None) => CartanSystem::from_label(label)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            CartanSystem::from_matrix(QMatrix::from_json_str(&text)?)?
        }
        _ => return Err(CliError("exactly one of --type or --matrix is required".into())),
    };
    Ok(sys
        .with_convention(flags.convention.into())
        .with_orbit_cap(flags.orbit_cap))
}

fn load_poly(input: &PolyInput, nvars: usize) -> CliResult<MPoly> {
    let text = match (&input.poly, &input.poly_file) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        _ => return Err(CliError("exactly one of --poly or --poly-file is required".into())),
    };
    Ok(MPoly::parse(text.trim(), nvars)?)
}

fn parse_weight(text: &str, n: usize) -> CliResult<Vec<Rat>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(CliError(format!("weight needs {n} coordinates, got {}", parts.len())));
    }
    parts.iter().map(|p| Ok(parse_rat(p)?)).collect()
}

fn parse_subset(text: &str, n: usize) -> CliResult<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut subset = Vec::new();
    for part in text.split(',') {
        let i: usize = part.trim().parse().map_err(|_| CliError(format!("bad index {part:?}")))?;
        if i < 1 || i > n {
            return Err(CliError(format!("index {i} out of range 1..={n}")));
        }
        let zero_based = i - 1;
        if subset.contains(&zero_based) {
            return Err(CliError(format!("repeated index {i}")));
        }
        subset.push(zero_based);
    }
    subset.sort_unstable();
    Ok(subset)
}

fn subset_key(subset: &[usize]) -> String {
    format!(
        "[{}]",
        subset.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    )
}

fn poly_json(
    poly: &MPoly,
    label: Option<&str>,
    normalization: Normalization,
    subset: Option<&[usize]>,
) -> serde_json::Value {
    let mut coefficients = serde_json::Map::new();
    for (exps, c) in poly.terms() {
        let mono = MPoly::monomial(poly.nvars(), exps.clone(), Rat::from_integer(1.into()));
        coefficients.insert(mono.render(), serde_json::Value::String(render_rat(c)));
    }
    let mut obj = serde_json::json!({
        "type": label.unwrap_or("custom"),
        "normalization": normalization.as_str(),
        "degree": poly.degree().unwrap_or(0),
        "polynomial": poly.render(),
        "coefficients": coefficients,
    });
    if let Some(s) = subset {
        obj["subset"] = serde_json::json!(s.iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    obj
}

fn emit(value: &serde_json::Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // exit quietly when the consumer closes the pipe early
    if writeln!(std::io::stdout(), "{text}").is_err() {
        std::process::exit(0);
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Minors { input } => {
            let m = load_matrix(&input)?;
            let mut minors = serde_json::Map::new();
            for subset in subsets_by_cardinality(m.nrows()) {
                let value = m.principal_minor(&subset)?;
                minors.insert(subset_key(&subset), serde_json::Value::String(render_rat(&value)));
            }
            let verdict = m.all_principal_minors_nonzero()?;
            emit(&serde_json::json!({
                "n": m.nrows(),
                "minors": minors,
                "all_nonzero": verdict.all_nonzero,
                "witness": verdict.witness.map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>()),
            }));
        }
        Command::Basis { input, dmax } => {
            let m = load_matrix(&input)?;
            let dmax = dmax.unwrap_or_else(|| default_dmax(m.nrows()));
            let basis = GradedBasis::build(&m, dmax);
            let rendered: Vec<Vec<String>> = (0..=dmax)
                .map(|d| basis.degree(d).iter().map(MPoly::render).collect())
                .collect();
            emit(&serde_json::json!({
                "n": m.nrows(),
                "dmax": dmax,
                "dims": basis.dims(),
                "basis": rendered,
            }));
        }
        Command::Hilbert { input, dmax } => {
            let m = load_matrix(&input)?;
            let dmax = dmax.unwrap_or_else(|| default_dmax(m.nrows()));
            emit(&hilbert_report(&m, dmax).to_json());
        }
        Command::Orbit { input, sys, weight } => {
            let system = load_system(&input, &sys)?;
            let lambda = parse_weight(&weight, system.rank())?;
            let orbit = system.weyl_orbit(&lambda)?;
            let points: Vec<Vec<String>> = orbit
                .iter()
                .map(|p| p.iter().map(render_rat).collect())
                .collect();
            emit(&serde_json::json!({ "size": points.len(), "points": points }));
        }
        Command::Volume { input, sys, weight } => {
            let system = load_system(&input, &sys)?;
            let lambda = parse_weight(&weight, system.rank())?;
            let volume = permutohedron_volume(&system, &lambda)?;
            emit(&serde_json::json!({ "volume": render_rat(&volume) }));
        }
        Command::Volpoly { input, sys, normalization } => {
            let system = load_system(&input, &sys)?;
            let norm: Normalization = normalization.into();
            let full: Vec<usize> = (0..system.rank()).collect();
            let poly = if norm == Normalization::Weight {
                volume_polynomial(&system)?
            } else {
                face_volume_polynomial(&system, &full, norm)?
            };
            emit(&poly_json(&poly, system.label(), norm, None));
        }
        Command::Facevol { input, sys, subset, normalization } => {
            let system = load_system(&input, &sys)?;
            let subset = parse_subset(&subset, system.rank())?;
            let norm: Normalization = normalization.into();
            let poly = face_volume_polynomial(&system, &subset, norm)?;
            emit(&poly_json(&poly, system.label(), norm, Some(&subset)));
        }
        Command::Geometric { input, sys, poly, normalization } => {
            let system = load_system(&input, &sys)?;
            let p = load_poly(&poly, system.rank())?;
            let cert = decompose(&system, &p, normalization.into())?;
            emit(&cert.to_json());
        }
        Command::Verify { include, seed } => {
            let results = run_all(&VerifyOptions { include, seed });
            let mut pass = true;
            let criteria: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    pass &= r.pass;
                    // timings go to stderr so the JSON report is
                    // byte-identical across runs
                    eprintln!(
                        "{}: {} ({:.2?})",
                        r.id,
                        if r.pass { "pass" } else { "FAIL" },
                        r.duration
                    );
                    serde_json::json!({ "id": r.id, "pass": r.pass, "details": r.details })
                })
                .collect();
            emit(&serde_json::json!({ "criteria": criteria, "pass": pass }));
            if !pass {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
