mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use braidrep::braid::{
    check_braid_relations_with, check_equivariance, check_yang_baxter, BraidWord, Braiding, RVariant,
};
use braidrep::decomp::{
    check_full_twist, check_guards, check_splitting, decompose_scaled, ef1_eigencheck, irreducibility,
    try_full_twist_scalar,
};
use braidrep::hwspace::{check_phi, hw_basis, rho_matrix};
use braidrep::lkb::{burau_matrices_t, check_burau, check_lkb_relations, fork_iso_check, lkb_letter, pairs};
use braidrep::matrix::Matrix;
use braidrep::report::CheckReport;
use braidrep::ring::{LaurentPoly, LkbPoly};
use braidrep::solve::{format_rational, parse_rational};
use braidrep::verma::{weight_basis, MultiIndex, TensorVec};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Exact braid group representations from Verma modules of quantum sl2.
#[derive(Parser)]
#[command(name = "braidrep", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Braid,
    Yangbaxter,
    Equivariance,
    Phi,
    Lkb,
    Burau,
    Splitting,
    Eigen,
    Twist,
}

#[derive(Subcommand)]
enum Command {
    /// Highest weight basis of W_(n,l) with its expansions.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: u32,
    },
    /// Matrix of a braid word on W_(n,l).
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: u32,
        /// Letters separated by spaces or commas; -k is the inverse of s_k.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Run a verification suite; exits 1 if any identity fails.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        l: u32,
        /// Braid with an R-matrix missing one summand (braid suite only).
        #[arg(long)]
        perturb: bool,
    },
    /// Commutant dimension and irreducibility certificate at a point.
    Irreducible {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        q0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
        /// Pick the point pseudo-randomly from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Split a weight vector into F-images of highest weight vectors.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: u32,
        /// Basis vector v_a1 ⊗ ... ⊗ v_an, entries separated by commas.
        #[arg(long)]
        index: Option<String>,
        /// Seed for a random vector when no index is given.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Burau matrix of a braid word in the variable t.
    Burau {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        unreduced: bool,
    },
    /// Lawrence-Krammer-Bigelow matrix of a braid word in t and Q.
    LkbMatrix {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Image of the full twist on W_(n,l).
    Twist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: u32,
    },
}

/// Result of a command: JSON, its text rendering, and whether it passed.
struct Output {
    json: Value,
    text: String,
    pass: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, pass: true }
    }
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.0);
        return ExitCode::from(2);
    }
    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return ExitCode::from(2);
        }
    };
    let mut body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("JSON output"),
        Format::Text => out.text.trim_end().to_string(),
    };
    body.push('\n');
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if out.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn configure_threads() -> Result<(), UsageError> {
    let Ok(value) = std::env::var("BRAIDREP_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| UsageError(format!("BRAIDREP_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn strands(n: usize) -> Result<(), UsageError> {
    if n < 2 {
        return Err(UsageError(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn run(cmd: &Command) -> Result<Output, UsageError> {
    match *cmd {
        Command::Basis { n, l } => basis(n, l),
        Command::Matrix { n, l, ref word } => matrix(n, l, word),
        Command::Check { suite, n, l, perturb } => check(suite, n, l, perturb),
        Command::Irreducible {
            n,
            l,
            ref q0,
            ref s0,
            seed,
        } => irreducible(n, l, q0.as_deref(), s0.as_deref(), seed),
        Command::Decompose { n, l, ref index, seed } => decomposition(n, l, index.as_deref(), seed),
        Command::Burau { n, ref word, unreduced } => burau(n, word, !unreduced),
        Command::LkbMatrix { n, ref word } => lkb(n, word),
        Command::Twist { n, l } => twist(n, l),
    }
}

fn basis(n: usize, l: u32) -> Result<Output, UsageError> {
    strands(n)?;
    let b = hw_basis(n, l);
    let elements: Vec<Value> = b
        .elements
        .iter()
        .map(|e| json!({"label": e.label, "vector": e.vector}))
        .collect();
    let mut text = format!("W({n},{l}): dimension {}\n", b.len());
    let width = b
        .elements
        .iter()
        .map(|e| e.label.to_string().chars().count())
        .max()
        .unwrap_or(0);
    for e in &b.elements {
        let label = e.label.to_string();
        let _ = writeln!(text, "{label:width$}  = {}", e.vector);
    }
    Ok(Output::ok(
        json!({"n": n, "l": l, "dim": b.len(), "basis": elements}),
        text,
    ))
}

fn matrix(n: usize, l: u32, word: &str) -> Result<Output, UsageError> {
    strands(n)?;
    let w = BraidWord::parse(n, word)?;
    let m = rho_matrix(n, l, &w)?;
    let text = format!("rho_({n},{l})({w})\n{}", render::matrix_text(&m.basis, &m.matrix));
    Ok(Output::ok(serde_json::to_value(&m)?, text))
}

fn merge(name: &str, params: Value, reports: Vec<CheckReport>) -> CheckReport {
    let items = reports.into_iter().flat_map(|r| r.items).collect();
    CheckReport::from_items(name, params, items)
}

fn check(suite: Suite, n: usize, l: u32, perturb: bool) -> Result<Output, UsageError> {
    if perturb && suite != Suite::Braid {
        return Err(UsageError("--perturb applies to the braid suite only".into()));
    }
    if suite != Suite::Yangbaxter {
        strands(n)?;
    }
    let report = match suite {
        Suite::Braid => {
            let variant = if perturb {
                RVariant::DropTerm
            } else {
                RVariant::Standard
            };
            check_braid_relations_with(Braiding::new(variant), n, l)
        }
        Suite::Yangbaxter => check_yang_baxter(l),
        Suite::Equivariance => check_equivariance(n, l),
        Suite::Phi => check_phi(n, l),
        Suite::Lkb => merge("lkb", json!({"n": n}), vec![fork_iso_check(n), check_lkb_relations(n)]),
        Suite::Burau => check_burau(n),
        Suite::Splitting => check_splitting(n, l),
        Suite::Eigen => ef1_eigencheck(n, l),
        Suite::Twist => check_full_twist(n, l),
    };
    Ok(Output {
        json: serde_json::to_value(&report)?,
        text: render::report_text(&report),
        pass: report.pass,
    })
}

fn rational(flag: &str, text: &str) -> Result<BigRational, UsageError> {
    parse_rational(text)
        .ok_or_else(|| UsageError(format!("{flag} must be a rational number like 3 or -2/5, got {text:?}")))
}

/// A point `(q0, s0)` with small integer coordinates off the guard locus.
fn random_point(n: usize, l: u32, seed: u64) -> Result<(BigRational, BigRational), UsageError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let q0 = BigRational::from_integer(BigInt::from(rng.gen_range(2i64..=97)));
        let s0 = BigRational::from_integer(BigInt::from(rng.gen_range(2i64..=97)));
        if check_guards(n, l, &q0, &s0).is_ok() {
            return Ok((q0, s0));
        }
    }
    Err(UsageError(format!("no admissible point found from seed {seed}")))
}

fn irreducible(n: usize, l: u32, q0: Option<&str>, s0: Option<&str>, seed: Option<u64>) -> Result<Output, UsageError> {
    strands(n)?;
    let (q0, s0) = match (q0, s0, seed) {
        (Some(q), Some(s), None) => (rational("--q0", q)?, rational("--s0", s)?),
        (None, None, Some(seed)) => random_point(n, l, seed)?,
        (None, None, None) => (BigRational::from_integer(2.into()), BigRational::from_integer(3.into())),
        (_, _, Some(_)) => return Err(UsageError("--seed cannot be combined with --q0/--s0".into())),
        _ => return Err(UsageError("--q0 and --s0 must be given together".into())),
    };
    // A point on the guard locus is a usage error, reported with the factor.
    let r = irreducibility(n, l, &q0, &s0)?;
    let text = format!(
        "W({n},{l}) at q = {}, s = {}\n  dimension            {}\n  commutant dimension  {} ({:?})\n  algebra dimension    {}\n  {}\n",
        format_rational(&q0),
        format_rational(&s0),
        r.dim,
        r.commutant_dimension,
        r.method,
        r.algebra_dimension.map_or("unknown".to_string(), |d| d.to_string()),
        r.verdict
    );
    Ok(Output {
        json: serde_json::to_value(&r)?,
        text,
        pass: r.certified,
    })
}

fn parse_index(n: usize, l: u32, text: &str) -> Result<MultiIndex, UsageError> {
    let entries: Vec<u32> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>())
        .collect::<Result<_, _>>()?;
    let idx = MultiIndex::new(entries);
    if idx.len() != n || idx.total() != l {
        return Err(UsageError(format!(
            "--index must have {n} entries summing to {l}, got {text:?}"
        )));
    }
    Ok(idx)
}

fn random_vector(n: usize, l: u32, seed: u64) -> TensorVec<LaurentPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = TensorVec::zero(n);
    for idx in weight_basis(n, l) {
        let c = LaurentPoly::qs(rng.gen_range(-4i64..=4), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        if !c.is_zero() {
            v.add_term(idx, &c);
        }
    }
    v
}

fn decomposition(n: usize, l: u32, index: Option<&str>, seed: u64) -> Result<Output, UsageError> {
    strands(n)?;
    let v = match index {
        Some(text) => TensorVec::basis(parse_index(n, l, text)?),
        None => random_vector(n, l, seed),
    };
    let d = decompose_scaled(&v)?;
    let verified = d.verifies(&v);
    let mut text = format!("v = {v}\n");
    let mut components = Vec::new();
    for (t, (w, m)) in d.numerators.iter().zip(&d.denominators).enumerate() {
        let _ = writeln!(text, "w_{t} = ({w}) / ({m})");
        components.push(json!({"numerator": w, "denominator": m}));
    }
    let _ = writeln!(
        text,
        "sum_t F^(t) w_t = v: {}",
        if verified { "verified" } else { "FAILED" }
    );
    Ok(Output {
        json: json!({"n": n, "l": l, "vector": v, "components": components, "verified": verified}),
        text,
        pass: verified,
    })
}

/// Product of generator matrices along a word; letters act first to last.
fn word_product<F>(dim: usize, w: &BraidWord, mut letter: F) -> Result<Matrix<LkbPoly>, UsageError>
where
    F: FnMut(i32) -> Result<Matrix<LkbPoly>, UsageError>,
{
    w.letters()
        .iter()
        .try_fold(Matrix::identity(dim), |acc, &k| Ok(letter(k)?.mul(&acc)))
}

fn burau(n: usize, word: &str, reduced: bool) -> Result<Output, UsageError> {
    strands(n)?;
    let w = BraidWord::parse(n, word)?;
    let gens = burau_matrices_t(n, reduced);
    let dim = if reduced { n - 1 } else { n };
    let m = word_product(dim, &w, |k| {
        let g = &gens[k.unsigned_abs() as usize - 1];
        if k > 0 {
            Ok(g.clone())
        } else {
            g.inverse()
                .ok_or_else(|| UsageError("Burau generator is not invertible".into()))
        }
    })?;
    let labels: Vec<String> = (1..=dim).map(|j| format!("x{j}")).collect();
    let kind = if reduced { "reduced" } else { "unreduced" };
    let text = format!("{kind} Burau({w})\n{}", render::matrix_text(&labels, &m));
    Ok(Output::ok(
        json!({"n": n, "word": w.to_string(), "reduced": reduced, "variable": "t", "rows": m}),
        text,
    ))
}

fn lkb(n: usize, word: &str) -> Result<Output, UsageError> {
    strands(n)?;
    let w = BraidWord::parse(n, word)?;
    let basis = pairs(n);
    let m = word_product(basis.len(), &w, |k| Ok(lkb_letter(n, k)?.matrix))?;
    let labels: Vec<String> = basis.iter().map(|(i, j)| format!("F({i},{j})")).collect();
    let text = format!("LKB({w})\n{}", render::matrix_text(&labels, &m));
    Ok(Output::ok(
        json!({"n": n, "word": w.to_string(), "basis": labels, "rows": m}),
        text,
    ))
}

fn twist(n: usize, l: u32) -> Result<Output, UsageError> {
    strands(n)?;
    let report = check_full_twist(n, l);
    let scalar = try_full_twist_scalar(n, l);
    let text = match &scalar {
        Some(c) => format!("full twist on W({n},{l}) acts as {c}\n"),
        None => format!("full twist on W({n},{l}) is not scalar\n"),
    };
    Ok(Output {
        json: json!({"n": n, "l": l, "word": BraidWord::full_twist(n).to_string(), "scalar": scalar, "report": report}),
        text,
        pass: report.pass,
    })
}
