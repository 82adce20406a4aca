use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use q6::acceptance;
use q6::classify::{classify_main, irreducible, normalize_p2, plane_decomposition, smoothness};
use q6::intersect::brute::{brute_count, DEFAULT_BUDGET};
use q6::intersect::{bidegree, degree, meet_linear_exact, span_of, Threefold};
use q6::io::output as out;
use q6::io::input::named;
use q6::io::{parse_divisor, parse_pair, parse_spec, parse_subspace};
use q6::quadspace::LinearSubspace;
use q6::{Error, Result};

#[derive(Parser)]
#[command(name = "q6", version, about = "Threefolds of bidegree (1,p) in the smooth quadric Q6")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Show a built-in parametrization.
    Builtin { name: String },
    /// Points on generic vertical and horizontal 3-planes.
    Bidegree {
        spec: String,
        #[arg(long, default_value_t = 7)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Points on a generic codimension-3 linear space.
    Degree {
        spec: String,
        #[arg(long, default_value_t = 7)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Linear span.
    Span {
        spec: String,
        #[arg(long)]
        seed: u64,
    },
    /// Case of the main classification, with evidence.
    Classify {
        spec: String,
        #[arg(long, default_value_t = 7)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Smoothness verdict for a divisor on Q4.
    Smooth { spec: String },
    /// Irreducibility of a divisor on Q4.
    Irreducible { spec: String },
    /// Isometry to the Segre normal form (p = 2).
    NormalizeP2 { spec: String },
    /// The plane Q(a,b), or a sampled decomposition into planes.
    Planes {
        spec: String,
        #[arg(long, conflicts_with = "sample")]
        at: Option<String>,
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// psi at a point of P^1, or its degree.
    Psi {
        spec: String,
        #[arg(long, required_unless_present = "degree", conflicts_with = "degree")]
        at: Option<String>,
        #[arg(long)]
        degree: bool,
    },
    /// Exact intersection with a linear subspace.
    Meet {
        spec: String,
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        seed: u64,
    },
    /// Point count of the intersection over F_q or F_{q^2}.
    Brute {
        spec: String,
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run an acceptance suite.
    Verify {
        #[arg(long, value_parser = ["paper"])]
        suite: String,
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
    },
}

/// A JSON result with its exit code.
struct Output {
    value: Value,
    code: u8,
    /// Preformatted table text, when the generic rendering does not fit.
    table: Option<String>,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, code: 0, table: None }
    }
}

fn describe(x: &Threefold) -> Value {
    match x {
        Threefold::Param(p) => json!({
            "name": p.name,
            "space": p.space.kind,
            "vars": p.space.vars,
            "coords": p.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "multidegree": p.multidegree().unwrap_or_default(),
        }),
        Threefold::Divisor(d) => json!({ "divisor": out::divisor(d), "f": d.f().to_string() }),
    }
}

fn exec(cmd: Cmd) -> Result<Output> {
    Ok(match cmd {
        Cmd::Builtin { name } => describe(&named(&name)?).into(),
        Cmd::Bidegree { spec, trials, seed } => out::bidegree(&bidegree(&parse_spec(&spec)?, trials, seed)?).into(),
        Cmd::Degree { spec, trials, seed } => {
            let t = degree(&parse_spec(&spec)?, trials, seed)?;
            json!({ "degree": t.modal, "trials": out::trials(&t) }).into()
        }
        Cmd::Span { spec, seed } => {
            let s: LinearSubspace = span_of(&parse_spec(&spec)?, seed)?;
            json!({ "span": out::subspace(&s), "projective_dim": s.dim() as i64 - 1, "restricted_rank": s.restrict_rank() }).into()
        }
        Cmd::Classify { spec, trials, seed } => out::classification(&classify_main(&parse_spec(&spec)?, trials, seed)?).into(),
        Cmd::Smooth { spec } => out::smoothness(&smoothness(&parse_divisor(&spec)?)?).into(),
        Cmd::Irreducible { spec } => out::irreducibility(&irreducible(&parse_divisor(&spec)?)?).into(),
        Cmd::NormalizeP2 { spec } => out::normal_form(&normalize_p2(&parse_divisor(&spec)?)?).into(),
        Cmd::Planes { spec, at, sample, seed } => {
            let d = parse_divisor(&spec)?;
            match (at, sample) {
                (Some(at), _) => {
                    let (a, b) = parse_pair(&at)?;
                    out::plane_family(&d.q_plane(&a, &b)?).into()
                }
                (None, Some(n)) => out::decomposition(&plane_decomposition(&d, n, seed.unwrap_or_default())?).into(),
                (None, None) => return Err(Error::Invalid("planes needs --at a,b or --sample N --seed S".into())),
            }
        }
        Cmd::Psi { spec, at, degree } => {
            let d = parse_divisor(&spec)?;
            if degree {
                json!({ "psi_degree": d.psi_degree()? }).into()
            } else {
                let (a, b) = parse_pair(at.as_deref().unwrap_or_default())?;
                json!({ "at": [out::scalar(&a), out::scalar(&b)], "psi": out::point(&d.psi(&a, &b)?) }).into()
            }
        }
        Cmd::Meet { spec, subspace, seed } => {
            let r = meet_linear_exact(&parse_spec(&spec)?, &parse_subspace(&subspace)?, seed)?;
            Output { code: if r.is_finite() { 0 } else { 3 }, value: out::report(&r), table: None }
        }
        Cmd::Brute { spec, subspace, q, ext, budget } => {
            out::brute(&brute_count(&parse_spec(&spec)?, &parse_subspace(&subspace)?, q, ext, budget)?).into()
        }
        Cmd::Verify { suite: _, seed } => {
            let results = acceptance::run_all(seed);
            let all = results.iter().all(|o| o.passed);
            let table = results.iter().map(|o| o.line() + "\n").collect::<String>();
            let value = json!({
                "suite": "paper",
                "seed": seed,
                "passed": all,
                "criteria": results.iter().map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail })).collect::<Vec<_>>(),
            });
            Output { value, code: if all { 0 } else { 4 }, table: Some(table) }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match exec(cli.cmd) {
        Ok(o) => {
            let v = out::versioned(o.value);
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n",
                Format::Table => o.table.unwrap_or_else(|| out::table(&v)),
            };
            // a closed pipe downstream is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(o.code)
        }
        Err(e) => {
            let v = out::versioned(json!({ "error": { "code": e.code(), "message": e.to_string() } }));
            eprintln!("{v}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
