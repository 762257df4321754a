//! Command-line front end: read an Omega matrix, run the cohomology
//! computations, and drive the identity verification suites.
//!
//! Exit codes: 0 success, 1 invalid input matrix, 2 usage or parse
//! error, 3 internal cross-check failure.

mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use s7omega::cohomology::{cohomology_report, order_cross_check, relations_matrix_det};
use s7omega::error::Error;
use s7omega::families::{bgmr_family, random_valid_omega, BgmrParams};
use s7omega::omega::OmegaMatrix;
use s7omega::trees::DEFAULT_TREE_BUDGET;

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "s7omega",
    about = "Integer cohomology and first Pontrjagin class of the 3-Sasakian 7-manifolds S7_Omega",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the reduction condition: all minors Delta_pq nonzero and
    /// rowwise coprime
    Check(InputArgs),
    /// Compute the full cohomology report for a valid Omega
    Cohomology(CohomologyArgs),
    /// Cross-check |G_Omega| by four independent routes
    Order(OrderArgs),
    /// Run lemma-level identity suites over generated matrices
    Verify(VerifyArgs),
    /// Generate an Omega matrix and print it in the text format
    Family(FamilyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Path to a matrix file (text or JSON format)
    #[arg(long, conflicts_with = "matrix")]
    input: Option<PathBuf>,
    /// Inline matrix, semicolons for newlines: "4 2; 1 0; 0 1; 1 2; 3 1"
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Max vertex count for tree enumeration (default 9; env S7_TREE_BUDGET)
    #[arg(long)]
    tree_budget: Option<usize>,
}

#[derive(Args)]
struct OrderArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    tree_budget: Option<usize>,
    /// Extra vertex ordering "a1,a2,..." for the relations-matrix route
    #[arg(long)]
    ordering: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum, default_value = "all")]
    scope: verify::Scope,
    /// Master seed for all generated corpora
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Matrices per suite
    #[arg(long, default_value_t = 25)]
    count: usize,
    /// Number of columns k for generated matrices
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Entry bound for generated matrices
    #[arg(long, default_value_t = 9)]
    bound: i64,
    #[arg(long)]
    tree_budget: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(subcommand)]
    kind: FamilyKind,
}

#[derive(Subcommand)]
enum FamilyKind {
    /// Block family [I_k; a; b]
    Bgmr {
        /// Comma-separated integers a_1,...,a_k
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<BigInt>,
        /// Comma-separated integers b_1,...,b_k
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<BigInt>,
    },
    /// Rejection-sampled random valid matrix
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 9)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            // --help and --version go to stdout with success.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::Argument(_) => EXIT_USAGE,
                Error::State(_) => EXIT_INVALID,
                Error::Internal(_) => EXIT_INTERNAL,
                Error::Resource(_) => EXIT_USAGE,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Cohomology(args) => cmd_cohomology(&args),
        Command::Order(args) => cmd_order(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Family(args) => cmd_family(&args),
    }
}

fn read_matrix(args: &InputArgs) -> Result<OmegaMatrix, Error> {
    let text = match (&args.input, &args.matrix) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(inline)) => inline.replace(';', "\n"),
        _ => {
            return Err(Error::argument(
                "exactly one of --input and --matrix is required".to_string(),
            ))
        }
    };
    OmegaMatrix::parse(&text)
}

/// Flag, then S7_TREE_BUDGET, then the built-in default.
fn tree_budget(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("S7_TREE_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_TREE_BUDGET)
}

fn cmd_check(args: &InputArgs) -> Result<ExitCode, Error> {
    let om = read_matrix(args)?;
    let report = om.check_condition();
    println!(
        "Omega is {} x {} (k = {})",
        om.n(),
        om.k(),
        om.k()
    );
    print!("{report}");
    if report.is_valid() {
        println!();
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_INVALID))
    }
}

fn cmd_cohomology(args: &CohomologyArgs) -> Result<ExitCode, Error> {
    let om = read_matrix(&args.input)?;
    if !om.is_valid() {
        eprintln!("matrix fails the reduction condition:");
        eprint!("{}", om.check_condition());
        return Ok(ExitCode::from(EXIT_INVALID));
    }
    let budget = tree_budget(args.tree_budget);
    let report = cohomology_report(&om, budget)?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap()),
        Format::Text => print!("{}", report::render_text(&om, &report)),
    }
    if report.valid {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("internal cross-checks failed; see diagnostics");
        Ok(ExitCode::from(EXIT_INTERNAL))
    }
}

fn parse_ordering(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::argument(format!("bad ordering entry {t:?}")))
        })
        .collect()
}

fn cmd_order(args: &OrderArgs) -> Result<ExitCode, Error> {
    let om = read_matrix(&args.input)?;
    if !om.is_valid() {
        eprintln!("matrix fails the reduction condition:");
        eprint!("{}", om.check_condition());
        return Ok(ExitCode::from(EXIT_INVALID));
    }
    let budget = tree_budget(args.tree_budget);
    let ledger = order_cross_check(&om, budget)?;
    let mut agree = ledger.agree;
    let mut reordered: Option<(Vec<usize>, BigInt)> = None;
    if let Some(raw) = &args.ordering {
        let ordering = parse_ordering(raw)?;
        let det = relations_matrix_det(&om, Some(&ordering))?;
        agree = agree && det == ledger.relations_det;
        reordered = Some((ordering, det));
    }
    match args.format {
        Format::Json => {
            let mut value = ledger.to_json();
            if let Some((ordering, det)) = &reordered {
                value["reordered_relations_det"] = serde_json::json!({
                    "ordering": ordering,
                    "value": det.to_string(),
                });
                value["agree"] = serde_json::json!(agree);
            }
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Text => {
            println!("order of G_Omega by four routes:");
            match &ledger.tree_sum {
                Some(v) => println!("  tree sum over |Delta_pq| weights: {v}"),
                None => println!("  tree sum: skipped (k + 2 over budget {budget})"),
            }
            println!("  |det M| (weighted Laplacian minor): {}", ledger.det_m);
            println!("  product of invariant factors:      {}", ledger.snf_product);
            println!("  |det relations matrix| (V/R):      {}", ledger.relations_det);
            if let Some((ordering, det)) = &reordered {
                println!("  same under ordering {ordering:?}:      {det}");
            }
            println!("agreement: {}", if agree { "yes" } else { "NO" });
        }
    }
    if agree {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_INTERNAL))
    }
}

fn cmd_family(args: &FamilyArgs) -> Result<ExitCode, Error> {
    let om = match &args.kind {
        FamilyKind::Bgmr { a, b } => {
            let params = BgmrParams::new(a.clone(), b.clone())?;
            bgmr_family(&params)?
        }
        FamilyKind::Random { k, bound, seed } => random_valid_omega(*k, *bound, *seed)?,
    };
    print!("{}", om.to_text());
    Ok(ExitCode::SUCCESS)
}
