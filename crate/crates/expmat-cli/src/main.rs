//! `expmat`: command-line interface for the exponent-matrix toolkit.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 negative verdict (non-member, failed verification), 2 usage or input
//! error, 3 search-budget exhaustion.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use expmat::decompose::{column_decomposition, row_decomposition};
use expmat::order::{enumerate_exponent, max_elements, strict_downset};
use expmat::structure::{first_odot_factorization, orbit};
use expmat::text::{format_matrix, parse_expression, parse_matrix, parse_permutation};
use expmat::verify::{run_suite, Suite, SuiteParams, DEFAULT_SEED};
use expmat::{
    Budget, Error, ExponentMatrix, GroupElement, MatrixSet, NatMatrix, TropicalExpression,
};

#[derive(Parser)]
#[command(
    name = "expmat",
    version,
    about = "Max-plus algebra of exponent matrices: membership, decomposition, downsets, symmetry",
    after_help = "Matrix files hold one row per line of whitespace-separated non-negative \
                  integers; '#' starts a comment line. All indices in input and output are \
                  one-based."
)]
struct Cli {
    /// Search-node budget for enumeration-backed commands.
    #[arg(long, global = true, env = "EXPMAT_BUDGET", default_value_t = Budget::DEFAULT_LIMIT)]
    budget: u64,

    /// Worker threads for the parallel scans (1 = fully sequential).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership in the exponent-matrix algebra.
    ///
    /// Exit code 0 for members, 1 for non-members (with a violating triple),
    /// 2 for invalid input.
    Check { file: PathBuf },

    /// Print the row or column decomposition over the block basis.
    Decompose {
        #[arg(long, value_enum)]
        mode: Mode,
        file: PathBuf,
        /// Emit JSON ({"n", "terms": [[{"indices", "power"}, ..], ..]})
        /// instead of expression syntax.
        #[arg(long)]
        json: bool,
    },

    /// Evaluate an expression such as 'T{1}^2 * T{1,2}^3 + T{2}'.
    Eval {
        /// Matrix dimension.
        #[arg(short = 'n', long = "dim")]
        n: usize,
        expr: String,
    },

    /// Print the strict downset of a matrix, smallest first.
    Downset {
        file: PathBuf,
        /// Print only the maximal elements of the downset.
        #[arg(long)]
        max_only: bool,
    },

    /// Apply a symmetry: optional transpose first, then relabeling.
    Act {
        /// Permutation as one-based images, e.g. "2 1 3".
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        transpose: bool,
        file: PathBuf,
    },

    /// Print the orbit of a matrix under relabeling and transposition.
    Orbit { file: PathBuf },

    /// Decide ⊙-irreducibility by exhaustive factor search.
    Irreducible {
        file: PathBuf,
        /// On a reducible matrix, print one factor pair.
        #[arg(long)]
        witness: bool,
    },

    /// List all algebra members with entries up to a bound.
    Enumerate {
        #[arg(short = 'n', long = "dim")]
        n: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        count_only: bool,
    },

    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        #[arg(short = 'n', long = "dim")]
        n: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Seed for the randomized checks.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Row,
    Col,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Structure,
    Automorphism,
    Downset,
    Decompose,
}

impl From<SuiteArg> for Suite {
    fn from(arg: SuiteArg) -> Suite {
        match arg {
            SuiteArg::All => Suite::All,
            SuiteArg::Structure => Suite::Structure,
            SuiteArg::Automorphism => Suite::Automorphism,
            SuiteArg::Downset => Suite::Downset,
            SuiteArg::Decompose => Suite::Decompose,
        }
    }
}

#[derive(Serialize)]
struct JsonFactor {
    indices: Vec<usize>,
    power: u64,
}

#[derive(Serialize)]
struct JsonExpression {
    n: usize,
    terms: Vec<Vec<JsonFactor>>,
}

/// Failures routed to an exit code; messages go to stderr.
enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<expmat::text::ParseError> for Failure {
    fn from(e: expmat::text::ParseError) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // The global pool can only be installed once per process; a failure here
    // just means a pool already exists.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global();
    let budget = Budget::new(cli.budget);
    match run(cli.command, &budget) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_matrix(path: &Path) -> Result<NatMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_exponent(path: &Path) -> Result<ExponentMatrix, Failure> {
    let m = read_matrix(path)?;
    ExponentMatrix::new(m).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_set(set: &MatrixSet) {
    let mut out = String::new();
    for (pos, m) in set.members().iter().enumerate() {
        if pos > 0 {
            out.push('\n');
        }
        out.push_str(&format_matrix(m.as_nat()));
    }
    print!("{out}");
}

fn expression_json(e: &TropicalExpression) -> String {
    let terms = e
        .terms()
        .iter()
        .map(|t| {
            t.factors()
                .iter()
                .map(|f| JsonFactor {
                    indices: f.block().indices().iter().map(|i| i + 1).collect(),
                    power: f.power(),
                })
                .collect()
        })
        .collect();
    let doc = JsonExpression { n: e.n(), terms };
    serde_json::to_string(&doc).expect("serializable")
}

fn run(command: Command, budget: &Budget) -> Result<ExitCode, Failure> {
    match command {
        Command::Check { file } => {
            let m = read_matrix(&file)?;
            match m.triangle_violation() {
                None => {
                    println!("exponent: yes");
                    Ok(ExitCode::SUCCESS)
                }
                Some(v) => {
                    println!("exponent: no");
                    println!("violation: {v}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Decompose { mode, file, json } => {
            let a = read_exponent(&file)?;
            let e = match mode {
                Mode::Row => row_decomposition(&a),
                Mode::Col => column_decomposition(&a),
            };
            if json {
                println!("{}", expression_json(&e));
            } else {
                println!("{e}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { n, expr } => {
            if n == 0 {
                return Err(Failure::Input("dimension must be positive".into()));
            }
            let e = parse_expression(&expr, n)?;
            print!("{}", format_matrix(e.evaluate().as_nat()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Downset { file, max_only } => {
            let a = read_exponent(&file)?;
            let down = strict_downset(&a, budget)?;
            if max_only {
                print_set(&max_elements(&down));
            } else {
                print_set(&down);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Act {
            perm,
            transpose,
            file,
        } => {
            let m = read_matrix(&file)?;
            let p = match perm {
                Some(text) => parse_permutation(&text, m.n())?,
                None => expmat::Permutation::identity(m.n()),
            };
            let g = GroupElement::new(p, transpose);
            print!("{}", format_matrix(&g.act(&m)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { file } => {
            let a = read_exponent(&file)?;
            let orb = orbit(&a, budget)?;
            print_set(&orb);
            Ok(ExitCode::SUCCESS)
        }
        Command::Irreducible { file, witness } => {
            let a = read_exponent(&file)?;
            match first_odot_factorization(&a, budget)? {
                None => println!("irreducible: yes"),
                Some((b, c)) => {
                    println!("irreducible: no");
                    if witness {
                        println!("factor B:");
                        print!("{}", format_matrix(b.as_nat()));
                        println!("factor C:");
                        print!("{}", format_matrix(c.as_nat()));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            n,
            bound,
            count_only,
        } => {
            if n == 0 {
                return Err(Failure::Input("dimension must be positive".into()));
            }
            let universe = enumerate_exponent(n, bound, budget)?;
            if count_only {
                println!("{}", universe.len());
            } else {
                print_set(&universe);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            n,
            bound,
            suite,
            seed,
        } => {
            if n < 2 {
                return Err(Failure::Input("dimension must be at least 2".into()));
            }
            let mut params = SuiteParams::new(n, bound);
            params.seed = seed.unwrap_or(DEFAULT_SEED);
            let report = run_suite(suite.into(), &params, budget)?;
            let mut out = String::new();
            for check in &report.checks {
                if check.passed {
                    writeln!(out, "[PASS] {} ({})", check.name, check.details).unwrap();
                } else {
                    writeln!(out, "[FAIL] {}: {}", check.name, check.details).unwrap();
                }
            }
            print!("{out}");
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
