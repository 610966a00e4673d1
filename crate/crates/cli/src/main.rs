//! `repchar`: batch front end for the repchar engine.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "repchar", version, about = "Cyclic, symmetric and representation homology of groups, with character maps")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Seed for every randomized check.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cyclic homology HC_*(Q[Γ]) of a finite group, via the cyclic bicomplex.
    Hc {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Subtract HC_*(Q).
        #[arg(long)]
        reduced: bool,
    },
    /// Representation homology HR_*(Γ, G_m) of a simplicial group model.
    ///
    /// Without --window the answer comes from the homotopy of the abelianized model; with
    /// --window B the windowed monomial complexes at B and B+1 are computed as well.
    Hr {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long)]
        window: Option<i64>,
    },
    /// HR_0(Γ, G_m) = Q[Γ_ab] from a presentation, or the GL_n representation ring.
    Hr0 {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        gln: Option<usize>,
    },
    /// Degree-0 characters: monomials in Q[Γ_ab], or traces of generic matrices with --gln.
    Char {
        /// A multiplication table or a presentation.
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        gln: Option<usize>,
        /// An element label (tables) or a word such as x0x1^-1 (presentations).
        #[arg(long)]
        element: Option<String>,
    },
    /// Checks that the degree-0 character factors as HC_0 -> HS_0 -> HR_0.
    TriangleCheck {
        #[arg(long)]
        group: PathBuf,
    },
    /// Compares Tor over a category of elements with Tor over the base.
    ShapiroCheck {
        /// A JSON file with fields category, functor (covariant, set-valued) and coefficients
        /// (contravariant, linear); when absent, random instances are drawn.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 6)]
        max_objects: usize,
        #[arg(long, default_value_t = 5)]
        max_set: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Consistency suites for ΔS and ΔC, plus notation utilities.
    CatCheck {
        #[arg(long, default_value_t = 3)]
        exhaustive_bound: usize,
        #[arg(long, default_value_t = 6)]
        random_bound: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Describe a morphism written as x1x0|x3x4|1|x2 instead of running the suites.
        #[arg(long)]
        morphism: Vec<String>,
        /// Compose two morphisms, F after G.
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        compose: Option<Vec<String>>,
    },
    /// Checks every invariant of an input file and reports the first failure.
    Validate {
        file: PathBuf,
        /// Category for functor files.
        #[arg(long)]
        category: Option<PathBuf>,
    },
}

/// Why a run did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input or a check that came out false; exit status 1.
    Validation(String),
    /// An internal invariant such as `d^2 = 0` failed; exit status 2.
    Internal(String),
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("REPCHAR_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::Validation(format!("REPCHAR_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    // Usage errors are validation failures (exit 1); 2 is kept for broken invariants.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_threads().and_then(|()| commands::run(&cli.command, cli.format, cli.seed));
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
