//! Command-line front door: parse algebra and homomorphism files, dispatch
//! the checkers, and emit human or machine readable reports.
//!
//! Exit codes: 0 for a successful run or true verdict, 1 for a false
//! verdict (the report carries a witness), 2 for usage, parse, validation
//! or size-cap errors.

mod render;

use centrax::{fixtures, io, Caps, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "centrax", version, about = "finite universal-algebra workbench")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override the carrier size cap (also via CENTRAX_CAP)
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for randomized fixtures
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the congruence lattice of an algebra
    Congruences { algebra: PathBuf },
    /// Enumerate the ordered pairs of complementary factor congruences
    Factors { algebra: PathBuf },
    /// Compute the central elements and their Boolean algebra
    Centrals { algebra: PathBuf },
    /// Decompose along a factor pair (by index into the `factors` list)
    Decompose {
        algebra: PathBuf,
        #[arg(long, default_value_t = 0)]
        pair: usize,
    },
    /// Run a named check; exit 1 when the verdict is false
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Analyze what a homomorphism does to central elements
    AnalyzeHom { hom: PathBuf },
    /// Synthesize the existential right coordinate-detecting formula
    SynthesizeR { algebra: PathBuf },
    /// Build the pushout square collapsing the given pairs
    Pushout {
        hom: PathBuf,
        /// pairs to identify, e.g. "1,e" or "3,1;2,0"
        #[arg(long)]
        collapse: String,
    },
    /// Extract a Maltsev chain witnessing (a,b) ∈ θ(c⃗,d⃗)
    Witness {
        algebra: PathBuf,
        /// endpoints "a,b"
        #[arg(long)]
        pair: String,
        /// generator tuple c⃗, e.g. "3" or "3,1"
        #[arg(long)]
        left: String,
        /// generator tuple d⃗
        #[arg(long)]
        right: String,
    },
    /// Write a catalog fixture to a file
    Fixture {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        ops: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Unique factor pair behind every complementary central pair
    Dp(AlgebraArg),
    /// θ_{1⃗,e⃗} = θ(1⃗,e⃗) for every central element
    Rexdfc(AlgebraArg),
    /// θ_{0⃗,e⃗} = θ(0⃗,e⃗) for every central element
    Lexdfc(AlgebraArg),
    /// Collapsing 0⃗ with 1⃗ trivializes the algebra
    ZeroOne(AlgebraArg),
    /// The three Fraser–Horn verdicts on A × B
    Fhp { a: PathBuf, b: PathBuf },
    /// Product decompositions survive pushouts along the homomorphism
    Stability { hom: PathBuf },
}

#[derive(Args)]
struct AlgebraArg {
    algebra: PathBuf,
}

/// A finished report: `verdict = false` exits 1.
pub struct Outcome {
    pub verdict: bool,
    pub text: String,
    pub json: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = resolve_caps(cli.cap);
    match render::run(&cli.command, &caps, cli.seed) {
        Ok(outcome) => {
            match cli.format {
                Format::Text => println!("{}", outcome.text.trim_end()),
                Format::Json => println!("{}", outcome.json),
            }
            if outcome.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn resolve_caps(flag: Option<usize>) -> Caps {
    if let Some(n) = flag {
        return Caps::with_carrier(n);
    }
    if let Ok(value) = std::env::var("CENTRAX_CAP") {
        if let Ok(n) = value.trim().parse::<usize>() {
            return Caps::with_carrier(n);
        }
    }
    Caps::default()
}

fn load_algebra(path: &PathBuf) -> Result<centrax::FiniteAlgebra, Error> {
    io::read_algebra(path)
}

fn load_hom(path: &PathBuf) -> Result<centrax::Homomorphism, Error> {
    io::read_homomorphism(path)
}

fn parse_element(algebra: &centrax::FiniteAlgebra, token: &str) -> Result<usize, Error> {
    let token = token.trim();
    if let Ok(index) = token.parse::<usize>() {
        if index < algebra.size {
            return Ok(index);
        }
        return Err(Error::OutOfRange {
            value: index,
            size: algebra.size,
        });
    }
    if let Some(display) = &algebra.display {
        if let Some(index) = display.iter().position(|name| name == token) {
            return Ok(index);
        }
    }
    Err(Error::Parse(format!("unknown element `{token}`")))
}

fn parse_tuple(algebra: &centrax::FiniteAlgebra, text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|token| parse_element(algebra, token))
        .collect()
}

fn parse_pairs(
    algebra: &centrax::FiniteAlgebra,
    text: &str,
) -> Result<Vec<(usize, usize)>, Error> {
    text.split(';')
        .map(|pair| {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected `a,b` in `{pair}`")))?;
            Ok((parse_element(algebra, a)?, parse_element(algebra, b)?))
        })
        .collect()
}

fn fixture_params(
    n: Option<usize>,
    k: Option<usize>,
    size: Option<usize>,
    ops: Option<usize>,
    seed: Option<u64>,
) -> fixtures::FixtureParams {
    fixtures::FixtureParams {
        n,
        k,
        size,
        ops,
        seed,
    }
}
