//! `dunkl`: classify polynomials, apply operators, enumerate spaces and run the self-test.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "dunkl",
    version,
    about = "Exact Dunkl-operator calculus on hypercomplex subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sliceness, slice-regularity and space membership of each polynomial.
    Classify(ClassifyArgs),
    /// Apply a named operator to each polynomial.
    Apply(ApplyArgs),
    /// Set partitions of [n] and the space census.
    Enumerate(EnumerateArgs),
    /// Build the reflection matrix and verify its Perron properties.
    Perron(PerronArgs),
    /// Exact pointwise checks at constructed rational points.
    Pointcheck(PointcheckArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

/// Where polynomials come from: a document, or `--algebra` with inline `--poly` expressions.
#[derive(Args, Debug)]
struct Input {
    /// Input document (`-` for stdin).
    file: Option<PathBuf>,
    /// Algebra for inline `--poly` expressions when no document is given: C, H, Hr, O or Cl(0,n).
    #[arg(long)]
    algebra: Option<String>,
    /// Inline polynomial in canonical text form (repeatable).
    #[arg(long = "poly")]
    polys: Vec<String>,
    /// Multiplicities, e.g. `-1/3,-1/3,-1/3`.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    input: Input,
    /// Partition to test membership in, e.g. `{1|2,3}` (repeatable).
    #[arg(long = "P")]
    partitions: Vec<String>,
    /// Index set to test membership in, e.g. `2,3` (repeatable).
    #[arg(long = "A")]
    sets: Vec<String>,
    /// Test membership in every partition of [n].
    #[arg(long)]
    all_partitions: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ApplyArgs {
    #[command(flatten)]
    input: Input,
    /// Operator name: dbar, laplace, gamma, thetabar-mult, T<i>, D[A], D{P}, S[A], Sprime[A],
    /// Sdprime[A], GammaTilde[A], DunklLaplace.
    #[arg(long)]
    op: String,
    /// Partition used by `D{}` and for default multiplicities.
    #[arg(long = "P")]
    partition: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Take n from an algebra's standard frame instead.
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PerronArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Multiplicities; defaults to the default choice for the one-block partition.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Excluded index.
    #[arg(long)]
    i0: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PointcheckArgs {
    /// difference, kerSP or slice-restriction.
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value = "H")]
    algebra: String,
    #[arg(long = "P")]
    partition: Option<String>,
    #[arg(long = "A")]
    set: Option<String>,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Only criteria whose slug or title contains this text.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Corrupt the quaternion table in the algebra check (negative control).
    #[arg(long, hide = true)]
    sabotage: bool,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(a) => commands::classify(a),
        Command::Apply(a) => commands::apply(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Perron(a) => commands::perron(a),
        Command::Pointcheck(a) => commands::pointcheck(a),
        Command::Selftest(a) => commands::selftest(a),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
