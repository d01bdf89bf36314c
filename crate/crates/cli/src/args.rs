use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "runslab",
    version,
    about = "Alternating-run polynomials of permutations: compute, factor, verify"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print R_n(z), its (1+z)^m quotient and multiplicity at z = -1.
    Dist(DistArgs),
    /// Same computation as `dist`, emitting only the quotient polynomial.
    Quotient(DistArgs),
    /// List the orbit of a permutation under the c_3, c_5, ... action.
    Orbit(PermArgs),
    /// Minimal representative of a permutation's orbit.
    Canon(PermArgs),
    /// Run the exhaustive verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Orbit,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Permutation length.
    #[arg(long)]
    pub n: usize,

    #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
    pub method: MethodArg,

    /// Worker threads (default: available parallelism).
    #[arg(long, alias = "workers")]
    pub threads: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Allow n above the practical cap, up to the hard cap.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["perm", "n"])))]
pub struct PermArgs {
    /// Permutation, e.g. "3 1 5 4 6 2" or "315462".
    #[arg(long, allow_hyphen_values = true)]
    pub perm: Option<String>,

    /// Sample a random permutation of this length instead (needs --seed).
    #[arg(long, requires = "seed", conflicts_with = "perm")]
    pub n: Option<usize>,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n_min: usize,

    #[arg(long)]
    pub n_max: usize,

    /// Comma-separated property names, or "all".
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub props: Vec<String>,

    #[arg(long, alias = "workers")]
    pub threads: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[arg(long)]
    pub force: bool,
}
