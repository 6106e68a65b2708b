mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_SINGULAR: u8 = 3;
pub const EXIT_MAX_STEPS: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "nrs", version, about = "Generalized Newton-Raphson-Simpson iterations and their tree oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the NRS(m) iteration table for a polynomial.
    Run(RunArgs),
    /// Compare Newton iterates from 0 with NRS(1) partial sums.
    Newton(NewtonArgs),
    /// Count generalized Lukasiewicz words with a degree sequence, by formula and by enumeration.
    Count(CountArgs),
    /// Compare tree sums with the hypergeometric series grade by grade.
    Sturmfels(SturmfelsArgs),
    /// Taylor coefficients of xi(1/2 + i sqrt(t)) and, optionally, an NRS run on a Jensen polynomial.
    Xi(XiArgs),
    /// Print the auxiliary polynomials of NRS(m).
    Aux(AuxArgs),
    /// Draw the plane tree of a generalized Lukasiewicz word.
    Tree(TreeArgs),
}

#[derive(Args, Debug, Clone)]
struct PolyArgs {
    /// Coefficients a_0 .. a_d, separated by spaces or commas; rationals like 155/128 are exact.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "coeff_file", required_unless_present = "coeff_file")]
    coeffs: Option<String>,
    /// File holding the coefficients in the same format.
    #[arg(long)]
    coeff_file: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = nrs_core::nrs::DEFAULT_MAX_STEPS)]
    steps: usize,
    /// Working precision in bits.
    #[arg(long, default_value_t = nrs_core::scalars::DEFAULT_PRECISION)]
    precision: u32,
    /// Stop once |J_m(n)| falls below this value.
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Defaults to float; exact needs rational coefficients.
    #[arg(long, value_enum, default_value_t = ModeArg::Float)]
    mode: ModeArg,
}

#[derive(Args, Debug, Clone)]
struct NewtonArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long, default_value_t = 8)]
    steps: usize,
    #[arg(long, default_value_t = nrs_core::scalars::DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct CountArgs {
    /// Degree sequence as "k:count,...", e.g. "-1:1,0:1,2:2".
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    /// Largest word length the enumeration will attempt.
    #[arg(long, default_value_t = nrs_core::genluk::DEFAULT_DEGREE_SEQUENCE_CAP)]
    grade_cap: usize,
}

#[derive(Args, Debug, Clone)]
struct SturmfelsArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long)]
    m: usize,
    /// Highest grade (letter count) compared.
    #[arg(long, default_value_t = 5)]
    grade_cap: usize,
}

#[derive(Args, Debug, Clone)]
struct XiArgs {
    /// Truncation of the outer sum.
    #[arg(long, default_value_t = nrs_core::xi::DEFAULT_NMAX)]
    nmax: usize,
    /// Highest coefficient a_k printed.
    #[arg(long, default_value_t = nrs_core::xi::DEFAULT_KMAX)]
    kmax: usize,
    #[arg(long, default_value_t = nrs_core::scalars::DEFAULT_PRECISION)]
    precision: u32,
    /// Degree of the Jensen polynomial to print.
    #[arg(long)]
    jensen: Option<usize>,
    /// Run NRS(m) on the Jensen polynomial.
    #[arg(long, requires = "jensen")]
    m: Option<usize>,
    #[arg(long, default_value_t = nrs_core::nrs::DEFAULT_MAX_STEPS)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct AuxArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long)]
    m: usize,
}

#[derive(Args, Debug, Clone)]
struct TreeArgs {
    /// Letters of the word, e.g. "3,-1,0".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Also report the terminal class for this m.
    #[arg(long)]
    m: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(a) => commands::run(&a),
        Command::Newton(a) => commands::newton(&a),
        Command::Count(a) => commands::count(&a),
        Command::Sturmfels(a) => commands::sturmfels(&a),
        Command::Xi(a) => commands::xi(&a),
        Command::Aux(a) => commands::aux(&a),
        Command::Tree(a) => commands::tree(&a),
    };
    ExitCode::from(code)
}
