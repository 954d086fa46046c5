//! `oddcong`: command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain error, 2 on a usage error.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "oddcong", version, about = "Cuspidal class groups of X0(N) and odd congruence numbers")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for the randomized property sample run by `verify`.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Directory memoizing Lambda matrices as `lambda_<N>.json`.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, env = "ODDCONG_WORKERS", global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the cusps of X0(N) grouped by denominator.
    Cusps(LevelArg),
    /// Order of a degree-zero cuspidal divisor in the class group.
    Order(DivisorArgs),
    /// Divisor and modularity of an eta quotient, or the eta quotient of a
    /// divisor.
    EtaCheck(EtaCheckArgs),
    /// Apply `T_p` or `w_r` to a divisor, or print the operator matrix.
    Hecke(HeckeArgs),
    /// Even-order witness divisors for sign assignments.
    Witness(WitnessArgs),
    /// Screen a conductor or level.
    Classify(ClassifyArgs),
    /// Search an explicit family of curves.
    Families {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// 2-isogeny descent on `y^2 = x^3 + m x^2 - x`.
    Descent(DescentArgs),
    /// The exponential equation `q^s - 16 p^r = ±1` and the `8p` screen.
    Dioph(DiophArgs),
    /// Run the acceptance suite.
    Verify {
        #[arg(value_enum, default_value_t = ScopeArg::Fast)]
        scope: ScopeArg,
    },
}

#[derive(Args, Debug)]
pub struct LevelArg {
    #[arg(long, short = 'N')]
    pub level: u64,
}

#[derive(Args, Debug)]
pub struct DivisorArgs {
    #[arg(long, short = 'N')]
    pub level: u64,
    /// E.g. `P1-P11`, `3*P2 - 3*P6` or `(P1+P3)⊗(P1-P5)`.
    #[arg(long, short = 'd', allow_hyphen_values = true)]
    pub divisor: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "input")]
pub struct EtaInput {
    /// Exponents as a JSON object, e.g. `{"1": -1, "11": 1}`.
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long, short = 'd', allow_hyphen_values = true)]
    pub divisor: Option<String>,
}

#[derive(Args, Debug)]
pub struct EtaCheckArgs {
    #[arg(long, short = 'N')]
    pub level: u64,
    #[command(flatten)]
    pub input: EtaInput,
}

#[derive(Args, Debug)]
pub struct HeckeArgs {
    #[arg(long, short = 'N')]
    pub level: u64,
    /// `T<p>` or `w<r>`, e.g. `T2`, `w6`.
    #[arg(long)]
    pub op: String,
    #[arg(long, short = 'd', allow_hyphen_values = true)]
    pub divisor: Option<String>,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long, short = 'N')]
    pub level: u64,
    /// Comma-separated `prime:sign`, e.g. `3:+,5:-,7:+`; all valid
    /// assignments when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    pub n: u64,
    /// Screen as the conductor of an elliptic curve.
    #[arg(long)]
    pub elliptic: bool,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// Conductors `pq` with `p^r - q^s = 16`.
    Pq {
        #[arg(long, default_value_t = 1 << 40)]
        bound: u64,
        /// Largest prime for the `r = s = 1` case (default min(bound, 10^6)).
        #[arg(long)]
        pair_limit: Option<u64>,
    },
    /// Conductors `2p` with `p = 2^k - m^2`.
    TwoP {
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
    },
    /// Conductors `4p` with `p = m^2 + 4`.
    FourP {
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
    },
    /// Prime conductors `p = u^2 + 64`.
    NeumannSetzer {
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DescentArgs {
    /// A single parameter `m = 1 (mod 4)` with `m^2 + 4` prime.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Every family member with `m^2 + 4 < limit`.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Args, Debug)]
pub struct DiophArgs {
    /// Bound on `q^s`.
    #[arg(long, default_value_t = 1_000_000_000_000)]
    pub bound: u64,
    /// Also list the primes `p < LIMIT` surviving the `8p` screen.
    #[arg(long, value_name = "LIMIT")]
    pub eight_p: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Fast,
    Full,
}

/// Failure of a command after its arguments parsed.
#[derive(Debug)]
pub enum Failure {
    /// Mathematical precondition or input-domain error.
    Domain(anyhow::Error),
    /// The command ran but reports a negative outcome (e.g. `verify`).
    Negative,
}

impl From<oddcong::Error> for Failure {
    fn from(e: oddcong::Error) -> Self {
        Failure::Domain(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: the worker count must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Negative) => ExitCode::from(1),
    }
}
