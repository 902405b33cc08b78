//! `carlitz-lab`: compute brackets, power sums and special polynomials over F_q[θ], and run
//! verification suites. Exit status: 0 on success, 1 on a failed check or computation, 2 on usage errors.

mod commands;
mod config;
mod literal;
mod suites;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::commands::Output;
use crate::config::{build_field, default_trunc, resolve_cap, CliConfig, FieldArgs, Format};
use crate::literal::{parse_poly, ParseError};
use carlitz_lab::Lab;

#[derive(Parser)]
#[command(name = "carlitz-lab", version, about = "Exact algebra over F_q[θ]")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Characteristic (default 3 unless --q is given).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long, global = true)]
    e: Option<u32>,
    /// Field size; enough on its own for primes and 4, 8, 9.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Monic modulus over F_p, comma-separated ascending coefficients, e.g. 1,1,1.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Largest number of polynomials a brute-force sum may enumerate.
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Series truncation order N (z^N); defaults to q³ for q ≤ 3 and q² otherwise, at most 256.
    #[arg(long, global = true)]
    trunc: Option<u64>,
    /// Worker threads for brute-force sums.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// τ-coefficients ⟨a⟩_k of the Carlitz module, from every applicable formula.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// S_i(k), the sum of a^k over monic a of degree i.
    PowerSum {
        #[arg(long)]
        i: u32,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "exponents")]
        k: Option<i64>,
        /// ℓ_1,…,ℓ_s for k = q^{ℓ_1} + … + q^{ℓ_s} − 1.
        #[arg(long, value_delimiter = ',', required_unless_present = "k")]
        exponents: Option<Vec<u32>>,
    },
    /// Σ_a ∏_r ∂^{j_r}(a)^{q^{μ_r}} / a over monic a of degree i.
    HyperSum {
        #[arg(long)]
        i: u32,
        /// Comma-separated j:μ pairs.
        #[arg(long)]
        pairs: String,
    },
    /// The special polynomial P_m(x, z), checked against the exponential series.
    SpecialPoly {
        #[arg(long)]
        m: u64,
        /// Print the closed form without truncating in z.
        #[arg(long)]
        full: bool,
    },
    /// Hyperderivative ∂^j(a); with --k also (∂^j a)^{q^k} through the Vandermonde system.
    Hyper {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Run a verification suite.
    Verify { suite: String },
}

enum Failure {
    Usage(String),
    Other(String),
}

impl From<carlitz_lab::Error> for Failure {
    fn from(e: carlitz_lab::Error) -> Self {
        match e {
            carlitz_lab::Error::Usage(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn configure(g: &GlobalArgs) -> Result<CliConfig, Failure> {
    let field = build_field(&FieldArgs { p: g.p, e: g.e, q: g.q, modulus: g.modulus.as_deref() })?;
    let cap = resolve_cap(g.cap)?;
    let trunc = g.trunc.unwrap_or_else(|| default_trunc(field.q()));
    if trunc == 0 {
        return Err(Failure::Usage("--trunc must be at least 1".into()));
    }
    if let Some(n) = g.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Other(format!("cannot start {n} worker threads: {e}")))?;
    }
    Ok(CliConfig { lab: Lab::new(field, cap), format: g.format, seed: g.seed, trunc })
}

fn execute(cli: &Cli) -> Result<(Output, Format), Failure> {
    let cfg = configure(&cli.global)?;
    let field = &cfg.lab.field;
    let out = match &cli.command {
        Command::Bracket { a, k } => commands::bracket(&cfg, &parse_poly(field, a)?, *k)?,
        Command::PowerSum { i, k, exponents } => commands::power_sum(&cfg, *i, *k, exponents.as_deref())?,
        Command::HyperSum { i, pairs } => commands::hyper_sum(&cfg, *i, &commands::parse_pairs(pairs)?)?,
        Command::SpecialPoly { m, full } => commands::special_poly(&cfg, *m, *full)?,
        Command::Hyper { a, j, k } => commands::hyper(&cfg, &parse_poly(field, a)?, *j, *k)?,
        Command::Verify { suite } => {
            let report = suites::run(&cfg, suite)?;
            Output { json: report.to_json(&cfg), text: report.to_text(), ok: report.ok() }
        }
    };
    Ok((out, cfg.format))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((out, format)) => {
            match format {
                Format::Json => print_json(&out.json),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
