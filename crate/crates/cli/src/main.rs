use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curveprime_cli::search::{cmd_search, SearchSpec};
use curveprime_cli::selftest::{cmd_selftest, Fixtures};
use curveprime_cli::{cmd_test, Candidate, Family, RunOptions, UsageError, DEFAULT_F, DEFAULT_H, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "curveprime", version, about = "Deterministic primality tests from elliptic and genus-2 curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for searches (0 = one per core)
    #[arg(long, global = true, env = "CURVEPRIME_JOBS", default_value_t = 0)]
    jobs: usize,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Test a single number
    Test(TestArgs),
    /// Test every n in a range
    Search(SearchArgs),
    /// Run the built-in checks
    Selftest {
        /// Skip the enumeration oracles above F_499 and shorten sweeps
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct Common {
    /// A: m*2^n - 1, S: p^2*16^n + 1, L: 4*5^n - 1, mersenne: 2^p - 1
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    /// Curve constant for L (y^2 = x^5 + h)
    #[arg(long, default_value_t = DEFAULT_H, allow_negative_numbers = true)]
    h: i64,
    /// Starting divisor for L as "u;v"
    #[arg(long = "F", default_value = DEFAULT_F)]
    f: String,
    /// One JSON object per record
    #[arg(long)]
    json: bool,
    /// Append the oracle verdict (not a certificate)
    #[arg(long)]
    cross_check: bool,
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: Option<u64>,
    /// Print every term of the recurrence
    #[arg(long)]
    dump_trace: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    min_n: Option<u64>,
    #[arg(long)]
    max_n: u64,
}

fn need(v: Option<u64>, flag: &str, family: Family) -> Result<u64, UsageError> {
    v.ok_or_else(|| UsageError(format!("{family} needs --{flag}")))
}

fn candidate(args: &TestArgs) -> Result<Candidate, UsageError> {
    let c = &args.common;
    Ok(match c.family {
        Family::A => Candidate::A {
            m: need(c.m, "m", c.family)?,
            n: need(args.n, "n", c.family)?,
        },
        Family::S => Candidate::S {
            p: need(c.p, "p", c.family)?,
            n: need(args.n, "n", c.family)?,
        },
        Family::L => Candidate::lambda(need(args.n, "n", c.family)?, c.h, &c.f)?,
        Family::Mersenne => Candidate::Mersenne {
            p: need(c.p, "p", c.family)?,
        },
    })
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, UsageError> {
    let io_err = |e: io::Error| UsageError(format!("write failed: {e}"));
    match cli.command {
        Command::Test(args) => {
            let opts = RunOptions {
                trace: args.dump_trace,
                cross_check: args.common.cross_check,
            };
            let (rec, code) = cmd_test(&candidate(&args)?, opts)?;
            let text = if args.common.json { rec.to_json() } else { rec.to_human() };
            writeln!(out, "{text}").map_err(io_err)?;
            Ok(code)
        }
        Command::Search(args) => {
            let c = &args.common;
            let spec = SearchSpec {
                family: c.family,
                m: c.m,
                p: c.p,
                h: c.h,
                f: c.f.clone(),
                min_n: args.min_n,
                max_n: args.max_n,
            };
            let opts = RunOptions {
                trace: false,
                cross_check: c.cross_check,
            };
            let mut failed = None;
            let summary = cmd_search(&spec, opts, cli.jobs, |item| {
                let text = if c.json { item.to_json() } else { item.to_human() };
                if let Err(e) = writeln!(out, "{text}").and_then(|_| out.flush()) {
                    failed.get_or_insert(e);
                }
            })?;
            if let Some(e) = failed {
                return Err(io_err(e));
            }
            if c.json {
                eprintln!("{summary}");
            } else {
                writeln!(out, "{summary}").map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Selftest { quick } => {
            let code = cmd_selftest(&Fixtures::builtin(), quick, cli.jobs, |r| {
                let _ = writeln!(out, "{}", r.line());
            });
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {path}: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
