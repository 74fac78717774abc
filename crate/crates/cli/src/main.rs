//! `niven`: contradiction certificates and the exact checks behind them.

mod commands;
mod parse;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use niven_core::witness::DEFAULT_SCAN_CAP;
use niven_core::{Integer, Rational};
use serde_json::json;

use commands::{CliError, Family};
use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(
    name = "niven",
    version,
    about = "Exact irrationality certificates for e and pi"
)]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Enclosure width, e.g. 1e-30, 1/10^30, 0.001.
    #[arg(long, global = true, default_value = "1e-30", value_parser = parse::positive_rational)]
    eps: Rational,

    /// Upper limit for minimal-n scans.
    #[arg(long, global = true, env = "NIVEN_CAP", default_value_t = DEFAULT_SCAN_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a contradiction certificate.
    Witness {
        #[command(subcommand)]
        target: WitnessTarget,
    },
    /// Minimal-n solvers for the bound families.
    Bounds {
        #[command(subcommand)]
        action: BoundsAction,
    },
    /// Shifted Legendre polynomial identities.
    Legendre {
        #[command(subcommand)]
        action: LegendreAction,
    },
    /// Exact integral identities against the series oracle.
    Identity {
        #[command(subcommand)]
        action: IdentityAction,
    },
    /// Rational approximations read off the integral identity.
    Approx {
        #[command(subcommand)]
        target: ApproxTarget,
    },
    /// Fourier's proof that e is irrational.
    Fourier {
        #[command(subcommand)]
        action: FourierAction,
    },
    /// The geometric-tail attack on e^r and where it breaks.
    NaiveBound {
        #[command(subcommand)]
        action: NaiveAction,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessTarget {
    /// Fourier certificate against e = p/q.
    E {
        #[arg(long)]
        q: u64,
    },
    /// Niven certificate against pi = a/b.
    Pi {
        #[arg(long, value_parser = parse::positive_rational)]
        candidate: Rational,
        /// Vanishing order; defaults to the minimal n with a^(2n+1)/(b n!) < 1.
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsAction {
    Solve {
        #[command(subcommand)]
        family: FamilyArg,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyArg {
    /// q r^(2n+1) E / n! for e^r = p/q.
    Exp {
        #[arg(long, value_parser = parse::positive_integer)]
        r: Integer,
        #[arg(long, value_parser = parse::positive_integer)]
        q: Integer,
    },
    /// a^(2n+1) / (b n!) for pi = a/b.
    Pi {
        #[arg(long, value_parser = parse::positive_rational)]
        candidate: Rational,
    },
    /// 2 q r^(2n+1) / (n! (2n+1)), the Legendre coefficient bound.
    Cbs {
        #[arg(long, value_parser = parse::positive_integer)]
        r: Integer,
        #[arg(long, value_parser = parse::positive_integer)]
        q: Integer,
    },
}

#[derive(Subcommand, Debug)]
enum LegendreAction {
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value = "1", value_parser = parse::positive_rational)]
        r: Rational,
    },
}

#[derive(Subcommand, Debug)]
enum IdentityAction {
    Check {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ApproxTarget {
    E {
        #[arg(long, default_value = "1", value_parser = parse::positive_integer)]
        r: Integer,
        #[arg(long, default_value_t = 6)]
        n_max: u64,
        /// Continued-fraction convergents to compare against.
        #[arg(long, default_value_t = 10)]
        cf_terms: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FourierAction {
    Demo {
        #[arg(long, default_value_t = 50)]
        q_max: u64,
    },
}

#[derive(Subcommand, Debug)]
enum NaiveAction {
    Demo {
        #[arg(long, default_value_t = 10)]
        q_max: u64,
    },
}

fn execute(cli: &Cli, report: &mut Report) -> Result<(), CliError> {
    let eps = &cli.eps;
    match &cli.command {
        Command::Witness {
            target: WitnessTarget::E { q },
        } => commands::witness_e(report, *q, eps),
        Command::Witness {
            target: WitnessTarget::Pi { candidate, n },
        } => commands::witness_pi(report, candidate, *n, eps, cli.cap),
        Command::Bounds {
            action: BoundsAction::Solve { family },
        } => {
            let family = match family {
                FamilyArg::Exp { r, q } => Family::Exp {
                    r: r.clone(),
                    q: q.clone(),
                },
                FamilyArg::Pi { candidate } => Family::Pi {
                    candidate: candidate.clone(),
                },
                FamilyArg::Cbs { r, q } => Family::Cbs {
                    r: r.clone(),
                    q: q.clone(),
                },
            };
            commands::bounds_solve(report, &family, cli.cap)
        }
        Command::Legendre {
            action: LegendreAction::Verify { n_max, r },
        } => commands::legendre_verify(report, *n_max, r),
        Command::Identity {
            action:
                IdentityAction::Check {
                    samples,
                    seed,
                    max_degree,
                },
        } => commands::identity_check(report, *samples, *seed, *max_degree, eps),
        Command::Approx {
            target: ApproxTarget::E { r, n_max, cf_terms },
        } => commands::approx_e(report, r, *n_max, *cf_terms, eps),
        Command::Fourier {
            action: FourierAction::Demo { q_max },
        } => commands::fourier_demo(report, *q_max, eps),
        Command::NaiveBound {
            action: NaiveAction::Demo { q_max },
        } => commands::naive_bound_demo(report, *q_max),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Witness {
            target: WitnessTarget::E { .. },
        } => "witness e",
        Command::Witness {
            target: WitnessTarget::Pi { .. },
        } => "witness pi",
        Command::Bounds {
            action: BoundsAction::Solve { family },
        } => match family {
            FamilyArg::Exp { .. } => "bounds solve exp",
            FamilyArg::Pi { .. } => "bounds solve pi",
            FamilyArg::Cbs { .. } => "bounds solve cbs",
        },
        Command::Legendre { .. } => "legendre verify",
        Command::Identity { .. } => "identity check",
        Command::Approx { .. } => "approx e",
        Command::Fourier { .. } => "fourier demo",
        Command::NaiveBound { .. } => "naive-bound demo",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(command_name(&cli.command), &cli.eps);
    let outcome = execute(&cli, &mut report);
    let code = match &outcome {
        Ok(()) => match report.status {
            Status::Ok | Status::Falsified => 0,
            Status::Indeterminate => 4,
            Status::Error => 5,
        },
        Err(e) => {
            eprintln!("niven: {e}");
            report.status = Status::Error;
            if report.results.is_null() {
                report.results = json!({ "error": e.to_string() });
            }
            e.exit_code()
        }
    };
    let body = if cli.json {
        report.to_json()
    } else {
        report.text.clone()
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("niven: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
