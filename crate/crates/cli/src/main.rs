//! `chow`: command-line access to the Chow rings of linear and nonlinear
//! Grassmannians.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on a usage
//! error (bad ranges, unparsable input, mismatched rings).

mod commands;
mod expr;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "chow",
    version,
    about = "Exact Chow rings of linear and nonlinear Grassmannians"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// The ring `Ch(k, r, d)` of degree-`d` maps `P^k -> P^r`.
#[derive(Args, Debug, Clone, Copy)]
struct RingArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    d: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators, relations and graded dimensions of Ch(k, r, d).
    Ring(RingArgs),
    /// Product of two elements, given as expressions, JSON or @file.
    Multiply {
        #[command(flatten)]
        ring: RingArgs,
        a: String,
        b: String,
    },
    /// Image of an element of Ch(k, r, d) in the Schubert basis.
    Lambda {
        #[command(flatten)]
        ring: RingArgs,
        element: String,
    },
    /// Normal form in Ch(k, r, d) of a Schubert class expression.
    LambdaInv {
        #[command(flatten)]
        ring: RingArgs,
        element: String,
    },
    /// Push-forward of (d xi)^power along P(S) -> G(P^k, P^n).
    Pushforward {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        power: u32,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Generators of the relation ideal of Ch(k, r, d).
    Relations(RingArgs),
    /// Run one of the invariant suites.
    Verify {
        suite: Suite,
        #[command(flatten)]
        bounds: verify::Bounds,
    },
    /// Basepoint check and torus probe for a tuple of forms (JSON or @file).
    Stability {
        tuple: String,
        #[arg(long)]
        q: u32,
        /// Random weight vectors per torus.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        basis_changes: usize,
        /// Defaults to $CHOW_SEED, then to a fixed seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    Series,
    Relations,
    Duality,
    Lambda,
    Basis,
    Pushforward,
    Git,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ring(a) => commands::ring(a.k, a.r, a.d),
        Command::Multiply { ring, a, b } => commands::multiply(ring.k, ring.r, ring.d, &a, &b),
        Command::Lambda { ring, element } => commands::lambda(ring.k, ring.r, ring.d, &element),
        Command::LambdaInv { ring, element } => {
            commands::lambda_inv(ring.k, ring.r, ring.d, &element)
        }
        Command::Pushforward { k, n, power, d } => commands::pushforward(k, n, power, d),
        Command::Relations(a) => commands::relations(a.k, a.r, a.d),
        Command::Verify { suite, bounds } => verify::run(suite, &bounds),
        Command::Stability {
            tuple,
            q,
            samples,
            basis_changes,
            seed,
        } => commands::stability(&tuple, q, samples, basis_changes, seed),
    };
    match result {
        Ok(report) => {
            report.print(cli.format);
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("chow: {e}");
            ExitCode::from(2)
        }
    }
}
