mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use braidshuffle::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{parse_q, Numeric};

/// Quantum shuffle and quasi-shuffle algebras over braided vector spaces.
///
/// Exit status: 0 on success, 1 when a check finds a counterexample, 2 on
/// usage or input errors.
#[derive(Debug, Parser)]
#[command(name = "braidshuffle", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Evaluate printed coefficients at this rational value of q.
    #[arg(long, global = true, value_parser = parse_q)]
    q: Option<Rational>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Degree {
    /// Largest total degree enumerated.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,

    /// Allow degrees above 6.
    #[arg(long)]
    unsafe_degree: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Op {
    Shuffle,
    Quasi,
    Concat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    Lt,
    Gt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OverlapArg {
    Additive,
    Printed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExteriorAction {
    /// Run every check on the exterior algebra.
    Validate,
    /// Write the algebra spec file.
    EmitSpec,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the braid relation and the Yang-Baxter algebra axioms.
    CheckYb { spec: PathBuf },

    /// Multiply two elements.
    Prod {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Op::Quasi)]
        op: Op,
        lhs: String,
        rhs: String,
    },

    /// Run every identity suite up to a degree.
    Verify {
        spec: PathBuf,
        #[command(flatten)]
        degree: Degree,
    },

    /// Build the Lyndon basis slice of one degree (diagonal braidings only).
    Basis {
        spec: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        unsafe_degree: bool,
    },

    /// Write an element in the Lyndon basis.
    Express { spec: PathBuf, element: String },

    /// The quantum exterior algebra on N generators.
    Exterior {
        #[arg(value_enum, default_value_t = ExteriorAction::Validate)]
        action: ExteriorAction,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Lt)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = OverlapArg::Additive)]
        overlap: OverlapArg,
        /// Include the unit in the basis.
        #[arg(long)]
        unital: bool,
        /// Where emit-spec writes; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        degree: Degree,
    },

    /// Check twisted commutativity of the quasi-shuffle product.
    Twist {
        spec: PathBuf,
        #[command(flatten)]
        degree: Degree,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let numeric = Numeric(cli.q);
    let outcome = match cli.command {
        Command::CheckYb { spec } => commands::check_yb(&spec),
        Command::Prod { spec, op, lhs, rhs } => commands::prod(&spec, op, &lhs, &rhs, &numeric),
        Command::Verify { spec, degree } => commands::verify(&spec, &degree),
        Command::Basis {
            spec,
            degree,
            unsafe_degree,
        } => commands::basis(
            &spec,
            &Degree {
                max_degree: degree,
                unsafe_degree,
            },
            &numeric,
        ),
        Command::Express { spec, element } => commands::express(&spec, &element, &numeric),
        Command::Exterior {
            action,
            n,
            convention,
            overlap,
            unital,
            output,
            degree,
        } => commands::exterior(action, n, convention, overlap, unital, output.as_deref(), &degree),
        Command::Twist { spec, degree } => commands::twist(&spec, &degree),
    };
    match outcome {
        Ok(report) => {
            report.print(cli.json);
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
