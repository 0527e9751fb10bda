//! Command-line front end: spectra, oscillation reports, T-system
//! certificates, best approximations, gap expansions, extremal polynomials,
//! the classical closed forms, and the acceptance battery.
//!
//! Exit codes: 0 success, 1 certified negative result, 2 input error,
//! 3 numerical-tolerance failure.

mod commands;
mod output;

use clap::{Parser, Subcommand};

use chebsturm::Error;

#[derive(Parser)]
#[command(
    name = "chebsturm",
    version,
    about = "Discrete Chebyshev systems and Sturm oscillation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and eigenfunctions of the discrete Sturm-Liouville problem
    Spectrum(commands::SpectrumArgs),
    /// Zero counts and extremal sign changes of a grid function
    Oscillation(commands::OscillationArgs),
    /// Certify a function table as T_Z / T_0-only / neither
    Tsystem(commands::TsystemArgs),
    /// Best uniform approximation with an alternance or dual certificate
    Remez(commands::RemezArgs),
    /// Expansion of the top polynomial with its largest zeros removed
    #[command(name = "gap-expand")]
    GapExpand(commands::GapExpandArgs),
    /// Extremal sign-preserving polynomial with a spectral gap
    Yudin(commands::YudinArgs),
    /// Closed-form determinants and trigonometric corollaries
    Appendix(commands::AppendixArgs),
    /// Run the acceptance battery
    Suite(commands::SuiteArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Spectrum(args) => commands::spectrum(args),
        Command::Oscillation(args) => commands::oscillation(args),
        Command::Tsystem(args) => commands::tsystem(args),
        Command::Remez(args) => commands::remez(args),
        Command::GapExpand(args) => commands::gap_expand_cmd(args),
        Command::Yudin(args) => commands::yudin(args),
        Command::Appendix(args) => commands::appendix(args),
        Command::Suite(args) => commands::suite(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}

/// Map library errors onto the documented exit codes.
fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotChebyshev { .. } | Error::KreinUnverified { .. } => 1,
        Error::InvalidSystem(_)
        | Error::LengthMismatch { .. }
        | Error::OutOfRange { .. }
        | Error::BadPointSet
        | Error::InsufficientRecurrenceData { .. }
        | Error::SubsetBudget { .. }
        | Error::DependentRows { .. }
        | Error::TrivialCoefficients
        | Error::EmptyFunction
        | Error::NegativeTolerance
        | Error::TooManyZeros { .. }
        | Error::PointInsideZeroRange { .. }
        | Error::GridTooSmall { .. }
        | Error::NotNormalized
        | Error::Input(_)
        | Error::Json(_) => 2,
        Error::ProductOverflow { .. }
        | Error::EigenResidual { .. }
        | Error::Singular
        | Error::DegenerateDual
        | Error::SingularReference { .. }
        | Error::ExchangeStalled { .. }
        | Error::RouteDisagreement { .. }
        | Error::ReconstructionFailed { .. }
        | Error::VanishingDeterminant { .. }
        | Error::KernelPivot { .. } => 3,
    }
}
