use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use designlab::FisherVariant;
use designlab_cli::commands::{self, EnumerateArgs, Family};
use designlab_cli::report::{Payload, Report};
use designlab_cli::selftest::Level;
use designlab_cli::{CliError, DesignFormat};

/// Incidence structures, exact linear algebra and certified Fisher-type
/// bounds.
#[derive(Parser)]
#[command(name = "designlab", version)]
struct Cli {
    /// Design file format; inferred from the extension or contents when
    /// omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<DesignFormat>,
    /// Emit the full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Uniform,
    #[value(alias = "odd-town")]
    Oddtown,
    General,
    Dual,
}

impl From<VariantArg> for FisherVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Uniform => FisherVariant::Uniform,
            VariantArg::Oddtown => FisherVariant::OddTown,
            VariantArg::General => FisherVariant::General,
            VariantArg::Dual => FisherVariant::Dual,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    OddTown,
    ConstIntersect,
    Bibd,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::OddTown => Family::OddTown,
            FamilyArg::ConstIntersect => Family::ConstIntersect,
            FamilyArg::Bibd => Family::Bibd,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a design.
    Check { path: PathBuf },
    /// Print the 0-1 incidence matrix (points by blocks).
    Matrix { path: PathBuf },
    /// Build the dual system, in the input's format.
    Dual {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the complementary system, in the input's format.
    Complement {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check one variant of Fisher's inequality.
    Fisher {
        #[arg(long, value_enum)]
        variant: VariantArg,
        path: PathBuf,
    },
    /// Decide whether two systems are isomorphic.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Print every family of a kind, one per line.
    Enumerate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        full: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let mut stdout = io::stdout().lock();
    let mut to_stderr = false;
    let result: Result<Report, CliError> = match &cli.command {
        Command::Check { path } => commands::cmd_check(path, format),
        Command::Matrix { path } => commands::cmd_matrix(path, format),
        Command::Dual { path, out } => commands::cmd_dual(path, format, out.as_deref()),
        Command::Complement { path, out } => commands::cmd_complement(path, format, out.as_deref()),
        Command::Fisher { variant, path } => commands::cmd_fisher(path, format, (*variant).into()),
        Command::Isomorphic { first, second } => commands::cmd_isomorphic(first, second, format),
        Command::Enumerate { family, v, k, lambda, limit } => {
            to_stderr = true;
            let args = EnumerateArgs { family: (*family).into(), v: *v, k: *k, lambda: *lambda, limit: *limit };
            commands::cmd_enumerate(&args, &mut stdout)
        }
        Command::Selftest { full } => Ok(commands::cmd_selftest(if *full { Level::Full } else { Level::Quick })),
    };
    let report = result.unwrap_or_else(|e| Report::error(std::env::args().skip(1).collect(), e.to_string()));
    let failed = matches!(report.payload, Payload::Error { .. });
    let rendered = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    let written = if to_stderr || (failed && !cli.json) {
        io::stderr().write_all(rendered.as_bytes())
    } else {
        stdout.write_all(rendered.as_bytes()).and_then(|_| stdout.flush())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code as u8)
}
