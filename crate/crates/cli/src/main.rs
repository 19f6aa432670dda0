use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod io;
mod report;
mod setup;
mod verify;

use io::Format;
use setup::UsageError;

#[derive(Parser)]
#[command(
    name = "exseq",
    version,
    about = "Exceptional sequences, silting objects, configurations and noncrossing partitions of Dynkin type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
pub struct TypeArgs {
    /// Dynkin type, e.g. A3, D4, E6, B2.
    #[arg(long = "type")]
    pub ty: String,
    /// Quiver orientation as JSON: an arrow list `[[1,2],[3,2]]` (1-based,
    /// topologically numbered) or a full descriptor. Default: standard.
    #[arg(long)]
    pub orientation: Option<String>,
    /// Worker threads for parallel enumeration.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    MClusterTilting,
    MConfig,
    MConfigMinus,
    SiltingDeg1Window,
    SiltingInWindow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    SiltingToConfig,
    ConfigToSilting,
    NcToConfig,
    ConfigToNc,
    SiltingToNc,
}

#[derive(Subcommand)]
enum Command {
    /// List all objects of one kind, canonically sorted.
    Enumerate {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long)]
        m: i32,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Degree window `lo:hi` for `silting-in-window`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
        /// Write the listing here instead of standard output.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run the count, bijection and mutation checks; exit 0 iff all pass.
    Verify {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long)]
        m: i32,
    },
    /// Apply a bijection to every record of an input file.
    Biject {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// Needed by the noncrossing directions; inferred from the tuple
        /// length for `nc-to-config`.
        #[arg(long)]
        m: Option<i32>,
        /// Include the ordered exceptional sequence and every mutation.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// List or count m-noncrossing partitions.
    Nc {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long)]
        m: i32,
        #[arg(long)]
        count: bool,
        /// Include the matrix of every part.
        #[arg(long)]
        matrices: bool,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Periodic combinatorial configurations from the minus-window
    /// 1-configurations.
    Riedtmann {
        #[command(flatten)]
        t: TypeArgs,
        /// Check both directions and exit 0 iff all round trips succeed.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Windowed torsion classes A(M) of the collections in a file.
    Torsion {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "-1:3", allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Enumerate { t, m, kind, window, out, file } => {
            commands::enumerate(&t, m, kind, window.as_deref(), out, file.as_deref())
        }
        Command::Verify { t, m } => commands::verify(&t, m),
        Command::Biject { t, direction, input, m, trace, file } => {
            commands::biject(&t, direction, &input, m, trace, file.as_deref())
        }
        Command::Nc { t, m, count, matrices, file } => commands::nc(&t, m, count, matrices, file.as_deref()),
        Command::Riedtmann { t, verify, file } => commands::riedtmann(&t, verify, file.as_deref()),
        Command::Torsion { t, input, window, file } => commands::torsion(&t, &input, &window, file.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
