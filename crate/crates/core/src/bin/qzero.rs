use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qzero_core::cli::reproduce::cmd_reproduce;
use qzero_core::cli::{cmd_check, cmd_synthesize, cmd_verify, Format, Report, RunConfig, EXIT_INCONSISTENT, EXIT_USAGE};
use qzero_core::Error;

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "qzero", version, about = "Exact zero-error capacity certificates for quantum channels")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget per decision, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    #[arg(long, global = true, default_value_t = RunConfig::default().max_denominator)]
    max_denominator: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Run the heavy exact tensor checks.
    #[arg(long, global = true)]
    deep: bool,
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a subspace, channel or Gaussian file.
    Check {
        path: PathBuf,
        /// Write every certificate and verdict produced to this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Re-derive a named construction with every exact check listed.
    Reproduce {
        name: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Re-check a saved certificate or verdict without searching.
    Verify { path: PathBuf },
    /// Build a channel whose graph is the given subspace.
    Synthesize {
        path: PathBuf,
        /// Where to write the channel data.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Report, Error> {
    let (report, emit) = match &cli.command {
        Command::Check { path, emit } => (cmd_check(path, cfg)?, emit),
        Command::Reproduce { name, emit } => (cmd_reproduce(name, cfg)?, emit),
        Command::Verify { path } => (cmd_verify(path)?, &None),
        Command::Synthesize { path, out } => (cmd_synthesize(path, out.as_deref())?.0, &None),
    };
    if let Some(dir) = emit {
        for p in report.emit(dir)? {
            if cfg.verbose {
                eprintln!("wrote {}", p.display());
            }
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let cfg = RunConfig {
        seed: cli.seed,
        budget_ms: cli.budget_ms,
        max_denominator: cli.max_denominator,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        deep: cli.deep,
        verbose: cli.verbose,
    };
    match run(&cli, &cfg) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("qzero: {e}");
            let code = match e {
                Error::Certificate(_) | Error::Inconsistent(_) => EXIT_INCONSISTENT,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code as u8)
        }
    }
}
