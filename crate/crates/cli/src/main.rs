use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use qclone_cli::{run, CliError, Command, ExperimentConfig, Overrides};

#[derive(Parser)]
#[command(name = "qclone", version, about = "Optimal qubit cloning: theory, optics simulation, optimizer and tomography")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    args: Overrides,
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = ExperimentConfig::resolve(&cli.args)?;
    let out = run(cli.command, &cfg)?;
    match &cfg.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            out.table.write(cfg.format, &mut w)?;
            w.flush()?;
        }
        None => out.table.write(cfg.format, io::stdout().lock())?,
    }
    out.error.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qclone: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
