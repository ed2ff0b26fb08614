use std::process::ExitCode;

use clap::Parser;

use netinf_cli::commands::{run, Command};

/// Diffusion network inference toolkit: generate ground-truth networks,
/// simulate cascades, infer the hidden network from infection times, and
/// evaluate the result.
#[derive(Parser, Debug)]
#[command(name = "netinf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not failures.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
