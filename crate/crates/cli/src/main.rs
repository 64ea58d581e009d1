use std::process::ExitCode;

use clap::Parser;
use confinv_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("confinv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
