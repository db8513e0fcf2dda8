use std::process::ExitCode;

use clap::Parser;
use orecode_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match orecode_cli::init_threads().and_then(|_| orecode_cli::run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
