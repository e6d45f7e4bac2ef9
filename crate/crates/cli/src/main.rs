use std::process::ExitCode;

use clap::Parser;
use handinput_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match handinput_cli::execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("handinput: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
