use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use zeta2k::cli::{execute, render, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let _ = error.print();
            // Help and version requests are not usage errors.
            return if error.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = execute(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(render(&result, cli.format).as_bytes());
    let _ = stdout.flush();
    ExitCode::from(result.exit_code() as u8)
}
