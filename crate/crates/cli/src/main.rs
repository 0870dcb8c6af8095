use std::io::Write;
use std::process::ExitCode;

use dfc_cli::{execute, parse_args, CliError, EXIT_DATA};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args_os()) {
        Ok(cfg) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match execute(&cfg, &mut lock) {
                Ok(code) => code,
                Err(e) => report(&e),
            }
        }
        Err(CliError::Clap(e)) => {
            // help and version go to stdout with status 0
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => report(&e),
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_DATA as u8))
}

fn report(e: &CliError) -> i32 {
    eprintln!("dfc: {e}");
    e.exit_code()
}
