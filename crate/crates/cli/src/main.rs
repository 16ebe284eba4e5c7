use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use bring_cli::{dispatch, exit_code, Cli, EXIT_ASSERTION, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli);
    eprintln!("elapsed {} ms", start.elapsed().as_millis());
    match result {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.csv).as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_ASSERTION as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
