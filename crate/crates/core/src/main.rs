use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lie_homology::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = execute(&cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
