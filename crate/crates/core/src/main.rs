use std::io::{self, Write};
use std::process::ExitCode;

use bsgroup::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
