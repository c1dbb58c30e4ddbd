use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tnlu_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::from(Cli::parse());
    let out = run(&cfg);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.status as u8)
}
