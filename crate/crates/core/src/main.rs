// SPDX-License-Identifier: Apache-2.0
use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::Parser;
use gam_core::cli::{run, Cli};
use gam_core::GamError;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut stdout = std::io::stdout();
    let result = run(cli, &mut stdout);
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // A closed reader (`gam ... | head`) is not a failure.
        Err(GamError::Io { source, .. }) if source.kind() == ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gam: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
