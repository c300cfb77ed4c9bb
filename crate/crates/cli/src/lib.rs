//! Command-line front end and HTTP game service.

pub mod commands;
pub mod server;

use std::ffi::OsString;

use clap::Parser;

/// Parse `argv`, run the command, and return the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match commands::run(cli) {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                commands::Failure::Usage(m) => eprintln!("error: {m}"),
                commands::Failure::Verify(m) => eprintln!("verification failed: {m}"),
            }
            f.code()
        }
    }
}
