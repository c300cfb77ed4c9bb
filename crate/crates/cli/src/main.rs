use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(pangalactic_cli::run(std::env::args_os()))
}
