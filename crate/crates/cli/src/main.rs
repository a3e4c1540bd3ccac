use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(matchstick_cli::cli::run(std::env::args_os()))
}
