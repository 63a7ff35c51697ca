use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(u21_core::cli::run(std::env::args_os()))
}
