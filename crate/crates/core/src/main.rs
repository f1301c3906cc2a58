use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gabriel_lab::cli::run(std::env::args_os()))
}
