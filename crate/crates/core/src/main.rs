use std::process::ExitCode;

fn main() -> ExitCode {
    freemult::cli::main_with_args(std::env::args_os())
}
