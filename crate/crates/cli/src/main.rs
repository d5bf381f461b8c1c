use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qecsim_cli::run(std::env::args_os(), &qecsim_cli::Model::standard()))
}
