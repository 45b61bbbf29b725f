use std::process::ExitCode;

fn main() -> ExitCode {
    imbcost::cli::main()
}
