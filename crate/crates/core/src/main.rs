use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = cartmon::cli::run(std::env::args_os());
    // A closed pipe on the reader's side is not our failure.
    let _ = if code == cartmon::cli::EXIT_USAGE {
        writeln!(std::io::stderr().lock(), "{output}")
    } else if !output.is_empty() {
        writeln!(std::io::stdout().lock(), "{output}")
    } else {
        Ok(())
    };
    ExitCode::from(code as u8)
}
