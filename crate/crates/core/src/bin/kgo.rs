use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = kgo::cli::main_with(argv, &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
