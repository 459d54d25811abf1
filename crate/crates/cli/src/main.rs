use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = primetree_cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    if out.flush().is_err() && code == 0 {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
