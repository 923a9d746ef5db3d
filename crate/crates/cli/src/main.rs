use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (status, out, err) = codelat_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    if !err.is_empty() {
        let _ = std::io::stderr().write_all(err.as_bytes());
    }
    ExitCode::from(status as u8)
}
