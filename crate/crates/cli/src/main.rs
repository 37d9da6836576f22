use std::io::Write;
use std::process::ExitCode;

use sqwell_cli::{run, EXIT_USAGE};

fn main() -> ExitCode {
    let outcome = run(std::env::args_os());
    eprint!("{}", outcome.stderr);
    let written = match &outcome.output {
        Some(path) => std::fs::write(path, &outcome.stdout).map_err(|e| format!("{}: {e}", path.display())),
        None => match std::io::stdout().write_all(&outcome.stdout) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
            _ => Ok(()),
        },
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.code as u8)
}
