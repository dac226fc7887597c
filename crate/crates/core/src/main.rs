use std::io::{self, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let needs_input = args
        .get(1)
        .is_some_and(|c| c != "laws" && !c.starts_with('-') && c != "help");
    let mut input = String::new();
    if needs_input {
        if let Err(e) = io::stdin().read_to_string(&mut input) {
            eprintln!("capkit: cannot read standard input: {e}");
            return ExitCode::from(2);
        }
    }
    let (out, code) = capkit::cli::run(args, &input);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(code as u8)
}
