use std::io::Write;

fn main() {
    let outcome = bellpoly::cli::run(std::env::args_os());
    // Ignore write failures on closed pipes.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
