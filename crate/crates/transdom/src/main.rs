use std::io::Write;

fn main() {
    let run = transdom::cli::run(std::env::args());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(run.stdout.as_bytes());
    let _ = std::io::stderr().write_all(run.stderr.as_bytes());
    std::process::exit(run.code);
}
