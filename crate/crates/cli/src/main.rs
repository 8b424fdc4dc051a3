use std::io::{self, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = io::LineWriter::new(stdout);
    let mut err = io::stderr();
    let code = gpfact_cli::run(std::env::args_os().skip(1), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
