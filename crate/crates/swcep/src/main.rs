use std::io::Write;

use clap::Parser;
use swcep::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let out = run(&cli);
    if let Some(s) = out.render() {
        let _ = std::io::stdout().write_all(s.as_bytes());
    }
    if let Some(d) = &out.diagnostic {
        eprintln!("{d}");
    }
    std::process::exit(out.exit_code);
}
