use std::process::ExitCode;

use clap::Parser;
use packmech::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version are successes; usage errors are input errors
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let seed = std::env::var("GM_SEED").ok();
    match execute(&cli, seed.as_deref()) {
        Ok(done) => {
            print!("{}", done.stdout);
            ExitCode::from(done.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
