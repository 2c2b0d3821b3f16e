use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use steinberg_core::cli::{error_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.render(cli.global.format).as_bytes());
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                let report = serde_json::json!({ "failures": out.failures });
                eprintln!("{report}");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let report = serde_json::json!({ "error": e.to_string() });
            eprintln!("{report}");
            ExitCode::from(error_code(&e) as u8)
        }
    }
}
