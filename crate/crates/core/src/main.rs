use std::process::ExitCode;

use badprimes::cli::{run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.common.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("thread pool");
    }
    let outcome = run(&cli).and_then(|out| {
        match &cli.common.out {
            Some(path) => std::fs::write(path, &out.json)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
            None => print!("{}", out.json),
        }
        Ok(out.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
