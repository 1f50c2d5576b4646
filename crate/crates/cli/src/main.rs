use std::process::ExitCode;

use clap::Parser;

use facewise_cli::{run, Emit, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    if config.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&config) {
        Ok(report) => {
            match config.emit {
                Emit::Text => print!("{report}"),
                Emit::Json => println!("{}", report.to_json()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
