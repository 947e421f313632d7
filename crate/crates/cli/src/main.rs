use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use ghz_grover_cli::{run, Cli, CliError, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let code = run(&config, &mut out)?;
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Numerical { .. } = e {
                println!("{}", e.to_json());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
