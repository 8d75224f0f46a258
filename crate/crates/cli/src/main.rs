use std::io::Write;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;

use qlacuna_cli::{command_name, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    eprintln!(
        "# qlacuna {} command=\"{}\" unix_time={started}",
        env!("CARGO_PKG_VERSION"),
        command_name(&cli.command)
    );
    let (report, error) = run(&cli);
    if let Some(e) = error {
        eprintln!("error: {e}");
    }
    let mut out = std::io::stdout().lock();
    if out
        .write_all(report.render(cli.command.format()).as_bytes())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::from(report.status.exit_code())
}
