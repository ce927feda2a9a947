use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pdm_spectra::report::run_scenario;
use pdm_spectra::scenario::Scenario;

/// Runs a pdm-spectra scenario file and writes `<prefix>.csv` and `<prefix>.json`.
///
/// Exit status: 0 ok, 2 scenario error, 3 solver not converging,
/// 4 identity threshold exceeded, 1 other failures.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Scenario file (TOML, schema "pdm-spectra/1").
    #[arg(required_unless_present = "dump_default")]
    scenario: Option<PathBuf>,
    /// Output path prefix; overrides the scenario's `output`.
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
    /// Print the default scenario and exit.
    #[arg(long)]
    dump_default: bool,
    /// Suppress the summary on stdout.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.dump_default {
        print!("{}", Scenario::default().to_toml());
        return ExitCode::SUCCESS;
    }
    let path = cli.scenario.expect("required by clap");
    match run_scenario(&path, cli.out.as_deref()) {
        Ok((outcome, csv, json)) => {
            if !cli.quiet {
                println!("{}", outcome.summary);
                println!("wrote {} and {}", csv.display(), json.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("pdm-spectra: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
