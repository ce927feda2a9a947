//! Runs a scenario from TOML text in memory and prints its CSV table.
//! Pass a path to run a scenario file instead.

use pdm_spectra::report::execute;
use pdm_spectra::scenario::Scenario;

const TEXT: &str = r#"
schema = "pdm-spectra/1"
name = "li-kuhn-demo"
command = "spectrum"
k = 3
problem = { kind = "example1", m0 = 1.0, c = -0.5, v0 = 2.0 }
ordering = { name = "li-kuhn" }
grid = { points = 400, levels = 3 }
"#;

fn main() -> pdm_spectra::Result<()> {
    let s = match std::env::args().nth(1) {
        Some(p) => Scenario::load(p.as_ref())?,
        None => Scenario::parse(TEXT)?,
    };
    println!("scenario {} (sha256 {})", s.name, s.hash());
    let out = execute(&s)?;
    print!("{}", out.table.to_csv());
    println!("{}", out.summary);
    if let Some(e) = out.failure {
        println!("deferred failure (exit {}): {e}", e.exit_code());
    }
    Ok(())
}
