//! Numeric verdicts on the printed constants of both families.

use pdm_spectra::audit::{run_audit, AuditConfig};

fn main() -> pdm_spectra::Result<()> {
    let rep = run_audit(&AuditConfig::default())?;
    for d in &rep.discrepancies {
        println!("{:<26} {:<12} {}", d.code, format!("{:?}", d.status).to_lowercase(), d.note);
    }
    println!("\nexample 1 ({}):", rep.config.ordering);
    for r in &rep.example1_rows {
        println!("  n={} printed {:.8} derived {:.8} numeric {:.8} {:?}", r.n, r.analytic_paper, r.analytic_derived, r.numeric, r.flags);
    }
    println!("example 2:");
    for r in &rep.example2_rows {
        println!("  n={} printed {:.8} derived {:.8} numeric {:.8} {:?}", r.n, r.analytic_paper, r.analytic_derived, r.numeric, r.flags);
    }
    Ok(())
}
