//! Exponential mass: numeric levels for each ordering next to the closed
//! forms, plus the same problem solved in the transformed coordinate.

use pdm_spectra::analytic::example1_spectrum;
use pdm_spectra::ordering::NamedOrdering;
use pdm_spectra::problems::{Example1, DEFAULT_LEVELS, DEFAULT_POINTS};

fn main() -> pdm_spectra::Result<()> {
    let ex = Example1::unit();
    for n in [NamedOrdering::Weyl, NamedOrdering::LiKuhn, NamedOrdering::ZhuKroemer, NamedOrdering::BendanielDuke] {
        let o = n.params();
        let rep = ex.problem(&o, 1.0)?.refine(DEFAULT_POINTS, DEFAULT_LEVELS, 3)?;
        let s = example1_spectrum(ex.m0, ex.c, ex.v0, &o, 1.0, 2)?;
        println!("{}", n.name());
        for k in 0..3 {
            println!(
                "  E_{k}: numeric {:.10} ± {:.1e}   derived {:.10}   printed {:.10}",
                rep.extrapolated[k], rep.error_estimates[k], s.derived_mapping.levels[k], s.printed.levels[k]
            );
        }
    }

    let x = ex.problem_on(&NamedOrdering::Weyl.params(), 1.0, ex.cross_route_domain())?;
    let u = ex.u_route(&x)?;
    let (rx, ru) = (x.refine(DEFAULT_POINTS, DEFAULT_LEVELS, 3)?, u.refine(4000, DEFAULT_LEVELS, 3)?);
    println!("same truncation, both coordinates (u boundaries {:?} / {:?}):", u.lower, u.upper);
    for k in 0..3 {
        println!("  E_{k}: x {:.12}   u {:.12}", rx.extrapolated[k], ru.extrapolated[k]);
    }

    // Gora–Williams: the reduced barrier exceeds the critical strength
    let gw = ex.half_line_u(&NamedOrdering::GoraWilliams.params(), 1.0, ex.default_u_max(1.0))?;
    match gw.refine(400, 4, 1) {
        Ok(r) => println!("gora-williams: unexpectedly converged to {}", r.extrapolated[0]),
        Err(e) => println!("gora-williams: {e}"),
    }
    Ok(())
}
