//! Quadratic mass with an inverse-quartic potential: the ground state
//! depends on the ordering and no ordering removes the dependence.

use pdm_spectra::analytic::example2_spectrum;
use pdm_spectra::ordering::{g_coefficient, NamedOrdering};
use pdm_spectra::problems::{Example2, DEFAULT_LEVELS};

fn main() -> pdm_spectra::Result<()> {
    let ex = Example2::new(1.0, 1.0 / 32.0, -5.0)?;
    println!("m = x², A = 1/32, B = −5");
    for n in NamedOrdering::ALL {
        let o = n.params();
        let s = example2_spectrum(ex.c, ex.a, ex.b, &o, 1.0, 1)?;
        let dom = ex.default_domain(&o, 1.0, 2);
        let rep = ex.problem(&o, 1.0, 2)?.refine_report(1600, DEFAULT_LEVELS, 2)?;
        println!(
            "{:<16} g = {:+.4}  x ∈ [0, {:.2}]  E_0 = {:.8} ± {:.1e} (order {:.2})  derived {}",
            n.name(),
            g_coefficient(&o, 1.0),
            dom.hi,
            rep.extrapolated[0],
            rep.error_estimates[0],
            rep.observed_order[0],
            s.derived_mapping.levels.first().map_or("forbidden".to_string(), |e| format!("{e:.8}")),
        );
    }
    Ok(())
}
