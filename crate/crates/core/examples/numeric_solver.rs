//! Finite-difference pencil, Sturm bisection and Richardson refinement on
//! the harmonic oscillator and a PDM problem.

use pdm_spectra::numeric::{discretize, lowest_eigenvalues, pencil_residual, refine, DiscretizationForm, Grid1D};
use pdm_spectra::smoothfn::SmoothFn;

fn main() -> pdm_spectra::Result<()> {
    let one = SmoothFn::constant(1.0);
    let v = SmoothFn::poly(vec![0.0, 0.0, 0.5]);
    let grid = Grid1D::new(-10.0, 10.0, 200)?;
    let rep = refine(&one, &v, 1.0, DiscretizationForm::ConstantMass, &grid, 4, 4)?;
    println!("oscillator, 4 levels of refinement from 200 points");
    for n in 0..4 {
        let raw: Vec<String> = rep.raw.iter().map(|r| format!("{:.9}", r[n])).collect();
        println!(
            "  n={n}: raw [{}] → {:.12} ± {:.1e} (order {:.3})",
            raw.join(", "),
            rep.extrapolated[n],
            rep.error_estimates[n],
            rep.observed_order[n]
        );
    }

    let mass = SmoothFn::poly(vec![1.0, 0.0, 0.3]);
    let gp = discretize(&mass, &v, 1.0, &Grid1D::new(-8.0, 8.0, 400)?, DiscretizationForm::PdmGeneralized)?;
    let r = lowest_eigenvalues(&gp, 3, true)?;
    let vecs = r.eigenvectors.as_ref().expect("requested");
    println!("m = 1 + 0.3x², single grid:");
    for (n, e) in r.eigenvalues.iter().enumerate() {
        println!(
            "  E_{n} = {e:.10}, {} levels below, pencil residual {:.1e}",
            gp.sturm_count(*e),
            pencil_residual(&gp, &vecs[n], *e)
        );
    }
    Ok(())
}
