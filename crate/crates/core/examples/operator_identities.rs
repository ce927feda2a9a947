//! Operator-level checks with exact jets: the ordered Hamiltonian against
//! its canonical form, Weyl against Li–Kuhn, and the linear-momentum
//! quantization.

use pdm_spectra::opcheck::{
    canonical_form_residual, linear_quantization, measure_kappa, residual_weyl_lk, run_identity_suite, suite_functions,
    suite_points, ComplexFn,
};
use pdm_spectra::ordering::make_ordering;
use pdm_spectra::smoothfn::SmoothFn;

fn main() -> pdm_spectra::Result<()> {
    let mass = SmoothFn::poly(vec![1.0, 0.0, 1.0]);
    let (fns, pts) = (suite_functions(), suite_points());
    let ord = make_ordering(0.4, -0.3, 0.8)?;
    println!("canonical form residual ({ord}): {:.3e}", canonical_form_residual(&ord, &mass, &fns, &pts, 1.0)?);
    println!("Weyl vs Li–Kuhn residual: {:.3e}", residual_weyl_lk(&mass, &fns, &pts, 1.0)?);

    let psi = ComplexFn::real(SmoothFn::gaussian(0.2, 1.0));
    let x = 0.6;
    for alpha in [-1.0, 0.0, 0.5, 2.0] {
        let plain = linear_quantization(&mass, alpha, &psi, x, 1.0, false)?;
        let sym = linear_quantization(&mass, alpha, &psi, x, 1.0, true)?;
        println!("α = {alpha:+.1}: f^α p f^(1−α) ψ = {plain:.9}, symmetrized = {sym:.9}");
    }
    println!("κ = {:.15}", measure_kappa(&mass, &psi, x, 1.0, 0.3)?.re);

    let rep = run_identity_suite(1.0)?;
    for c in &rep.checks {
        println!("{:<28} {:.3e} ≤ {:.0e}: {}", c.name, c.value, c.threshold, c.pass);
    }
    Ok(())
}
