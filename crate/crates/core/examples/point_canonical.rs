//! The log map `x = (2/c) ln u` turns the exponential-mass problem into a
//! constant-mass oscillator with an inverse-square term.

use pdm_spectra::ordering::NamedOrdering;
use pdm_spectra::pct::{log_map, pull_back_state, push_forward_state, schwarzian, transform_pdm};
use pdm_spectra::problems::Example1;
use pdm_spectra::smoothfn::Interval;

fn main() -> pdm_spectra::Result<()> {
    let ex = Example1::unit();
    let map = log_map(ex.c)?;
    println!("Schwarzian-type correction S(u) = f'''/f' − 1.5 (f''/f')²:");
    let s = schwarzian(&map);
    for u in [0.5, 1.0, 2.0] {
        println!("  S({u}) = {:.12}  (u² S = {:.12})", s.value(u)?, u * u * s.value(u)?);
    }

    let dom = Interval::new(0.25, 4.0)?;
    for n in [NamedOrdering::Weyl, NamedOrdering::BendanielDuke] {
        let tp = transform_pdm(&n.params(), &ex.mass(), &ex.potential(), &map, 1.0, dom)?;
        let vu = |u: f64| tp.potential.value(u);
        println!(
            "{:<16} M = {:.6}; V_u(1) = {:.9}, V_u(2) = {:.9}",
            n.name(),
            tp.mass,
            vu(1.0)?,
            vu(2.0)?
        );
    }

    // states survive the round trip x → u → x
    let xs: Vec<f64> = (0..200).map(|i| -4.0 + 6.0 * i as f64 / 199.0).collect();
    let psi: Vec<f64> = xs.iter().map(|x| (-(x + 1.0) * (x + 1.0)).exp()).collect();
    let (u0, u1) = (map.inverse(-4.0)?, map.inverse(2.0)?);
    let us: Vec<f64> = (0..800).map(|i| u0 + (u1 - u0) * i as f64 / 799.0).collect();
    let chi = push_forward_state(&psi, &xs, &map, &ex.mass(), &us)?;
    let back = pull_back_state(&chi, &us, &map, &ex.mass(), &xs)?;
    let scale = pdm_spectra::pct::l2_norm_sq(&xs, &psi).sqrt();
    let err = psi.iter().zip(&back).map(|(a, b)| (a / scale - b).abs()).fold(0.0, f64::max);
    println!("x → u → x round trip, max pointwise error {err:.2e}");
    Ok(())
}
