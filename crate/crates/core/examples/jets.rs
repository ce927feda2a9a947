//! Exact value and first three derivatives of closed-form profiles.

use pdm_spectra::smoothfn::SmoothFn;

fn main() -> pdm_spectra::Result<()> {
    let m = SmoothFn::poly(vec![1.0, 0.0, 1.0]);
    let f = SmoothFn::exp(0.5) * m.recip() + SmoothFn::sinusoid(2.0, 0.3).scale(0.1);
    println!("f = e^(x/2)/(1+x²) + 0.1 sin(2x+0.3)");
    println!("{:>6} {:>14} {:>14} {:>14} {:>14}", "x", "f", "f'", "f''", "f'''");
    for x in [-1.0, 0.0, 0.5, 2.0] {
        let j = f.eval_jet(x)?;
        println!("{x:>6.2} {:>14.9} {:>14.9} {:>14.9} {:>14.9}", j.v0, j.v1, j.v2, j.v3);
    }

    // tree differentiation agrees with the jet
    let d = f.derivative();
    let (x, h) = (0.7, 1e-5);
    println!(
        "f'(0.7): jet {:.12}, derivative() {:.12}, central difference {:.12}",
        f.eval_jet(x)?.v1,
        d.value(x)?,
        (f.value(x + h)? - f.value(x - h)?) / (2.0 * h)
    );
    Ok(())
}
