//! Closed-form levels of both families under every catalog ordering, in
//! the printed form and in the form obtained from the reduction.

use pdm_spectra::analytic::{example1_spectrum, example2_spectrum, SpectrumFormula};
use pdm_spectra::ordering::NamedOrdering;

fn show(label: &str, s: &SpectrumFormula) {
    let levels: Vec<String> = s.levels.iter().map(|e| format!("{e:.6}")).collect();
    println!(
        "    {label:<8} ν = {:.4}{:+.4}i  {:?}  [{}]",
        s.nu.re,
        s.nu.im,
        s.classification,
        levels.join(", ")
    );
}

fn main() -> pdm_spectra::Result<()> {
    println!("m = e^x, V = e^x");
    for n in NamedOrdering::ALL {
        let s = example1_spectrum(1.0, 1.0, 1.0, &n.params(), 1.0, 2)?;
        println!("  {}", n.name());
        show("printed", &s.printed);
        show("derived", &s.derived_mapping);
    }
    println!("m = x², V = (1/32)/x⁴ − 5/x²");
    for n in NamedOrdering::ALL {
        let s = example2_spectrum(1.0, 1.0 / 32.0, -5.0, &n.params(), 1.0, 2)?;
        println!("  {}", n.name());
        show("printed", &s.printed);
        show("derived", &s.derived_mapping);
    }
    Ok(())
}
