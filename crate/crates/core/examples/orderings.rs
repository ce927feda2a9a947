//! Catalog orderings, their ambiguity potentials and effective potentials.

use pdm_spectra::ordering::{
    ambiguity_potential, effective_potential, g_coefficient, is_ambiguity_free, make_ordering, q_coefficient,
    NamedOrdering,
};
use pdm_spectra::smoothfn::SmoothFn;

fn main() -> pdm_spectra::Result<()> {
    let mass = SmoothFn::poly(vec![1.0, 0.0, 1.0]);
    let v = SmoothFn::zero();
    println!("mass 1+x², ħ = 1");
    println!("{:<16} {:>22} {:>8} {:>8} {:>10} {:>12} {:>12}", "ordering", "(a, α, β, γ)", "q(c=1)", "g", "amb-free", "U(0.5)", "U_eff(0.5)");
    for n in NamedOrdering::ALL {
        let o = n.params();
        println!(
            "{:<16} {:>22} {:>8.4} {:>8.4} {:>10} {:>12.6} {:>12.6}",
            n.name(),
            format!("({}, {}, {}, {})", o.a(), o.alpha(), o.beta(), o.gamma()),
            q_coefficient(&o, 1.0),
            g_coefficient(&o, 1.0),
            is_ambiguity_free(&o),
            ambiguity_potential(&o, &mass, 1.0).value(0.5)?,
            effective_potential(&o, &mass, &v, 1.0).value(0.5)?,
        );
    }

    // α = 0, a = γ removes the ambiguity term for every mass
    let free = make_ordering(0.7, 0.0, 0.7)?;
    println!("(0.7, 0, -1.7, 0.7): ambiguity-free = {}, U(0.5) = {}", is_ambiguity_free(&free), ambiguity_potential(&free, &mass, 1.0).value(0.5)?);
    Ok(())
}
