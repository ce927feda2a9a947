//! Closed-form spectra.
//!
//! Both example families reduce to the half-line oscillator with an
//! inverse-square term, `−ħ²/(2m) χ'' + (m ω² u²/2 − g/u²) χ = E χ`, whose
//! levels are `ħω(2n + 1 + ν)` with `ν = √(1/4 − 2 m g/ħ²)`.
//!
//! Example spectra come in two variants: the formulas as printed in the
//! literature (`Printed`) and the ones obtained by running the
//! reduction here (`DerivedMapping`). They differ; the numeric solver
//! decides which one holds.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::{g_coefficient, q_coefficient, OrderingParams};
use crate::pct::{log_map, transform_pdm};
use crate::smoothfn::{Interval, SmoothFn};

/// `|Im ν|` above this marks an ordering as unphysical.
pub const COMPLEX_NU_TOL: f64 = 1e-12;
/// Radicands of `ν²` this close to zero are treated as zero.
pub const RADICAND_ROUNDOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Physical,
    ForbiddenComplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Printed,
    DerivedMapping,
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierOscillator {
    pub omega: f64,
    /// Coefficient of `−barrier/u²`; positive is attractive.
    pub barrier: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl BarrierOscillator {
    pub fn new(omega: f64, barrier: f64, hbar: f64, mass: f64) -> Result<Self> {
        if !(omega > 0.0) || !(mass > 0.0) || !(hbar > 0.0) || !barrier.is_finite() {
            return Err(Error::InvalidParam(format!(
                "barrier oscillator needs ω, m, ħ > 0 (ω = {omega}, m = {mass}, ħ = {hbar})"
            )));
        }
        Ok(BarrierOscillator {
            omega,
            barrier,
            hbar,
            mass,
        })
    }

    /// Radicands within roundoff of zero are the critical case `ν = 0`.
    pub fn nu(&self) -> Complex64 {
        let r = 0.25 - 2.0 * self.mass * self.barrier / (self.hbar * self.hbar);
        let r = if r.abs() <= RADICAND_ROUNDOFF { 0.0 } else { r };
        Complex64::new(r, 0.0).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumFormula {
    #[serde(serialize_with = "ser_complex")]
    pub nu: Complex64,
    /// Empty for forbidden-complex `ν`.
    pub levels: Vec<f64>,
    pub classification: Classification,
    pub provenance: Provenance,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl SpectrumFormula {
    fn build(nu: Complex64, n_max: usize, provenance: Provenance, level: impl Fn(usize, f64) -> f64) -> Self {
        let classification = classify_ordering(nu);
        let levels = match classification {
            Classification::Physical => (0..=n_max).map(|n| level(n, nu.re)).collect(),
            Classification::ForbiddenComplex => Vec::new(),
        };
        SpectrumFormula {
            nu,
            levels,
            classification,
            provenance,
        }
    }

    pub fn is_physical(&self) -> bool {
        self.classification == Classification::Physical
    }

    /// `E_{n+1} − E_n`
    pub fn spacings(&self) -> Vec<f64> {
        self.levels.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Both readings of one closed-form spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumVariants {
    pub printed: SpectrumFormula,
    pub derived_mapping: SpectrumFormula,
}

pub fn classify_ordering(nu: Complex64) -> Classification {
    if nu.im.abs() > COMPLEX_NU_TOL {
        Classification::ForbiddenComplex
    } else {
        Classification::Physical
    }
}

/// `E_n = ħω(2n + 1 + ν)`, `n = 0..=n_max`.
pub fn barrier_levels(p: &BarrierOscillator, n_max: usize) -> SpectrumFormula {
    let hw = p.hbar * p.omega;
    SpectrumFormula::build(p.nu(), n_max, Provenance::Reference, |n, nu| {
        hw * (2.0 * n as f64 + 1.0 + nu)
    })
}

/// Example 1: `m = m0 e^{cx}`, `V = V0 e^{cx}`.
///
/// Printed: `ν = √(1/4 − 2q/c²)`, `E_n = ħ|c|√(2V0/m0)(2n + 1 + ν)`.
/// Derived: the log map is applied to the ordered problem, the result is
/// identified as a barrier oscillator and solved with [`barrier_levels`].
pub fn example1_spectrum(
    m0: f64,
    c: f64,
    v0: f64,
    ord: &OrderingParams,
    hbar: f64,
    n_max: usize,
) -> Result<SpectrumVariants> {
    if !(m0 > 0.0) || !(v0 > 0.0) {
        return Err(Error::InvalidParam(format!("example 1 needs m0, V0 > 0 (m0 = {m0}, V0 = {v0})")));
    }
    if c == 0.0 || !c.is_finite() || !(hbar > 0.0) {
        return Err(Error::InvalidParam(format!("example 1 needs c != 0 and ħ > 0 (c = {c}, ħ = {hbar})")));
    }
    let q = q_coefficient(ord, c);
    let nu_p = Complex64::new(0.25 - 2.0 * q / (c * c), 0.0).sqrt();
    let scale = hbar * c.abs() * (2.0 * v0 / m0).sqrt();
    let printed = SpectrumFormula::build(nu_p, n_max, Provenance::Printed, |n, nu| {
        scale * (2.0 * n as f64 + 1.0 + nu)
    });

    let (osc, shift) = example1_reduction(m0, c, v0, ord, hbar)?;
    let reference = barrier_levels(&osc, n_max);
    let derived_mapping = SpectrumFormula {
        levels: reference.levels.iter().map(|e| e + shift).collect(),
        provenance: Provenance::DerivedMapping,
        ..reference
    };
    Ok(SpectrumVariants {
        printed,
        derived_mapping,
    })
}

/// Runs the log-map reduction of example 1 and identifies the transformed
/// potential `a u² + b/u² + d` as a barrier oscillator plus the shift `d`.
pub fn example1_reduction(
    m0: f64,
    c: f64,
    v0: f64,
    ord: &OrderingParams,
    hbar: f64,
) -> Result<(BarrierOscillator, f64)> {
    let mass = SmoothFn::exp(c).scale(m0);
    let pot = SmoothFn::exp(c).scale(v0);
    let map = log_map(c)?;
    let tp = transform_pdm(ord, &mass, &pot, &map, hbar, Interval::new(0.25, 4.0)?)?;
    let [a, b, d] = fit_barrier(&tp.potential)?;
    if !(a > 0.0) {
        return Err(Error::NotReducible(format!("transformed u² coefficient {a} is not confining")));
    }
    let omega = (2.0 * a / tp.mass).sqrt();
    Ok((BarrierOscillator::new(omega, -b, hbar, tp.mass)?, d))
}

/// Fits `v(u) = a u² + b/u² + d` through three points and checks it on
/// sixteen more.
fn fit_barrier(v: &SmoothFn) -> Result<[f64; 3]> {
    let us = [0.5, 1.0, 2.0];
    let mut rows = [[0.0; 4]; 3];
    for (row, &u) in rows.iter_mut().zip(&us) {
        *row = [u * u, 1.0 / (u * u), 1.0, v.value(u)?];
    }
    let sol = solve3(rows).ok_or_else(|| Error::NotReducible("degenerate barrier fit".into()))?;
    let model = |u: f64| sol[0] * u * u + sol[1] / (u * u) + sol[2];
    for u in Interval::new(0.3, 3.0)?.sample_points(16) {
        let (got, want) = (v.value(u)?, model(u));
        let scale = (sol[0] * u * u).abs() + (sol[1] / (u * u)).abs() + sol[2].abs();
        if (got - want).abs() > 1e-9 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NotReducible(format!(
                "transformed potential is not a barrier oscillator at u = {u} ({got} vs {want})"
            )));
        }
    }
    Ok(sol)
}

fn solve3(mut m: [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let p = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[p][col] == 0.0 {
            return None;
        }
        m.swap(col, p);
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for k in col..4 {
                    m[r][k] -= f * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Example 2: `m = c x²`, `V = A/(c x⁴) + B/(c x²)` on `x > 0`.
///
/// Printed: `ν = √(1/4 − 2(A+g)/ħ²)`, `E_n = −2B²/(c(2n+ν+1)²ħ²)`.
/// Derived: multiplying by `m` gives `−ħ²/2 φ'' + ((A+g)/x² + B) φ = E c x² φ`,
/// a unit-mass barrier oscillator with `ω² = −2Ec`, barrier `−(A+g)` and
/// level `−B`, so `E_n = −B²/(2cħ²(2n+1+ν)²)` with `ν = √(1/4 + 2(A+g)/ħ²)`.
pub fn example2_spectrum(
    cmass: f64,
    a: f64,
    b: f64,
    ord: &OrderingParams,
    hbar: f64,
    n_max: usize,
) -> Result<SpectrumVariants> {
    if !(cmass > 0.0) {
        return Err(Error::InvalidParam(format!("example 2 needs c > 0, got {cmass}")));
    }
    if !(b < 0.0) {
        return Err(Error::InvalidParam(format!("example 2 has bound states only for B < 0, got {b}")));
    }
    if !(hbar > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParam(format!("example 2 needs ħ > 0 and finite A (ħ = {hbar}, A = {a})")));
    }
    let g = g_coefficient(ord, hbar);
    let h2 = hbar * hbar;
    let nu_p = Complex64::new(0.25 - 2.0 * (a + g) / h2, 0.0).sqrt();
    let printed = SpectrumFormula::build(nu_p, n_max, Provenance::Printed, |n, nu| {
        let k = 2.0 * n as f64 + nu + 1.0;
        -2.0 * b * b / (cmass * k * k * h2)
    });

    // unit ω: reference levels are ħ(2n+1+ν)
    let osc = BarrierOscillator::new(1.0, -(a + g), hbar, 1.0)?;
    let reference = barrier_levels(&osc, n_max);
    let derived_mapping = SpectrumFormula {
        levels: reference
            .levels
            .iter()
            .map(|l| -b * b / (2.0 * cmass * l * l))
            .collect(),
        provenance: Provenance::DerivedMapping,
        ..reference
    };
    Ok(SpectrumVariants {
        printed,
        derived_mapping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{refine, DiscretizationForm, Grid1D};
    use crate::ordering::{make_ordering, NamedOrdering};
    use std::f64::consts::SQRT_2;

    fn ord(n: NamedOrdering) -> OrderingParams {
        n.params()
    }

    #[test]
    fn classification() {
        assert_eq!(classify_ordering(Complex64::new(0.0, 0.0)), Classification::Physical);
        assert_eq!(classify_ordering(Complex64::new(0.0, 0.5)), Classification::ForbiddenComplex);
        assert_eq!(classify_ordering(Complex64::new(0.5, 0.0)), Classification::Physical);
    }

    #[test]
    fn barrier_free_oscillator() {
        let s = barrier_levels(&BarrierOscillator::new(1.0, 0.0, 1.0, 1.0).unwrap(), 3);
        assert_eq!(s.nu, Complex64::new(0.5, 0.0));
        assert_eq!(s.levels, vec![1.5, 3.5, 5.5, 7.5]);
        let critical = barrier_levels(&BarrierOscillator::new(1.0, 0.125, 1.0, 1.0).unwrap(), 2);
        assert_eq!(critical.nu.re, 0.0);
        assert_eq!(critical.levels, vec![1.0, 3.0, 5.0]);
        let fall = barrier_levels(&BarrierOscillator::new(1.0, 0.2, 1.0, 1.0).unwrap(), 2);
        assert_eq!(fall.classification, Classification::ForbiddenComplex);
        assert!(fall.levels.is_empty());
    }

    #[test]
    fn half_line_oscillator_matches_numeric() {
        let g = Grid1D::new(0.0, 9.0, 300).unwrap();
        let rep = refine(
            &SmoothFn::constant(1.0),
            &SmoothFn::poly(vec![0.0, 0.0, 0.5]),
            1.0,
            DiscretizationForm::ConstantMass,
            &g,
            3,
            3,
        )
        .unwrap();
        let s = barrier_levels(&BarrierOscillator::new(1.0, 0.0, 1.0, 1.0).unwrap(), 2);
        for (a, b) in rep.extrapolated.iter().zip(&s.levels) {
            assert!((a - b).abs() < 1e-7, "{a} vs {b}");
        }
    }

    #[test]
    fn example1_printed_variant() {
        for n in [NamedOrdering::Weyl, NamedOrdering::LiKuhn, NamedOrdering::ZhuKroemer] {
            let s = example1_spectrum(1.0, 1.0, 1.0, &ord(n), 1.0, 4).unwrap();
            assert_eq!(s.printed.nu.norm(), 0.0);
            assert!((s.printed.levels[0] - SQRT_2).abs() < 1e-12);
            assert!((s.printed.levels[2] - 5.0 * SQRT_2).abs() < 1e-12);
        }
        let gw = example1_spectrum(1.0, 1.0, 1.0, &ord(NamedOrdering::GoraWilliams), 1.0, 4).unwrap();
        assert!((gw.printed.nu - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert_eq!(gw.printed.classification, Classification::ForbiddenComplex);
    }

    #[test]
    fn example1_derived_variant() {
        for n in [NamedOrdering::Weyl, NamedOrdering::LiKuhn, NamedOrdering::ZhuKroemer] {
            let s = example1_spectrum(1.0, 1.0, 1.0, &ord(n), 1.0, 4).unwrap();
            assert_eq!(s.derived_mapping.nu.norm(), 0.0);
            assert!(s.derived_mapping.is_physical());
            for (k, e) in s.derived_mapping.levels.iter().enumerate() {
                let want = SQRT_2 * (k as f64 + 0.5);
                assert!((e - want).abs() < 1e-6 * want, "{e} vs {want}");
            }
        }
        // closed form (ħ|c|/2)√(2V0/m0)(2n+1+√(1−8q/c²)) for other parameters
        for (m0, c, v0) in [(2.0, 0.7, 1.5), (0.5, -1.3, 3.0)] {
            for named in NamedOrdering::ALL {
                let o = ord(named);
                let s = example1_spectrum(m0, c, v0, &o, 1.0, 3).unwrap();
                let q = q_coefficient(&o, c);
                let nu = Complex64::new(1.0 - 8.0 * q / (c * c), 0.0).sqrt();
                assert!((s.derived_mapping.nu - nu).norm() < 1e-6, "{named:?}");
                for (k, e) in s.derived_mapping.levels.iter().enumerate() {
                    let want = 0.5 * c.abs() * (2.0 * v0 / m0).sqrt() * (2.0 * k as f64 + 1.0 + nu.re);
                    assert!((e - want).abs() < 1e-9 * want);
                }
            }
        }
    }

    #[test]
    fn example1_bdd_and_gw() {
        let bdd = example1_spectrum(1.0, 1.0, 1.0, &ord(NamedOrdering::BendanielDuke), 1.0, 2).unwrap();
        assert!((bdd.printed.nu.re - 0.5).abs() < 1e-15);
        assert!((bdd.derived_mapping.nu.re - 1.0).abs() < 1e-8);
        let gw = example1_spectrum(1.0, 1.0, 1.0, &ord(NamedOrdering::GoraWilliams), 1.0, 2).unwrap();
        assert!((gw.derived_mapping.nu.im - 1.0).abs() < 1e-8);
        assert!(!gw.derived_mapping.is_physical());
    }

    #[test]
    fn example1_spacings_are_ordering_invariant() {
        let base = example1_spectrum(1.0, 1.0, 1.0, &ord(NamedOrdering::Weyl), 1.0, 5).unwrap();
        for named in [NamedOrdering::LiKuhn, NamedOrdering::ZhuKroemer, NamedOrdering::BendanielDuke] {
            let s = example1_spectrum(1.0, 1.0, 1.0, &ord(named), 1.0, 5).unwrap();
            for (variant, reference) in [
                (&s.printed, &base.printed),
                (&s.derived_mapping, &base.derived_mapping),
            ] {
                for (a, b) in variant.spacings().iter().zip(reference.spacings()) {
                    assert!((a - b).abs() <= 1e-10 * b.abs());
                }
            }
        }
    }

    #[test]
    fn example1_rejects_bad_params() {
        let w = ord(NamedOrdering::Weyl);
        assert!(example1_spectrum(0.0, 1.0, 1.0, &w, 1.0, 2).is_err());
        assert!(example1_spectrum(1.0, 1.0, -1.0, &w, 1.0, 2).is_err());
        assert!(example1_spectrum(1.0, 0.0, 1.0, &w, 1.0, 2).is_err());
    }

    #[test]
    fn example2_printed_values() {
        let zk = example2_spectrum(1.0, 1.0 / 32.0, -5.0, &ord(NamedOrdering::ZhuKroemer), 1.0, 3).unwrap();
        assert!((zk.printed.nu.re - 3f64.sqrt() / 4.0).abs() < 1e-15);
        let bdd = example2_spectrum(1.0, 0.0, -5.0, &ord(NamedOrdering::BendanielDuke), 1.0, 3).unwrap();
        assert!((bdd.printed.nu - Complex64::new(0.0, 1.75f64.sqrt())).norm() < 1e-15);
        assert_eq!(bdd.printed.classification, Classification::ForbiddenComplex);
        assert!(bdd.derived_mapping.is_physical());
    }

    #[test]
    fn example2_weyl_equals_li_kuhn() {
        for (a, b) in [(1.0 / 32.0, -5.0), (0.3, -1.0), (-0.1, -2.5)] {
            let w = example2_spectrum(1.0, a, b, &ord(NamedOrdering::Weyl), 1.0, 4).unwrap();
            let l = example2_spectrum(1.0, a, b, &ord(NamedOrdering::LiKuhn), 1.0, 4).unwrap();
            assert_eq!(w, l);
        }
    }

    #[test]
    fn example2_derived_formula() {
        let o = make_ordering(0.3, -0.2, 0.1).unwrap();
        let (c, a, b, hbar) = (2.0, 0.1, -3.0, 0.8);
        let s = example2_spectrum(c, a, b, &o, hbar, 2).unwrap();
        let g = g_coefficient(&o, hbar);
        let nu = (0.25 + 2.0 * (a + g) / (hbar * hbar)).sqrt();
        for (n, e) in s.derived_mapping.levels.iter().enumerate() {
            let k = 2.0 * n as f64 + 1.0 + nu;
            let want = -b * b / (2.0 * c * hbar * hbar * k * k);
            assert!((e - want).abs() < 1e-14 * want.abs());
        }
        assert!(s.derived_mapping.levels.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn example2_rejects_bad_params() {
        let w = ord(NamedOrdering::Weyl);
        assert!(matches!(example2_spectrum(0.0, 0.1, -1.0, &w, 1.0, 2), Err(Error::InvalidParam(_))));
        assert!(matches!(example2_spectrum(1.0, 0.1, 0.0, &w, 1.0, 2), Err(Error::InvalidParam(_))));
    }
}
