//! Eigenvalue problems: the generic ordered PDM problem and the two exactly
//! solvable families.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{
    check_converging, lowest_eigenvalues, refine_with, Boundary, ConvergenceReport, DiscretizationForm,
    EigenResult, GeneralizedProblem, Grid1D,
};
use crate::ordering::{effective_potential, g_coefficient, OrderingParams};
use crate::pct::{log_map, transform_pdm, TransformedProblem};
use crate::smoothfn::{make_profile, Interval, ProfileKind, SmoothFn};

pub const DEFAULT_POINTS: usize = 400;
pub const DEFAULT_LEVELS: usize = 3;

/// One ordered PDM eigenproblem on a truncated domain.
#[derive(Debug, Clone)]
pub struct SpectralProblem {
    pub mass: SmoothFn,
    pub potential: SmoothFn,
    pub ordering: OrderingParams,
    pub domain: Interval,
    pub hbar: f64,
    pub lower: Boundary,
    pub upper: Boundary,
}

impl SpectralProblem {
    /// Dirichlet at both ends. The mass must be positive inside the domain;
    /// the ends themselves are never grid nodes under Dirichlet.
    pub fn new(
        mass: SmoothFn,
        potential: SmoothFn,
        ordering: OrderingParams,
        domain: Interval,
        hbar: f64,
    ) -> Result<Self> {
        if !domain.is_finite() {
            return Err(Error::InvalidParam(format!(
                "numeric domain must be finite, got [{}, {}]",
                domain.lo, domain.hi
            )));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidParam(format!("ħ must be positive, got {hbar}")));
        }
        for x in domain.sample_points(256) {
            let m = mass.value(x)?;
            if !(m > 0.0) {
                return Err(Error::InvalidProfile(format!("mass {m} <= 0 at x = {x}")));
            }
        }
        Ok(SpectralProblem {
            mass,
            potential,
            ordering,
            domain,
            hbar,
            lower: Boundary::Dirichlet,
            upper: Boundary::Dirichlet,
        })
    }

    pub fn with_boundaries(mut self, lower: Boundary, upper: Boundary) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }

    pub fn effective_potential(&self) -> SmoothFn {
        effective_potential(&self.ordering, &self.mass, &self.potential, self.hbar)
    }

    pub fn grid(&self, n_points: usize) -> Result<Grid1D> {
        Ok(Grid1D::new(self.domain.lo, self.domain.hi, n_points)?.with_boundaries(self.lower, self.upper))
    }

    pub fn discretize(&self, grid: &Grid1D) -> Result<GeneralizedProblem> {
        crate::numeric::discretize(
            &self.mass,
            &self.effective_potential(),
            self.hbar,
            grid,
            DiscretizationForm::PdmGeneralized,
        )
    }

    pub fn solve(&self, n_points: usize, k: usize, want_vectors: bool) -> Result<EigenResult> {
        lowest_eigenvalues(&self.discretize(&self.grid(n_points)?)?, k, want_vectors)
    }

    /// Refinement study without a convergence verdict.
    pub fn refine_report(&self, n_points: usize, levels: usize, k: usize) -> Result<ConvergenceReport> {
        let ueff = self.effective_potential();
        refine_with(&self.grid(n_points)?, levels, k, |g| {
            crate::numeric::discretize(&self.mass, &ueff, self.hbar, g, DiscretizationForm::PdmGeneralized)
        })
    }

    pub fn refine(&self, n_points: usize, levels: usize, k: usize) -> Result<ConvergenceReport> {
        check_converging(self.refine_report(n_points, levels, k)?)
    }
}

/// A constant-mass problem in `u` produced by a point canonical transform.
#[derive(Debug, Clone)]
pub struct ReducedProblem {
    pub transformed: TransformedProblem,
    pub lower: Boundary,
    pub upper: Boundary,
}

impl ReducedProblem {
    pub fn grid(&self, n_points: usize) -> Result<Grid1D> {
        let d = self.transformed.domain;
        Ok(Grid1D::new(d.lo, d.hi, n_points)?.with_boundaries(self.lower, self.upper))
    }

    pub fn discretize(&self, grid: &Grid1D) -> Result<GeneralizedProblem> {
        crate::numeric::discretize(
            &self.transformed.mass_fn(),
            &self.transformed.potential,
            self.transformed.hbar,
            grid,
            DiscretizationForm::ConstantMass,
        )
    }

    pub fn solve(&self, n_points: usize, k: usize, want_vectors: bool) -> Result<EigenResult> {
        lowest_eigenvalues(&self.discretize(&self.grid(n_points)?)?, k, want_vectors)
    }

    pub fn refine_report(&self, n_points: usize, levels: usize, k: usize) -> Result<ConvergenceReport> {
        refine_with(&self.grid(n_points)?, levels, k, |g| self.discretize(g))
    }

    pub fn refine(&self, n_points: usize, levels: usize, k: usize) -> Result<ConvergenceReport> {
        check_converging(self.refine_report(n_points, levels, k)?)
    }
}

/// `m = m0 e^{cx}`, `V = V0 e^{cx}` on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Example1 {
    pub m0: f64,
    pub c: f64,
    pub v0: f64,
}

impl Example1 {
    /// The light end sits this many e-folds of `u` below the oscillator
    /// length of the reduced problem.
    pub const LIGHT_DEPTH: f64 = 10.0;
    /// The heavy end sits at least this many oscillator lengths out in `u`.
    pub const HEAVY_REACH: f64 = 40.0;

    pub fn new(m0: f64, c: f64, v0: f64) -> Result<Self> {
        if !(m0 > 0.0) || !(v0 > 0.0) || c == 0.0 || !c.is_finite() {
            return Err(Error::InvalidParam(format!(
                "example 1 needs m0 > 0, V0 > 0, c != 0 (m0 = {m0}, c = {c}, V0 = {v0})"
            )));
        }
        Ok(Example1 { m0, c, v0 })
    }

    pub fn unit() -> Self {
        Example1 {
            m0: 1.0,
            c: 1.0,
            v0: 1.0,
        }
    }

    pub fn mass(&self) -> SmoothFn {
        make_profile(
            &ProfileKind::ExpMass { m0: self.m0, c: self.c },
            Interval { lo: -1.0, hi: 1.0 },
        )
        .expect("validated in new")
    }

    pub fn potential(&self) -> SmoothFn {
        SmoothFn::exp(self.c).scale(self.v0)
    }

    /// Oscillator length `√(ħ/(Mω))` of the reduced problem, with
    /// `M = 4m0/c²` and `ω = 2√(2m0V0)/|c|`.
    pub fn u_length(&self, hbar: f64) -> f64 {
        let m = 4.0 * self.m0 / (self.c * self.c);
        let w = 2.0 * (2.0 * self.m0 * self.v0).sqrt() / self.c.abs();
        (hbar / (m * w)).sqrt()
    }

    /// Image of `u ∈ [ℓ e^{−10}, max(e³, 40ℓ)]` with `ℓ` the oscillator
    /// length in `u`. With a Neumann light end the truncation error on the
    /// low levels scales like `u_min/ℓ`. For unit parameters this is
    /// about `[−22.4, 6]`.
    pub fn default_domain(&self, hbar: f64) -> Interval {
        let l = self.u_length(hbar);
        let u0 = l * (-Self::LIGHT_DEPTH).exp();
        let u1 = (3.0f64).exp().max(Self::HEAVY_REACH * l);
        let (a, b) = (2.0 * u0.ln() / self.c, 2.0 * u1.ln() / self.c);
        Interval { lo: a.min(b), hi: a.max(b) }
    }

    /// Shared truncation for comparing the `x` and `u` routes: `[−10/c, 3/c]`
    /// (mirrored for decaying masses). A shallower light-side cut keeps the
    /// `u` image away from `u = 0`, where a uniform `u` grid cannot resolve
    /// the mapped boundary condition.
    pub fn cross_route_domain(&self) -> Interval {
        let s = 1.0 / self.c.abs();
        if self.c > 0.0 {
            Interval { lo: -10.0 * s, hi: 3.0 * s }
        } else {
            Interval { lo: -3.0 * s, hi: 10.0 * s }
        }
    }

    /// Neumann on the light side (finite-energy solution where the mass
    /// vanishes), Dirichlet on the heavy side.
    pub fn default_boundaries(&self) -> (Boundary, Boundary) {
        if self.c > 0.0 {
            (Boundary::NEUMANN, Boundary::Dirichlet)
        } else {
            (Boundary::Dirichlet, Boundary::NEUMANN)
        }
    }

    pub fn problem(&self, ord: &OrderingParams, hbar: f64) -> Result<SpectralProblem> {
        self.problem_on(ord, hbar, self.default_domain(hbar))
    }

    pub fn problem_on(&self, ord: &OrderingParams, hbar: f64, domain: Interval) -> Result<SpectralProblem> {
        let (lo, hi) = self.default_boundaries();
        Ok(SpectralProblem::new(self.mass(), self.potential(), *ord, domain, hbar)?.with_boundaries(lo, hi))
    }

    /// The same truncated problem after the log map: the `u` domain is the
    /// image of `x.domain` and the boundary conditions are mapped.
    pub fn u_route(&self, x: &SpectralProblem) -> Result<ReducedProblem> {
        let map = log_map(self.c)?;
        let u_dom = map.preimage(x.domain)?;
        let transformed = transform_pdm(&x.ordering, &x.mass, &x.potential, &map, x.hbar, u_dom)?;
        let (lower, upper) = map.map_boundaries(x.domain, x.lower, x.upper)?;
        Ok(ReducedProblem {
            transformed,
            lower,
            upper,
        })
    }

    /// The transformed problem on `[0, u_max]` with Dirichlet ends. Nodes
    /// approach `u = 0` under refinement, so a barrier beyond the critical
    /// strength shows up as a diverging ground state.
    pub fn half_line_u(&self, ord: &OrderingParams, hbar: f64, u_max: f64) -> Result<ReducedProblem> {
        let map = log_map(self.c)?;
        let u_dom = Interval::new(0.0, u_max)?;
        let probe = Interval::new(u_max * 1e-3, u_max)?;
        let mut transformed = transform_pdm(ord, &self.mass(), &self.potential(), &map, hbar, probe)?;
        transformed.domain = u_dom;
        Ok(ReducedProblem {
            transformed,
            lower: Boundary::Dirichlet,
            upper: Boundary::Dirichlet,
        })
    }

    /// `u` image of the heavy end of the default domain.
    pub fn default_u_max(&self, hbar: f64) -> f64 {
        let d = self.default_domain(hbar);
        let x_heavy = if self.c > 0.0 { d.hi } else { d.lo };
        (0.5 * self.c * x_heavy).exp()
    }
}

/// `m = c x²`, `V = A/(c x⁴) + B/(c x²)` on the half line `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Example2 {
    pub c: f64,
    pub a: f64,
    pub b: f64,
}

impl Example2 {
    pub fn new(c: f64, a: f64, b: f64) -> Result<Self> {
        if !(c > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParam(format!("example 2 needs c > 0 and finite A (c = {c}, A = {a})")));
        }
        if !(b < 0.0) {
            return Err(Error::InvalidParam(format!("example 2 has bound states only for B < 0, got {b}")));
        }
        Ok(Example2 { c, a, b })
    }

    pub fn mass(&self) -> SmoothFn {
        SmoothFn::poly(vec![0.0, 0.0, self.c])
    }

    pub fn potential(&self) -> SmoothFn {
        make_profile(
            &ProfileKind::InverseQuarticPotential {
                c: self.c,
                a: self.a,
                b: self.b,
            },
            Interval { lo: 1.0, hi: 2.0 },
        )
        .expect("validated in new")
    }

    /// `[0, x_max]` with `x_max` the classical turning point of the `k`-th
    /// level plus eight oscillator lengths. The level estimate comes from
    /// the oscillator picture of the `m`-multiplied equation (`ω² = −2Ec`,
    /// level `−B`) with the barrier exponent clamped at zero.
    pub fn default_domain(&self, ord: &OrderingParams, hbar: f64, k: usize) -> Interval {
        let g = g_coefficient(ord, hbar);
        let nu = (0.25 + 2.0 * (self.a + g) / (hbar * hbar)).max(0.0).sqrt();
        let kk = 2.0 * (k.max(1) - 1) as f64 + 1.0 + nu;
        let e = self.b * self.b / (2.0 * self.c * hbar * hbar * kk * kk);
        let omega = (2.0 * self.c * e).sqrt();
        let x_turn = (-self.b / (self.c * e)).sqrt();
        Interval {
            lo: 0.0,
            hi: x_turn + 8.0 * (hbar / omega).sqrt(),
        }
    }

    /// Dirichlet at `x = 0` (never a node) and at `x_max`.
    pub fn problem(&self, ord: &OrderingParams, hbar: f64, k: usize) -> Result<SpectralProblem> {
        self.problem_on(ord, hbar, self.default_domain(ord, hbar, k))
    }

    pub fn problem_on(&self, ord: &OrderingParams, hbar: f64, domain: Interval) -> Result<SpectralProblem> {
        SpectralProblem::new(self.mass(), self.potential(), *ord, domain, hbar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{example1_spectrum, example2_spectrum};
    use crate::ordering::NamedOrdering;
    use std::f64::consts::SQRT_2;

    #[test]
    fn example1_weyl_ground_state() {
        let p = Example1::unit().problem(&NamedOrdering::Weyl.params(), 1.0).unwrap();
        let rep = p.refine(DEFAULT_POINTS, DEFAULT_LEVELS, 3).unwrap();
        for (n, e) in rep.extrapolated.iter().enumerate() {
            let want = SQRT_2 * (n as f64 + 0.5);
            assert!((e - want).abs() < 1e-5 * want, "n = {n}: {e} vs {want}");
        }
        assert!(rep.all_trusted(), "{:?}", rep.observed_order);
    }

    #[test]
    fn example1_u_route_agrees() {
        let ex = Example1::unit();
        let x = ex
            .problem_on(&NamedOrdering::ZhuKroemer.params(), 1.0, ex.cross_route_domain())
            .unwrap();
        let u = ex.u_route(&x).unwrap();
        let rx = x.refine(DEFAULT_POINTS, 3, 5).unwrap();
        let ru = u.refine(4000, 3, 5).unwrap();
        for i in 0..5 {
            let tol = rx.error_estimates[i] + ru.error_estimates[i];
            assert!(
                (rx.extrapolated[i] - ru.extrapolated[i]).abs() <= tol.max(1e-9),
                "{i}: {} vs {} (tol {tol:e})",
                rx.extrapolated[i],
                ru.extrapolated[i]
            );
        }
    }

    #[test]
    fn example1_decaying_mass() {
        let ex = Example1::new(1.0, -1.0, 1.0).unwrap();
        let ord = NamedOrdering::Weyl.params();
        let rep = ex.problem(&ord, 1.0).unwrap().refine(DEFAULT_POINTS, 3, 2).unwrap();
        let s = example1_spectrum(1.0, -1.0, 1.0, &ord, 1.0, 1).unwrap();
        for (a, b) in rep.extrapolated.iter().zip(&s.derived_mapping.levels) {
            assert!((a - b).abs() < 1e-5 * b);
        }
    }

    #[test]
    fn example1_bdd_converges_to_derived() {
        let ord = NamedOrdering::BendanielDuke.params();
        let rep = Example1::unit().problem(&ord, 1.0).unwrap().refine(DEFAULT_POINTS, 3, 3).unwrap();
        let s = example1_spectrum(1.0, 1.0, 1.0, &ord, 1.0, 2).unwrap();
        for (a, b) in rep.extrapolated.iter().zip(&s.derived_mapping.levels) {
            assert!((a - b).abs() < 1e-5 * b, "{a} vs {b}");
        }
    }

    #[test]
    fn gora_williams_falls_to_center() {
        let ex = Example1::unit();
        let ord = NamedOrdering::GoraWilliams.params();
        let half = ex.half_line_u(&ord, 1.0, ex.default_u_max(1.0)).unwrap();
        assert!(matches!(half.refine(400, 3, 2), Err(Error::NotConverging { .. })));
        let fine = ex.half_line_u(&NamedOrdering::BendanielDuke.params(), 1.0, ex.default_u_max(1.0)).unwrap();
        assert!(fine.refine(400, 3, 2).is_ok());
    }

    #[test]
    fn example2_matches_derived() {
        let ex = Example2::new(1.0, 1.0 / 32.0, -5.0).unwrap();
        for named in [NamedOrdering::Weyl, NamedOrdering::ZhuKroemer, NamedOrdering::BendanielDuke] {
            let ord = named.params();
            let rep = ex.problem(&ord, 1.0, 3).unwrap().refine_report(1600, 3, 3).unwrap();
            let s = example2_spectrum(1.0, 1.0 / 32.0, -5.0, &ord, 1.0, 2).unwrap();
            for ((a, b), err) in rep.extrapolated.iter().zip(&s.derived_mapping.levels).zip(&rep.error_estimates) {
                assert!((a - b).abs() < 1e-4 * b.abs(), "{named:?}: {a} vs {b}");
                assert!((a - b).abs() <= *err, "{named:?}: estimate {err:e} misses {:e}", (a - b).abs());
            }
        }
    }

    #[test]
    fn example2_rejects_unbound() {
        assert!(Example2::new(1.0, 0.1, 0.5).is_err());
        assert!(Example2::new(-1.0, 0.1, -0.5).is_err());
    }

    #[test]
    fn problem_rejects_nonpositive_mass() {
        let r = SpectralProblem::new(
            SmoothFn::poly(vec![0.0, 1.0]),
            SmoothFn::zero(),
            NamedOrdering::Weyl.params(),
            Interval::new(-1.0, 1.0).unwrap(),
            1.0,
        );
        assert!(matches!(r, Err(Error::InvalidProfile(_))));
    }
}
