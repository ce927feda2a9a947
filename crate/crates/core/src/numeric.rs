//! Finite-difference referee for one-dimensional bound states.
//!
//! Problems are discretized on a uniform grid with the 3-point stencil into a
//! symmetric-definite pencil `K φ = E W φ` (`K` tridiagonal, `W` diagonal and
//! positive). The pencil is reduced to a standard symmetric tridiagonal
//! problem with `W^{-1/2}`, eigenvalues are located by Sturm-sequence
//! bisection and eigenvectors by inverse iteration. [`refine`] repeats the
//! solve on nested grids and Richardson-extrapolates.
//!
//! Boundaries are Dirichlet by default. A Robin end `φ'/φ = σ` (Neumann for
//! `σ = 0`) keeps the boundary node as an unknown with a half-cell row, which
//! stays symmetric and second order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::smoothfn::SmoothFn;

/// Relative tolerance of the bisection.
pub const BISECTION_RTOL: f64 = 1e-12;
/// Maximum accepted relative residual of an eigenpair.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Observed-order window for a trusted extrapolation.
pub const TRUSTED_ORDER: (f64, f64) = (1.6, 2.4);
/// Below this observed order refinement is reported as not converging.
pub const MIN_ORDER: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "slope")]
pub enum Boundary {
    Dirichlet,
    /// `φ'/φ = σ` at the boundary.
    Robin(f64),
}

impl Boundary {
    pub const NEUMANN: Boundary = Boundary::Robin(0.0);

    fn is_free(&self) -> bool {
        matches!(self, Boundary::Robin(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    /// Interior points; boundary nodes of Robin ends come on top.
    pub n_points: usize,
    pub lower: Boundary,
    pub upper: Boundary,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidParam(format!("bad grid interval [{x_min}, {x_max}]")));
        }
        if n_points < 16 {
            return Err(Error::InvalidParam(format!("grid needs >= 16 points, got {n_points}")));
        }
        Ok(Grid1D {
            x_min,
            x_max,
            n_points,
            lower: Boundary::Dirichlet,
            upper: Boundary::Dirichlet,
        })
    }

    pub fn with_boundaries(mut self, lower: Boundary, upper: Boundary) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }

    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points + 1) as f64
    }

    /// Same interval and boundaries with `2n + 1` interior points (`h/2`).
    pub fn refined(&self) -> Self {
        Grid1D {
            n_points: 2 * self.n_points + 1,
            ..*self
        }
    }

    /// Positions of the unknowns.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.h();
        let first = if self.lower.is_free() { 0 } else { 1 };
        let last = if self.upper.is_free() {
            self.n_points + 1
        } else {
            self.n_points
        };
        (first..=last)
            .map(|i| {
                if i == self.n_points + 1 {
                    self.x_max
                } else {
                    self.x_min + i as f64 * h
                }
            })
            .collect()
    }

    pub fn unknowns(&self) -> usize {
        self.n_points + self.lower.is_free() as usize + self.upper.is_free() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscretizationForm {
    /// `−ħ²/(2m0) φ'' + V φ = E φ`; the mass must be constant.
    ConstantMass,
    /// `−ħ²/2 φ'' + m U_eff φ = E m φ`; `potential` is `U_eff`.
    PdmGeneralized,
}

/// `K φ = λ W φ` with `K` symmetric tridiagonal and `W` positive diagonal.
#[derive(Debug, Clone)]
pub struct GeneralizedProblem {
    pub diag: Vec<f64>,
    /// Shared by both sides of `K`, so `K` is symmetric by construction.
    pub off: Vec<f64>,
    pub weight: Vec<f64>,
    pub grid: Grid1D,
    pub nodes: Vec<f64>,
}

impl GeneralizedProblem {
    /// Assembles `−t φ'' + P φ = λ w φ` with `t = ħ²/(2M)`.
    pub fn assemble(kinetic: f64, pot: &[f64], weight: &[f64], grid: Grid1D) -> Result<Self> {
        let nodes = grid.nodes();
        let n = nodes.len();
        if pot.len() != n || weight.len() != n {
            return Err(Error::InvalidParam("node data length mismatch".into()));
        }
        let h = grid.h();
        let t = kinetic / (h * h);
        let mut diag: Vec<f64> = pot.iter().map(|p| 2.0 * t + p).collect();
        let mut w = weight.to_vec();
        if let Boundary::Robin(s) = grid.lower {
            diag[0] = t + 0.5 * pot[0] + kinetic * s / h;
            w[0] *= 0.5;
        }
        if let Boundary::Robin(s) = grid.upper {
            diag[n - 1] = t + 0.5 * pot[n - 1] - kinetic * s / h;
            w[n - 1] *= 0.5;
        }
        if let Some(i) = w.iter().position(|&wi| !(wi > 0.0 && wi.is_finite())) {
            return Err(Error::InvalidParam(format!(
                "weight {} not positive at x = {}",
                w[i], nodes[i]
            )));
        }
        Ok(GeneralizedProblem {
            diag,
            off: vec![-t; n - 1],
            weight: w,
            grid,
            nodes,
        })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// The standard problem `W^{-1/2} K W^{-1/2}` as (diagonal, off-diagonal).
    pub fn reduced(&self) -> (Vec<f64>, Vec<f64>) {
        let s: Vec<f64> = self.weight.iter().map(|w| 1.0 / w.sqrt()).collect();
        let d = self.diag.iter().zip(&s).map(|(d, s)| d * s * s).collect();
        let e = self
            .off
            .iter()
            .enumerate()
            .map(|(i, e)| e * s[i] * s[i + 1])
            .collect();
        (d, e)
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let (d, e) = self.reduced();
        let e2: Vec<f64> = e.iter().map(|x| x * x).collect();
        sturm_count(&d, &e2, pivmin(&e2), lambda)
    }
}

fn pivmin(e2: &[f64]) -> f64 {
    f64::MIN_POSITIVE * e2.iter().fold(1.0f64, |a, &b| a.max(b))
}

/// Negative pivots of `LDLᵀ` of `T − λI`; `e2` holds squared off-diagonals.
pub fn sturm_count(d: &[f64], e2: &[f64], pivmin: f64, lambda: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - lambda;
    for i in 0..d.len() {
        if i > 0 {
            q = d[i] - lambda - e2[i - 1] / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

pub fn discretize(
    mass: &SmoothFn,
    potential: &SmoothFn,
    hbar: f64,
    grid: &Grid1D,
    form: DiscretizationForm,
) -> Result<GeneralizedProblem> {
    let nodes = grid.nodes();
    let eval = |f: &SmoothFn, what: &str, x: f64| -> Result<f64> {
        match f.value(x) {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::SingularPotential {
                what: what.to_string(),
                x,
            }),
        }
    };
    let m: Vec<f64> = nodes
        .iter()
        .map(|&x| eval(mass, "mass", x))
        .collect::<Result<_>>()?;
    let v: Vec<f64> = nodes
        .iter()
        .map(|&x| eval(potential, "potential", x))
        .collect::<Result<_>>()?;
    if let Some(i) = m.iter().position(|&mi| !(mi > 0.0)) {
        return Err(Error::InvalidProfile(format!(
            "mass {} not positive at x = {}",
            m[i], nodes[i]
        )));
    }
    match form {
        DiscretizationForm::ConstantMass => {
            let m0 = m[0];
            if m.iter().any(|mi| (mi - m0).abs() > 1e-12 * m0) {
                return Err(Error::InvalidParam(
                    "constant-mass form needs a constant mass profile".into(),
                ));
            }
            let w = vec![1.0; nodes.len()];
            GeneralizedProblem::assemble(hbar * hbar / (2.0 * m0), &v, &w, *grid)
        }
        DiscretizationForm::PdmGeneralized => {
            let p: Vec<f64> = m.iter().zip(&v).map(|(m, u)| m * u).collect();
            GeneralizedProblem::assemble(hbar * hbar / 2.0, &p, &m, *grid)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    /// Bracket half-widths for a single solve; Richardson estimates after
    /// [`refine`].
    pub error_estimates: Vec<f64>,
    /// `φ` at the grid nodes, normalized to `h Σ w φ² = 1`.
    #[serde(skip)]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub grid: Grid1D,
}

pub fn lowest_eigenvalues(
    gp: &GeneralizedProblem,
    k: usize,
    want_vectors: bool,
) -> Result<EigenResult> {
    let n = gp.len();
    if k == 0 || k > (gp.grid.n_points / 4).max(1) {
        return Err(Error::InvalidParam(format!(
            "k = {k} outside 1..={} for {} points",
            gp.grid.n_points / 4,
            gp.grid.n_points
        )));
    }
    let (d, e) = gp.reduced();
    let e2: Vec<f64> = e.iter().map(|x| x * x).collect();
    let piv = pivmin(&e2);

    // Gershgorin bracket
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::ConvergenceFailure(format!(
            "non-finite Gershgorin bracket [{lo}, {hi}]"
        )));
    }
    let pad = 1e-10 * (hi - lo).abs().max(lo.abs()).max(hi.abs()).max(1.0);
    lo -= pad;
    hi += pad;
    if sturm_count(&d, &e2, piv, lo) != 0 || sturm_count(&d, &e2, piv, hi) < k {
        return Err(Error::ConvergenceFailure(format!(
            "cannot bracket {k} eigenvalues in [{lo:e}, {hi:e}]"
        )));
    }

    let mut values = Vec::with_capacity(k);
    let mut widths = Vec::with_capacity(k);
    let mut floor = lo;
    for j in 0..k {
        let (mut a, mut b) = (floor, hi);
        for _ in 0..400 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b || (b - a) <= BISECTION_RTOL * a.abs().max(b.abs()) {
                break;
            }
            if sturm_count(&d, &e2, piv, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        let lam = 0.5 * (a + b);
        if !lam.is_finite() {
            return Err(Error::ConvergenceFailure(format!("eigenvalue {j} not finite")));
        }
        values.push(lam);
        widths.push(0.5 * (b - a));
        floor = a;
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ConvergenceFailure(format!(
            "eigenvalues not strictly ascending: {values:?}"
        )));
    }

    let eigenvectors = if want_vectors {
        let norm = d
            .iter()
            .enumerate()
            .map(|(i, di)| {
                di.abs()
                    + if i > 0 { e[i - 1].abs() } else { 0.0 }
                    + if i + 1 < n { e[i].abs() } else { 0.0 }
            })
            .fold(0.0f64, f64::max);
        let mut vecs = Vec::with_capacity(k);
        for &lam in &values {
            vecs.push(eigenvector(gp, &d, &e, lam, norm)?);
        }
        Some(vecs)
    } else {
        None
    };

    Ok(EigenResult {
        eigenvalues: values,
        error_estimates: widths,
        eigenvectors,
        grid: gp.grid,
    })
}

fn eigenvector(gp: &GeneralizedProblem, d: &[f64], e: &[f64], lam: f64, norm: f64) -> Result<Vec<f64>> {
    let n = d.len();
    let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.7).sin()).collect();
    let factor = ShiftedLu::new(d, e, lam, norm);
    for _ in 0..3 {
        factor.solve(&mut y);
        let nrm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(nrm > 0.0 && nrm.is_finite()) {
            return Err(Error::ConvergenceFailure("inverse iteration broke down".into()));
        }
        y.iter_mut().for_each(|v| *v /= nrm);
    }
    // back to the pencil variable
    let mut phi: Vec<f64> = y.iter().zip(&gp.weight).map(|(v, w)| v / w.sqrt()).collect();
    let rel = pencil_residual(gp, &phi, lam);
    if !(rel <= RESIDUAL_TOL) {
        return Err(Error::ConvergenceFailure(format!(
            "eigenpair λ = {lam} has relative residual {rel:e}"
        )));
    }
    let h = gp.grid.h();
    let wn = (h * phi.iter().zip(&gp.weight).map(|(p, w)| w * p * p).sum::<f64>()).sqrt();
    let imax = phi
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let sign = if phi[imax] < 0.0 { -1.0 } else { 1.0 };
    phi.iter_mut().for_each(|p| *p *= sign / wn);
    Ok(phi)
}

/// `‖Kφ − λWφ‖ / ((‖K‖ + |λ|‖W‖) ‖φ‖)` with max-row norms.
pub fn pencil_residual(gp: &GeneralizedProblem, phi: &[f64], lam: f64) -> f64 {
    let n = phi.len();
    let mut r2 = 0.0;
    let mut knorm = 0.0f64;
    for i in 0..n {
        let mut kv = gp.diag[i] * phi[i];
        let mut row = gp.diag[i].abs();
        if i > 0 {
            kv += gp.off[i - 1] * phi[i - 1];
            row += gp.off[i - 1].abs();
        }
        if i + 1 < n {
            kv += gp.off[i] * phi[i + 1];
            row += gp.off[i].abs();
        }
        knorm = knorm.max(row);
        let r = kv - lam * gp.weight[i] * phi[i];
        r2 += r * r;
    }
    let wnorm = gp.weight.iter().fold(0.0f64, |a, &b| a.max(b));
    let pn = phi.iter().map(|v| v * v).sum::<f64>().sqrt();
    r2.sqrt() / ((knorm + lam.abs() * wnorm) * pn)
}

/// LU with partial pivoting of `T − μI` (tridiagonal).
struct ShiftedLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(diag: &[f64], off: &[f64], mu: f64, norm: f64) -> Self {
        let n = diag.len();
        let tiny = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
        let mut d: Vec<f64> = diag.iter().map(|x| x - mu).collect();
        let mut du = off.to_vec();
        let mut dl = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if let Some(last) = d.last_mut() {
            if *last == 0.0 {
                *last = tiny;
            }
        }
        ShiftedLu {
            d,
            du,
            du2,
            dl,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

/// Per-eigenvalue outcome of a refinement study.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub grids: Vec<Grid1D>,
    /// `raw[level][index]`
    pub raw: Vec<Vec<f64>>,
    pub extrapolated: Vec<f64>,
    pub error_estimates: Vec<f64>,
    /// NaN when fewer than three levels or when the differences are at
    /// roundoff level.
    pub observed_order: Vec<f64>,
    pub trusted: Vec<bool>,
    /// Roundoff bound of the finest solve, already included in
    /// `error_estimates`.
    pub roundoff_floor: Vec<f64>,
}

impl ConvergenceReport {
    pub fn k(&self) -> usize {
        self.extrapolated.len()
    }

    /// First eigenvalue whose observed order is below [`MIN_ORDER`].
    pub fn first_non_converging(&self) -> Option<(usize, f64)> {
        self.observed_order
            .iter()
            .enumerate()
            .find(|(_, p)| **p < MIN_ORDER)
            .map(|(i, p)| (i, *p))
    }

    pub fn all_trusted(&self) -> bool {
        self.trusted.iter().all(|t| *t)
    }

    /// Extrapolated values with their error estimates as an [`EigenResult`]
    /// on the finest grid.
    pub fn as_eigen_result(&self) -> EigenResult {
        EigenResult {
            eigenvalues: self.extrapolated.clone(),
            error_estimates: self.error_estimates.clone(),
            eigenvectors: None,
            grid: *self.grids.last().expect("at least two levels"),
        }
    }
}

/// Romberg-style extrapolation of per-level values on `h, h/2, h/4, ...`.
pub fn richardson(values: &[f64]) -> (f64, f64) {
    let levels = values.len();
    let mut table = vec![values.to_vec()];
    for j in 1..levels {
        let prev = &table[j - 1];
        let f = 4f64.powi(j as i32) - 1.0;
        let col: Vec<f64> = (1..prev.len())
            .map(|i| prev[i] + (prev[i] - prev[i - 1]) / f)
            .collect();
        table.push(col);
    }
    let best = table[levels - 1][0];
    let runner_up = *table[levels - 2].last().unwrap();
    (best, (best - runner_up).abs())
}

/// Observed order from the last three values, NaN if not measurable.
pub fn observed_order(values: &[f64]) -> f64 {
    let l = values.len();
    if l < 3 {
        return f64::NAN;
    }
    let (a, b, c) = (values[l - 3], values[l - 2], values[l - 1]);
    let d1 = (a - b).abs();
    let d2 = (b - c).abs();
    let scale = a.abs().max(b.abs()).max(c.abs()).max(f64::MIN_POSITIVE);
    if d1 <= 64.0 * f64::EPSILON * scale && d2 <= 64.0 * f64::EPSILON * scale {
        return f64::NAN;
    }
    (d1 / d2).log2()
}

/// Solves on `levels` nested grids (`n, 2n+1, 4n+3, ...`) and extrapolates
/// without judging convergence.
pub fn refine_report(
    mass: &SmoothFn,
    potential: &SmoothFn,
    hbar: f64,
    form: DiscretizationForm,
    base_grid: &Grid1D,
    levels: usize,
    k: usize,
) -> Result<ConvergenceReport> {
    refine_with(base_grid, levels, k, |g| discretize(mass, potential, hbar, g, form))
}

/// Generic refinement over any grid-to-problem builder.
pub fn refine_with<F>(base_grid: &Grid1D, levels: usize, k: usize, build: F) -> Result<ConvergenceReport>
where
    F: Fn(&Grid1D) -> Result<GeneralizedProblem>,
{
    if levels < 2 {
        return Err(Error::InvalidParam(format!("refine needs >= 2 levels, got {levels}")));
    }
    let mut grids = vec![*base_grid];
    for _ in 1..levels {
        let g = grids.last().unwrap().refined();
        grids.push(g);
    }
    let mut raw = Vec::with_capacity(levels);
    let mut floors = vec![0.0; k];
    for (l, g) in grids.iter().enumerate() {
        let gp = build(g)?;
        if l + 1 < levels {
            raw.push(lowest_eigenvalues(&gp, k, false)?.eigenvalues);
            continue;
        }
        let r = match lowest_eigenvalues(&gp, k, true) {
            Ok(r) => r,
            Err(_) => lowest_eigenvalues(&gp, k, false)?,
        };
        for (i, f) in floors.iter_mut().enumerate() {
            let scale = match &r.eigenvectors {
                Some(v) => stiffness_scale(&gp, &v[i]),
                None => max_row_norm(&gp),
            };
            *f = ROUNDOFF_FACTOR * f64::EPSILON * scale + r.error_estimates[i];
        }
        raw.push(r.eigenvalues);
    }
    let mut extrapolated = Vec::with_capacity(k);
    let mut error_estimates = Vec::with_capacity(k);
    let mut observed = Vec::with_capacity(k);
    let mut trusted = Vec::with_capacity(k);
    for i in 0..k {
        let series: Vec<f64> = raw.iter().map(|r| r[i]).collect();
        let (best, romberg) = richardson(&series);
        let p = observed_order(&series);
        let roundoff = p.is_nan() && levels >= 3;
        let ok = roundoff || (p >= TRUSTED_ORDER.0 && p <= TRUSTED_ORDER.1);
        // an untrusted order voids the O(h²) model; the last step bounds
        // the remaining error for any order >= 1
        let model = if ok && p.is_finite() {
            // mismatch between the h² model and the measured order
            let d = series[levels - 1] - series[levels - 2];
            let single = series[levels - 1] + d / (2f64.powf(p) - 1.0);
            romberg + (single - best).abs()
        } else if ok {
            romberg
        } else {
            romberg.max((series[levels - 1] - series[levels - 2]).abs())
        };
        trusted.push(ok);
        extrapolated.push(best);
        error_estimates.push(model + floors[i]);
        observed.push(p);
    }
    Ok(ConvergenceReport {
        grids,
        raw,
        extrapolated,
        error_estimates,
        observed_order: observed,
        trusted,
        roundoff_floor: floors,
    })
}

/// Safety factor on `eps · |φ|ᵀ|K||φ|`, covering the Romberg weights.
pub const ROUNDOFF_FACTOR: f64 = 4.0;

/// `Σ |K_ij| |φ_i| |φ_j| / Σ w_i φ_i²`: the eigenvalue change caused by
/// relative perturbations of the stiffness entries, per unit of relative
/// perturbation.
pub fn stiffness_scale(gp: &GeneralizedProblem, phi: &[f64]) -> f64 {
    let mut num = 0.0;
    for i in 0..phi.len() {
        num += gp.diag[i].abs() * phi[i] * phi[i];
        if i + 1 < phi.len() {
            num += 2.0 * gp.off[i].abs() * (phi[i] * phi[i + 1]).abs();
        }
    }
    let den: f64 = phi.iter().zip(&gp.weight).map(|(p, w)| w * p * p).sum();
    num / den
}

fn max_row_norm(gp: &GeneralizedProblem) -> f64 {
    let (d, e) = gp.reduced();
    (0..d.len())
        .map(|i| {
            d[i].abs()
                + if i > 0 { e[i - 1].abs() } else { 0.0 }
                + if i + 1 < d.len() { e[i].abs() } else { 0.0 }
        })
        .fold(0.0, f64::max)
}

/// [`refine_report`] that fails with `NotConverging` when an observed order
/// falls below [`MIN_ORDER`].
pub fn refine(
    mass: &SmoothFn,
    potential: &SmoothFn,
    hbar: f64,
    form: DiscretizationForm,
    base_grid: &Grid1D,
    levels: usize,
    k: usize,
) -> Result<ConvergenceReport> {
    let rep = refine_report(mass, potential, hbar, form, base_grid, levels, k)?;
    check_converging(rep)
}

pub fn check_converging(rep: ConvergenceReport) -> Result<ConvergenceReport> {
    match rep.first_non_converging() {
        Some((index, order)) => Err(Error::NotConverging { index, order }),
        None => Ok(rep),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn oscillator(n: usize) -> GeneralizedProblem {
        let g = Grid1D::new(-12.0, 12.0, n).unwrap();
        discretize(
            &SmoothFn::constant(1.0),
            &SmoothFn::poly(vec![0.0, 0.0, 0.5]),
            1.0,
            &g,
            DiscretizationForm::ConstantMass,
        )
        .unwrap()
    }

    #[test]
    fn grid_invariants() {
        let g = Grid1D::new(0.0, 1.0, 99).unwrap();
        assert!((g.h() - 0.01).abs() < 1e-15);
        assert_eq!(g.nodes().len(), 99);
        assert_eq!(g.refined().n_points, 199);
        assert!((g.refined().h() - 0.005).abs() < 1e-15);
        let r = g.with_boundaries(Boundary::NEUMANN, Boundary::Robin(1.0));
        let nodes = r.nodes();
        assert_eq!(nodes.len(), 101);
        assert_eq!(nodes[0], 0.0);
        assert_eq!(*nodes.last().unwrap(), 1.0);
        assert!(Grid1D::new(0.0, 1.0, 15).is_err());
        assert!(Grid1D::new(1.0, 0.0, 100).is_err());
    }

    #[test]
    fn oscillator_lowest_three() {
        let r = lowest_eigenvalues(&oscillator(400), 3, false).unwrap();
        for (n, e) in r.eigenvalues.iter().enumerate() {
            assert!((e - (n as f64 + 0.5)).abs() < 2e-3, "{e}");
        }
    }

    #[test]
    fn box_lowest_two() {
        let g = Grid1D::new(0.0, 1.0, 200).unwrap();
        let gp = discretize(
            &SmoothFn::constant(1.0),
            &SmoothFn::zero(),
            1.0,
            &g,
            DiscretizationForm::ConstantMass,
        )
        .unwrap();
        let r = lowest_eigenvalues(&gp, 2, false).unwrap();
        assert!((r.eigenvalues[0] - PI * PI / 2.0).abs() < 1e-3);
        assert!((r.eigenvalues[1] - 2.0 * PI * PI).abs() < 1e-2);
    }

    #[test]
    fn sturm_count_at_one() {
        assert_eq!(oscillator(64).sturm_count(1.0), 1);
    }

    #[test]
    fn neumann_box_has_zero_mode() {
        let g = Grid1D::new(0.0, 1.0, 100)
            .unwrap()
            .with_boundaries(Boundary::NEUMANN, Boundary::NEUMANN);
        let gp = discretize(
            &SmoothFn::constant(1.0),
            &SmoothFn::zero(),
            1.0,
            &g,
            DiscretizationForm::ConstantMass,
        )
        .unwrap();
        let r = lowest_eigenvalues(&gp, 2, false).unwrap();
        assert!(r.eigenvalues[0].abs() < 1e-10);
        assert!((r.eigenvalues[1] - PI * PI / 2.0).abs() < 1e-3);
    }

    #[test]
    fn eigenvectors_satisfy_pencil() {
        let g = Grid1D::new(0.1, 3.0, 300).unwrap();
        let gp = discretize(
            &SmoothFn::poly(vec![1.0, 0.5, 0.2]),
            &SmoothFn::poly(vec![0.0, 0.0, 1.0]),
            1.0,
            &g,
            DiscretizationForm::PdmGeneralized,
        )
        .unwrap();
        let r = lowest_eigenvalues(&gp, 4, true).unwrap();
        let vecs = r.eigenvectors.unwrap();
        for (v, lam) in vecs.iter().zip(&r.eigenvalues) {
            assert!(pencil_residual(&gp, v, *lam) <= RESIDUAL_TOL);
            let h = g.h();
            let norm: f64 = h * v.iter().zip(&gp.weight).map(|(p, w)| w * p * p).sum::<f64>();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn k_bounds() {
        let gp = oscillator(64);
        assert!(lowest_eigenvalues(&gp, 0, false).is_err());
        assert!(lowest_eigenvalues(&gp, 17, false).is_err());
        assert!(lowest_eigenvalues(&gp, 16, false).is_ok());
    }

    #[test]
    fn singular_node_is_reported() {
        let g = Grid1D::new(-1.0, 1.0, 100).unwrap();
        // node at x = 0 for odd interior counts
        let err = discretize(
            &SmoothFn::constant(1.0),
            &SmoothFn::power(-2.0),
            1.0,
            &g.refined(),
            DiscretizationForm::ConstantMass,
        );
        assert!(matches!(err, Err(Error::SingularPotential { .. })));
        let g0 = Grid1D::new(0.0, 1.0, 100).unwrap();
        assert!(discretize(
            &SmoothFn::constant(1.0),
            &SmoothFn::power(-2.0),
            1.0,
            &g0,
            DiscretizationForm::ConstantMass
        )
        .is_ok());
    }

    #[test]
    fn oscillator_refinement() {
        let g = Grid1D::new(-12.0, 12.0, 200).unwrap();
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
        assert!((rep.extrapolated[0] - 0.5).abs() < 1e-8, "{:?}", rep.extrapolated);
        for p in &rep.observed_order {
            assert!((p - 2.0).abs() < 0.1, "{p}");
        }
        assert!(rep.all_trusted());
    }

    #[test]
    fn box_observed_order() {
        let g = Grid1D::new(0.0, 1.0, 50).unwrap();
        let rep = refine(
            &SmoothFn::constant(1.0),
            &SmoothFn::zero(),
            1.0,
            DiscretizationForm::ConstantMass,
            &g,
            3,
            2,
        )
        .unwrap();
        assert!((rep.observed_order[0] - 2.0).abs() < 0.05);
        assert!((rep.extrapolated[0] - PI * PI / 2.0).abs() < 1e-6);
    }

    #[test]
    fn richardson_on_exact_series() {
        // E(h) = 1 + h^2 + h^4 is eliminated exactly by two Romberg columns
        let e = |h: f64| 1.0 + h * h + h.powi(4);
        let series = [e(0.1), e(0.05), e(0.025)];
        let (best, _) = richardson(&series);
        assert!((best - 1.0).abs() < 1e-14);
        assert!((observed_order(&series) - 2.0).abs() < 0.05);
    }
}
