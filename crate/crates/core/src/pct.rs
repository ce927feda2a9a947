//! Point canonical transformations `x = f(u)`, `φ(x) = √|f'(u)| χ(u)`.
//!
//! Every transform acts on the unit-kinetic equation
//! `−ħ²/2 φ'' + P(x) φ = E w(x) φ`, i.e. the PDM equation multiplied by `m`.
//! In `u` it becomes `−ħ²/2 χ'' + [f'² P(f) − (ħ²/4) S] χ = E f'² w(f) χ`
//! with `S = f'''/f' − (3/2)(f''/f')²`. The problem is reducible when the
//! `u`-weight `f'² w(f)` is constant; that constant is the `u` mass.

use crate::error::{Error, Result};
use crate::numeric::Boundary;
use crate::ordering::{effective_potential, OrderingParams};
use crate::smoothfn::{Interval, SmoothFn};

/// Relative spread tolerated in the `u`-weight of a reducible problem.
pub const WEIGHT_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
enum MapKind {
    Identity,
    Affine { scale: f64, shift: f64 },
    Log { c: f64 },
    General,
}

/// A strictly monotone map `x = f(u)` on a `u` interval.
#[derive(Debug, Clone)]
pub struct CoordinateMap {
    f: SmoothFn,
    domain: Interval,
    decreasing: bool,
    kind: MapKind,
}

impl CoordinateMap {
    /// Checks the sign of `f'` on 512 samples of `domain`.
    pub fn new(f: SmoothFn, domain: Interval) -> Result<Self> {
        Self::with_kind(f, domain, MapKind::General)
    }

    fn with_kind(f: SmoothFn, domain: Interval, kind: MapKind) -> Result<Self> {
        let df = f.derivative();
        let mut sign = 0.0;
        for u in domain.sample_points(512) {
            let d = df.value(u)?;
            if d == 0.0 || !d.is_finite() || (sign != 0.0 && d.signum() != sign) {
                return Err(Error::InvalidParam(format!(
                    "map {f} is not strictly monotone (f' = {d} at u = {u})"
                )));
            }
            sign = d.signum();
        }
        Ok(CoordinateMap {
            f,
            domain,
            decreasing: sign < 0.0,
            kind,
        })
    }

    pub fn identity(domain: Interval) -> Self {
        Self::with_kind(SmoothFn::identity(), domain, MapKind::Identity).expect("identity is monotone")
    }

    /// `f(u) = σ u + τ`
    pub fn affine(scale: f64, shift: f64, domain: Interval) -> Result<Self> {
        if scale == 0.0 || !scale.is_finite() || !shift.is_finite() {
            return Err(Error::InvalidParam(format!("affine map needs finite nonzero scale, got {scale}")));
        }
        Self::with_kind(
            SmoothFn::poly(vec![shift, scale]),
            domain,
            MapKind::Affine { scale, shift },
        )
    }

    pub fn f(&self) -> &SmoothFn {
        &self.f
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn is_decreasing(&self) -> bool {
        self.decreasing
    }

    pub fn forward(&self, u: f64) -> Result<f64> {
        self.f.value(u)
    }

    /// `u(x)`, closed form when known, else bisection on a finite domain.
    pub fn inverse(&self, x: f64) -> Result<f64> {
        let u = match self.kind {
            MapKind::Identity => x,
            MapKind::Affine { scale, shift } => (x - shift) / scale,
            MapKind::Log { c } => (0.5 * c * x).exp(),
            MapKind::General => self.bisect(x)?,
        };
        if !self.domain.contains(u) || !u.is_finite() {
            return Err(Error::domain("x outside the image of the map", x));
        }
        Ok(u)
    }

    fn bisect(&self, x: f64) -> Result<f64> {
        if !self.domain.is_finite() {
            return Err(Error::domain("bisection inverse needs a finite u domain", x));
        }
        let (mut a, mut b) = (self.domain.lo, self.domain.hi);
        let g = |u: f64| -> Result<f64> {
            let v = self.f.value(u)? - x;
            Ok(if self.decreasing { -v } else { v })
        };
        if g(a)? > 0.0 || g(b)? < 0.0 {
            return Err(Error::domain("x outside the image of the map", x));
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if g(mid)? > 0.0 {
                b = mid;
            } else {
                a = mid;
            }
        }
        Ok(0.5 * (a + b))
    }

    /// Image of an `x` interval in `u`, ordered.
    pub fn preimage(&self, x: Interval) -> Result<Interval> {
        let (a, b) = (self.inverse(x.lo)?, self.inverse(x.hi)?);
        Interval::new(a.min(b), a.max(b))
    }

    /// `x`-Robin slope `σ` at `x = f(u)` as a `u`-Robin slope:
    /// `χ'/χ = σ f' − f''/(2 f')`.
    pub fn map_robin(&self, sigma_x: f64, u: f64) -> Result<f64> {
        let j = self.f.eval_jet(u)?;
        Ok(sigma_x * j.v1 - j.v2 / (2.0 * j.v1))
    }

    /// `x` boundaries of `[x_lo, x_hi]` as `(lower, upper)` boundaries in `u`.
    pub fn map_boundaries(&self, x: Interval, lower: Boundary, upper: Boundary) -> Result<(Boundary, Boundary)> {
        let conv = |b: Boundary, xe: f64| -> Result<Boundary> {
            match b {
                Boundary::Dirichlet => Ok(Boundary::Dirichlet),
                Boundary::Robin(s) => Ok(Boundary::Robin(self.map_robin(s, self.inverse(xe)?)?)),
            }
        };
        let lo = conv(lower, x.lo)?;
        let hi = conv(upper, x.hi)?;
        Ok(if self.decreasing { (hi, lo) } else { (lo, hi) })
    }
}

/// `f(u) = (2/c) ln u` on `u > 0`, so that `e^{c f(u)} = u²`.
pub fn log_map(c: f64) -> Result<CoordinateMap> {
    if c == 0.0 || !c.is_finite() {
        return Err(Error::InvalidParam(format!("log map needs finite c != 0, got {c}")));
    }
    CoordinateMap::with_kind(
        SmoothFn::ln().scale(2.0 / c),
        Interval {
            lo: 0.0,
            hi: f64::INFINITY,
        },
        MapKind::Log { c },
    )
}

/// `S = f'''/f' − (3/2)(f''/f')²`
pub fn schwarzian(map: &CoordinateMap) -> SmoothFn {
    let d1 = map.f.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let inv = d1.powf(-1.0);
    let r = d2 * inv.clone();
    d3 * inv - (r.clone() * r).scale(1.5)
}

/// `f'² · (W ∘ f) − (ħ²/4) S` for an `x`-function `W` (typically `W − E`).
pub fn transform_potential(w_minus_e: &SmoothFn, map: &CoordinateMap, hbar: f64) -> SmoothFn {
    let d1 = map.f.derivative();
    let jac2 = d1.clone() * d1;
    jac2 * w_minus_e.compose(&map.f) - schwarzian(map).scale(0.25 * hbar * hbar)
}

/// A constant-mass problem `−ħ²/(2M) χ'' + V_u χ = E χ` in `u`.
#[derive(Debug, Clone)]
pub struct TransformedProblem {
    pub potential: SmoothFn,
    pub mass: f64,
    pub domain: Interval,
    pub hbar: f64,
}

impl TransformedProblem {
    /// The constant mass as a profile.
    pub fn mass_fn(&self) -> SmoothFn {
        SmoothFn::constant(self.mass)
    }
}

/// Transforms `−ħ²/2 φ'' + P φ = E w φ` and checks that the `u`-weight
/// `f'² w(f)` is constant on `domain`.
pub fn transform_pencil(
    stiffness_potential: &SmoothFn,
    weight: &SmoothFn,
    map: &CoordinateMap,
    hbar: f64,
    domain: Interval,
) -> Result<TransformedProblem> {
    let d1 = map.f.derivative();
    let wu = d1.clone() * d1 * weight.compose(&map.f);
    let samples = domain.sample_points(257);
    let vals: Vec<f64> = samples.iter().map(|&u| wu.value(u)).collect::<Result<_>>()?;
    let m = vals[vals.len() / 2];
    if let Some((u, v)) = samples
        .iter()
        .zip(&vals)
        .find(|(_, v)| !((*v - m).abs() <= WEIGHT_RTOL * m.abs()) || !(**v > 0.0))
    {
        return Err(Error::NotReducible(format!(
            "u-weight f'^2 m(f) varies: {v} at u = {u} vs {m}"
        )));
    }
    Ok(TransformedProblem {
        potential: transform_potential(stiffness_potential, map, hbar).scale(1.0 / m),
        mass: m,
        domain,
        hbar,
    })
}

/// Reduces the ordered PDM problem with `mass` and external `potential` via
/// `map` (pencil `P = m U_eff`, `w = m`).
pub fn transform_pdm(
    ord: &OrderingParams,
    mass: &SmoothFn,
    potential: &SmoothFn,
    map: &CoordinateMap,
    hbar: f64,
    domain: Interval,
) -> Result<TransformedProblem> {
    let ueff = effective_potential(ord, mass, potential, hbar);
    transform_pencil(&(mass.clone() * ueff), mass, map, hbar, domain)
}

/// Monotone cubic (Fritsch–Carlson) interpolant on increasing nodes.
#[derive(Debug, Clone)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n || x.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParam("pchip needs >= 2 strictly increasing nodes".into()));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let del: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = del[0];
            d[1] = del[0];
        } else {
            for i in 1..n - 1 {
                if del[i - 1] * del[i] > 0.0 {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
                }
            }
            d[0] = end_slope(h[0], h[1], del[0], del[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
        }
        Ok(Pchip {
            x: x.to_vec(),
            y: y.to_vec(),
            d,
        })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let n = self.x.len();
        if !(t >= self.x[0] && t <= self.x[n - 1]) {
            return Err(Error::domain("interpolation outside the sampled range", t));
        }
        let i = match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (s2, s3) = (s * s, s * s * s);
        Ok((2.0 * s3 - 3.0 * s2 + 1.0) * self.y[i]
            + (s3 - 2.0 * s2 + s) * h * self.d[i]
            + (-2.0 * s3 + 3.0 * s2) * self.y[i + 1]
            + (s3 - s2) * h * self.d[i + 1])
    }
}

fn end_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d.signum() != del0.signum() {
        0.0
    } else if del0.signum() != del1.signum() && d.abs() > 3.0 * del0.abs() {
        3.0 * del0
    } else {
        d
    }
}

/// Trapezoid `∫ y² dx` on increasing nodes.
pub fn l2_norm_sq(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xw, yw)| 0.5 * (xw[1] - xw[0]) * (yw[0] * yw[0] + yw[1] * yw[1]))
        .sum()
}

fn normalized(x: &[f64], mut y: Vec<f64>) -> Result<Vec<f64>> {
    let n = l2_norm_sq(x, &y).sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::InvalidParam("state has zero or non-finite norm".into()));
    }
    y.iter_mut().for_each(|v| *v /= n);
    Ok(y)
}

/// `ψ(x) = √m(x) √|f'(u)| χ(u(x))` on `x_nodes`, unit plain L² norm in `x`.
pub fn pull_back_state(
    chi: &[f64],
    u_nodes: &[f64],
    map: &CoordinateMap,
    mass: &SmoothFn,
    x_nodes: &[f64],
) -> Result<Vec<f64>> {
    let interp = Pchip::new(u_nodes, chi)?;
    let df = map.f.derivative();
    let psi = x_nodes
        .iter()
        .map(|&x| {
            let u = map.inverse(x)?;
            let m = mass.value(x)?;
            Ok(m.sqrt() * df.value(u)?.abs().sqrt() * interp.eval(u)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    normalized(x_nodes, psi)
}

/// Inverse of [`pull_back_state`]: `χ(u) = ψ(f(u)) / (√m √|f'|)`, unit L²
/// norm in `u`.
pub fn push_forward_state(
    psi: &[f64],
    x_nodes: &[f64],
    map: &CoordinateMap,
    mass: &SmoothFn,
    u_nodes: &[f64],
) -> Result<Vec<f64>> {
    let interp = Pchip::new(x_nodes, psi)?;
    let df = map.f.derivative();
    let chi = u_nodes
        .iter()
        .map(|&u| {
            let x = map.forward(u)?;
            let m = mass.value(x)?;
            Ok(interp.eval(x)? / (m.sqrt() * df.value(u)?.abs().sqrt()))
        })
        .collect::<Result<Vec<f64>>>()?;
    normalized(u_nodes, chi)
}
