//! Closed-form scalar functions with exact derivatives.
//!
//! Every mass profile, potential and test function in the crate is a
//! [`SmoothFn`]: an immutable expression tree over a handful of primitives
//! (constants, powers, exponentials, logarithms, polynomials, Gaussians,
//! sinusoids) and combinators (sum, product, scalar multiple, reciprocal,
//! composition). Evaluation is forward-mode: [`SmoothFn::eval_jet`] returns a
//! [`Jet3`] carrying the value and the first three derivatives, propagated by
//! the product and chain rules, so no finite differences are involved.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalars a jet can carry.
pub trait Scalar:
    Copy
    + PartialEq
    + fmt::Debug
    + From<f64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl Scalar for f64 {}
impl Scalar for Complex64 {}

/// Value and first three derivatives of a function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3<T = f64> {
    pub v0: T,
    pub v1: T,
    pub v2: T,
    pub v3: T,
}

impl<T: Scalar> Jet3<T> {
    pub fn new(v0: T, v1: T, v2: T, v3: T) -> Self {
        Jet3 { v0, v1, v2, v3 }
    }

    pub fn constant(v: T) -> Self {
        let z = T::from(0.0);
        Jet3::new(v, z, z, z)
    }

    pub fn scale(self, s: T) -> Self {
        Jet3::new(self.v0 * s, self.v1 * s, self.v2 * s, self.v3 * s)
    }

    /// Jet of the derivative. The third derivative of the result is unknown
    /// and set to NaN so any later use of it is visible.
    pub fn differentiate(self) -> Self {
        Jet3::new(self.v1, self.v2, self.v3, T::from(f64::NAN))
    }

    pub fn components(&self) -> [T; 4] {
        [self.v0, self.v1, self.v2, self.v3]
    }
}

impl Jet3<f64> {
    /// The jet of `x ↦ x` at `x`.
    pub fn variable(x: f64) -> Self {
        Jet3::new(x, 1.0, 0.0, 0.0)
    }

    /// Chain rule: `outer` holds the derivatives of the outer function
    /// evaluated at `self.v0`.
    pub fn chain(self, outer: [f64; 4]) -> Self {
        let [f0, f1, f2, f3] = outer;
        let (g1, g2, g3) = (self.v1, self.v2, self.v3);
        Jet3::new(
            f0,
            f1 * g1,
            f2 * g1 * g1 + f1 * g2,
            f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3,
        )
    }

    pub fn to_complex(self) -> Jet3<Complex64> {
        Jet3::new(
            Complex64::from(self.v0),
            Complex64::from(self.v1),
            Complex64::from(self.v2),
            Complex64::from(self.v3),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|v| v.is_finite())
    }
}

impl<T: Scalar> Add for Jet3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet3::new(self.v0 + o.v0, self.v1 + o.v1, self.v2 + o.v2, self.v3 + o.v3)
    }
}

impl<T: Scalar> Sub for Jet3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet3::new(self.v0 - o.v0, self.v1 - o.v1, self.v2 - o.v2, self.v3 - o.v3)
    }
}

impl<T: Scalar> Neg for Jet3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet3::new(-self.v0, -self.v1, -self.v2, -self.v3)
    }
}

impl<T: Scalar> Mul for Jet3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = T::from(2.0);
        let three = T::from(3.0);
        Jet3::new(
            self.v0 * o.v0,
            self.v0 * o.v1 + self.v1 * o.v0,
            self.v0 * o.v2 + two * self.v1 * o.v1 + self.v2 * o.v0,
            self.v0 * o.v3 + three * (self.v1 * o.v2 + self.v2 * o.v1) + self.v3 * o.v0,
        )
    }
}

/// A closed interval `[lo, hi]`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidParam(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// `n` deterministic points strictly inside the interval. Half-infinite
    /// and infinite intervals are sampled through `t/(1-t)`-type maps.
    pub fn sample_points(&self, n: usize) -> Vec<f64> {
        (1..=n)
            .map(|i| {
                let t = i as f64 / (n + 1) as f64;
                match (self.lo.is_finite(), self.hi.is_finite()) {
                    (true, true) => self.lo + t * (self.hi - self.lo),
                    (true, false) => self.lo + t / (1.0 - t),
                    (false, true) => self.hi - (1.0 - t) / t,
                    (false, false) => (t - 0.5) / (t * (1.0 - t)),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Identity,
    /// `x^s`; non-integer `s` needs `x > 0`, negative integers need `x ≠ 0`.
    Power(f64),
    /// `exp(c x)`
    Exp(f64),
    /// `ln x`, `x > 0`
    Log,
    /// ascending coefficients
    Poly(Vec<f64>),
    /// `exp(-(x - center)^2 / width^2)`
    Gaussian { center: f64, width: f64 },
    /// `sin(k x + phase)`
    Sinusoid { k: f64, phase: f64 },
    Sum(SmoothFn, SmoothFn),
    Product(SmoothFn, SmoothFn),
    Scale(f64, SmoothFn),
    /// `1/g`, admissible where `g > 0`
    Recip(SmoothFn),
    Compose { outer: SmoothFn, inner: SmoothFn },
}

/// An immutable closed-form function of one real variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothFn(Arc<Node>);

fn is_integer(s: f64) -> bool {
    s.fract() == 0.0 && s.abs() < 1e15
}

fn power_derivs(s: f64, x: f64) -> Result<[f64; 4]> {
    if is_integer(s) {
        if s < 0.0 && x == 0.0 {
            return Err(Error::domain(format!("x^{s} at zero"), x));
        }
        let n = s as i32;
        let mut out = [0.0; 4];
        let mut coeff = 1.0;
        for (k, slot) in out.iter_mut().enumerate() {
            let e = n - k as i32;
            // falling factorial hits zero for k > n >= 0
            *slot = if coeff == 0.0 { 0.0 } else { coeff * x.powi(e) };
            coeff *= (n - k as i32) as f64;
        }
        Ok(out)
    } else {
        if x <= 0.0 {
            return Err(Error::domain(format!("x^{s} needs a positive base"), x));
        }
        let p = x.powf(s);
        Ok([
            p,
            s * p / x,
            s * (s - 1.0) * p / (x * x),
            s * (s - 1.0) * (s - 2.0) * p / (x * x * x),
        ])
    }
}

impl SmoothFn {
    fn node(n: Node) -> Self {
        SmoothFn(Arc::new(n))
    }

    pub fn constant(v: f64) -> Self {
        Self::node(Node::Const(v))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn identity() -> Self {
        Self::node(Node::Identity)
    }

    /// `x^s`
    pub fn power(s: f64) -> Self {
        Self::node(Node::Power(s))
    }

    /// `exp(c x)`
    pub fn exp(c: f64) -> Self {
        Self::node(Node::Exp(c))
    }

    pub fn ln() -> Self {
        Self::node(Node::Log)
    }

    /// Polynomial with ascending coefficients `c[0] + c[1] x + ...`.
    pub fn poly(coeffs: Vec<f64>) -> Self {
        Self::node(Node::Poly(coeffs))
    }

    pub fn gaussian(center: f64, width: f64) -> Self {
        Self::node(Node::Gaussian { center, width })
    }

    /// `sin(k x + phase)`
    pub fn sinusoid(k: f64, phase: f64) -> Self {
        Self::node(Node::Sinusoid { k, phase })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::node(Node::Scale(s, self.clone()))
    }

    /// `1/self`, admissible only where `self > 0`.
    pub fn recip(&self) -> Self {
        Self::node(Node::Recip(self.clone()))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &SmoothFn) -> Self {
        Self::node(Node::Compose {
            outer: self.clone(),
            inner: inner.clone(),
        })
    }

    /// `self^s` via composition with `x^s`; non-integer `s` needs `self > 0`.
    pub fn powf(&self, s: f64) -> Self {
        SmoothFn::power(s).compose(self)
    }

    pub fn is_constant_zero(&self) -> bool {
        matches!(*self.0, Node::Const(v) if v == 0.0)
    }

    /// Value and first three derivatives at `x`.
    pub fn eval_jet(&self, x: f64) -> Result<Jet3> {
        let jet = match &*self.0 {
            Node::Const(v) => Jet3::constant(*v),
            Node::Identity => Jet3::variable(x),
            Node::Power(s) => {
                let d = power_derivs(*s, x)?;
                Jet3::new(d[0], d[1], d[2], d[3])
            }
            Node::Exp(c) => {
                let e = (c * x).exp();
                Jet3::new(e, c * e, c * c * e, c * c * c * e)
            }
            Node::Log => {
                if x <= 0.0 {
                    return Err(Error::domain("log of a nonpositive number", x));
                }
                Jet3::new(x.ln(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x))
            }
            Node::Poly(c) => {
                // Horner on the jet of x.
                let var = Jet3::variable(x);
                c.iter()
                    .rev()
                    .fold(Jet3::constant(0.0), |acc, &ck| acc * var + Jet3::constant(ck))
            }
            Node::Gaussian { center, width } => {
                let t = (x - center) / width;
                let g = (-t * t).exp();
                let w = *width;
                // d/dx e^{-t^2} with t' = 1/w: Hermite-type recursion
                Jet3::new(
                    g,
                    -2.0 * t * g / w,
                    (4.0 * t * t - 2.0) * g / (w * w),
                    (12.0 * t - 8.0 * t * t * t) * g / (w * w * w),
                )
            }
            Node::Sinusoid { k, phase } => {
                let a = k * x + phase;
                let (s, c) = a.sin_cos();
                Jet3::new(s, k * c, -k * k * s, -k * k * k * c)
            }
            Node::Sum(a, b) => a.eval_jet(x)? + b.eval_jet(x)?,
            Node::Product(a, b) => a.eval_jet(x)? * b.eval_jet(x)?,
            Node::Scale(s, a) => a.eval_jet(x)?.scale(*s),
            Node::Recip(g) => {
                let gj = g.eval_jet(x)?;
                let y = gj.v0;
                if !(y > 0.0) {
                    return Err(Error::domain("reciprocal of a nonpositive value", x));
                }
                gj.chain([
                    1.0 / y,
                    -1.0 / (y * y),
                    2.0 / (y * y * y),
                    -6.0 / (y * y * y * y),
                ])
            }
            Node::Compose { outer, inner } => {
                let ij = inner.eval_jet(x)?;
                let oj = outer.eval_jet(ij.v0)?;
                ij.chain(oj.components())
            }
        };
        if !jet.is_finite() {
            return Err(Error::domain(format!("non-finite jet of {self}"), x));
        }
        Ok(jet)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval_jet(x)?.v0)
    }

    /// The derivative as another closed-form function (tree differentiation,
    /// no simplification beyond dropping zero constants).
    pub fn derivative(&self) -> SmoothFn {
        match &*self.0 {
            Node::Const(_) => SmoothFn::zero(),
            Node::Identity => SmoothFn::constant(1.0),
            Node::Power(s) => {
                if *s == 0.0 {
                    SmoothFn::zero()
                } else {
                    SmoothFn::power(s - 1.0).scale(*s)
                }
            }
            Node::Exp(c) => self.scale(*c),
            Node::Log => SmoothFn::power(-1.0),
            Node::Poly(c) => {
                let d: Vec<f64> = c
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, ck)| k as f64 * ck)
                    .collect();
                if d.is_empty() {
                    SmoothFn::zero()
                } else {
                    SmoothFn::poly(d)
                }
            }
            Node::Gaussian { center, width } => {
                let w2 = width * width;
                SmoothFn::poly(vec![2.0 * center / w2, -2.0 / w2]) * self.clone()
            }
            Node::Sinusoid { k, phase } => {
                SmoothFn::sinusoid(*k, phase + std::f64::consts::FRAC_PI_2).scale(*k)
            }
            Node::Sum(a, b) => a.derivative() + b.derivative(),
            Node::Product(a, b) => a.derivative() * b.clone() + a.clone() * b.derivative(),
            Node::Scale(s, a) => a.derivative().scale(*s),
            Node::Recip(g) => (g.derivative() * (g.clone() * g.clone()).recip()).scale(-1.0),
            Node::Compose { outer, inner } => outer.derivative().compose(inner) * inner.derivative(),
        }
    }
}

impl fmt::Display for SmoothFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Const(v) => write!(f, "{v}"),
            Node::Identity => write!(f, "x"),
            Node::Power(s) => write!(f, "x^{s}"),
            Node::Exp(c) => write!(f, "exp({c}x)"),
            Node::Log => write!(f, "ln(x)"),
            Node::Poly(c) => {
                write!(f, "poly[")?;
                for (i, ci) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{ci}")?;
                }
                write!(f, "]")
            }
            Node::Gaussian { center, width } => write!(f, "gauss({center}, {width})"),
            Node::Sinusoid { k, phase } => write!(f, "sin({k}x + {phase})"),
            Node::Sum(a, b) => write!(f, "({a} + {b})"),
            Node::Product(a, b) => write!(f, "({a} * {b})"),
            Node::Scale(s, a) => write!(f, "{s}*{a}"),
            Node::Recip(g) => write!(f, "1/{g}"),
            Node::Compose { outer, inner } => write!(f, "[{outer}]∘({inner})"),
        }
    }
}

impl Add for SmoothFn {
    type Output = SmoothFn;
    fn add(self, o: SmoothFn) -> SmoothFn {
        if self.is_constant_zero() {
            return o;
        }
        if o.is_constant_zero() {
            return self;
        }
        SmoothFn::node(Node::Sum(self, o))
    }
}

impl Sub for SmoothFn {
    type Output = SmoothFn;
    fn sub(self, o: SmoothFn) -> SmoothFn {
        self + o.scale(-1.0)
    }
}

impl Mul for SmoothFn {
    type Output = SmoothFn;
    fn mul(self, o: SmoothFn) -> SmoothFn {
        if self.is_constant_zero() || o.is_constant_zero() {
            return SmoothFn::zero();
        }
        SmoothFn::node(Node::Product(self, o))
    }
}

impl Neg for SmoothFn {
    type Output = SmoothFn;
    fn neg(self) -> SmoothFn {
        self.scale(-1.0)
    }
}

/// Built-in profile recipes.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// `m0`
    Const { value: f64 },
    /// `m0 e^{c x}`
    ExpMass { m0: f64, c: f64 },
    /// `c x^2`
    QuadraticMass { c: f64 },
    /// `V0 e^{c x}`
    ExpPotential { v0: f64, c: f64 },
    /// `A/(c x^4) + B/(c x^2)`
    InverseQuarticPotential { c: f64, a: f64, b: f64 },
    /// `scale · x^exponent`
    Power { scale: f64, exponent: f64 },
    Poly { coeffs: Vec<f64> },
    /// `amplitude · exp(-(x-center)^2/width^2)`
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
    },
}

impl ProfileKind {
    fn is_mass(&self) -> bool {
        matches!(
            self,
            ProfileKind::ExpMass { .. } | ProfileKind::QuadraticMass { .. }
        )
    }
}

/// Builds a profile and, for mass kinds, checks strict positivity on
/// `domain`.
pub fn make_profile(kind: &ProfileKind, domain: Interval) -> Result<SmoothFn> {
    let f = match kind {
        ProfileKind::Const { value } => SmoothFn::constant(*value),
        ProfileKind::ExpMass { m0, c } => {
            if !(*m0 > 0.0) {
                return Err(Error::InvalidProfile(format!("exponential mass needs m0 > 0, got {m0}")));
            }
            if *c == 0.0 {
                return Err(Error::InvalidProfile("exponential mass needs c != 0".into()));
            }
            SmoothFn::exp(*c).scale(*m0)
        }
        ProfileKind::QuadraticMass { c } => {
            if !(*c > 0.0) {
                return Err(Error::InvalidProfile(format!("quadratic mass needs c > 0, got {c}")));
            }
            if domain.lo <= 0.0 && domain.hi >= 0.0 {
                return Err(Error::InvalidProfile(format!(
                    "quadratic mass vanishes at 0, inside [{}, {}]",
                    domain.lo, domain.hi
                )));
            }
            SmoothFn::poly(vec![0.0, 0.0, *c])
        }
        ProfileKind::ExpPotential { v0, c } => SmoothFn::exp(*c).scale(*v0),
        ProfileKind::InverseQuarticPotential { c, a, b } => {
            if *c == 0.0 {
                return Err(Error::InvalidProfile("singular potential needs c != 0".into()));
            }
            SmoothFn::power(-4.0).scale(a / c) + SmoothFn::power(-2.0).scale(b / c)
        }
        ProfileKind::Power { scale, exponent } => SmoothFn::power(*exponent).scale(*scale),
        ProfileKind::Poly { coeffs } => SmoothFn::poly(coeffs.clone()),
        ProfileKind::Gaussian {
            amplitude,
            center,
            width,
        } => {
            if *width == 0.0 {
                return Err(Error::InvalidProfile("gaussian width must be nonzero".into()));
            }
            SmoothFn::gaussian(*center, *width).scale(*amplitude)
        }
    };
    if kind.is_mass() {
        check_positive(&f, domain)?;
    }
    Ok(f)
}

/// Fails unless `f > 0` at the domain ends (when finite) and on 256 interior
/// samples.
pub fn check_positive(f: &SmoothFn, domain: Interval) -> Result<()> {
    let mut pts = domain.sample_points(256);
    if domain.lo.is_finite() {
        pts.push(domain.lo);
    }
    if domain.hi.is_finite() {
        pts.push(domain.hi);
    }
    for x in pts {
        let v = f
            .value(x)
            .map_err(|e| Error::InvalidProfile(format!("mass not evaluable: {e}")))?;
        if !(v > 0.0) {
            return Err(Error::InvalidProfile(format!("mass {f} is {v} <= 0 at x = {x}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    fn assert_jet(j: Jet3, want: [f64; 4], tol: f64) {
        for (got, w) in j.components().iter().zip(want) {
            assert!(close(*got, w, tol), "{j:?} vs {want:?}");
        }
    }

    #[test]
    fn exp_at_zero() {
        assert_jet(SmoothFn::exp(1.0).eval_jet(0.0).unwrap(), [1.0, 1.0, 1.0, 1.0], 1e-15);
    }

    #[test]
    fn square_at_three() {
        assert_jet(
            SmoothFn::power(2.0).eval_jet(3.0).unwrap(),
            [9.0, 6.0, 2.0, 0.0],
            1e-15,
        );
        assert_jet(
            SmoothFn::poly(vec![0.0, 0.0, 1.0]).eval_jet(3.0).unwrap(),
            [9.0, 6.0, 2.0, 0.0],
            1e-15,
        );
    }

    #[test]
    fn scaled_log_matches_hand_derivatives() {
        // (2/c) ln x with c = 2 at x = 2
        let f = SmoothFn::ln().scale(1.0);
        assert_jet(
            f.eval_jet(2.0).unwrap(),
            [2f64.ln(), 0.5, -0.25, 0.25],
            1e-15,
        );
        // Richardson-extrapolated central differences of the value
        let v = |x: f64| f.value(x).unwrap();
        let d1 = |h: f64| (v(2.0 + h) - v(2.0 - h)) / (2.0 * h);
        let rich = (4.0 * d1(1e-3) - d1(2e-3)) / 3.0;
        assert!((rich - 0.5).abs() < 1e-10);
    }

    #[test]
    fn log_domain_error() {
        assert!(matches!(SmoothFn::ln().eval_jet(0.0), Err(Error::Domain { .. })));
        assert!(SmoothFn::power(0.5).eval_jet(-1.0).is_err());
        assert!(SmoothFn::power(-1.0).eval_jet(0.0).is_err());
        assert!(SmoothFn::power(-1.0).eval_jet(-2.0).is_ok());
        assert!(SmoothFn::poly(vec![0.0, 1.0]).recip().eval_jet(-1.0).is_err());
    }

    #[test]
    fn profiles() {
        let d = Interval::new(-5.0, 5.0).unwrap();
        let m = make_profile(&ProfileKind::ExpMass { m0: 1.0, c: 1.0 }, d).unwrap();
        assert_eq!(m.value(0.0).unwrap(), 1.0);
        let pos = Interval::new(0.5, 5.0).unwrap();
        let q = make_profile(&ProfileKind::QuadraticMass { c: 1.0 }, pos).unwrap();
        assert_eq!(q.value(2.0).unwrap(), 4.0);
        assert!(matches!(
            make_profile(&ProfileKind::QuadraticMass { c: 1.0 }, d),
            Err(Error::InvalidProfile(_))
        ));
        let k = make_profile(&ProfileKind::Const { value: 1.0 }, d).unwrap();
        for x in d.sample_points(7) {
            assert_jet(k.eval_jet(x).unwrap(), [1.0, 0.0, 0.0, 0.0], 0.0);
        }
        assert!(make_profile(&ProfileKind::ExpMass { m0: -1.0, c: 1.0 }, d).is_err());
        assert!(make_profile(&ProfileKind::ExpMass { m0: 1.0, c: 0.0 }, d).is_err());
    }

    #[test]
    fn derivative_tree_matches_jets() {
        let f = (SmoothFn::gaussian(0.3, 0.8) * SmoothFn::sinusoid(2.0, 0.1)
            + SmoothFn::poly(vec![2.0, 0.0, 1.0]).recip())
        .compose(&SmoothFn::exp(0.5))
            + SmoothFn::ln().compose(&SmoothFn::poly(vec![1.0, 0.0, 1.0]));
        let df = f.derivative();
        for x in [-1.3, -0.2, 0.0, 0.7, 1.9] {
            let j = f.eval_jet(x).unwrap();
            let dj = df.eval_jet(x).unwrap();
            assert!(close(dj.v0, j.v1, 1e-13));
            assert!(close(dj.v1, j.v2, 1e-13));
            assert!(close(dj.v2, j.v3, 1e-13));
        }
    }

    #[test]
    fn differentiate_poisons_top_component() {
        let j = SmoothFn::exp(2.0).eval_jet(0.0).unwrap().differentiate();
        assert_eq!(j.v0, 2.0);
        assert!(j.v3.is_nan());
    }

    #[test]
    fn interval_sampling() {
        let half = Interval::new(0.0, f64::INFINITY).unwrap();
        let pts = half.sample_points(10);
        assert!(pts.iter().all(|&p| p > 0.0 && p.is_finite()));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(Interval::new(1.0, 1.0).is_err());
    }
}
