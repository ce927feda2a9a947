//! Ambiguity parameters of the four-term ordered Hamiltonian
//!
//! `H = 1/(4(a+1)) { a[m⁻¹p² + p²m⁻¹] + m^α p m^β p m^γ + m^γ p m^β p m^α }`
//!
//! with `α + β + γ = −1`, and the potentials the ordering generates once
//! every momentum is moved to the right.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smoothfn::SmoothFn;

/// Absolute tolerance for the ambiguity-free constraints.
pub const AMBIGUITY_FREE_TOL: f64 = 1e-12;

/// `(a, α, γ)`; `β = −1 − α − γ` is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawOrdering", into = "RawOrdering")]
pub struct OrderingParams {
    a: f64,
    alpha: f64,
    gamma: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrdering {
    a: f64,
    alpha: f64,
    gamma: f64,
}

impl TryFrom<RawOrdering> for OrderingParams {
    type Error = Error;
    fn try_from(r: RawOrdering) -> Result<Self> {
        make_ordering(r.a, r.alpha, r.gamma)
    }
}

impl From<OrderingParams> for RawOrdering {
    fn from(o: OrderingParams) -> Self {
        RawOrdering {
            a: o.a,
            alpha: o.alpha,
            gamma: o.gamma,
        }
    }
}

pub fn make_ordering(a: f64, alpha: f64, gamma: f64) -> Result<OrderingParams> {
    if !(a.is_finite() && alpha.is_finite() && gamma.is_finite()) {
        return Err(Error::InvalidParam(format!(
            "ordering parameters must be finite: ({a}, {alpha}, {gamma})"
        )));
    }
    if a == -1.0 {
        return Err(Error::SingularNormalization);
    }
    Ok(OrderingParams { a, alpha, gamma })
}

impl OrderingParams {
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn beta(&self) -> f64 {
        -1.0 - self.alpha - self.gamma
    }

    /// `1/(4(a+1))`
    pub fn normalization(&self) -> f64 {
        1.0 / (4.0 * (self.a + 1.0))
    }

    /// Coefficient of `m m''` in the ambiguity potential: `α + γ − a`.
    pub fn curvature_coefficient(&self) -> f64 {
        self.alpha + self.gamma - self.a
    }

    /// Coefficient of `(m')²` (before the factor 2): `a − αγ − α − γ`.
    pub fn slope_coefficient(&self) -> f64 {
        self.a - self.alpha * self.gamma - self.alpha - self.gamma
    }
}

impl fmt::Display for OrderingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a={}, α={}, β={}, γ={})",
            self.a,
            self.alpha,
            self.beta(),
            self.gamma
        )
    }
}

/// Orderings proposed in the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedOrdering {
    Weyl,
    LiKuhn,
    ZhuKroemer,
    GoraWilliams,
    BendanielDuke,
}

impl NamedOrdering {
    pub const ALL: [NamedOrdering; 5] = [
        NamedOrdering::Weyl,
        NamedOrdering::LiKuhn,
        NamedOrdering::ZhuKroemer,
        NamedOrdering::GoraWilliams,
        NamedOrdering::BendanielDuke,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedOrdering::Weyl => "weyl",
            NamedOrdering::LiKuhn => "li-kuhn",
            NamedOrdering::ZhuKroemer => "zhu-kroemer",
            NamedOrdering::GoraWilliams => "gora-williams",
            NamedOrdering::BendanielDuke => "bendaniel-duke",
        }
    }

    pub fn params(&self) -> OrderingParams {
        let (a, alpha, gamma) = match self {
            NamedOrdering::Weyl => (1.0, 0.0, 0.0),
            NamedOrdering::LiKuhn => (0.0, 0.0, -0.5),
            NamedOrdering::ZhuKroemer => (0.0, -0.5, -0.5),
            NamedOrdering::GoraWilliams => (0.0, -1.0, 0.0),
            NamedOrdering::BendanielDuke => (0.0, 0.0, 0.0),
        };
        OrderingParams { a, alpha, gamma }
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|o| o.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for NamedOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedOrdering {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::UnknownOrdering {
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

/// True iff `α + γ − a = 0` and `a − αγ − α − γ = 0` (to 1e−12).
pub fn is_ambiguity_free(ord: &OrderingParams) -> bool {
    ord.curvature_coefficient().abs() <= AMBIGUITY_FREE_TOL
        && ord.slope_coefficient().abs() <= AMBIGUITY_FREE_TOL
}

/// The ordering-dependent zeroth-order term left after commuting all momenta
/// to the right:
///
/// `U = −ħ²/(4m³(a+1)) [ (α+γ−a) m m'' + 2(a−αγ−α−γ) (m')² ]`.
pub fn ambiguity_potential(ord: &OrderingParams, mass: &SmoothFn, hbar: f64) -> SmoothFn {
    let c_curv = ord.curvature_coefficient();
    let c_slope = 2.0 * ord.slope_coefficient();
    if c_curv == 0.0 && c_slope == 0.0 {
        return SmoothFn::zero();
    }
    let inv = mass.recip();
    let d1 = mass.derivative();
    let d2 = d1.derivative();
    let curv = (d2 * inv.clone() * inv.clone()).scale(c_curv);
    let slope = (d1.clone() * d1 * inv.clone() * inv.clone() * inv).scale(c_slope);
    (curv + slope).scale(-hbar * hbar * ord.normalization())
}

/// Kinetic correction produced by `ψ = √m φ`:
/// `ħ²/(4m) [ (3/2)(m'/m)² − m''/m ]`.
pub fn redefinition_potential(mass: &SmoothFn, hbar: f64) -> SmoothFn {
    let inv = mass.recip();
    let d1 = mass.derivative();
    let d2 = d1.derivative();
    let log_slope = d1 * inv.clone();
    let bracket = (log_slope.clone() * log_slope).scale(1.5) - d2 * inv.clone();
    (inv * bracket).scale(hbar * hbar / 4.0)
}

/// `U_eff = V + U_{αβγa} + ħ²/(4m) [ (3/2)(m'/m)² − m''/m ]`.
pub fn effective_potential(
    ord: &OrderingParams,
    mass: &SmoothFn,
    potential: &SmoothFn,
    hbar: f64,
) -> SmoothFn {
    potential.clone() + ambiguity_potential(ord, mass, hbar) + redefinition_potential(mass, hbar)
}

/// `q = c²/(4(a+1)) (a − 2αγ − α − γ)`; for `m = m0 e^{cx}` the ambiguity
/// potential is `−ħ² q / m`.
pub fn q_coefficient(ord: &OrderingParams, c: f64) -> f64 {
    let (a, al, ga) = (ord.a, ord.alpha, ord.gamma);
    c * c / (4.0 * (a + 1.0)) * (a - 2.0 * al * ga - al - ga)
}

/// `g = ħ²/(2(a+1)) [4αγ + 3(α+γ) − a + 2]`; for `m = c x²` the
/// `m`-multiplied effective potential carries `(A + g)/x²`.
pub fn g_coefficient(ord: &OrderingParams, hbar: f64) -> f64 {
    let (a, al, ga) = (ord.a, ord.alpha, ord.gamma);
    hbar * hbar / (2.0 * (a + 1.0)) * (4.0 * al * ga + 3.0 * (al + ga) - a + 2.0)
}
