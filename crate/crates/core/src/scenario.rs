//! Declarative scenario files (TOML, schema `pdm-spectra/1`).
//!
//! Unknown keys are rejected at every level. A parsed scenario is validated
//! once: the ordering is resolved, the problem is built and the grid is
//! checked, so a scenario that loads is one that can run.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::audit::AuditConfig;
use crate::error::{Error, Result};
use crate::numeric::Boundary;
use crate::ordering::{make_ordering, NamedOrdering, OrderingParams};
use crate::problems::{Example1, Example2, SpectralProblem, DEFAULT_LEVELS, DEFAULT_POINTS};
use crate::smoothfn::{Interval, SmoothFn};

pub const SCHEMA: &str = "pdm-spectra/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    Audit,
    Identities,
    Sweep,
    Convergence,
}

/// Closed-form scalar profile; leaves and combinators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileSpec {
    Const {
        value: f64,
    },
    /// `scale · e^{rate x}`
    Exp {
        #[serde(default = "one")]
        scale: f64,
        rate: f64,
    },
    /// `scale · x^exponent`
    Power {
        #[serde(default = "one")]
        scale: f64,
        exponent: f64,
    },
    /// Ascending coefficients.
    Poly {
        coeffs: Vec<f64>,
    },
    /// `amplitude · gaussian(center, width)`
    Gaussian {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default)]
        center: f64,
        width: f64,
    },
    /// `scale · ln x`
    Log {
        #[serde(default = "one")]
        scale: f64,
    },
    Sum {
        terms: Vec<ProfileSpec>,
    },
    Product {
        factors: Vec<ProfileSpec>,
    },
    Scale {
        factor: f64,
        of: Box<ProfileSpec>,
    },
    Recip {
        of: Box<ProfileSpec>,
    },
    /// `outer(inner(x))`
    Compose {
        outer: Box<ProfileSpec>,
        inner: Box<ProfileSpec>,
    },
}

fn one() -> f64 {
    1.0
}

impl ProfileSpec {
    pub fn build(&self) -> Result<SmoothFn> {
        let fin = |v: f64, what: &str| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Schema(format!("profile parameter {what} must be finite, got {v}")))
            }
        };
        Ok(match self {
            ProfileSpec::Const { value } => SmoothFn::constant(fin(*value, "value")?),
            ProfileSpec::Exp { scale, rate } => SmoothFn::exp(fin(*rate, "rate")?).scale(fin(*scale, "scale")?),
            ProfileSpec::Power { scale, exponent } => {
                SmoothFn::power(fin(*exponent, "exponent")?).scale(fin(*scale, "scale")?)
            }
            ProfileSpec::Poly { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::Schema("poly needs at least one coefficient".into()));
                }
                for c in coeffs {
                    fin(*c, "coeffs")?;
                }
                SmoothFn::poly(coeffs.clone())
            }
            ProfileSpec::Gaussian {
                amplitude,
                center,
                width,
            } => {
                if !(*width > 0.0) {
                    return Err(Error::Schema(format!("gaussian width must be positive, got {width}")));
                }
                SmoothFn::gaussian(fin(*center, "center")?, *width).scale(fin(*amplitude, "amplitude")?)
            }
            ProfileSpec::Log { scale } => SmoothFn::ln().scale(fin(*scale, "scale")?),
            ProfileSpec::Sum { terms } => fold(terms, "sum", |a, b| a + b)?,
            ProfileSpec::Product { factors } => fold(factors, "product", |a, b| a * b)?,
            ProfileSpec::Scale { factor, of } => of.build()?.scale(fin(*factor, "factor")?),
            ProfileSpec::Recip { of } => of.build()?.recip(),
            ProfileSpec::Compose { outer, inner } => outer.build()?.compose(&inner.build()?),
        })
    }
}

fn fold(items: &[ProfileSpec], what: &str, op: impl Fn(SmoothFn, SmoothFn) -> SmoothFn) -> Result<SmoothFn> {
    let mut it = items.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Schema(format!("{what} needs at least one operand")))?
        .build()?;
    it.try_fold(first, |acc, p| Ok(op(acc, p.build()?)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProblemSpec {
    /// `m = m0 e^{cx}`, `V = V0 e^{cx}`
    Example1 { m0: f64, c: f64, v0: f64 },
    /// `m = c x²`, `V = A/(c x⁴) + B/(c x²)`
    Example2 { c: f64, a: f64, b: f64 },
    Custom { mass: ProfileSpec, potential: ProfileSpec },
}

/// Catalog name or explicit `(a, alpha, gamma)`; exactly one of the two.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

impl OrderingSpec {
    pub fn named(n: NamedOrdering) -> Self {
        OrderingSpec {
            name: Some(n.name().to_string()),
            ..Default::default()
        }
    }

    pub fn resolve(&self) -> Result<OrderingParams> {
        match (&self.name, self.a, self.alpha, self.gamma) {
            (Some(n), None, None, None) => Ok(NamedOrdering::from_str(n)?.params()),
            (None, Some(a), Some(al), Some(ga)) => make_ordering(a, al, ga),
            _ => Err(Error::Schema(format!(
                "ordering needs either name (one of {}) or all of a, alpha, gamma",
                NamedOrdering::valid_names()
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BoundarySpec {
    Dirichlet,
    Neumann,
    /// `ψ'/ψ = slope`
    Robin { slope: f64 },
}

impl From<BoundarySpec> for Boundary {
    fn from(b: BoundarySpec) -> Self {
        match b {
            BoundarySpec::Dirichlet => Boundary::Dirichlet,
            BoundarySpec::Neumann => Boundary::NEUMANN,
            BoundarySpec::Robin { slope } => Boundary::Robin(slope),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub lo: f64,
    pub hi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<BoundarySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<BoundarySpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_levels")]
    pub levels: usize,
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

fn default_levels() -> usize {
    DEFAULT_LEVELS
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points: DEFAULT_POINTS,
            levels: DEFAULT_LEVELS,
        }
    }
}

/// Cube `[lo, hi]³` over `(a, alpha, gamma)` with `steps` values per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            lo: -1.5,
            hi: 1.5,
            steps: 5,
        }
    }
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let d = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.lo + d * i as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    pub name: String,
    pub command: Command,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub problem: ProblemSpec,
    pub ordering: OrderingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

fn default_k() -> usize {
    5
}

impl Default for Scenario {
    /// Weyl-ordered exponential-mass spectrum, five levels.
    fn default() -> Self {
        Scenario {
            schema: SCHEMA.to_string(),
            name: "example1-weyl".to_string(),
            command: Command::Spectrum,
            hbar: 1.0,
            k: 5,
            output: None,
            problem: ProblemSpec::Example1 {
                m0: 1.0,
                c: 1.0,
                v0: 1.0,
            },
            ordering: OrderingSpec::named(NamedOrdering::Weyl),
            domain: None,
            grid: GridSpec::default(),
            sweep: None,
        }
    }
}

impl Scenario {
    /// Parses and validates; every failure is a [`Error::Schema`] or
    /// [`Error::UnknownOrdering`].
    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| Error::Schema(e.to_string().trim_end().to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario is always representable")
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn hash(&self) -> String {
        format!("{:x}", Sha256::digest(self.to_toml().as_bytes()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA {
            return Err(Error::Schema(format!("schema must be \"{SCHEMA}\", got \"{}\"", self.schema)));
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::Schema(format!("hbar must be positive and finite, got {}", self.hbar)));
        }
        if self.k < 1 {
            return Err(Error::Schema("k must be at least 1".into()));
        }
        if self.grid.points < 16 || self.grid.levels < 1 {
            return Err(Error::Schema(format!(
                "grid needs points >= 16 and levels >= 1, got {} and {}",
                self.grid.points, self.grid.levels
            )));
        }
        if self.k > self.grid.points / 4 {
            return Err(Error::Schema(format!("k = {} exceeds points/4 = {}", self.k, self.grid.points / 4)));
        }
        if let Some(d) = &self.domain {
            if !(d.lo.is_finite() && d.hi.is_finite() && d.lo < d.hi) {
                return Err(Error::Schema(format!("domain needs finite lo < hi, got [{}, {}]", d.lo, d.hi)));
            }
        }
        if let Some(sw) = &self.sweep {
            if !(sw.lo.is_finite() && sw.hi.is_finite() && sw.lo <= sw.hi) || sw.steps < 1 {
                return Err(Error::Schema("sweep needs finite lo <= hi and steps >= 1".into()));
            }
        }
        let ord = self.ordering.resolve().map_err(schema)?;
        match self.command {
            Command::Identities => Ok(()),
            Command::Sweep => match self.problem {
                ProblemSpec::Custom { .. } => Err(Error::Schema("sweep needs problem kind example1 or example2".into())),
                _ => self.check_examples(),
            },
            Command::Audit => self.audit_config().map(|_| ()),
            Command::Spectrum | Command::Convergence => self.spectral_problem(&ord).map(|_| ()),
        }
    }

    fn check_examples(&self) -> Result<()> {
        match &self.problem {
            ProblemSpec::Example1 { m0, c, v0 } => Example1::new(*m0, *c, *v0).map(|_| ()).map_err(schema),
            ProblemSpec::Example2 { c, a, b } => Example2::new(*c, *a, *b).map(|_| ()).map_err(schema),
            ProblemSpec::Custom { mass, potential } => {
                mass.build()?;
                potential.build()?;
                Ok(())
            }
        }
    }

    pub fn ordering_params(&self) -> Result<OrderingParams> {
        self.ordering.resolve()
    }

    /// The problem for `spectrum` and `convergence`, with scenario overrides
    /// of the domain and boundary conditions applied.
    pub fn spectral_problem(&self, ord: &OrderingParams) -> Result<SpectralProblem> {
        self.check_examples()?;
        let p = match &self.problem {
            ProblemSpec::Example1 { m0, c, v0 } => {
                let ex = Example1::new(*m0, *c, *v0)?;
                let dom = self.domain.map_or(ex.default_domain(self.hbar), |d| Interval { lo: d.lo, hi: d.hi });
                ex.problem_on(ord, self.hbar, dom)
            }
            ProblemSpec::Example2 { c, a, b } => {
                let ex = Example2::new(*c, *a, *b)?;
                let dom = self
                    .domain
                    .map_or(ex.default_domain(ord, self.hbar, self.k), |d| Interval { lo: d.lo, hi: d.hi });
                ex.problem_on(ord, self.hbar, dom)
            }
            ProblemSpec::Custom { mass, potential } => {
                let d = self
                    .domain
                    .ok_or_else(|| Error::Schema("custom problems need a [domain] table".into()))?;
                SpectralProblem::new(mass.build()?, potential.build()?, *ord, Interval { lo: d.lo, hi: d.hi }, self.hbar)
            }
        }
        .map_err(schema)?;
        let (lo, hi) = (p.lower, p.upper);
        Ok(match &self.domain {
            Some(d) => p.with_boundaries(d.lower.map_or(lo, Into::into), d.upper.map_or(hi, Into::into)),
            None => p,
        })
    }

    /// Audit parameters: the scenario's example replaces the default of the
    /// same family.
    pub fn audit_config(&self) -> Result<AuditConfig> {
        self.check_examples()?;
        let mut cfg = AuditConfig {
            ordering: self.ordering.resolve()?,
            hbar: self.hbar,
            points: self.grid.points,
            levels: self.grid.levels,
            k: self.k,
            ..AuditConfig::default()
        };
        match &self.problem {
            ProblemSpec::Example1 { m0, c, v0 } => cfg.example1 = Example1::new(*m0, *c, *v0)?,
            ProblemSpec::Example2 { c, a, b } => cfg.example2 = Example2::new(*c, *a, *b)?,
            ProblemSpec::Custom { .. } => {
                return Err(Error::Schema("audit needs problem kind example1 or example2".into()))
            }
        }
        Ok(cfg)
    }
}

fn schema(e: Error) -> Error {
    match e {
        Error::Schema(_) | Error::UnknownOrdering { .. } => e,
        other => Error::Schema(other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
schema = "pdm-spectra/1"
name = "t"
command = "spectrum"
problem = { kind = "example1", m0 = 1.0, c = 1.0, v0 = 1.0 }
ordering = { name = "weyl" }
"#;

    #[test]
    fn defaults_fill_in() {
        let s = Scenario::parse(MINIMAL).unwrap();
        assert_eq!(s.hbar, 1.0);
        assert_eq!(s.k, 5);
        assert_eq!(s.grid, GridSpec::default());
    }

    #[test]
    fn default_round_trips() {
        let s = Scenario::default();
        assert_eq!(Scenario::parse(&s.to_toml()).unwrap(), s);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = MINIMAL.replace("name = \"t\"", "name = \"t\"\ncolour = 1");
        assert!(matches!(Scenario::parse(&bad), Err(Error::Schema(_))));
        let bad = MINIMAL.replace("v0 = 1.0 }", "v0 = 1.0, extra = 2 }");
        assert!(matches!(Scenario::parse(&bad), Err(Error::Schema(_))));
    }

    #[test]
    fn misspelled_ordering_lists_names() {
        let bad = MINIMAL.replace("\"weyl\"", "\"weil\"");
        match Scenario::parse(&bad) {
            Err(e @ Error::UnknownOrdering { .. }) => assert!(e.to_string().contains("zhu-kroemer")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ordering_triple_and_conflicts() {
        let t = MINIMAL.replace("{ name = \"weyl\" }", "{ a = 0.0, alpha = -0.5, gamma = -0.5 }");
        let s = Scenario::parse(&t).unwrap();
        assert_eq!(s.ordering_params().unwrap(), NamedOrdering::ZhuKroemer.params());
        let both = MINIMAL.replace("{ name = \"weyl\" }", "{ name = \"weyl\", a = 0.0 }");
        assert!(matches!(Scenario::parse(&both), Err(Error::Schema(_))));
        let singular = MINIMAL.replace("{ name = \"weyl\" }", "{ a = -1.0, alpha = 0.0, gamma = 0.0 }");
        assert!(matches!(Scenario::parse(&singular), Err(Error::Schema(_))));
    }

    #[test]
    fn custom_profiles_build() {
        let t = r#"
schema = "pdm-spectra/1"
name = "osc"
command = "spectrum"
k = 3
problem = { kind = "custom", mass = { kind = "sum", terms = [{ kind = "const", value = 1.0 }, { kind = "gaussian", amplitude = 0.2, width = 1.0 }] }, potential = { kind = "poly", coeffs = [0.0, 0.0, 0.5] } }
ordering = { name = "zhu-kroemer" }
domain = { lo = -8.0, hi = 8.0 }
"#;
        let s = Scenario::parse(t).unwrap();
        let p = s.spectral_problem(&s.ordering_params().unwrap()).unwrap();
        assert!((p.mass.value(0.0).unwrap() - 1.2).abs() < 1e-15);
        assert_eq!(Scenario::parse(&s.to_toml()).unwrap(), s);
    }

    #[test]
    fn custom_needs_domain_and_positive_mass() {
        let t = MINIMAL.replace(
            "{ kind = \"example1\", m0 = 1.0, c = 1.0, v0 = 1.0 }",
            "{ kind = \"custom\", mass = { kind = \"poly\", coeffs = [-1.0] }, potential = { kind = \"const\", value = 0.0 } }",
        );
        assert!(matches!(Scenario::parse(&t), Err(Error::Schema(_))));
        let t = format!("{t}domain = {{ lo = 0.0, hi = 1.0 }}\n");
        assert!(matches!(Scenario::parse(&t), Err(Error::Schema(m)) if m.contains("mass")));
    }

    #[test]
    fn sweep_values() {
        let v = SweepSpec::default().values();
        assert_eq!(v, vec![-1.5, -0.75, 0.0, 0.75, 1.5]);
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = Scenario::parse(MINIMAL).unwrap();
        let b = Scenario::parse(&format!("# comment\n{MINIMAL}\n\n")).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
