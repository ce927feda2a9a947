//! Operator identities checked by application to exactly differentiated
//! test functions.
//!
//! An [`OperatorWord`] is a product of multiplication operators and momenta
//! `p = −iħ d/dx`, applied right to left to a test function's jet. With at
//! most two momenta a third-order jet is enough for an exact value, so the
//! identities hold to roundoff rather than to a discretization error.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::{ambiguity_potential, effective_potential, make_ordering, NamedOrdering, OrderingParams};
use crate::smoothfn::{Interval, Jet3, SmoothFn};

pub const MAX_MOMENTA: usize = 2;

/// Thresholds of the identity suite.
pub const CANONICAL_TOL: f64 = 1e-11;
pub const WEYL_LK_TOL: f64 = 1e-11;
pub const EFFECTIVE_POTENTIAL_TOL: f64 = 1e-12;
pub const ALPHA_INVARIANCE_TOL: f64 = 1e-13;
pub const HERMITICITY_TOL: f64 = 1e-9;
pub const AMBIGUITY_FREE_TOL: f64 = 1e-12;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `re + i·im`
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFn {
    pub re: SmoothFn,
    pub im: SmoothFn,
}

impl ComplexFn {
    pub fn real(re: SmoothFn) -> Self {
        ComplexFn {
            re,
            im: SmoothFn::zero(),
        }
    }

    /// `e^{ikx}`
    pub fn plane_wave(k: f64) -> Self {
        ComplexFn {
            re: SmoothFn::sinusoid(k, std::f64::consts::FRAC_PI_2),
            im: SmoothFn::sinusoid(k, 0.0),
        }
    }

    pub fn eval_jet(&self, x: f64) -> Result<Jet3<Complex64>> {
        let re = self.re.eval_jet(x)?.to_complex();
        let im = self.im.eval_jet(x)?.to_complex();
        Ok(re + im.scale(I))
    }

    pub fn value(&self, x: f64) -> Result<Complex64> {
        Ok(self.eval_jet(x)?.v0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    MultiplyBy(SmoothFn),
    Momentum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorWord {
    tokens: Vec<Token>,
    weight: Complex64,
}

impl OperatorWord {
    pub fn new(tokens: Vec<Token>, weight: Complex64) -> Result<Self> {
        let momenta = tokens.iter().filter(|t| matches!(t, Token::Momentum)).count();
        if momenta > MAX_MOMENTA {
            return Err(Error::TooDeep(momenta));
        }
        Ok(OperatorWord { tokens, weight })
    }

    pub fn real(tokens: Vec<Token>, weight: f64) -> Result<Self> {
        Self::new(tokens, Complex64::new(weight, 0.0))
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn weight(&self) -> Complex64 {
        self.weight
    }

    /// The formal adjoint: reversed tokens, conjugate weight.
    pub fn adjoint(&self) -> Self {
        OperatorWord {
            tokens: self.tokens.iter().rev().cloned().collect(),
            weight: self.weight.conj(),
        }
    }
}

/// Weighted word applied to `psi` at `x`, as a jet whose value component is
/// exact (higher components may be NaN after differentiation).
pub fn apply_word_jet(w: &OperatorWord, psi: &ComplexFn, x: f64, hbar: f64) -> Result<Jet3<Complex64>> {
    let mut acc = psi.eval_jet(x)?;
    for tok in w.tokens.iter().rev() {
        acc = match tok {
            Token::Momentum => acc.differentiate().scale(Complex64::new(0.0, -hbar)),
            Token::MultiplyBy(f) => f.eval_jet(x)?.to_complex() * acc,
        };
    }
    Ok(acc.scale(w.weight))
}

pub fn apply_word(w: &OperatorWord, psi: &ComplexFn, x: f64, hbar: f64) -> Result<Complex64> {
    Ok(apply_word_jet(w, psi, x, hbar)?.v0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderedHamiltonian {
    pub words: Vec<OperatorWord>,
    pub hbar: f64,
}

impl OrderedHamiltonian {
    pub fn apply(&self, psi: &ComplexFn, x: f64) -> Result<Complex64> {
        self.words
            .iter()
            .map(|w| apply_word(w, psi, x, self.hbar))
            .sum()
    }

    /// `Σ |word ψ|`, the scale against which residuals are measured.
    pub fn magnitude(&self, psi: &ComplexFn, x: f64) -> Result<f64> {
        self.words
            .iter()
            .map(|w| apply_word(w, psi, x, self.hbar).map(|v| v.norm()))
            .sum()
    }

    /// Every word's adjoint is also present.
    pub fn is_reversal_closed(&self) -> bool {
        self.words.iter().all(|w| {
            let adj = w.adjoint();
            self.words.iter().any(|v| *v == adj)
        })
    }
}

fn mpow(mass: &SmoothFn, s: f64) -> Token {
    Token::MultiplyBy(mass.powf(s))
}

/// `H = 1/(4(a+1)) { a[m⁻¹p² + p²m⁻¹] + m^α p m^β p m^γ + m^γ p m^β p m^α }`
pub fn build_four_term(ord: &OrderingParams, mass: &SmoothFn, hbar: f64) -> Result<OrderedHamiltonian> {
    let norm = ord.normalization();
    if !norm.is_finite() {
        return Err(Error::SingularNormalization);
    }
    let (a, al, be, ga) = (ord.a(), ord.alpha(), ord.beta(), ord.gamma());
    let p = || Token::Momentum;
    let mut words = Vec::with_capacity(4);
    if a != 0.0 {
        words.push(OperatorWord::real(vec![mpow(mass, -1.0), p(), p()], a * norm)?);
        words.push(OperatorWord::real(vec![p(), p(), mpow(mass, -1.0)], a * norm)?);
    }
    words.push(OperatorWord::real(
        vec![mpow(mass, al), p(), mpow(mass, be), p(), mpow(mass, ga)],
        norm,
    )?);
    words.push(OperatorWord::real(
        vec![mpow(mass, ga), p(), mpow(mass, be), p(), mpow(mass, al)],
        norm,
    )?);
    Ok(OrderedHamiltonian { words, hbar })
}

/// `(1/8)[m⁻¹p² + p²m⁻¹ + 2 p m⁻¹ p]`
pub fn weyl_hamiltonian(mass: &SmoothFn, hbar: f64) -> Result<OrderedHamiltonian> {
    let p = || Token::Momentum;
    Ok(OrderedHamiltonian {
        words: vec![
            OperatorWord::real(vec![mpow(mass, -1.0), p(), p()], 0.125)?,
            OperatorWord::real(vec![p(), p(), mpow(mass, -1.0)], 0.125)?,
            OperatorWord::real(vec![p(), mpow(mass, -1.0), p()], 0.25)?,
        ],
        hbar,
    })
}

/// `(1/4)[m^{-1/2} p m^{-1/2} p + p m^{-1/2} p m^{-1/2}]`
pub fn li_kuhn_hamiltonian(mass: &SmoothFn, hbar: f64) -> Result<OrderedHamiltonian> {
    let p = || Token::Momentum;
    Ok(OrderedHamiltonian {
        words: vec![
            OperatorWord::real(vec![mpow(mass, -0.5), p(), mpow(mass, -0.5), p()], 0.25)?,
            OperatorWord::real(vec![p(), mpow(mass, -0.5), p(), mpow(mass, -0.5)], 0.25)?,
        ],
        hbar,
    })
}

fn rel(diff: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Max over `(ψ, x)` of `|Hψ − [−ħ²/(2m) ψ'' + (ħ²/2)(m'/m²) ψ' + U ψ]|`
/// relative to the sum of the magnitudes of all contributing terms.
pub fn canonical_form_residual(
    ord: &OrderingParams,
    mass: &SmoothFn,
    testfns: &[ComplexFn],
    points: &[f64],
    hbar: f64,
) -> Result<f64> {
    let h = build_four_term(ord, mass, hbar)?;
    let u = ambiguity_potential(ord, mass, hbar);
    let h2 = hbar * hbar;
    let mut worst = 0.0f64;
    for psi in testfns {
        for &x in points {
            let pj = psi.eval_jet(x)?;
            let mj = mass.eval_jet(x)?;
            let uv = u.value(x)?;
            let t2 = pj.v2 * (-h2 / (2.0 * mj.v0));
            let t1 = pj.v1 * (h2 * mj.v1 / (2.0 * mj.v0 * mj.v0));
            let t0 = pj.v0 * uv;
            let lhs = h.apply(psi, x)?;
            let scale = h.magnitude(psi, x)? + t2.norm() + t1.norm() + t0.norm();
            worst = worst.max(rel((lhs - (t2 + t1 + t0)).norm(), scale));
        }
    }
    Ok(worst)
}

/// Max relative difference between the Weyl and Li–Kuhn orderings applied
/// to every test function at every point.
pub fn residual_weyl_lk(mass: &SmoothFn, testfns: &[ComplexFn], points: &[f64], hbar: f64) -> Result<f64> {
    let w = weyl_hamiltonian(mass, hbar)?;
    let l = li_kuhn_hamiltonian(mass, hbar)?;
    let mut worst = 0.0f64;
    for psi in testfns {
        for &x in points {
            let d = (w.apply(psi, x)? - l.apply(psi, x)?).norm();
            worst = worst.max(rel(d, w.magnitude(psi, x)? + l.magnitude(psi, x)?));
        }
    }
    Ok(worst)
}

/// `f^α p f^β ψ` with `β = 1 − α`, or the average with `f^β p f^α` when
/// `symmetrized`.
pub fn linear_quantization(
    f: &SmoothFn,
    alpha: f64,
    psi: &ComplexFn,
    x: f64,
    hbar: f64,
    symmetrized: bool,
) -> Result<Complex64> {
    let fx = f.value(x)?;
    if !(fx > 0.0) {
        return Err(Error::domain(format!("f = {fx} must be positive for real powers"), x));
    }
    let beta = 1.0 - alpha;
    let word = |a: f64, b: f64| {
        OperatorWord::real(vec![Token::MultiplyBy(f.powf(a)), Token::Momentum, Token::MultiplyBy(f.powf(b))], 1.0)
    };
    let fwd = apply_word(&word(alpha, beta)?, psi, x, hbar)?;
    if !symmetrized {
        return Ok(fwd);
    }
    let rev = apply_word(&word(beta, alpha)?, psi, x, hbar)?;
    Ok(0.5 * (fwd + rev))
}

/// `κ` in `sym = f·(pψ) − iħκ f' ψ`, from the symmetrized value at one
/// `α`. NaN where `f'ψ` vanishes.
pub fn measure_kappa(f: &SmoothFn, psi: &ComplexFn, x: f64, hbar: f64, alpha: f64) -> Result<Complex64> {
    let sym = linear_quantization(f, alpha, psi, x, hbar, true)?;
    let fj = f.eval_jet(x)?;
    let pj = psi.eval_jet(x)?;
    let fp = pj.v1 * Complex64::new(0.0, -hbar) * fj.v0;
    let denom = I * hbar * fj.v1 * pj.v0;
    if denom.norm() == 0.0 {
        return Ok(Complex64::new(f64::NAN, f64::NAN));
    }
    Ok((fp - sym) / denom)
}

/// `|⟨φ, Hψ⟩ − ⟨Hφ, ψ⟩|` relative to `|⟨φ, Hψ⟩| + |⟨Hφ, ψ⟩|`, composite
/// Simpson with `n` (even) panels on `interval`.
pub fn hermiticity_residual(
    h: &OrderedHamiltonian,
    phi: &ComplexFn,
    psi: &ComplexFn,
    interval: Interval,
    n: usize,
) -> Result<f64> {
    let n = n + n % 2;
    let dx = (interval.hi - interval.lo) / n as f64;
    let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for i in 0..=n {
        let x = interval.lo + i as f64 * dx;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        a += w * phi.value(x)?.conj() * h.apply(psi, x)?;
        b += w * h.apply(phi, x)?.conj() * psi.value(x)?;
    }
    Ok(rel((a - b).norm(), a.norm() + b.norm()))
}

/// The fixed test functions: three Gaussians, two polynomials and one damped
/// oscillation.
pub fn test_suite() -> Vec<(&'static str, ComplexFn)> {
    vec![
        ("gauss(0,1)", ComplexFn::real(SmoothFn::gaussian(0.0, 1.0))),
        ("gauss(0.5,0.7)", ComplexFn::real(SmoothFn::gaussian(0.5, 0.7))),
        ("gauss(-0.8,1.5)", ComplexFn::real(SmoothFn::gaussian(-0.8, 1.5))),
        ("x^3", ComplexFn::real(SmoothFn::poly(vec![0.0, 0.0, 0.0, 1.0]))),
        ("1-x+x^2/2", ComplexFn::real(SmoothFn::poly(vec![1.0, -1.0, 0.5]))),
        (
            "gauss(0,1.2)*sin(2x+0.3)",
            ComplexFn::real(SmoothFn::gaussian(0.0, 1.2) * SmoothFn::sinusoid(2.0, 0.3)),
        ),
    ]
}

pub fn suite_functions() -> Vec<ComplexFn> {
    test_suite().into_iter().map(|(_, f)| f).collect()
}

/// Twenty evenly spaced points strictly inside `[-2, 2]`.
pub fn suite_points() -> Vec<f64> {
    Interval { lo: -2.0, hi: 2.0 }.sample_points(20)
}

/// `e^x`, `1 + x²`, `2 + x² + 0.1x³ + 0.05x⁴`.
pub fn suite_masses() -> Vec<(&'static str, SmoothFn)> {
    vec![
        ("exp(x)", SmoothFn::exp(1.0)),
        ("1+x^2", SmoothFn::poly(vec![1.0, 0.0, 1.0])),
        ("2+x^2+0.1x^3+0.05x^4", SmoothFn::poly(vec![2.0, 0.0, 1.0, 0.1, 0.05])),
    ]
}

/// Deterministic ordering triples filling `[-1.5, 1.5]³` (additive
/// recurrence with the plastic-number generator), keeping `|a + 1| ≥ 0.1`.
pub fn sample_orderings(count: usize) -> Vec<OrderingParams> {
    let g = 1.220_744_084_605_759_5_f64;
    let steps = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
    let mut out = Vec::with_capacity(count);
    let mut k = 1u32;
    while out.len() < count {
        let t: Vec<f64> = steps.iter().map(|s| (0.5 + s * k as f64).fract() * 3.0 - 1.5).collect();
        k += 1;
        if (t[0] + 1.0).abs() < 0.1 {
            continue;
        }
        out.push(make_ordering(t[0], t[1], t[2]).expect("a != -1 by construction"));
    }
    out
}

/// Members of the two ambiguity-free families `(α=0, a=γ)` and `(a=α, γ=0)`.
pub fn ambiguity_free_samples(count: usize) -> Vec<OrderingParams> {
    (0..count)
        .map(|i| {
            let t = ((i as f64 + 0.5) * 0.618_033_988_749_895).fract() * 3.0 - 1.5;
            let t = if (t + 1.0).abs() < 0.05 { t + 0.1 } else { t };
            if i % 2 == 0 {
                make_ordering(t, 0.0, t)
            } else {
                make_ordering(t, t, 0.0)
            }
            .expect("a != -1 by construction")
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub suite: Vec<String>,
    pub masses: Vec<String>,
    pub points: usize,
    pub canonical_form_residual: f64,
    pub residual_weyl_lk: f64,
    pub weyl_lk_effective_potential: f64,
    pub linear_alpha_spread: f64,
    pub kappa: f64,
    pub kappa_spread: f64,
    pub hermiticity_residual: f64,
    pub ambiguity_free_max: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Runs every identity over the fixed suite.
pub fn run_identity_suite(hbar: f64) -> Result<IdentityReport> {
    let suite = test_suite();
    let fns: Vec<ComplexFn> = suite.iter().map(|(_, f)| f.clone()).collect();
    let points = suite_points();
    let masses = suite_masses();

    let mut canonical = 0.0f64;
    for ord in sample_orderings(20) {
        for (_, m) in &masses {
            canonical = canonical.max(canonical_form_residual(&ord, m, &fns, &points, hbar)?);
        }
    }

    let mut weyl_lk = 0.0f64;
    let mut ueff = 0.0f64;
    let (w, l) = (NamedOrdering::Weyl.params(), NamedOrdering::LiKuhn.params());
    for (_, m) in &masses {
        weyl_lk = weyl_lk.max(residual_weyl_lk(m, &fns, &points, hbar)?);
        let v = SmoothFn::poly(vec![0.0, 0.3, 0.5]);
        let (uw, ul) = (effective_potential(&w, m, &v, hbar), effective_potential(&l, m, &v, hbar));
        for &x in &points {
            let (a, b) = (uw.value(x)?, ul.value(x)?);
            ueff = ueff.max(rel((a - b).abs(), a.abs().max(b.abs())));
        }
    }

    let f = SmoothFn::poly(vec![1.0, 0.0, 1.0]);
    let alphas = [-2.0, -1.0, 0.0, 0.3, 1.0, 3.0];
    let lin_points: Vec<f64> = points.iter().step_by(2).copied().collect();
    let mut spread = 0.0f64;
    let mut kappas = Vec::new();
    for psi in &fns {
        for &x in &lin_points {
            let vals: Vec<Complex64> = alphas
                .iter()
                .map(|&a| linear_quantization(&f, a, psi, x, hbar, true))
                .collect::<Result<_>>()?;
            let scale = vals[0].norm().max(f64::MIN_POSITIVE);
            for v in &vals[1..] {
                spread = spread.max((v - vals[0]).norm() / scale);
            }
            let k = measure_kappa(&f, psi, x, hbar, 0.3)?;
            if k.re.is_finite() {
                kappas.push(k.re);
            }
        }
    }
    let kappa = kappas.iter().sum::<f64>() / kappas.len() as f64;
    let kappa_spread = kappas.iter().map(|k| (k - kappa).abs()).fold(0.0, f64::max);

    let mut herm = 0.0f64;
    let decaying: Vec<&ComplexFn> = [0usize, 1, 2, 5].iter().map(|&i| &fns[i]).collect();
    let quad = Interval { lo: -9.0, hi: 9.0 };
    for ord in NamedOrdering::ALL.iter().map(|n| n.params()).chain(sample_orderings(3)) {
        for (_, m) in masses.iter().skip(1) {
            let h = build_four_term(&ord, m, hbar)?;
            for i in 0..decaying.len() {
                for j in i..decaying.len() {
                    herm = herm.max(hermiticity_residual(&h, decaying[i], decaying[j], quad, 2000)?);
                }
            }
        }
    }

    let mut free = 0.0f64;
    for ord in ambiguity_free_samples(20) {
        for (_, m) in &masses {
            let u = ambiguity_potential(&ord, m, hbar);
            for &x in &points {
                free = free.max(u.value(x)?.abs() / (hbar * hbar));
            }
        }
    }

    let check = |name: &str, value: f64, threshold: f64| IdentityCheck {
        name: name.to_string(),
        value,
        threshold,
        pass: value <= threshold,
    };
    let checks = vec![
        check("canonical_form_residual", canonical, CANONICAL_TOL),
        check("residual_weyl_lk", weyl_lk, WEYL_LK_TOL),
        check("weyl_lk_effective_potential", ueff, EFFECTIVE_POTENTIAL_TOL),
        check("linear_alpha_spread", spread, ALPHA_INVARIANCE_TOL),
        check("hermiticity_residual", herm, HERMITICITY_TOL),
        check("ambiguity_free_max", free, AMBIGUITY_FREE_TOL),
    ];
    Ok(IdentityReport {
        suite: suite.iter().map(|(n, _)| n.to_string()).collect(),
        masses: masses.iter().map(|(n, _)| n.to_string()).collect(),
        points: points.len(),
        canonical_form_residual: canonical,
        residual_weyl_lk: weyl_lk,
        weyl_lk_effective_potential: ueff,
        linear_alpha_spread: spread,
        kappa,
        kappa_spread,
        hermiticity_residual: herm,
        ambiguity_free_max: free,
        checks,
    })
}
