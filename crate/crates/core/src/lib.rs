//! Position-dependent effective mass (PDM) Schrödinger problems.
//!
//! The crate builds ordered PDM Hamiltonians from the ambiguity parameters
//! `(a, α, β, γ)`, reduces them to constant-mass problems, evaluates the
//! closed-form spectra of two exactly solvable mass/potential families and
//! checks every analytic statement against independent numerics:
//!
//! * [`smoothfn`] – closed-form scalar functions with exact derivatives up to
//!   third order (forward-mode jets).
//! * [`ordering`] – ambiguity parameters, ambiguity and effective potentials.
//! * [`pct`] – point canonical transformations `x = f(u)`.
//! * [`analytic`] – barrier-oscillator levels and the two example spectra.
//! * [`numeric`] – finite-difference generalized eigenproblems, Sturm
//!   bisection, Richardson refinement.
//! * [`opcheck`] – operator words applied to test functions with exact jets.
//! * [`problems`] – the exponential-mass and quadratic-mass families.
//! * [`audit`] – numeric adjudication of printed constants.
//! * [`scenario`] / [`report`] – declarative scenario files and CSV/JSON output.

pub mod analytic;
pub mod audit;
pub mod error;
pub mod numeric;
pub mod opcheck;
pub mod ordering;
pub mod pct;
pub mod problems;
pub mod report;
pub mod scenario;
pub mod smoothfn;

pub use error::{Error, Result};
pub use num_complex::Complex64;
