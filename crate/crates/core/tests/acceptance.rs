//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances are fixed here and never adapted to results.

use std::f64::consts::{PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{DMatrix, SymmetricEigen};
use pdm_spectra::audit::{run_audit, AuditConfig, AuditReport, Status};
use pdm_spectra::numeric::{discretize, refine, DiscretizationForm, Grid1D, TRUSTED_ORDER};
use pdm_spectra::ordering::{ambiguity_potential, make_ordering, NamedOrdering};
use pdm_spectra::problems::{Example1, Example2, DEFAULT_LEVELS, DEFAULT_POINTS};
use pdm_spectra::smoothfn::SmoothFn;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn weyl() -> pdm_spectra::ordering::OrderingParams {
    NamedOrdering::Weyl.params()
}

/// Weyl exponential-mass levels against `√2(2n+1)`, n = 0..4, at 1e−5.
fn criterion_1() -> Verdict {
    let t = Instant::now();
    let rep = Example1::unit()
        .problem(&weyl(), 1.0)
        .and_then(|p| p.refine(DEFAULT_POINTS, DEFAULT_LEVELS, 5));
    let secs = t.elapsed().as_secs_f64();
    let rep = match rep {
        Ok(r) => r,
        Err(e) => return verdict(false, format!("solver error: {e}")),
    };
    let worst = (0..5)
        .map(|n| rel(rep.extrapolated[n], SQRT_2 * (2 * n + 1) as f64))
        .fold(0.0, f64::max);
    verdict(
        worst <= 1e-5 && secs <= 10.0,
        format!(
            "max rel err vs √2(2n+1) = {worst:.3e}; E_0 = {:.10} (√2/2 = {:.10}); {secs:.2}s",
            rep.extrapolated[0],
            SQRT_2 / 2.0
        ),
    )
}

/// Level spacings of Weyl, Li–Kuhn and Zhu–Kroemer agree pairwise at 1e−8.
fn criterion_2() -> Verdict {
    let ex = Example1::unit();
    let mut spacings = Vec::new();
    for n in [NamedOrdering::Weyl, NamedOrdering::LiKuhn, NamedOrdering::ZhuKroemer] {
        match ex.problem(&n.params(), 1.0).and_then(|p| p.refine(DEFAULT_POINTS, DEFAULT_LEVELS, 5)) {
            Ok(r) => spacings.push(r.extrapolated.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>()),
            Err(e) => return verdict(false, format!("{n}: {e}")),
        }
    }
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in i + 1..3 {
            for (a, b) in spacings[i].iter().zip(&spacings[j]) {
                worst = worst.max(rel(*a, *b));
            }
        }
    }
    verdict(worst <= 1e-8, format!("max pairwise rel spacing gap = {worst:.3e}"))
}

/// Example 2: Zhu–Kroemer and Weyl ground states differ by more than 1e−3
/// relative, and the audit settles prefactor and radicand sign.
fn criterion_3(audit: &AuditReport) -> Verdict {
    let ex = Example2::new(1.0, 1.0 / 32.0, -5.0).unwrap();
    let e0 = |n: NamedOrdering| {
        ex.problem(&n.params(), 1.0, 2)
            .and_then(|p| p.refine_report(DEFAULT_POINTS, DEFAULT_LEVELS, 2))
            .map(|r| r.extrapolated[0])
    };
    let (zk, w) = match (e0(NamedOrdering::ZhuKroemer), e0(NamedOrdering::Weyl)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return verdict(false, format!("solver error: {e}")),
    };
    let gap = rel(zk, w);
    let settled = |c: &str| matches!(audit.status(c), Some(Status::Confirmed | Status::Refuted));
    let (p, s) = (audit.status("eq19-prefactor"), audit.status("eq19-radicand-sign"));
    verdict(
        gap > 1e-3 && settled("eq19-prefactor") && settled("eq19-radicand-sign"),
        format!("E0 zk = {zk:.8}, weyl = {w:.8}, rel gap {gap:.3e}; prefactor {p:?}, radicand sign {s:?}"),
    )
}

fn criterion_4(audit: &AuditReport) -> Verdict {
    let id = &audit.identities;
    verdict(
        id.residual_weyl_lk <= 1e-11 && id.weyl_lk_effective_potential <= 1e-12,
        format!(
            "operator residual {:.3e}, effective potential gap {:.3e} over {:?}",
            id.residual_weyl_lk, id.weyl_lk_effective_potential, id.masses
        ),
    )
}

fn criterion_5(audit: &AuditReport) -> Verdict {
    let id = &audit.identities;
    let entry = audit.discrepancies.iter().find(|d| d.code == "eq4-vs-eq11-coefficient");
    let settled = matches!(entry.map(|d| d.status), Some(Status::Confirmed | Status::Refuted));
    verdict(
        id.canonical_form_residual <= 1e-11 && settled,
        format!(
            "canonical residual {:.3e} (20 triples × {} masses); coefficient entry {:?}",
            id.canonical_form_residual,
            id.masses.len(),
            entry.map(|d| d.status)
        ),
    )
}

fn criterion_6(audit: &AuditReport) -> Verdict {
    let id = &audit.identities;
    verdict(
        id.linear_alpha_spread <= 1e-13 && id.kappa.is_finite(),
        format!(
            "α-spread {:.3e}; measured κ = {:.15} (spread {:.1e})",
            id.linear_alpha_spread, id.kappa, id.kappa_spread
        ),
    )
}

/// Twenty random draws from each ambiguity-free family, random positive
/// masses, absolute `|U|/ħ²` at 1e−12.
fn criterion_7() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut worst = 0.0f64;
    let mut draws = 0;
    for _ in 0..20 {
        let t: f64 = rng.gen_range(-1.5..1.5);
        let u: f64 = rng.gen_range(-1.5..1.5);
        let fams = [make_ordering(t, 0.0, t), make_ordering(u, u, 0.0)];
        let mass = SmoothFn::poly(vec![rng.gen_range(0.5..2.0), rng.gen_range(-0.3..0.3), rng.gen_range(0.1..1.0)])
            + SmoothFn::exp(rng.gen_range(-1.0..1.0)).scale(rng.gen_range(0.1..1.0));
        for ord in fams.into_iter().flatten() {
            draws += 1;
            let pot = ambiguity_potential(&ord, &mass, 1.0);
            for i in 0..20 {
                let x = -2.0 + 4.0 * (i as f64 + 0.5) / 20.0;
                worst = worst.max(pot.value(x).map(f64::abs).unwrap_or(f64::INFINITY));
            }
        }
    }
    verdict(worst <= 1e-12 && draws == 40, format!("{draws} draws, max |U| = {worst:.3e}"))
}

/// Oscillator and box references, observed order, and Sturm counts against
/// dense diagonalization.
fn criterion_8() -> Verdict {
    let one = SmoothFn::constant(1.0);
    let osc = Grid1D::new(-10.0, 10.0, 400).and_then(|g| {
        refine(&one, &SmoothFn::poly(vec![0.0, 0.0, 0.5]), 1.0, DiscretizationForm::ConstantMass, &g, 3, 4)
    });
    let boxed = Grid1D::new(0.0, 1.0, 200)
        .and_then(|g| refine(&one, &SmoothFn::zero(), 1.0, DiscretizationForm::ConstantMass, &g, 3, 4));
    let (osc, boxed) = match (osc, boxed) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return verdict(false, format!("solver error: {e}")),
    };
    let mut err = 0.0f64;
    let mut orders = Vec::new();
    for n in 0..4 {
        err = err.max((osc.extrapolated[n] - (n as f64 + 0.5)).abs());
        let k = (n + 1) as f64;
        err = err.max((boxed.extrapolated[n] - k * k * PI * PI / 2.0).abs());
        orders.push(osc.observed_order[n]);
        orders.push(boxed.observed_order[n]);
    }
    let orders_ok = orders.iter().all(|p| *p >= TRUSTED_ORDER.0 && *p <= TRUSTED_ORDER.1);
    let (omin, omax) = orders.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(*p), b.max(*p)));

    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut mismatches = 0;
    let mut checked = 0;
    for _ in 0..10 {
        let mass = SmoothFn::poly(vec![1.0, 0.0, rng.gen_range(0.0..0.5)]);
        let pot = SmoothFn::poly(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.0..2.0)]);
        let gp = match Grid1D::new(-3.0, 3.0, 64)
            .and_then(|g| discretize(&mass, &pot, 1.0, &g, DiscretizationForm::PdmGeneralized))
        {
            Ok(gp) => gp,
            Err(e) => return verdict(false, format!("discretize: {e}")),
        };
        let (d, e) = gp.reduced();
        let n = d.len();
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = d[i];
            if i + 1 < n {
                m[(i, i + 1)] = e[i];
                m[(i + 1, i)] = e[i];
            }
        }
        let mut eig: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        let mut shifts: Vec<f64> = eig.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        shifts.push(eig[0] - 1.0);
        shifts.push(eig[n - 1] + 1.0);
        for _ in 0..20 {
            shifts.push(rng.gen_range(eig[0]..eig[n - 1]));
        }
        for s in shifts {
            checked += 1;
            if gp.sturm_count(s) != eig.iter().filter(|&&v| v < s).count() {
                mismatches += 1;
            }
        }
    }
    verdict(
        err <= 1e-6 && orders_ok && mismatches == 0,
        format!("max abs err {err:.3e}; orders in [{omin:.3}, {omax:.3}]; Sturm mismatches {mismatches}/{checked}"),
    )
}

/// Example 1 through the log map and directly, same truncated problem,
/// five levels, agreement within the summed error estimates.
fn criterion_9() -> Verdict {
    let ex = Example1::unit();
    let run = || -> pdm_spectra::Result<(Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
        let x = ex.problem_on(&NamedOrdering::ZhuKroemer.params(), 1.0, ex.cross_route_domain())?;
        let u = ex.u_route(&x)?;
        let rx = x.refine(DEFAULT_POINTS, DEFAULT_LEVELS, 5)?;
        let ru = u.refine(4000, DEFAULT_LEVELS, 5)?;
        Ok((rx.extrapolated, rx.error_estimates, ru.extrapolated, ru.error_estimates))
    };
    match run() {
        Ok((ex_, erx, eu, eru)) => {
            let mut ok = true;
            let mut ratio = 0.0f64;
            for n in 0..5 {
                let gap = (ex_[n] - eu[n]).abs();
                ok &= gap <= erx[n] + eru[n];
                ratio = ratio.max(gap / (erx[n] + eru[n]));
            }
            verdict(ok, format!("max |Δ|/(err_x + err_u) = {ratio:.3}; E_0 = {:.12}", ex_[0]))
        }
        Err(e) => verdict(false, format!("solver error: {e}")),
    }
}

fn main() -> ExitCode {
    let audit = match run_audit(&AuditConfig::default()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("audit failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: [(&str, Box<dyn Fn() -> Verdict>); 9] = [
        ("example-1 spectrum reproduction", Box::new(criterion_1)),
        ("ordering-invariant spacings", Box::new(criterion_2)),
        ("non-removable ambiguity (example 2)", Box::new(|| criterion_3(&audit))),
        ("weyl equals li-kuhn", Box::new(|| criterion_4(&audit))),
        ("canonical-form certification", Box::new(|| criterion_5(&audit))),
        ("linear-momentum non-ambiguity", Box::new(|| criterion_6(&audit))),
        ("ambiguity-free family", Box::new(criterion_7)),
        ("solver self-checks", Box::new(criterion_8)),
        ("cross-route consistency", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        failed += usize::from(!v.pass);
        println!("criterion {}: {} {name}: {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
