//! Scenario execution and CSV/JSON report emission.
//!
//! Every command produces one CSV table and one JSON document. Numbers in
//! CSV are written with 17 significant digits (`{:.16e}`); NaN is `NaN`.
//! The JSON envelope carries the tool version and the scenario hash.
//! Failures detected after the computation (non-convergence, identity
//! thresholds) still write both files before the error is returned.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::analytic::{example1_spectrum, example2_spectrum, Classification, SpectrumVariants};
use crate::audit::{run_audit, LevelRow};
use crate::error::{Error, Result};
use crate::numeric::{check_converging, ConvergenceReport};
use crate::opcheck::run_identity_suite;
use crate::ordering::{ambiguity_potential, g_coefficient, is_ambiguity_free, make_ordering, q_coefficient, NamedOrdering, OrderingParams};
use crate::problems::{Example1, Example2};
use crate::scenario::{Command, ProblemSpec, Scenario, SweepSpec};
use crate::smoothfn::SmoothFn;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

impl Error {
    /// Process exit status: 2 input, 3 solver, 4 identity threshold, 1 other.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_)
            | Error::UnknownOrdering { .. }
            | Error::InvalidParam(_)
            | Error::InvalidProfile(_)
            | Error::SingularNormalization => 2,
            Error::ConvergenceFailure(_) | Error::NotConverging { .. } => 3,
            Error::IdentityThreshold(_) => 4,
            _ => 1,
        }
    }
}

/// `{:.16e}`, the shortest fixed format that round-trips every `f64`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

/// Result of one scenario: the two documents plus a deferred failure.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub json: Value,
    pub summary: String,
    pub failure: Option<Error>,
}

fn envelope(s: &Scenario, result: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "scenario_hash": s.hash(),
        "scenario": s,
        "result": result,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Runs `s` without touching the filesystem.
pub fn execute(s: &Scenario) -> Result<Outcome> {
    s.validate()?;
    match s.command {
        Command::Spectrum => spectrum(s, false),
        Command::Convergence => spectrum(s, true),
        Command::Identities => identities(s),
        Command::Audit => audit(s),
        Command::Sweep => sweep(s),
    }
}

fn analytic_for(s: &Scenario, ord: &OrderingParams) -> Result<Option<SpectrumVariants>> {
    let n = s.k - 1;
    Ok(match s.problem {
        ProblemSpec::Example1 { m0, c, v0 } => Some(example1_spectrum(m0, c, v0, ord, s.hbar, n)?),
        ProblemSpec::Example2 { c, a, b } => Some(example2_spectrum(c, a, b, ord, s.hbar, n)?),
        ProblemSpec::Custom { .. } => None,
    })
}

fn spectrum(s: &Scenario, per_level: bool) -> Result<Outcome> {
    let ord = s.ordering_params()?;
    let p = s.spectral_problem(&ord)?;
    let rep: ConvergenceReport = p.refine_report(s.grid.points, s.grid.levels, s.k)?;
    let analytic = analytic_for(s, &ord).ok().flatten();
    let failure = check_converging(rep.clone()).err();

    let table = if per_level {
        let mut t = Table::new(vec!["n", "level", "points", "h", "eigenvalue"]);
        for n in 0..s.k {
            for (l, (g, raw)) in rep.grids.iter().zip(&rep.raw).enumerate() {
                t.push(vec![n.to_string(), l.to_string(), g.n_points.to_string(), fmt_num(g.h()), fmt_num(raw[n])]);
            }
        }
        t
    } else {
        let mut t = Table::new(vec!["n", "eigenvalue", "error_estimate", "order"]);
        for n in 0..s.k {
            t.push(vec![
                n.to_string(),
                fmt_num(rep.extrapolated[n]),
                fmt_num(rep.error_estimates[n]),
                fmt_num(rep.observed_order[n]),
            ]);
        }
        t
    };
    let summary = rep
        .extrapolated
        .iter()
        .zip(&rep.error_estimates)
        .enumerate()
        .map(|(n, (e, err))| format!("E_{n} = {e:.12} ± {err:.1e}"))
        .collect::<Vec<_>>()
        .join("\n");
    let json = envelope(
        s,
        json!({
            "ordering": ord,
            "domain": { "lo": p.domain.lo, "hi": p.domain.hi },
            "boundaries": { "lower": p.lower, "upper": p.upper },
            "convergence": rep,
            "analytic": analytic,
            "converging": failure.is_none(),
        }),
    );
    Ok(Outcome {
        table,
        json,
        summary,
        failure,
    })
}

fn identities(s: &Scenario) -> Result<Outcome> {
    let rep = run_identity_suite(s.hbar)?;
    let mut t = Table::new(vec!["name", "value", "threshold", "pass"]);
    for c in &rep.checks {
        t.push(vec![c.name.clone(), fmt_num(c.value), fmt_num(c.threshold), c.pass.to_string()]);
    }
    t.push(vec!["kappa".into(), fmt_num(rep.kappa), "NaN".into(), "true".into()]);
    let failed: Vec<String> = rep
        .failures()
        .iter()
        .map(|c| format!("{} = {:e} > {:e}", c.name, c.value, c.threshold))
        .collect();
    let failure = (!failed.is_empty()).then(|| Error::IdentityThreshold(failed.join("; ")));
    let summary = rep
        .checks
        .iter()
        .map(|c| format!("{:<28} {:.3e} (≤ {:.0e}) {}", c.name, c.value, c.threshold, if c.pass { "ok" } else { "FAIL" }))
        .chain(std::iter::once(format!("{:<28} {:.15}", "kappa", rep.kappa)))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        table: t,
        json: envelope(s, to_value(&rep)),
        summary,
        failure,
    })
}

fn push_rows(t: &mut Table, example: &str, rows: &[LevelRow]) {
    for r in rows {
        t.push(vec![
            example.to_string(),
            r.n.to_string(),
            fmt_num(r.analytic_paper),
            fmt_num(r.analytic_derived),
            fmt_num(r.numeric),
            fmt_num(r.numeric_error),
            fmt_num(r.delta_printed),
            fmt_num(r.delta_derived),
            r.flags.join(";"),
        ]);
    }
}

fn audit(s: &Scenario) -> Result<Outcome> {
    let rep = run_audit(&s.audit_config()?)?;
    let mut t = Table::new(vec![
        "example",
        "n",
        "analytic_paper",
        "analytic_derived",
        "numeric",
        "numeric_error",
        "delta_printed",
        "delta_derived",
        "flags",
    ]);
    push_rows(&mut t, "example1", &rep.example1_rows);
    push_rows(&mut t, "example2", &rep.example2_rows);
    let failed: Vec<String> = rep.identities.failures().iter().map(|c| c.name.clone()).collect();
    let failure = (!failed.is_empty()).then(|| Error::IdentityThreshold(failed.join(", ")));
    let summary = rep
        .discrepancies
        .iter()
        .map(|d| format!("{:<26} {}", d.code, serde_json::to_string(&d.status).unwrap_or_default().trim_matches('"')))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        table: t,
        json: envelope(s, to_value(&rep)),
        summary,
        failure,
    })
}

/// One ordering of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub label: String,
    pub a: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub beta: f64,
    pub q: f64,
    pub g: f64,
    pub nu_printed: [f64; 2],
    pub nu_derived: [f64; 2],
    pub class_printed: Option<Classification>,
    pub class_derived: Option<Classification>,
    pub ambiguity_free: bool,
    /// `max |U| / ħ²` over sample points of the example's domain.
    pub u_norm: f64,
    pub status: String,
}

fn sweep_row(s: &Scenario, label: String, ord: &OrderingParams) -> SweepRow {
    let (mass, pts, c_exp): (SmoothFn, Vec<f64>, f64) = match s.problem {
        ProblemSpec::Example1 { m0, c, v0 } => {
            let ex = Example1 { m0, c, v0 };
            (ex.mass(), ex.default_domain(s.hbar).sample_points(32), c)
        }
        ProblemSpec::Example2 { c, a, b } => {
            let ex = Example2 { c, a, b };
            (ex.mass(), crate::smoothfn::Interval { lo: 0.25, hi: 4.0 }.sample_points(32), 1.0)
        }
        ProblemSpec::Custom { .. } => unreachable!("validated"),
    };
    let u = ambiguity_potential(ord, &mass, s.hbar);
    let u_norm = pts
        .iter()
        .map(|&x| u.value(x).map(f64::abs).unwrap_or(f64::NAN))
        .fold(0.0, f64::max)
        / (s.hbar * s.hbar);
    let variants = analytic_for(s, ord);
    let mut row = SweepRow {
        label,
        a: ord.a(),
        alpha: ord.alpha(),
        gamma: ord.gamma(),
        beta: ord.beta(),
        q: q_coefficient(ord, c_exp),
        g: g_coefficient(ord, s.hbar),
        nu_printed: [f64::NAN; 2],
        nu_derived: [f64::NAN; 2],
        class_printed: None,
        class_derived: None,
        ambiguity_free: is_ambiguity_free(ord),
        u_norm,
        status: "ok".into(),
    };
    match variants {
        Ok(Some(v)) => {
            row.nu_printed = [v.printed.nu.re, v.printed.nu.im];
            row.nu_derived = [v.derived_mapping.nu.re, v.derived_mapping.nu.im];
            row.class_printed = Some(v.printed.classification);
            row.class_derived = Some(v.derived_mapping.classification);
        }
        Ok(None) => {}
        Err(e) => row.status = format!("failed: {e}"),
    }
    row
}

/// Rows of the `(a, alpha, gamma)` cube (skipping `a = −1`) followed by the
/// catalog orderings.
pub fn sweep_rows(s: &Scenario) -> (Vec<SweepRow>, Vec<SweepRow>) {
    let vals = s.sweep.unwrap_or_default().values();
    let mut grid = Vec::new();
    for &a in &vals {
        for &al in &vals {
            for &ga in &vals {
                if let Ok(ord) = make_ordering(a, al, ga) {
                    grid.push(sweep_row(s, "grid".into(), &ord));
                }
            }
        }
    }
    let catalog = NamedOrdering::ALL
        .iter()
        .map(|n| sweep_row(s, n.name().into(), &n.params()))
        .collect();
    (grid, catalog)
}

fn class_str(c: Option<Classification>) -> String {
    match c {
        Some(Classification::Physical) => "physical".into(),
        Some(Classification::ForbiddenComplex) => "forbidden-complex".into(),
        None => String::new(),
    }
}

fn sweep(s: &Scenario) -> Result<Outcome> {
    let (grid, catalog) = sweep_rows(s);
    let mut t = Table::new(vec![
        "a",
        "alpha",
        "gamma",
        "beta",
        "q",
        "g",
        "nu_printed_re",
        "nu_printed_im",
        "nu_derived_re",
        "nu_derived_im",
        "class_printed",
        "class_derived",
        "ambiguity_free",
        "u_norm",
        "status",
    ]);
    for r in &grid {
        t.push(vec![
            fmt_num(r.a),
            fmt_num(r.alpha),
            fmt_num(r.gamma),
            fmt_num(r.beta),
            fmt_num(r.q),
            fmt_num(r.g),
            fmt_num(r.nu_printed[0]),
            fmt_num(r.nu_printed[1]),
            fmt_num(r.nu_derived[0]),
            fmt_num(r.nu_derived[1]),
            class_str(r.class_printed),
            class_str(r.class_derived),
            r.ambiguity_free.to_string(),
            fmt_num(r.u_norm),
            r.status.clone(),
        ]);
    }
    let failed = grid.iter().filter(|r| r.status != "ok").count();
    let summary = format!(
        "{} orderings, {} ambiguity-free, {} failed\n{}",
        grid.len(),
        grid.iter().filter(|r| r.ambiguity_free).count(),
        failed,
        catalog
            .iter()
            .map(|r| format!(
                "{:<16} ν_printed = {:.6}{:+.6}i  ν_derived = {:.6}{:+.6}i",
                r.label, r.nu_printed[0], r.nu_printed[1], r.nu_derived[0], r.nu_derived[1]
            ))
            .collect::<Vec<_>>()
            .join("\n")
    );
    let spec: SweepSpec = s.sweep.unwrap_or_default();
    Ok(Outcome {
        table: t,
        json: envelope(s, json!({ "sweep": spec, "rows": grid, "catalog": catalog })),
        summary,
        failure: None,
    })
}

/// Writes `<prefix>.csv` and `<prefix>.json`.
pub fn write_outcome(o: &Outcome, prefix: &Path) -> Result<(PathBuf, PathBuf)> {
    let with_ext = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        PathBuf::from(p)
    };
    let (csv_path, json_path) = (with_ext(".csv"), with_ext(".json"));
    if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(&csv_path, o.table.to_csv())?;
    let mut text = serde_json::to_string_pretty(&o.json).expect("json values serialize");
    text.push('\n');
    std::fs::write(&json_path, text)?;
    Ok((csv_path, json_path))
}

/// Loads, runs and writes one scenario. The prefix is `out`, else the
/// scenario's `output`, else its name. Deferred failures are returned after
/// the files are written.
pub fn run_scenario(path: &Path, out: Option<&Path>) -> Result<(Outcome, PathBuf, PathBuf)> {
    let s = Scenario::load(path)?;
    let prefix = match (out, &s.output) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(o)) => PathBuf::from(o),
        (None, None) => PathBuf::from(&s.name),
    };
    let o = execute(&s)?;
    let (c, j) = write_outcome(&o, &prefix)?;
    match &o.failure {
        Some(e) => Err(e.clone()),
        None => Ok((o, c, j)),
    }
}
