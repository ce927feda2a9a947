use pdm_spectra::audit::{run_audit, AuditConfig, Status, DISCREPANCY_CODES};

#[test]
fn default_audit_adjudicates_every_code() {
    let rep = run_audit(&AuditConfig::default()).unwrap();
    let codes: Vec<&str> = rep.discrepancies.iter().map(|d| d.code).collect();
    assert_eq!(codes, DISCREPANCY_CODES);
    let expect = [
        ("nu-radical", Status::Confirmed),
        ("bdd-nu-conflict", Status::Confirmed),
        ("eq16-level-scale", Status::Confirmed),
        ("eq15-constants", Status::Confirmed),
        ("eq19-prefactor", Status::Confirmed),
        ("eq19-radicand-sign", Status::Confirmed),
        ("eq25-constant", Status::Confirmed),
        ("eq4-vs-eq11-coefficient", Status::Refuted),
    ];
    for (code, st) in expect {
        assert_eq!(rep.status(code), Some(st), "{code}");
    }
    for row in &rep.example1_rows {
        assert!(!row.flags.contains(&"derived-mismatch"), "{row:?}");
        assert!(row.flags.contains(&"printed-mismatch"), "{row:?}");
    }
    for row in &rep.example2_rows {
        assert!(row.flags.contains(&"printed-forbidden"), "{row:?}");
        assert!(!row.flags.contains(&"derived-mismatch"), "{row:?}");
    }
}
