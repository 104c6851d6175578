//! Integration checks of the verification suite itself: the default rig
//! passes everything, the identities are hbar-independent, coarse grids
//! degrade gracefully (flagged, not crashed), and reports are
//! deterministic for a fixed seed.

use wigner_weft::{run_verification_suite, Grid, SuiteConfig};

#[test]
fn default_rig_passes_every_check() {
    let grid = Grid::new(256, 0.1, 1.0).unwrap();
    let report = run_verification_suite(&grid, &SuiteConfig::default());
    for check in &report.checks {
        assert!(
            check.pass,
            "{} failed: residual {:.3e} > tolerance {:.1e}",
            check.name, check.residual, check.tolerance
        );
    }
    assert!(report.all_pass);
    // The adopted Moyal pairing must beat both alternatives decisively.
    let c = &report.conventions;
    assert!(c.moyal_residual_adopted < 1e-8);
    assert!(c.moyal_residual_adopted < c.moyal_residual_conj_on_preselected);
    assert!(c.moyal_residual_adopted < c.moyal_residual_unconjugated);
}

#[test]
fn identities_hold_at_half_hbar() {
    let grid = Grid::new(256, 0.1, 0.5).unwrap();
    let report = run_verification_suite(&grid, &SuiteConfig::default());
    assert!(
        report.all_pass,
        "failing checks: {:?}",
        report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| (&c.name, c.residual))
            .collect::<Vec<_>>()
    );
}

#[test]
fn coarse_grid_is_flagged_not_crashed() {
    let grid = Grid::new(16, 0.5, 1.0).unwrap();
    let report = run_verification_suite(&grid, &SuiteConfig::default());
    assert!(!report.all_pass, "a 16-point grid cannot hold 1e-6 quadrature checks");
    assert!(report.checks.iter().any(|c| c.pass));
    for check in &report.checks {
        assert!(check.residual >= 0.0);
    }
}

#[test]
fn report_is_deterministic_for_fixed_seed() {
    let grid = Grid::new(64, 0.25, 1.0).unwrap();
    let a = run_verification_suite(&grid, &SuiteConfig::default());
    let b = run_verification_suite(&grid, &SuiteConfig::default());
    let to_bits =
        |r: &wigner_weft::VerificationReport| -> Vec<(String, u64)> {
            r.checks
                .iter()
                .map(|c| (c.name.clone(), c.residual.to_bits()))
                .collect()
        };
    assert_eq!(to_bits(&a), to_bits(&b));

    let other_seed = run_verification_suite(
        &grid,
        &SuiteConfig {
            seed: 7,
            ..SuiteConfig::default()
        },
    );
    assert_eq!(other_seed.checks.len(), a.checks.len());
}
