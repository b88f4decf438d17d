use fkpp_core::kernel::green_surface;
use fkpp_core::oracle::{compare_fields, pde_residual, solve_fd, Coefficients, SolverConfig, TimeWindow};
use fkpp_core::successive::{collapse_audit, CollapseThresholds, FunctionalSequence};
use fkpp_core::zeroth::{synthesize_surface, SurfaceMethod};
use fkpp_core::{ModelParams, SpaceTimeGrid};

fn grid() -> SpaceTimeGrid {
    SpaceTimeGrid::new(-8.0, 8.0, 512, 0.0, 1.0, 65).unwrap()
}

#[test]
fn linear_surface_satisfies_heat_equation() {
    let p = ModelParams::new(1.0, 1.0, 0.0).unwrap();
    let u = synthesize_surface(&p, &grid(), SurfaceMethod::FirstOrderSpectral).unwrap();
    let res = pde_residual(&u, &Coefficients::from(p)).unwrap();
    let (max, _) = res.norms_in_window(TimeWindow::new(0.25, 1.0));
    assert!(max < 2e-2, "{max:e}");
}

#[test]
fn oracle_tracks_green_surface_on_wide_domain() {
    let p = ModelParams::new(1.0, 1.0, 0.0).unwrap();
    let g = grid();
    let fd = solve_fd(&Coefficients::from(p), &SolverConfig::new(g, 0.1, 0.25).unwrap()).unwrap();
    let e = compare_fields(&green_surface(&p, &g), &fd.field, TimeWindow::new(0.25, 1.0)).unwrap();
    // a Gaussian start of width sigma is the delta start shifted by sigma^2 / 2D in time
    assert!(e.max_abs < 5e-3, "{:e}", e.max_abs);
}

#[test]
fn nonlinear_oracle_gap_grows_with_r() {
    let g = grid();
    let solver = SolverConfig::new(g, 0.1, 0.25).unwrap();
    let errs: Vec<f64> = [0.05, 0.2]
        .iter()
        .map(|&r| {
            let p = ModelParams::new(1.0, 1.0, r).unwrap();
            let u = synthesize_surface(&p, &g, SurfaceMethod::FirstOrderSpectral).unwrap();
            let fd = solve_fd(&Coefficients::from(p), &solver).unwrap();
            compare_fields(&u, &fd.field, TimeWindow::new(0.1, 1.0)).unwrap().l2
        })
        .collect();
    assert!(errs[0] < errs[1], "{errs:?}");
}

#[test]
fn collapse_table_shape() {
    let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
    let g = SpaceTimeGrid::new(-3.0, 3.0, 32, 0.0, 1.0, 257).unwrap();
    let mut seq = FunctionalSequence::new(p, g).unwrap();
    let probes = [0.0, 0.5, 1.0];
    let report = collapse_audit(&mut seq, 4, &probes, CollapseThresholds::default()).unwrap();
    assert!(report.error.is_none());
    assert_eq!(report.table.len(), 4 * probes.len());
    assert!(report.origin.holds());
    assert!(!report.decay.holds());
    assert_eq!(report.verdict_label(), "no_collapse");
}
