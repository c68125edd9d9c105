//! Independent code paths that must agree.

use approx::assert_abs_diff_eq;

use torus_spectra::objective::{self, transformed_integrals};
use torus_spectra::spectral::{self, operator_norm_parallelogram};
use torus_spectra::{make_builtin, Kernel, KernelSpec, Monotonicity, Point, QuadratureConfig, TorusParams};

fn kernels() -> Vec<Kernel> {
    vec![
        make_builtin(KernelSpec::Gaussian { ell: 0.3 }).unwrap(),
        make_builtin(KernelSpec::InversePower { eps: 0.5, p: 1.5 }).unwrap(),
        make_builtin(KernelSpec::BallIndicator { r: 0.55 }).unwrap(),
    ]
}

fn sample_params() -> Vec<TorusParams> {
    [(0.0, 1.0), (0.5, 0.866_025_403_784_438_6), (0.2, 1.2), (0.37, 1.05), (0.1, 1.8), (0.0, 1.3)]
        .iter()
        .map(|&(a, b)| TorusParams::new(a, b).unwrap())
        .collect()
}

#[test]
fn cell_and_halfplane_routes_agree() {
    let cfg = QuadratureConfig::default();
    for k in kernels() {
        for p in sample_params() {
            let a = objective::j(p, &k, &cfg).unwrap();
            let b = objective::j_halfplane(p, &k, &cfg).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 2.0 * cfg.target(a) + 1e-12);
        }
    }
}

#[test]
fn operator_norm_matches_objective() {
    let cfg = QuadratureConfig::default();
    for k in kernels() {
        for p in sample_params() {
            let j = objective::j(p, &k, &cfg).unwrap();
            let n = spectral::operator_norm(p, &k, &cfg).unwrap();
            assert_abs_diff_eq!(j, n, epsilon = 4.0 * cfg.target(j));
        }
    }
}

#[test]
fn parallelogram_and_cell_give_the_same_eigenvalue_zero() {
    let cfg = QuadratureConfig::with_tolerances(1e-9, 1e-12);
    let g = make_builtin(KernelSpec::Gaussian { ell: 0.3 }).unwrap();
    for p in sample_params() {
        let a = spectral::operator_norm(p, &g, &cfg).unwrap();
        let b = operator_norm_parallelogram(p, &g, &cfg).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-8);
    }
}

#[test]
fn hs_norm_is_norm_of_squared_profile() {
    let cfg = QuadratureConfig::default();
    for k in kernels() {
        let p = TorusParams::new(0.2, 1.2).unwrap();
        let hs = spectral::hs_norm(p, &k, &cfg).unwrap();
        let sq = spectral::operator_norm(p, &k.squared(), &cfg).unwrap();
        assert_abs_diff_eq!(hs, sq, epsilon = 1e-10);
    }
    // indicators are idempotent
    let ball = make_builtin(KernelSpec::BallIndicator { r: 0.6 }).unwrap();
    let p = TorusParams::EQUILATERAL;
    assert_abs_diff_eq!(
        spectral::hs_norm(p, &ball, &cfg).unwrap(),
        spectral::operator_norm(p, &ball, &cfg).unwrap(),
        epsilon = 1e-12
    );
}

#[test]
fn spectrum_symmetry_and_dominance_across_kernels() {
    let cfg = QuadratureConfig::default();
    for k in kernels() {
        let rep = spectral::spectrum(TorusParams::new(0.3, 1.1).unwrap(), &k, 3.0, &cfg).unwrap();
        assert!(rep.dominance);
        assert!(rep.symmetry_defect < 1e-10, "{}", rep.symmetry_defect);
        let json = serde_json::to_value(&rep).unwrap();
        for key in ["params", "kernel", "radius", "entries", "operator_norm", "hs_norm"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert!(json["entries"][0]["k"].is_array());
    }
}

#[test]
fn closed_form_derivatives_for_indicators() {
    // The edge integrals split at the jump, so they stay exact to tolerance
    // and match central differences of the (piecewise smooth) objective.
    let cfg = QuadratureConfig::default();
    let k = make_builtin(KernelSpec::BallIndicator { r: 0.55 }).unwrap();
    let p = TorusParams::new(0.3, 1.1).unwrap();
    let r = objective::grad_check(p, &k, &cfg).unwrap();
    assert!(r.passes(1e-5), "{r:?}");
    let t = transformed_integrals(p, &k, &cfg).unwrap();
    assert!(t.identity_residual < 1e-10, "{t:?}");
}

#[test]
fn transformed_identity_over_the_domain() {
    let cfg = QuadratureConfig::default();
    let g = make_builtin(KernelSpec::InversePower { eps: 1.0, p: 2.0 }).unwrap();
    for (a, b) in [(0.05, 1.0), (0.25, 1.0), (0.45, 0.95), (0.3, 2.5)] {
        let t = transformed_integrals(TorusParams::new(a, b).unwrap(), &g, &cfg).unwrap();
        assert!(t.identity_residual < 1e-8);
        assert!(t.regroup_residual < 1e-12);
        assert!(t.i1 >= 0.0 && t.i2 >= 0.0 && t.i3 >= 0.0);
    }
}

#[test]
fn custom_profile_with_jump() {
    let cfg = QuadratureConfig::default();
    let step = Kernel::new("step", Monotonicity::NonIncreasing, |t| if t <= 0.2 { 2.0 } else { 0.5 }).with_jumps(vec![0.2]);
    let p = TorusParams::new(0.15, 1.4).unwrap();
    let a = objective::j(p, &step, &cfg).unwrap();
    let b = objective::j_halfplane(p, &step, &cfg).unwrap();
    assert_abs_diff_eq!(a, b, epsilon = 1e-9);
    let g = spectral::gamma(p, Point::ORIGIN, &step, &cfg).unwrap();
    assert_abs_diff_eq!(a, g, epsilon = 1e-9);
}
