//! Shared fixtures for the criterion benches.

use torus_spectra::{make_builtin, Kernel, KernelSpec, TorusParams};

pub fn gaussian() -> Kernel {
    make_builtin(KernelSpec::Gaussian { ell: 0.3 }).expect("valid kernel")
}

/// A few representative points of the fundamental domain.
pub fn sample_params() -> Vec<TorusParams> {
    [(0.0, 1.0), (0.2, 1.2), (0.35, 1.6), (0.5, 0.866_025_403_784_438_6)]
        .into_iter()
        .map(|(a, b)| TorusParams::new(a, b).expect("in U"))
        .collect()
}
