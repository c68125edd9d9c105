//! Eigenvalues of `A_f` on the dual lattice and the two operator norms.
//!
//! `A_f` is diagonal in the Fourier basis `e^{2 pi i k.x}`, `k` in the dual
//! lattice, with eigenvalue `gamma(k) = int_D f(|x|^2) cos(2 pi k.x) dx`.
//! All integrals here run in polar coordinates about the origin of the
//! Voronoi cell, independently of the triangle-fan route used by
//! [`crate::objective::j`].

use rayon::prelude::*;
use serde::Serialize;

use crate::cellgeom::{build_cell, geodesic_dist_sq};
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::moduli::{canonical_basis, enumerate_dual, DualLattice, TorusParams};
use crate::point::Point;
use crate::quadrature::{integrate_polar, integrate_polygon, QuadratureConfig};

/// Largest tolerated sine part of an eigenvalue integral.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Distance from an integer that still counts as integral when testing `k . b_i`.
pub const DUAL_TOL: f64 = 1e-9;
/// Slack in the dominance check `|gamma(k)| <= gamma(0)`.
pub const DOMINANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub k: [i64; 2],
    pub vector: Point,
    pub gamma: f64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub params: TorusParams,
    pub kernel: String,
    pub radius: f64,
    pub entries: Vec<SpectrumEntry>,
    pub operator_norm: f64,
    pub hs_norm: f64,
    /// `|gamma(k)| <= gamma(0) + DOMINANCE_TOL` held for every entry.
    pub dominance: bool,
    /// Largest `|gamma(k) - gamma(-k)|` over the entries.
    pub symmetry_defect: f64,
}

fn jump_radii(kernel: &Kernel) -> Vec<f64> {
    kernel.jumps().iter().map(|t| t.sqrt()).collect()
}

/// `int_D g(x) f(|x|^2) dx` over the origin-centred cell, polar route.
pub(crate) fn cell_moment<G>(p: TorusParams, kernel: &Kernel, weight: G, cfg: &QuadratureConfig) -> Result<f64>
where
    G: Fn(Point) -> f64,
{
    let poly = build_cell(p).polygon();
    integrate_polar(&poly, Point::ORIGIN, &jump_radii(kernel), |x| kernel.eval(x.norm_sq()) * weight(x), cfg)?
        .require_converged()
}

/// Checks that `k` has integer inner product with both lattice generators.
pub fn check_dual(p: TorusParams, k: Point) -> Result<[i64; 2]> {
    let basis = canonical_basis(p);
    let c = [k.dot(basis.col(0)), k.dot(basis.col(1))];
    let r = [c[0].round(), c[1].round()];
    if (c[0] - r[0]).abs() > DUAL_TOL || (c[1] - r[1]).abs() > DUAL_TOL {
        return Err(Error::NotDualVector { k });
    }
    Ok([r[0] as i64, r[1] as i64])
}

/// Eigenvalue `gamma_f(k)`; fails if `k` is not in the dual lattice or the
/// sine part does not vanish.
pub fn gamma(p: TorusParams, k: Point, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    check_dual(p, k)?;
    if k == Point::ORIGIN {
        return cell_moment(p, kernel, |_| 1.0, cfg);
    }
    let w = std::f64::consts::TAU;
    let re = cell_moment(p, kernel, |x| (w * k.dot(x)).cos(), cfg)?;
    let im = cell_moment(p, kernel, |x| (w * k.dot(x)).sin(), cfg)?;
    if im.abs() > SYMMETRY_TOL {
        return Err(Error::SymmetryBroken { imag: im });
    }
    Ok(re)
}

/// `||A_f||` on `L^2`, i.e. `gamma_f(0)`.
pub fn operator_norm(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    gamma(p, Point::ORIGIN, kernel, cfg)
}

/// `int_T f^2(d^2(x, c)) dx`. Note this is the square of the textbook
/// Hilbert-Schmidt norm.
pub fn hs_norm(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    operator_norm(p, &kernel.squared(), cfg)
}

/// `||A_f||` computed on the parallelogram representative, with distances
/// to its centre measured on the torus. Cross-checks the cell route.
pub fn operator_norm_parallelogram(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    let cell = build_cell(p);
    let c = cell.parallelogram_center();
    integrate_polygon(&cell.parallelogram(), |x| kernel.eval(geodesic_dist_sq(p, x, c)), cfg)?.require_converged()
}

/// Eigenvalues for every dual vector with `|k| <= radius`, evaluated in
/// parallel and reported in the enumeration order.
pub fn spectrum(p: TorusParams, kernel: &Kernel, radius: f64, cfg: &QuadratureConfig) -> Result<SpectrumReport> {
    let dual = enumerate_dual(&DualLattice::of(p), radius)?;
    let gammas: Vec<f64> = dual
        .par_iter()
        .map(|v| gamma(p, v.k, kernel, cfg))
        .collect::<Result<_>>()?;
    let operator_norm = operator_norm(p, kernel, cfg)?;
    let hs_norm = hs_norm(p, kernel, cfg)?;
    let entries: Vec<SpectrumEntry> = dual
        .iter()
        .zip(&gammas)
        .map(|(v, &g)| SpectrumEntry {
            k: v.index,
            vector: v.k,
            gamma: g,
            magnitude: g.abs(),
        })
        .collect();
    let dominance = entries.iter().all(|e| e.magnitude <= operator_norm + DOMINANCE_TOL);
    let mut symmetry_defect = 0.0f64;
    for e in &entries {
        let neg = [-e.k[0], -e.k[1]];
        if let Some(o) = entries.iter().find(|o| o.k == neg) {
            symmetry_defect = symmetry_defect.max((e.gamma - o.gamma).abs());
        }
    }
    Ok(SpectrumReport {
        params: p,
        kernel: kernel.label().to_string(),
        radius,
        entries,
        operator_norm,
        hs_norm,
        dominance,
        symmetry_defect,
    })
}
