//! Operator norms of isotropic integral operators on unit-volume flat tori.
//!
//! The L² operator norm and the Hilbert-Schmidt quantity of `A_f` both reduce
//! to `J(a, b) = int_{D_{a,b}} f(|x|^2) dx` over the Dirichlet-Voronoi cell of
//! the lattice. This crate evaluates `J`, its closed-form gradients and the
//! pieces of the argument that the equilateral torus maximizes it, plus a
//! numerical verification suite for the Fejes Tóth moment inequalities.

pub mod cellgeom;
pub mod error;
pub mod kernels;
pub mod moduli;
pub mod moment;
pub mod objective;
pub mod point;
pub mod quadrature;
pub mod spectral;

pub use cellgeom::{build_cell, edge_functions, geodesic_dist_sq, EdgeFunctions, VoronoiCell};
pub use error::{Error, Result};
pub use kernels::{check_admissible, make_builtin, Kernel, KernelSpec, Monotonicity};
pub use moduli::{canonical_basis, dual_basis, enumerate_dual, reduce_basis, Basis2, DualLattice, TorusParams};
pub use point::Point;
pub use quadrature::{integrate_1d, integrate_1d_split, integrate_nested, integrate_polar, integrate_polygon, integrate_star, ConvexPolygon, Estimate, QuadratureConfig};
pub use spectral::{gamma, hs_norm, operator_norm, spectrum, SpectrumEntry, SpectrumReport};
pub use objective::{
    claim_check, dj_da, dj_db, grad_check, grid_sweep, hessian_fd, j, j_halfplane, lemma_jb_inequality, optimize_path,
    transformed_integrals, ClaimReport, GradReport, Hessian, PathResult, SweepResult,
};
pub use moment::{
    clipped_voronoi, lemma2_check, moment_lemma_check, moment_theorem_check, omega, omega_convexity_check,
    segment_from_area, vertex_count_check, ClippedVoronoi, CircularSegment, Disc, DistanceProfile, OriginPolicy,
    TrialRecord,
};
