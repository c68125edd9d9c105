//! The objective `J(a, b) = int_{D_{a,b}} f(|x|^2) dx`, its partial
//! derivatives, and the inequalities that show it increases toward the
//! equilateral torus.
//!
//! Every derivative returned here is a derivative of `J` itself, not of
//! `J / 2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cellgeom::{build_cell, edge_functions, EdgeFunctions};
use crate::error::{Error, Result};
use crate::kernels::{Kernel, Monotonicity};
use crate::moduli::TorusParams;
use crate::quadrature::{integrate_1d_split, integrate_nested, integrate_polygon, Estimate, QuadratureConfig};

/// Central-difference step for gradient checks.
pub const FD_STEP: f64 = 1e-5;
/// Central-difference step for the Hessian.
pub const HESSIAN_STEP: f64 = 1e-3;
/// Slack allowed when asserting monotonicity along the optimization path.
pub const PATH_SLACK: f64 = 1e-9;
/// Default parameter step along the optimization path.
pub const PATH_STEP: f64 = 1e-2;
/// Denominator floor for relative gradient errors near critical points.
pub const AGREEMENT_FLOOR: f64 = 1e-6;
/// Hessian entries below this fraction of `|J|` count as zero when judging
/// whether quadrature noise dominates the stencil.
pub const HESSIAN_ZERO_FLOOR: f64 = 1e-3;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

// ---------------------------------------------------------------------------
// Jump bookkeeping for discontinuous profiles.

/// Real roots of `alpha x^2 + beta x + gamma = 0`.
fn quadratic_roots(alpha: f64, beta: f64, gamma: f64) -> Vec<f64> {
    if alpha == 0.0 {
        return if beta == 0.0 { vec![] } else { vec![-gamma / beta] };
    }
    let disc = beta * beta - 4.0 * alpha * gamma;
    if disc < 0.0 {
        return vec![];
    }
    let s = disc.sqrt();
    let q = -0.5 * (beta + beta.signum() * s);
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / alpha, gamma / q]
}

/// Abscissae where `x^2 + (c + m x)^2` crosses one of `jumps`.
fn line_breaks(c: f64, m: f64, jumps: &[f64]) -> Vec<f64> {
    jumps
        .iter()
        .flat_map(|&t| quadratic_roots(1.0 + m * m, 2.0 * c * m, c * c - t))
        .collect()
}

/// Abscissae where `k (l + (s z + o)^2)` crosses one of `jumps`.
fn shifted_square_breaks(k: f64, l: f64, s: f64, o: f64, jumps: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for &t in jumps {
        let u2 = t / k - l;
        if u2 >= 0.0 && s != 0.0 {
            let u = u2.sqrt();
            out.push((u - o) / s);
            out.push((-u - o) / s);
        }
    }
    out
}

/// Edge line `y = c + m x` as used for break-point location.
fn y1_line(e: &EdgeFunctions) -> (f64, f64) {
    (e.y1(0.0), (1.0 - e.a) / e.b)
}

fn y2_line(e: &EdgeFunctions) -> (f64, f64) {
    (e.y2(0.0), -e.a / e.b)
}

/// `int_lo^hi f(x^2 + y(x)^2) w(x) dx` along the edge `y = c + m x`.
fn edge_integral<Y, W>(
    kernel: &Kernel,
    lo: f64,
    hi: f64,
    line: (f64, f64),
    y: Y,
    w: W,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    Y: Fn(f64) -> f64,
    W: Fn(f64) -> f64,
{
    if hi <= lo {
        return Ok(Estimate::exact(0.0));
    }
    let breaks = line_breaks(line.0, line.1, kernel.jumps());
    integrate_1d_split(
        lo,
        hi,
        &breaks,
        |x| {
            let yy = y(x);
            kernel.eval(x * x + yy * yy) * w(x)
        },
        cfg,
    )
}

// ---------------------------------------------------------------------------
// J

/// `J(a, b)` with its error estimate. Smooth profiles use the triangle fan
/// over the cell; profiles with jumps use the polar route, which splits at
/// the jump radii.
pub fn j_estimate(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<Estimate> {
    if kernel.is_smooth() {
        integrate_polygon(&build_cell(p).polygon(), |x| kernel.eval(x.norm_sq()), cfg)
    } else {
        let radii: Vec<f64> = kernel.jumps().iter().map(|t| t.sqrt()).collect();
        crate::quadrature::integrate_polar(
            &build_cell(p).polygon(),
            crate::point::Point::ORIGIN,
            &radii,
            |x| kernel.eval(x.norm_sq()),
            cfg,
        )
    }
}

pub fn j(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    j_estimate(p, kernel, cfg)?.require_converged()
}

/// `J` as twice the integral over the upper half of the cell, written as
/// iterated integrals under the edges `y1` (on `[-x1, x2]`) and `y2` (on
/// `[x2, x1]`).
pub fn j_halfplane(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    let e = edge_functions(p);
    let jumps = kernel.jumps();
    let strip = |lo: f64, hi: f64, line: (f64, f64), top: &dyn Fn(f64) -> f64| -> Result<Estimate> {
        if hi <= lo {
            return Ok(Estimate::exact(0.0));
        }
        let mut breaks = line_breaks(line.0, line.1, jumps);
        for &t in jumps {
            breaks.extend([-t.sqrt(), t.sqrt()]);
        }
        let column = |x: f64| {
            let inner: Vec<f64> = jumps.iter().filter(|&&t| t > x * x).map(|&t| (t - x * x).sqrt()).collect();
            integrate_1d_split(0.0, top(x), &inner, |y| kernel.eval(x * x + y * y), cfg)
        };
        integrate_nested(lo, hi, &breaks, column, cfg)
    };
    let left = strip(-e.x1, e.x2, y1_line(&e), &|x| e.y1(x))?;
    let right = strip(e.x2, e.x1, y2_line(&e), &|x| e.y2(x))?;
    left.combine(right).scale(2.0).require_converged()
}

// ---------------------------------------------------------------------------
// Closed-form partial derivatives

/// `dJ/da` from the three edge integrals. Vanishes at `a = 0` and `a = 1/2`
/// for every profile.
pub fn dj_da(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    let e = edge_functions(p);
    let (a, b) = (p.a(), p.b());
    let sb = b.sqrt();
    let mid = a / sb;
    let t1 = edge_integral(kernel, -e.x1, e.x2, y1_line(&e), |x| e.y1(x), |x| x - (a - 1.0) / sb, cfg)?;
    let t2 = edge_integral(kernel, e.x2, mid, y2_line(&e), |x| e.y2(x), |x| mid - x, cfg)?;
    let t3 = edge_integral(kernel, mid, e.x1, y2_line(&e), |x| e.y2(x), |x| x - mid, cfg)?;
    let half = t1.scale(-1.0 / b).combine(t2.scale(1.0 / b)).combine(t3.scale(-1.0 / b));
    Ok(2.0 * half.require_converged()?)
}

/// `dJ/db`: the moving vertical edges at `x = +-x1` plus the two sloped
/// edges weighted by `d y_i / d b`.
pub fn dj_db(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<f64> {
    let e = edge_functions(p);
    let b = p.b();
    let h = e.vertical_half_height();
    let x1sq = 0.25 / b;
    let side_breaks: Vec<f64> = kernel
        .jumps()
        .iter()
        .filter(|&&t| t > x1sq)
        .map(|&t| (t - x1sq).sqrt())
        .collect();
    let side = integrate_1d_split(0.0, h, &side_breaks, |y| kernel.eval(x1sq + y * y), cfg)?;
    let t1 = edge_integral(kernel, -e.x1, e.x2, y1_line(&e), |x| e.y1(x), |x| e.dy1_db(x), cfg)?;
    let t2 = edge_integral(kernel, e.x2, e.x1, y2_line(&e), |x| e.y2(x), |x| e.dy2_db(x), cfg)?;
    let half = side.scale(-0.5 / b.powf(1.5)).combine(t1).combine(t2);
    Ok(2.0 * half.require_converged()?)
}

// ---------------------------------------------------------------------------
// Finite-difference checks

/// A configuration tight enough that finite differences are not dominated by
/// quadrature noise.
fn fd_config(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: cfg.rel_tol.min(1e-13),
        abs_tol: cfg.abs_tol.min(1e-15),
        ..*cfg
    }
}

/// `J` at possibly out-of-range `(a, b)`, folded back with the isometries
/// `a -> -a` and `a -> 1 - a`.
fn j_folded(a: f64, b: f64, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<Estimate> {
    let mut a = a.abs();
    if a > 0.5 {
        a = 1.0 - a;
    }
    j_estimate(TorusParams::relaxed(a, b)?, kernel, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradReport {
    pub params: TorusParams,
    pub kernel: String,
    pub dj_da_closed: f64,
    pub dj_db_closed: f64,
    pub dj_da_fd: f64,
    pub dj_db_fd: f64,
    pub step: f64,
    /// Larger of the two relative errors, each measured against
    /// `max(|closed|, AGREEMENT_FLOOR)`.
    pub agreement: f64,
}

impl GradReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.agreement < tol
    }
}

pub fn grad_check(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<GradReport> {
    let h = FD_STEP;
    let fine = fd_config(cfg);
    let (a, b) = (p.a(), p.b());
    let jv = |da: f64, db: f64| -> Result<f64> { Ok(j_folded(a + da, b + db, kernel, &fine)?.value) };
    let dj_da_fd = (jv(h, 0.0)? - jv(-h, 0.0)?) / (2.0 * h);
    let dj_db_fd = (jv(0.0, h)? - jv(0.0, -h)?) / (2.0 * h);
    let dj_da_closed = dj_da(p, kernel, &fine)?;
    let dj_db_closed = dj_db(p, kernel, &fine)?;
    let rel = |c: f64, f: f64| (c - f).abs() / c.abs().max(AGREEMENT_FLOOR);
    Ok(GradReport {
        params: p,
        kernel: kernel.label().to_string(),
        dj_da_closed,
        dj_db_closed,
        dj_da_fd,
        dj_db_fd,
        step: h,
        agreement: rel(dj_da_closed, dj_da_fd).max(rel(dj_db_closed, dj_db_fd)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hessian {
    pub params: TorusParams,
    pub step: f64,
    /// `[[J_aa, J_ab], [J_ab, J_bb]]`.
    pub matrix: [[f64; 2]; 2],
    /// Ascending.
    pub eigenvalues: [f64; 2],
    /// Estimated contribution of quadrature error to each entry.
    pub noise: f64,
}

impl Hessian {
    pub fn is_saddle(&self, floor: f64) -> bool {
        self.eigenvalues[0] < -floor && self.eigenvalues[1] > floor
    }

    pub fn is_local_max(&self, floor: f64) -> bool {
        self.eigenvalues[1] <= floor
    }
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
pub fn sym2_eigenvalues(m: [[f64; 2]; 2]) -> [f64; 2] {
    let mean = 0.5 * (m[0][0] + m[1][1]);
    let r = (0.5 * (m[0][0] - m[1][1])).hypot(m[0][1]);
    [mean - r, mean + r]
}

/// Central-difference Hessian of `J`. Stencil points with `a < 0` or
/// `a > 1/2` are folded back by isometry, so the stencil stays centred at
/// the boundary critical points.
pub fn hessian_fd(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig, h: f64) -> Result<Hessian> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::BadParameter(format!("Hessian step must be positive, got {h}")));
    }
    let (a, b) = (p.a(), p.b());
    let mut worst_err = 0.0f64;
    let mut jv = |da: f64, db: f64| -> Result<f64> {
        let est = j_folded(a + da, b + db, kernel, cfg)?;
        worst_err = worst_err.max(est.error);
        Ok(est.value)
    };
    let j0 = jv(0.0, 0.0)?;
    let jaa = (jv(h, 0.0)? - 2.0 * j0 + jv(-h, 0.0)?) / (h * h);
    let jbb = (jv(0.0, h)? - 2.0 * j0 + jv(0.0, -h)?) / (h * h);
    let jab = (jv(h, h)? - jv(h, -h)? - jv(-h, h)? + jv(-h, -h)?) / (4.0 * h * h);
    let matrix = [[jaa, jab], [jab, jbb]];
    let noise = 4.0 * worst_err / (h * h);
    let scale = jaa.abs().max(jbb.abs()).max(jab.abs()).max(HESSIAN_ZERO_FLOOR * j0.abs());
    if noise > 0.1 * scale {
        return Err(Error::StepTooSmall { noise, scale });
    }
    Ok(Hessian {
        params: p,
        step: h,
        matrix,
        eigenvalues: sym2_eigenvalues(matrix),
        noise,
    })
}

// ---------------------------------------------------------------------------
// Transformed integrals and the claims behind dJ/da > 0

/// Arguments `A1, A2, A3` of `f` in the rescaled integrals, as functions of
/// `z in [-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClaimArguments {
    pub a: f64,
    pub b: f64,
}

impl ClaimArguments {
    pub fn new(p: TorusParams) -> Self {
        Self { a: p.a(), b: p.b() }
    }

    fn k1(&self) -> f64 {
        (self.b * self.b + (1.0 - self.a).powi(2)) / (4.0 * self.b.powi(3))
    }

    fn k2(&self) -> f64 {
        (self.a * self.a + self.b * self.b) / (16.0 * self.b.powi(3))
    }

    pub fn a1(&self, z: f64) -> f64 {
        self.k1() * (self.b * self.b + self.a * self.a * z * z)
    }

    pub fn a2(&self, z: f64) -> f64 {
        self.k2() * (4.0 * self.b * self.b + (1.0 - 2.0 * self.a - z).powi(2))
    }

    pub fn a3(&self, z: f64) -> f64 {
        self.k2() * (4.0 * self.b * self.b + ((1.0 - 2.0 * self.a) * z - 1.0).powi(2))
    }

    /// Closed form of `A1(1) - A2(1)`.
    pub fn boundary_gap(&self) -> f64 {
        (1.0 - 2.0 * self.a) * (self.a * self.a + self.b * self.b) / (4.0 * self.b.powi(3))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformedIntegrals {
    pub params: TorusParams,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    /// `dJ/da` from the edge integrals.
    pub dj_da: f64,
    /// `|(-I1 + I2 - I3) - dJ/da / 2|`.
    pub identity_residual: f64,
    /// `4a(1-a) + (1-2a)^2`; equals one.
    pub coefficient_sum: f64,
    /// `[4a(1-a) I2 - I1, (1-2a)^2 I2 - I3]`.
    pub pieces: [f64; 2],
    /// `|pieces[0] + pieces[1] - (-I1 + I2 - I3)|`.
    pub regroup_residual: f64,
}

pub fn transformed_integrals(p: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig) -> Result<TransformedIntegrals> {
    let (a, b) = (p.a(), p.b());
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::DomainError(format!("transformed integrals need 0 < a < 1/2, got a = {a}")));
    }
    let args = ClaimArguments::new(p);
    let jumps = kernel.jumps();
    let pre = 1.0 / (16.0 * b * b);
    let c1 = 4.0 * a * (1.0 - a);
    let c3 = (1.0 - 2.0 * a).powi(2);
    let piece = |arg: &dyn Fn(f64) -> f64, breaks: Vec<f64>| -> Result<f64> {
        integrate_1d_split(-1.0, 1.0, &breaks, |z| kernel.eval(arg(z)) * (1.0 - z), cfg)?.require_converged()
    };
    let i1 = pre * c1 * piece(&|z| args.a1(z), shifted_square_breaks(args.k1(), b * b, a, 0.0, jumps))?;
    let i2 = pre * piece(&|z| args.a2(z), shifted_square_breaks(args.k2(), 4.0 * b * b, -1.0, 1.0 - 2.0 * a, jumps))?;
    let i3 = pre * c3 * piece(&|z| args.a3(z), shifted_square_breaks(args.k2(), 4.0 * b * b, 1.0 - 2.0 * a, -1.0, jumps))?;
    let combined = -i1 + i2 - i3;
    let dj = dj_da(p, kernel, cfg)?;
    let pieces = [c1 * i2 - i1, c3 * i2 - i3];
    Ok(TransformedIntegrals {
        params: p,
        i1,
        i2,
        i3,
        dj_da: dj,
        identity_residual: (combined - 0.5 * dj).abs(),
        coefficient_sum: c1 + c3,
        pieces,
        regroup_residual: (pieces[0] + pieces[1] - combined).abs(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub params: TorusParams,
    pub z_samples: usize,
    /// Minimum of `A1 - A2` over the open grid.
    pub min_a1_minus_a2: f64,
    pub argmin_a1_minus_a2: f64,
    /// Minimum of `A3 - A2` over the open grid.
    pub min_a3_minus_a2: f64,
    /// `A1(-1) - A2(-1)`; zero.
    pub boundary_minus: f64,
    /// `A1(1) - A2(1)`.
    pub boundary_plus: f64,
    /// `(1 - 2a)(a^2 + b^2) / (4 b^3)`.
    pub boundary_plus_expected: f64,
    /// Largest discrete second difference of `A1 - A2` on the grid.
    pub max_second_difference: f64,
    pub claim_a1_ge_a2: bool,
    pub claim_a3_gt_a2: bool,
    pub boundary_ok: bool,
    pub concave: bool,
}

impl ClaimReport {
    pub fn ok(&self) -> bool {
        self.claim_a1_ge_a2 && self.claim_a3_gt_a2 && self.boundary_ok && self.concave
    }
}

/// Evaluates both claims on the open grid `z_i = -1 + 2i/(n+1)`, plus the
/// boundary identities at `z = +-1`.
pub fn claim_check(p: TorusParams, z_samples: usize) -> ClaimReport {
    let args = ClaimArguments::new(p);
    let n = z_samples.max(3);
    let zs: Vec<f64> = (1..=n).map(|i| -1.0 + 2.0 * i as f64 / (n + 1) as f64).collect();
    let d12: Vec<f64> = zs.iter().map(|&z| args.a1(z) - args.a2(z)).collect();
    let (mut min12, mut argmin) = (f64::INFINITY, 0.0);
    for (&z, &d) in zs.iter().zip(&d12) {
        if d < min12 {
            min12 = d;
            argmin = z;
        }
    }
    let min32 = zs.iter().map(|&z| args.a3(z) - args.a2(z)).fold(f64::INFINITY, f64::min);
    let max_dd = d12.windows(3).map(|w| w[0] - 2.0 * w[1] + w[2]).fold(f64::NEG_INFINITY, f64::max);
    let boundary_minus = args.a1(-1.0) - args.a2(-1.0);
    let boundary_plus = args.a1(1.0) - args.a2(1.0);
    let expected = args.boundary_gap();
    ClaimReport {
        params: p,
        z_samples: n,
        min_a1_minus_a2: min12,
        argmin_a1_minus_a2: argmin,
        min_a3_minus_a2: min32,
        boundary_minus,
        boundary_plus,
        boundary_plus_expected: expected,
        max_second_difference: max_dd,
        claim_a1_ge_a2: min12 >= -1e-12,
        claim_a3_gt_a2: min32 > 0.0,
        boundary_ok: boundary_minus.abs() <= 1e-12 && (boundary_plus - expected).abs() <= 1e-12,
        concave: max_dd <= 1e-12,
    }
}

// ---------------------------------------------------------------------------
// dJ/db < 0 on the line a = 1/2

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaJbReport {
    pub params: TorusParams,
    /// `(4b^2 - 1) / (8 b^{3/2})`, the half-height of the vertical edges.
    pub z1: f64,
    /// Minimum over the open grid on `(0, z1)` of `rhs(z) - lhs(z)`.
    pub min_margin: f64,
    /// `|rhs(z1) - lhs(z1)|`.
    pub endpoint_gap: f64,
    /// `2 int_0^{x1} f(x^2 + y2^2) d_b y2 dx`.
    pub k2_direct: f64,
    /// The same quantity after substituting onto the vertical edge.
    pub k2_reduced: f64,
    pub k2_residual: f64,
    /// `dJ/db` from the reduced form `b^{-3/2} int_0^{z1} [f(rhs) - f(lhs)]`.
    pub dj_db_reduced: f64,
    pub dj_db_closed: f64,
    pub inequality_holds: bool,
}

/// Left and right sides of the pointwise comparison of `f`-arguments.
pub fn jb_sides(b: f64, z: f64) -> (f64, f64) {
    let q = 1.0 + 4.0 * b * b;
    let lhs = 0.25 / b + z * z;
    let rhs = q / (16.0 * b) + q / (4.0 * b * b - 1.0).powi(2) * z * z;
    (lhs, rhs)
}

pub fn lemma_jb_inequality(
    p: TorusParams,
    kernel: &Kernel,
    z_samples: usize,
    cfg: &QuadratureConfig,
) -> Result<LemmaJbReport> {
    if p.a() != 0.5 {
        return Err(Error::DomainError(format!("the a = 1/2 lemma needs a = 1/2, got {}", p.a())));
    }
    let b = p.b();
    let z1 = (4.0 * b * b - 1.0) / (8.0 * b.powf(1.5));
    let n = z_samples.max(1);
    let min_margin = (1..=n)
        .map(|i| {
            let z = z1 * i as f64 / (n + 1) as f64;
            let (l, r) = jb_sides(b, z);
            r - l
        })
        .fold(f64::INFINITY, f64::min);
    let (l1, r1) = jb_sides(b, z1);

    let e = edge_functions(p);
    let jumps = kernel.jumps();
    let k2_direct = 2.0
        * edge_integral(kernel, 0.0, e.x1, y2_line(&e), |x| e.y2(x), |x| e.dy2_db(x), cfg)?.require_converged()?;
    let q = 1.0 + 4.0 * b * b;
    let rhs_breaks = shifted_square_breaks(q / (4.0 * b * b - 1.0).powi(2), (4.0 * b * b - 1.0).powi(2) / (16.0 * b), 1.0, 0.0, jumps);
    let lhs_breaks = shifted_square_breaks(1.0, 0.25 / b, 1.0, 0.0, jumps);
    let pre = 0.5 / b.powf(1.5);
    let rhs_int = integrate_1d_split(0.0, z1, &rhs_breaks, |z| kernel.eval(jb_sides(b, z).1), cfg)?.require_converged()?;
    let lhs_int = integrate_1d_split(0.0, z1, &lhs_breaks, |z| kernel.eval(jb_sides(b, z).0), cfg)?.require_converged()?;
    let k2_reduced = pre * rhs_int;
    let dj_db_reduced = 2.0 * pre * (rhs_int - lhs_int);
    Ok(LemmaJbReport {
        params: p,
        z1,
        min_margin,
        endpoint_gap: (r1 - l1).abs(),
        k2_direct,
        k2_reduced,
        k2_residual: (k2_direct - k2_reduced).abs(),
        dj_db_reduced,
        dj_db_closed: dj_db(p, kernel, cfg)?,
        inequality_holds: min_margin >= -1e-12,
    })
}

// ---------------------------------------------------------------------------
// Rearrangement path

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathPoint {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "J")]
    pub j: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathResult {
    pub kernel: String,
    pub start: TorusParams,
    pub waypoint: TorusParams,
    pub end: TorusParams,
    pub step: f64,
    /// Index in `path` of the waypoint at `a = 1/2`.
    pub waypoint_index: usize,
    pub path: Vec<PathPoint>,
    pub strictly_increasing: bool,
    /// Smallest increment `J_{i+1} - J_i` (infinite for one-point paths).
    pub min_increment: f64,
}

/// Raises `a` to 1/2 at fixed `b`, then lowers `b` to `sqrt(3)/2`, recording
/// `J` at uniform steps no longer than `step`.
pub fn optimize_path(start: TorusParams, kernel: &Kernel, cfg: &QuadratureConfig, step: f64) -> Result<PathResult> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::BadParameter(format!("path step must be positive, got {step}")));
    }
    if kernel.monotonicity() != Monotonicity::StrictlyDecreasing {
        return Err(Error::BadParameter(format!(
            "optimize_path needs a strictly decreasing profile, got {}",
            kernel.label()
        )));
    }
    let (a0, b0) = (start.a(), start.b());
    let n1 = ((0.5 - a0) / step).ceil() as usize;
    let mut nodes: Vec<TorusParams> = vec![start];
    for i in 1..=n1 {
        let a = if i == n1 { 0.5 } else { a0 + (0.5 - a0) * i as f64 / n1 as f64 };
        nodes.push(TorusParams::new(a, b0)?);
    }
    let waypoint_index = nodes.len() - 1;
    let b_end = SQRT3_2.max(TorusParams::lower_b(0.5));
    let n2 = ((b0 - b_end) / step).ceil().max(0.0) as usize;
    for i in 1..=n2 {
        let b = if i == n2 { b_end } else { b0 - (b0 - b_end) * i as f64 / n2 as f64 };
        nodes.push(TorusParams::new(0.5, b)?);
    }
    let values: Vec<f64> = nodes.par_iter().map(|&q| j(q, kernel, cfg)).collect::<Result<_>>()?;
    let mut min_increment = f64::INFINITY;
    for (i, w) in values.windows(2).enumerate() {
        let d = w[1] - w[0];
        min_increment = min_increment.min(d);
        if d < -PATH_SLACK {
            return Err(Error::MonotonicityViolated { step: i + 1, from: w[0], to: w[1] });
        }
    }
    let path: Vec<PathPoint> = nodes
        .iter()
        .zip(&values)
        .map(|(q, &jv)| PathPoint { a: q.a(), b: q.b(), j: jv })
        .collect();
    Ok(PathResult {
        kernel: kernel.label().to_string(),
        start,
        waypoint: nodes[waypoint_index],
        end: *nodes.last().expect("non-empty path"),
        step,
        waypoint_index,
        strictly_increasing: min_increment > 0.0,
        min_increment,
        path,
    })
}

// ---------------------------------------------------------------------------
// Grid sweep

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepNode {
    pub i: usize,
    pub j: usize,
    pub a: f64,
    pub b: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub kernel: String,
    pub na: usize,
    pub nb: usize,
    pub b_max: f64,
    /// Row-major in `(i, j)`: `a` index outer, `b` index inner.
    pub nodes: Vec<SweepNode>,
    pub argmax: SweepNode,
}

impl SweepResult {
    /// `a,b,J` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b,J\n");
        for n in &self.nodes {
            s.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", n.a, n.b, n.value));
        }
        s
    }
}

/// `J` on `na` columns `a_i = i / (2 (na - 1))`, each sampled at `nb`
/// values of `b` from the lower boundary `sqrt(1 - a_i^2)` to `b_max`.
pub fn grid_sweep(kernel: &Kernel, cfg: &QuadratureConfig, na: usize, nb: usize, b_max: f64) -> Result<SweepResult> {
    if na < 2 || nb < 2 {
        return Err(Error::BadParameter(format!("sweep needs na, nb >= 2, got {na}, {nb}")));
    }
    if !(b_max > 1.0 && b_max.is_finite()) {
        return Err(Error::BadParameter(format!("b_max must exceed 1, got {b_max}")));
    }
    let grid: Vec<(usize, usize, TorusParams)> = (0..na)
        .flat_map(|i| {
            let a = 0.5 * i as f64 / (na - 1) as f64;
            let lo = TorusParams::lower_b(a);
            (0..nb).map(move |jb| (i, jb, a, lo + (b_max - lo) * jb as f64 / (nb - 1) as f64))
        })
        .map(|(i, jb, a, b)| Ok((i, jb, TorusParams::new(a, b)?)))
        .collect::<Result<_>>()?;
    let nodes: Vec<SweepNode> = grid
        .par_iter()
        .map(|&(i, jb, p)| {
            Ok(SweepNode {
                i,
                j: jb,
                a: p.a(),
                b: p.b(),
                value: j(p, kernel, cfg)?,
            })
        })
        .collect::<Result<_>>()?;
    let argmax = *nodes
        .iter()
        .reduce(|best, n| if n.value > best.value { n } else { best })
        .expect("non-empty grid");
    Ok(SweepResult {
        kernel: kernel.label().to_string(),
        na,
        nb,
        b_max,
        nodes,
        argmax,
    })
}
