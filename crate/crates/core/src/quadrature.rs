//! Deterministic adaptive quadrature on intervals and convex polygons.
//!
//! Both integrators keep a max-heap of regions keyed by local error estimate
//! and split the worst region until the summed estimate drops below
//! `max(abs_tol, rel_tol * |value|)`. Splitting order depends only on the
//! input, so results are bit-reproducible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of times a single region may be split.
    pub max_depth: u32,
    /// Polynomial degree integrated exactly by the triangle rule.
    pub rule_order: u32,
    /// Budget on the number of live regions per integral.
    pub max_regions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_depth: 30,
            rule_order: 7,
            max_regions: 200_000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::BadParameter("tolerances must be positive".into()));
        }
        if self.max_depth < 1 || self.max_regions < 1 {
            return Err(Error::BadParameter("max_depth and max_regions must be >= 1".into()));
        }
        if !(1..=39).contains(&self.rule_order) {
            return Err(Error::BadParameter(format!(
                "rule_order {} not in 1..=39",
                self.rule_order
            )));
        }
        Ok(())
    }

    /// Target absolute error for an integral of magnitude `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// False when the depth or region budget ran out before the tolerance
    /// was met; `value` is then the best available estimate.
    pub converged: bool,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error: 0.0,
            converged: true,
        }
    }

    pub fn require_converged(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::DepthExceeded {
                value: self.value,
                error: self.error,
            })
        }
    }

    /// Sum of two estimates; errors add, convergence requires both.
    pub fn combine(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error: self.error + o.error,
            converged: self.converged && o.converged,
        }
    }

    pub fn scale(self, s: f64) -> Estimate {
        Estimate {
            value: self.value * s,
            error: self.error * s.abs(),
            converged: self.converged,
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    if n == 1 {
        return vec![(0.0, 2.0)];
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

// Gauss-Kronrod 7/15 pair (abscissae of the 15-point Kronrod rule on [0, 1);
// odd indices are shared with the 7-point Gauss rule).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Heap entry ordered by error estimate, ties broken by insertion sequence.
struct Region<T> {
    err: f64,
    seq: u64,
    value: f64,
    depth: u32,
    shape: T,
}

impl<T> PartialEq for Region<T> {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl<T> Eq for Region<T> {}
impl<T> PartialOrd for Region<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Region<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err).then_with(|| o.seq.cmp(&self.seq))
    }
}

/// Shared driver: `eval` returns `(value, error)` for a region, `split`
/// subdivides it.
fn adaptive<T, E, S>(root: Vec<T>, cfg: &QuadratureConfig, mut eval: E, split: S) -> Result<Estimate>
where
    E: FnMut(&T) -> Result<(f64, f64)>,
    S: Fn(&T) -> Vec<T>,
{
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Region<T>> = Vec::new();
    let mut seq = 0u64;
    let (mut total, mut total_err) = (0.0, 0.0);
    for shape in root {
        let (value, err) = eval(&shape)?;
        total += value;
        total_err += err;
        heap.push(Region { err, seq, value, depth: 0, shape });
        seq += 1;
    }
    let mut budget_hit = false;
    let mut frozen_err = 0.0;
    while total_err > cfg.target(total) {
        // Once unsplittable regions alone blow the budget, only refine the
        // rest until it is comfortably below target.
        if frozen_err > 0.0 && total_err - frozen_err <= 0.5 * cfg.target(total) {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= cfg.max_depth {
            frozen_err += worst.err;
            frozen.push(worst);
            continue;
        }
        if heap.len() + frozen.len() >= cfg.max_regions {
            heap.push(worst);
            budget_hit = true;
            break;
        }
        total -= worst.value;
        total_err -= worst.err;
        for shape in split(&worst.shape) {
            let (value, err) = eval(&shape)?;
            total += value;
            total_err += err;
            heap.push(Region {
                err,
                seq,
                value,
                depth: worst.depth + 1,
                shape,
            });
            seq += 1;
        }
    }
    // Re-sum in a fixed order to shed the running-sum drift.
    let mut leaves: Vec<Region<T>> = heap.into_vec();
    leaves.extend(frozen);
    leaves.sort_by_key(|r| r.seq);
    let value: f64 = leaves.iter().map(|r| r.value).sum();
    let error: f64 = leaves.iter().map(|r| r.err).sum();
    let converged = !budget_hit && error <= cfg.target(value);
    Ok(Estimate { value, error, converged })
}

/// Adaptive Gauss-Kronrod (7/15) integration of `g` over `[lo, hi]`.
pub fn integrate_1d<G>(lo: f64, hi: f64, g: G, cfg: &QuadratureConfig) -> Result<Estimate>
where
    G: Fn(f64) -> f64,
{
    if !(lo <= hi) {
        return Err(Error::BadParameter(format!("integrate_1d needs lo <= hi, got [{lo}, {hi}]")));
    }
    if lo == hi {
        return Ok(Estimate::exact(0.0));
    }
    let eval = |&(a, b): &(f64, f64)| -> Result<(f64, f64)> {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let eval_at = |x: f64| -> Result<f64> {
            let y = g(x);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::NonFiniteIntegrand { at: Point::new(x, 0.0) })
            }
        };
        let fc = eval_at(c)?;
        let mut kronrod = WGK[7] * fc;
        let mut gauss = WG[3] * fc;
        for j in 0..7 {
            let dx = h * XGK[j];
            let s = eval_at(c - dx)? + eval_at(c + dx)?;
            kronrod += WGK[j] * s;
            if j % 2 == 1 {
                gauss += WG[j / 2] * s;
            }
        }
        Ok((kronrod * h, ((kronrod - gauss) * h).abs()))
    };
    let split = |&(a, b): &(f64, f64)| {
        let m = 0.5 * (a + b);
        vec![(a, m), (m, b)]
    };
    adaptive(vec![(lo, hi)], cfg, eval, split)
}

/// [`integrate_1d`] with the interval cut at every break point strictly
/// inside `(lo, hi)`.
pub fn integrate_1d_split<G>(lo: f64, hi: f64, breaks: &[f64], g: G, cfg: &QuadratureConfig) -> Result<Estimate>
where
    G: Fn(f64) -> f64,
{
    if !(lo <= hi) {
        return Err(Error::BadParameter(format!("integrate_1d needs lo <= hi, got [{lo}, {hi}]")));
    }
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&x| x > lo && x < hi).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut est = Estimate::exact(0.0);
    let mut left = lo;
    for x in cuts.into_iter().chain(std::iter::once(hi)) {
        est = est.combine(integrate_1d(left, x, &g, cfg)?);
        left = x;
    }
    Ok(est)
}

/// Integrates `g` over `poly` in polar coordinates about `center`, which
/// must lie strictly inside. The angular variable is cut at vertex
/// directions and wherever an edge crosses a circle with radius in `radii`;
/// the radial variable is cut at each of `radii`. With `radii` set to the
/// jump radii of a radial integrand, every 1-D piece is smooth.
pub fn integrate_polar<G>(
    poly: &ConvexPolygon,
    center: Point,
    radii: &[f64],
    g: G,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    G: Fn(Point) -> f64,
{
    use std::f64::consts::TAU;

    if !poly.contains(center, 0.0) {
        return Err(Error::BadParameter("polar centre must lie inside the polygon".into()));
    }
    let mut total = Estimate::exact(0.0);
    for (p, q) in poly.edges() {
        let (p, q) = (p - center, q - center);
        let e = q - p;
        let pe = p.cross(e);
        let d = pe / e.norm();
        if !(d > 0.0) {
            return Err(Error::BadParameter("polar centre lies on the polygon boundary".into()));
        }
        let tp = p.y.atan2(p.x);
        let mut tq = q.y.atan2(q.x);
        while tq <= tp {
            tq += TAU;
        }
        let foot = p + e * (-p.dot(e) / e.norm_sq());
        let phi = foot.y.atan2(foot.x);
        let mut breaks = Vec::new();
        for &r in radii {
            if r > d {
                let da = (d / r).acos();
                breaks.extend([phi - da, phi + da].map(|t| tp + (t - tp).rem_euclid(TAU)));
            }
        }
        let radial = |theta: f64| {
            let u = Point::from_polar(1.0, theta);
            let rho = pe / u.cross(e);
            integrate_1d_split(0.0, rho, radii, |r| g(center + u * r) * r, cfg)
        };
        total = total.combine(integrate_nested(tp, tq, &breaks, radial, cfg)?);
    }
    Ok(total)
}

/// Outer 1-D integral of an inner integral. Inner failures abort the whole
/// computation; inner non-convergence marks the result unconverged.
pub fn integrate_nested<I>(lo: f64, hi: f64, breaks: &[f64], inner: I, cfg: &QuadratureConfig) -> Result<Estimate>
where
    I: Fn(f64) -> Result<Estimate>,
{
    use std::cell::{Cell, RefCell};

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_ok = Cell::new(true);
    let outer = integrate_1d_split(
        lo,
        hi,
        breaks,
        |x| match inner(x) {
            Ok(est) => {
                inner_ok.set(inner_ok.get() && est.converged);
                est.value
            }
            Err(err) => {
                failure.borrow_mut().get_or_insert(err);
                f64::NAN
            }
        },
        cfg,
    );
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let mut est = outer?;
    est.converged &= inner_ok.get();
    Ok(est)
}

/// Conical-product rule on the reference triangle, stored as
/// `(lambda_a, lambda_b, lambda_c, weight)` with weights summing to one.
#[derive(Debug, Clone)]
pub struct TriangleRule {
    nodes: Vec<[f64; 4]>,
}

impl TriangleRule {
    /// Rule exact for polynomials of total degree `degree`.
    pub fn exact_to(degree: u32) -> Self {
        // Collapsed map P = A + s(B - A) + s t (C - B) has Jacobian 2|T| s, so a
        // degree-d integrand needs Gauss exactness d + 1 in s.
        let n = ((degree as usize + 2) + 1) / 2;
        let gl = gauss_legendre(n.max(1));
        let mut nodes = Vec::with_capacity(gl.len() * gl.len());
        for &(xs, ws) in &gl {
            let s = 0.5 * (xs + 1.0);
            for &(xt, wt) in &gl {
                let t = 0.5 * (xt + 1.0);
                // (ws/2)(wt/2) * s * 2 integrates to the unit-area normalization
                let w = 0.5 * ws * wt * s;
                nodes.push([1.0 - s, s - s * t, s * t, w]);
            }
        }
        Self { nodes }
    }

    fn apply<G: Fn(Point) -> f64>(&self, tri: &[Point; 3], g: &G) -> Result<f64> {
        let mut acc = 0.0;
        for &[la, lb, lc, w] in &self.nodes {
            let p = tri[0] * la + tri[1] * lb + tri[2] * lc;
            let y = g(p);
            if !y.is_finite() {
                return Err(Error::NonFiniteIntegrand { at: p });
            }
            acc += w * y;
        }
        Ok(acc)
    }
}

fn tri_area(t: &[Point; 3]) -> f64 {
    0.5 * (t[1] - t[0]).cross(t[2] - t[0]).abs()
}

/// Integrates `g` over a set of triangles with 4-way adaptive refinement.
pub fn integrate_triangles<G>(tris: Vec<[Point; 3]>, g: G, cfg: &QuadratureConfig) -> Result<Estimate>
where
    G: Fn(Point) -> f64,
{
    cfg.validate()?;
    let hi = TriangleRule::exact_to(cfg.rule_order);
    let lo = TriangleRule::exact_to(cfg.rule_order.saturating_sub(2).max(1));
    let eval = |t: &[Point; 3]| -> Result<(f64, f64)> {
        let area = tri_area(t);
        let qh = hi.apply(t, &g)? * area;
        let ql = lo.apply(t, &g)? * area;
        Ok((qh, (qh - ql).abs()))
    };
    let split = |t: &[Point; 3]| {
        let m01 = (t[0] + t[1]) * 0.5;
        let m12 = (t[1] + t[2]) * 0.5;
        let m20 = (t[2] + t[0]) * 0.5;
        vec![
            [t[0], m01, m20],
            [m01, t[1], m12],
            [m20, m12, t[2]],
            [m12, m20, m01],
        ]
    };
    adaptive(tris, cfg, eval, split)
}

/// Fan-triangulates `poly` from its centroid and integrates `g`.
pub fn integrate_polygon<G>(poly: &ConvexPolygon, g: G, cfg: &QuadratureConfig) -> Result<Estimate>
where
    G: Fn(Point) -> f64,
{
    integrate_star(poly, poly.centroid(), g, cfg)
}

/// Fan-triangulates `poly` from `apex` (which must lie in the closed polygon)
/// and integrates `g`. Useful when `g` is non-smooth at `apex`.
pub fn integrate_star<G>(poly: &ConvexPolygon, apex: Point, g: G, cfg: &QuadratureConfig) -> Result<Estimate>
where
    G: Fn(Point) -> f64,
{
    let scale = poly.diameter().max(f64::MIN_POSITIVE);
    let tris: Vec<[Point; 3]> = poly
        .edges()
        .filter(|(p, q)| (*p - apex).cross(*q - apex) > 1e-14 * scale * scale)
        .map(|(p, q)| [apex, p, q])
        .collect();
    integrate_triangles(tris, g, cfg)
}

/// Counter-clockwise convex polygon with at least three vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Validates orientation and convexity. Consecutive vertices closer than
    /// `1e-12` (relative to the diameter) are merged first.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite vertex".into()));
        }
        let vertices = dedup_cyclic(vertices, 1e-12);
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!("{} distinct vertices", vertices.len())));
        }
        let poly = Self { vertices };
        let area = poly.signed_area();
        let scale = poly.diameter();
        if !(area > 1e-14 * scale * scale) {
            return Err(Error::InvalidPolygon(format!(
                "signed area {area} (vertices must be counter-clockwise)"
            )));
        }
        let n = poly.vertices.len();
        for i in 0..n {
            let a = poly.vertices[i];
            let b = poly.vertices[(i + 1) % n];
            let c = poly.vertices[(i + 2) % n];
            if (b - a).cross(c - b) < -1e-12 * scale * scale {
                return Err(Error::InvalidPolygon(format!("reflex vertex at index {}", (i + 1) % n)));
            }
        }
        Ok(poly)
    }

    /// Convex hull (Andrew's monotone chain) of a point set.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::InvalidPolygon("hull needs three points".into()));
        }
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 1]) <= 0.0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 1]) <= 0.0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    /// Regular `n`-gon of the given area centred at the origin, first vertex
    /// at angle `rotation`.
    pub fn regular(n: usize, area: f64, rotation: f64) -> Result<Self> {
        if n < 3 || !(area > 0.0) {
            return Err(Error::BadParameter(format!("regular polygon needs n >= 3, area > 0 (n={n}, area={area})")));
        }
        let r = regular_circumradius(n, area);
        let step = std::f64::consts::TAU / n as f64;
        Self::new((0..n).map(|i| Point::from_polar(r, rotation + step * i as f64)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * self.edges().map(|(p, q)| p.cross(q)).sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn centroid(&self) -> Point {
        let a = self.signed_area();
        let mut c = Point::ORIGIN;
        for (p, q) in self.edges() {
            c += (p + q) * p.cross(q);
        }
        c * (1.0 / (6.0 * a))
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                d = d.max(p.dist(*q));
            }
        }
        d
    }

    /// Closed containment with absolute slack `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.edges().all(|(a, b)| {
            let e = b - a;
            e.cross(p - a) >= -tol * e.norm()
        })
    }

    /// Closest point of the closed polygon to `p`.
    pub fn project(&self, p: Point) -> Point {
        if self.contains(p, 0.0) {
            return p;
        }
        let mut best = self.vertices[0];
        let mut best_d = f64::INFINITY;
        for (a, b) in self.edges() {
            let e = b - a;
            let t = ((p - a).dot(e) / e.norm_sq()).clamp(0.0, 1.0);
            let q = a + e * t;
            let d = q.dist(p);
            if d < best_d {
                best_d = d;
                best = q;
            }
        }
        best
    }

    pub fn translate(&self, d: Point) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p + d).collect(),
        }
    }

    /// Intersection with the half-plane `{x : normal . x <= offset}`;
    /// `None` when the result has no area.
    pub fn clip_halfplane(&self, normal: Point, offset: f64) -> Option<Self> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n + 2);
        let side = |p: Point| normal.dot(p) - offset;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let (sp, sq) = (side(p), side(q));
            if sp <= 0.0 {
                out.push(p);
            }
            if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
                let t = sp / (sp - sq);
                out.push(p + (q - p) * t);
            }
        }
        let scale = self.diameter();
        let out = remove_collinear(dedup_cyclic(out, 1e-12), 1e-12 * scale * scale);
        Self::new(out).ok()
    }
}

/// Circumradius of the regular `n`-gon with the given area.
pub fn regular_circumradius(n: usize, area: f64) -> f64 {
    let nf = n as f64;
    (2.0 * area / (nf * (std::f64::consts::TAU / nf).sin())).sqrt()
}

/// Drops consecutive (cyclic) vertices within `rel_tol * diameter` of each other.
pub(crate) fn dedup_cyclic(mut v: Vec<Point>, rel_tol: f64) -> Vec<Point> {
    if v.is_empty() {
        return v;
    }
    let mut scale = 0.0f64;
    for p in &v {
        scale = scale.max(p.x.abs()).max(p.y.abs());
    }
    let tol = rel_tol * scale.max(f64::MIN_POSITIVE);
    let mut out: Vec<Point> = Vec::with_capacity(v.len());
    for p in v.drain(..) {
        if out.last().map_or(true, |q| q.dist(p) > tol) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= tol {
        out.pop();
    }
    out
}

/// Drops vertices whose neighbours make a straight angle.
pub(crate) fn remove_collinear(v: Vec<Point>, tol: f64) -> Vec<Point> {
    let mut v = v;
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let drop = (0..n).find(|&i| {
            let a = v[(i + n - 1) % n];
            let b = v[i];
            let c = v[(i + 1) % n];
            (b - a).cross(c - b).abs() <= tol && (b - a).dot(c - b) >= 0.0
        });
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}
