//! Fejes Tóth moment inequalities: circular segments and their moments,
//! the segment rearrangement bound, clipped Voronoi partitions, and the
//! regular-polygon upper bounds.
//!
//! Profiles in this module act on *distance*, not squared distance; see
//! [`DistanceProfile`].

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::point::Point;
use crate::quadrature::{
    dedup_cyclic, integrate_1d_split, integrate_nested, integrate_polar, integrate_star, ConvexPolygon,
    QuadratureConfig,
};

/// Bisection tolerance on the chord offset, relative to the radius.
pub const SEGMENT_TOL: f64 = 1e-13;
/// Sites closer than this are duplicates.
pub const MIN_SITE_SEPARATION: f64 = 1e-9;
/// Cell vertices closer than this are counted once.
pub const VERTEX_MERGE_TOL: f64 = 1e-9;
/// Slack on every inequality checked here.
pub const INEQUALITY_SLACK: f64 = 1e-9;

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A radial profile `f(d)` of the distance `d`.
#[derive(Clone)]
pub struct DistanceProfile {
    f: Profile,
    /// Distances where `f` or its derivative jumps.
    breaks: Vec<f64>,
    label: String,
}

impl fmt::Debug for DistanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistanceProfile")
            .field("label", &self.label)
            .field("breaks", &self.breaks)
            .finish()
    }
}

impl DistanceProfile {
    pub fn new<F>(label: impl Into<String>, breaks: Vec<f64>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut breaks: Vec<f64> = breaks.into_iter().filter(|d| d.is_finite() && *d > 0.0).collect();
        breaks.sort_by(f64::total_cmp);
        Self {
            f: Arc::new(f),
            breaks,
            label: label.into(),
        }
    }

    pub fn constant() -> Self {
        Self::new("1", vec![], |_| 1.0)
    }

    /// `e^{-d}`.
    pub fn exponential() -> Self {
        Self::new("exp(-d)", vec![], |d: f64| (-d).exp())
    }

    /// `max(1 - d, 0)`.
    pub fn tent() -> Self {
        Self::new("max(1-d,0)", vec![1.0], |d: f64| (1.0 - d).max(0.0))
    }

    /// Indicator of `d <= r`.
    pub fn ball(r: f64) -> Self {
        Self::new(format!("1[d<={r}]"), vec![r], move |d| if d <= r { 1.0 } else { 0.0 })
    }

    /// `f(d) = k(d^2)` for a squared-distance kernel `k`.
    pub fn from_kernel(kernel: &Kernel) -> Self {
        let k = kernel.clone();
        let breaks = kernel.jumps().iter().map(|t| t.sqrt()).collect();
        Self::new(kernel.label().to_string(), breaks, move |d| k.eval(d * d))
    }

    #[inline]
    pub fn eval(&self, d: f64) -> f64 {
        (self.f)(d)
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

// ---------------------------------------------------------------------------
// Discs and segments

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Disc {
    pub r: f64,
}

impl Disc {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::BadParameter(format!("disc radius must be positive, got {r}")));
        }
        Ok(Self { r })
    }

    pub fn area(&self) -> f64 {
        PI * self.r * self.r
    }
}

/// The part `{y >= h}` of a disc centred at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircularSegment {
    pub disc: Disc,
    pub h: f64,
    pub s: f64,
}

pub fn segment_area(r: f64, h: f64) -> f64 {
    let h = h.clamp(-r, r);
    r * r * (h / r).acos() - h * (r * r - h * h).max(0.0).sqrt()
}

impl CircularSegment {
    pub fn from_offset(disc: Disc, h: f64) -> Result<Self> {
        if !(h.abs() <= disc.r) {
            return Err(Error::BadParameter(format!("chord offset {h} outside [-{0}, {0}]", disc.r)));
        }
        Ok(Self {
            disc,
            h,
            s: segment_area(disc.r, h),
        })
    }

    pub fn chord_half_length(&self) -> f64 {
        (self.disc.r * self.disc.r - self.h * self.h).max(0.0).sqrt()
    }
}

/// The segment of area `s`, found by bisection on the chord offset.
pub fn segment_from_area(d: Disc, s: f64) -> Result<CircularSegment> {
    let full = d.area();
    if !(0.0..=full).contains(&s) {
        return Err(Error::AreaOutOfRange { area: s, max: full });
    }
    let h = if s == 0.0 {
        d.r
    } else if s == full {
        -d.r
    } else if s == 0.5 * full {
        0.0
    } else {
        let (mut lo, mut hi) = (-d.r, d.r);
        while hi - lo > SEGMENT_TOL * d.r {
            let mid = 0.5 * (lo + hi);
            if segment_area(d.r, mid) > s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    Ok(CircularSegment { disc: d, h, s })
}

/// `int_{S} f(|x|) dx` over a segment with chord offset `h`.
///
/// Circles of radius `rho > |h|` meet the segment in an arc of angle
/// `2 acos(h / rho)`; with `rho^2 = h^2 + u^2` this becomes
/// `2 atan2(u, h) u du`, which is smooth in `u`.
pub fn segment_moment(seg: &CircularSegment, f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<f64> {
    let (r, h) = (seg.disc.r, seg.h);
    let umax = (r * r - h * h).max(0.0).sqrt();
    let ubreaks: Vec<f64> = f.breaks().iter().filter(|&&d| d > h.abs()).map(|&d| (d * d - h * h).sqrt()).collect();
    let arc = integrate_1d_split(
        0.0,
        umax,
        &ubreaks,
        |u| f.eval(h.hypot(u)) * 2.0 * u.atan2(h) * u,
        cfg,
    )?;
    let mut total = arc;
    if h < 0.0 {
        let core = integrate_1d_split(0.0, -h, f.breaks(), |rho| f.eval(rho) * rho, cfg)?;
        total = total.combine(core.scale(2.0 * PI));
    }
    total.require_converged()
}

/// `omega(s)`: moment of the segment of area `s`.
pub fn omega(d: Disc, s: f64, f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<f64> {
    segment_moment(&segment_from_area(d, s)?, f, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub r: f64,
    pub profile: String,
    pub samples: usize,
    pub min_second_difference: f64,
    /// The `s` triple with the most negative second difference, if any fell
    /// below `-INEQUALITY_SLACK`.
    pub witness: Option<[f64; 3]>,
    pub monotone: bool,
    pub ok: bool,
}

/// Second differences of `omega` on `s_i = i |K| / (2n)`, `i < n`.
pub fn omega_convexity_check(d: Disc, f: &DistanceProfile, n_samples: usize, cfg: &QuadratureConfig) -> Result<ConvexityReport> {
    let n = n_samples.max(3);
    let ss: Vec<f64> = (0..n).map(|i| 0.5 * d.area() * i as f64 / n as f64).collect();
    let ws: Vec<f64> = ss.par_iter().map(|&s| omega(d, s, f, cfg)).collect::<Result<_>>()?;
    let mut min_dd = f64::INFINITY;
    let mut worst = [0.0; 3];
    for i in 1..n - 1 {
        let dd = ws[i - 1] - 2.0 * ws[i] + ws[i + 1];
        if dd < min_dd {
            min_dd = dd;
            worst = [ss[i - 1], ss[i], ss[i + 1]];
        }
    }
    let ok = min_dd >= -INEQUALITY_SLACK;
    Ok(ConvexityReport {
        r: d.r,
        profile: f.label().to_string(),
        samples: n,
        min_second_difference: min_dd,
        witness: (!ok).then_some(worst),
        monotone: ws.windows(2).all(|w| w[1] >= w[0] - INEQUALITY_SLACK),
        ok,
    })
}

// ---------------------------------------------------------------------------
// Segment rearrangement

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma2Report {
    /// `|R|`.
    pub area: f64,
    /// `int_R f(|x|) dx`.
    pub lhs: f64,
    /// `omega(|R|)`.
    pub rhs: f64,
    pub margin: f64,
    pub ok: bool,
}

/// `R` is bounded by the radial segments from `a_pt`, `b_pt` out to the
/// circle, the arc between them, and the chord `a_pt b_pt`: the sector
/// spanned by the two points minus the triangle they form with the origin.
/// Checks `omega(|R|) <= int_R f`.
pub fn lemma2_check(d: Disc, a_pt: Point, b_pt: Point, f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<Lemma2Report> {
    let r = d.r;
    for q in [a_pt, b_pt] {
        if !(q.norm() <= r * (1.0 + 1e-12)) {
            return Err(Error::BadParameter(format!("point ({}, {}) outside the disc", q.x, q.y)));
        }
    }
    let cross = a_pt.cross(b_pt);
    if cross.abs() <= 1e-12 * r * r || a_pt.dot(b_pt) <= -a_pt.norm() * b_pt.norm() {
        return Err(Error::DegenerateRegion("the two points are collinear with the centre".into()));
    }
    let (p, q) = if cross > 0.0 { (a_pt, b_pt) } else { (b_pt, a_pt) };
    let t0 = p.y.atan2(p.x);
    let mut t1 = q.y.atan2(q.x);
    while t1 <= t0 {
        t1 += 2.0 * PI;
    }
    let area = 0.5 * r * r * (t1 - t0) - 0.5 * p.cross(q);
    let e = q - p;
    let pe = p.cross(e);
    // Angles where the chord crosses a break circle.
    let mut tbreaks = Vec::new();
    let foot = p + e * (-p.dot(e) / e.norm_sq());
    let dist = foot.norm();
    let phi = foot.y.atan2(foot.x);
    for &rb in f.breaks() {
        if rb > dist {
            let da = (dist / rb).acos();
            tbreaks.extend([phi - da, phi + da].map(|t| t0 + (t - t0).rem_euclid(2.0 * PI)));
        }
    }
    let lhs = integrate_nested(
        t0,
        t1,
        &tbreaks,
        |theta| {
            let u = Point::from_polar(1.0, theta);
            let rho = (pe / u.cross(e)).min(r);
            integrate_1d_split(rho, r, f.breaks(), |s| f.eval(s) * s, cfg)
        },
        cfg,
    )?
    .require_converged()?;
    let rhs = omega(d, area.clamp(0.0, d.area()), f, cfg)?;
    Ok(Lemma2Report {
        area,
        lhs,
        rhs,
        margin: lhs - rhs,
        ok: rhs <= lhs + INEQUALITY_SLACK,
    })
}

// ---------------------------------------------------------------------------
// Clipped Voronoi partitions

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClippedVoronoi {
    pub domain: ConvexPolygon,
    /// Sites after projection onto the domain.
    pub sites: Vec<Point>,
    pub cells: Vec<ConvexPolygon>,
    /// Vertex count of each cell after merging near-coincident vertices.
    pub vertex_counts: Vec<usize>,
}

impl ClippedVoronoi {
    /// Index of the site nearest to `x` (lowest index on ties).
    pub fn nearest_site(&self, x: Point) -> usize {
        let mut best = 0;
        for (i, s) in self.sites.iter().enumerate() {
            if s.dist(x) < self.sites[best].dist(x) {
                best = i;
            }
        }
        best
    }

    pub fn total_area(&self) -> f64 {
        self.cells.iter().map(ConvexPolygon::area).sum()
    }
}

pub fn clipped_voronoi(c: &ConvexPolygon, sites: &[Point]) -> Result<ClippedVoronoi> {
    if sites.is_empty() {
        return Err(Error::BadParameter("at least one site is required".into()));
    }
    let sites: Vec<Point> = sites.iter().map(|&s| c.project(s)).collect();
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            if sites[i].dist(sites[j]) <= MIN_SITE_SEPARATION {
                return Err(Error::DuplicateSites { i, j });
            }
        }
    }
    let mut cells = Vec::with_capacity(sites.len());
    for (i, &pi) in sites.iter().enumerate() {
        let mut cell = c.clone();
        for (j, &pj) in sites.iter().enumerate() {
            if i == j {
                continue;
            }
            let normal = pj - pi;
            let offset = 0.5 * (pj.norm_sq() - pi.norm_sq());
            cell = cell
                .clip_halfplane(normal, offset)
                .ok_or_else(|| Error::DegenerateRegion(format!("cell {i} vanished against site {j}")))?;
        }
        cells.push(cell);
    }
    let vertex_counts = cells
        .iter()
        .map(|cell| merged_vertex_count(cell.vertices()))
        .collect();
    Ok(ClippedVoronoi {
        domain: c.clone(),
        sites,
        cells,
        vertex_counts,
    })
}

fn merged_vertex_count(v: &[Point]) -> usize {
    let mut out: Vec<Point> = Vec::with_capacity(v.len());
    for &p in v {
        if out.last().map_or(true, |q| q.dist(p) > VERTEX_MERGE_TOL) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= VERTEX_MERGE_TOL {
        out.pop();
    }
    out.len()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCountReport {
    pub n: usize,
    /// `N = sum_i P_i`.
    pub total: usize,
    pub bound: usize,
    /// The domain has at most six vertices, so the bound applies.
    pub hexagonal_domain: bool,
    pub ok: bool,
}

pub fn vertex_count_check(v: &ClippedVoronoi) -> VertexCountReport {
    let n = v.sites.len();
    let total: usize = v.vertex_counts.iter().sum();
    VertexCountReport {
        n,
        total,
        bound: 6 * n,
        hexagonal_domain: v.domain.len() <= 6,
        ok: total <= 6 * n,
    }
}

// ---------------------------------------------------------------------------
// Moment theorem and moment lemma

/// `int_P f(|x - center|) dx` with `center` in the closed polygon.
fn radial_moment(poly: &ConvexPolygon, center: Point, f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<f64> {
    let g = |x: Point| f.eval((x - center).norm());
    let margin = 1e-9 * poly.diameter();
    let est = if !f.breaks().is_empty() && poly.contains(center, -margin) {
        integrate_polar(poly, center, f.breaks(), g, cfg)?
    } else {
        integrate_star(poly, center, g, cfg)?
    };
    est.require_converged()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
    pub ok: bool,
}

impl MomentReport {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            margin: rhs - lhs,
            ok: lhs <= rhs + INEQUALITY_SLACK * rhs.abs().max(1.0),
        }
    }
}

/// `int_C f(d(p)) dp <= n int_sigma f(|p|) dp`, with `d(p)` the distance to
/// the nearest site and `sigma` the regular hexagon of area `|C| / n`.
pub fn moment_theorem_check(c: &ConvexPolygon, sites: &[Point], f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<MomentReport> {
    let vor = clipped_voronoi(c, sites)?;
    let lhs: f64 = vor
        .cells
        .iter()
        .zip(&vor.sites)
        .map(|(cell, &s)| radial_moment(cell, s, f, cfg))
        .sum::<Result<f64>>()?;
    let n = vor.sites.len();
    let sigma = ConvexPolygon::regular(6, c.area() / n as f64, 0.0)?;
    let rhs = n as f64 * radial_moment(&sigma, Point::ORIGIN, f, cfg)?;
    Ok(MomentReport::new(lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OriginPolicy {
    /// Shift the polygon so its closest point to the origin lands on it.
    Translate,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentLemmaReport {
    pub n: usize,
    /// Applied shift (zero when the origin was already inside).
    pub translation: Point,
    /// Moment of the polygon as given.
    pub lhs_original: f64,
    #[serde(flatten)]
    pub report: MomentReport,
}

/// `int_C f(|p|) dp <= int_sigma f(|p|) dp` for `sigma` the regular `n`-gon
/// of area `|C|` centred at the origin, `n` the vertex count of `C`.
pub fn moment_lemma_check(
    c: &ConvexPolygon,
    f: &DistanceProfile,
    cfg: &QuadratureConfig,
    policy: OriginPolicy,
) -> Result<MomentLemmaReport> {
    let n = c.len();
    if !(3..=12).contains(&n) {
        return Err(Error::BadParameter(format!("moment lemma needs 3..=12 vertices, got {n}")));
    }
    let inside = c.contains(Point::ORIGIN, 0.0);
    let lhs_original = if inside {
        None
    } else {
        Some(crate::quadrature::integrate_polygon(c, |x| f.eval(x.norm()), cfg)?.require_converged()?)
    };
    let (shifted, translation) = match (inside, policy) {
        (true, _) => (c.clone(), Point::ORIGIN),
        (false, OriginPolicy::Reject) => return Err(Error::OriginOutside),
        (false, OriginPolicy::Translate) => {
            let t = -c.project(Point::ORIGIN);
            (c.translate(t), t)
        }
    };
    let lhs = radial_moment(&shifted, Point::ORIGIN, f, cfg)?;
    let sigma = ConvexPolygon::regular(n, c.area(), 0.0)?;
    let rhs = radial_moment(&sigma, Point::ORIGIN, f, cfg)?;
    Ok(MomentLemmaReport {
        n,
        translation,
        lhs_original: lhs_original.unwrap_or(lhs),
        report: MomentReport::new(lhs, rhs),
    })
}

// ---------------------------------------------------------------------------
// Random instances and suites

/// Hull of `k` points at sorted random angles and random radii in
/// `[0.5, 1.5]` around `center`.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, k: usize, center: Point) -> Result<ConvexPolygon> {
    let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let pts: Vec<Point> = angles
        .iter()
        .map(|&t| center + Point::from_polar(rng.gen_range(0.5..1.5), t))
        .collect();
    let hull = ConvexPolygon::hull(&pts)?;
    ConvexPolygon::new(dedup_cyclic(hull.vertices().to_vec(), 1e-9))
}

/// Uniform point of `c` by rejection from its bounding box.
pub fn random_point_in<R: Rng>(rng: &mut R, c: &ConvexPolygon) -> Point {
    let (mut lo, mut hi) = (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for v in c.vertices() {
        lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
        hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
    }
    loop {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if c.contains(p, 0.0) {
            return p;
        }
    }
}

/// One line of a verification suite. Every suite orients its inequality as
/// `lhs <= rhs`, with `margin = rhs - lhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub suite: &'static str,
    pub seed: u64,
    pub trial: u64,
    pub summary: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub ok: bool,
}

/// Trial `i` draws from stream `i` of the generator seeded with `seed`.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_suite<F>(trials: u64, f: F) -> Result<Vec<TrialRecord>>
where
    F: Fn(u64) -> Result<TrialRecord> + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

/// `omega(|R|) <= int_R f` for random pairs in a disc of radius `r`.
pub fn suite_lemma2(seed: u64, trials: u64, r: f64, f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<Vec<TrialRecord>> {
    let d = Disc::new(r)?;
    run_suite(trials, |t| {
        let mut rng = trial_rng(seed, t);
        loop {
            let a = Point::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
            let b = Point::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
            match lemma2_check(d, a, b, f, cfg) {
                Ok(rep) => {
                    return Ok(TrialRecord {
                        suite: "lemma2",
                        seed,
                        trial: t,
                        summary: format!("r={r} a=({:.6},{:.6}) b=({:.6},{:.6}) |R|={:.6}", a.x, a.y, b.x, b.y, rep.area),
                        lhs: rep.rhs,
                        rhs: rep.lhs,
                        margin: rep.margin,
                        ok: rep.ok,
                    })
                }
                Err(Error::DegenerateRegion(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    })
}

/// `N <= 6n` for random sites in random hexagons.
pub fn suite_vertex_count(seed: u64, trials: u64) -> Result<Vec<TrialRecord>> {
    run_suite(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let c = random_convex_polygon(&mut rng, 6, Point::ORIGIN)?;
        let n = rng.gen_range(1..=12);
        let sites: Vec<Point> = (0..n).map(|_| random_point_in(&mut rng, &c)).collect();
        let rep = vertex_count_check(&clipped_voronoi(&c, &sites)?);
        Ok(TrialRecord {
            suite: "vertex-count",
            seed,
            trial: t,
            summary: format!("hull={} n={}", c.len(), n),
            lhs: rep.total as f64,
            rhs: rep.bound as f64,
            margin: rep.bound as f64 - rep.total as f64,
            ok: rep.ok && rep.hexagonal_domain,
        })
    })
}

/// Moment theorem for random hexagons with up to twelve random sites.
pub fn suite_moment_theorem(seed: u64, trials: u64, f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<Vec<TrialRecord>> {
    run_suite(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let c = random_convex_polygon(&mut rng, 6, Point::ORIGIN)?;
        let n = rng.gen_range(1..=12);
        let sites: Vec<Point> = (0..n).map(|_| random_point_in(&mut rng, &c)).collect();
        let rep = moment_theorem_check(&c, &sites, f, cfg)?;
        Ok(TrialRecord {
            suite: "moment-theorem",
            seed,
            trial: t,
            summary: format!("hull={} n={} |C|={:.6}", c.len(), n, c.area()),
            lhs: rep.lhs,
            rhs: rep.rhs,
            margin: rep.margin,
            ok: rep.ok,
        })
    })
}

/// Moment lemma for random convex polygons with 3 to 12 vertices, placed
/// randomly near the origin (translated in when they miss it).
pub fn suite_moment_lemma(seed: u64, trials: u64, f: &DistanceProfile, cfg: &QuadratureConfig) -> Result<Vec<TrialRecord>> {
    run_suite(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let c = loop {
            let k = rng.gen_range(3..=12);
            let shift = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let c = random_convex_polygon(&mut rng, k, shift)?;
            if c.len() >= 3 {
                break c;
            }
        };
        let rep = moment_lemma_check(&c, f, cfg, OriginPolicy::Translate)?;
        Ok(TrialRecord {
            suite: "moment-lemma",
            seed,
            trial: t,
            summary: format!(
                "n={} |C|={:.6} shift=({:.6},{:.6})",
                rep.n,
                c.area(),
                rep.translation.x,
                rep.translation.y
            ),
            lhs: rep.report.lhs,
            rhs: rep.report.rhs,
            margin: rep.report.margin,
            ok: rep.report.ok,
        })
    })
}
