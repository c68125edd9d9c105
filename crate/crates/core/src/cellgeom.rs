//! The Dirichlet-Voronoi cell `D_{a,b}` of the origin, written directly from
//! its half-plane description, and geodesic distance on the torus.

use serde::Serialize;

use crate::moduli::{canonical_basis, TorusParams};
use crate::point::Point;
use crate::quadrature::{dedup_cyclic, ConvexPolygon};

/// The four affine edge functions bounding the upper half of `D_{a,b}`.
///
/// `y1` bounds the cell over `[-x1, x2]` (bisector with the lattice point
/// `((a-1)/sqrt(b), sqrt(b))`), `y2` over `[x2, x1]` (bisector with
/// `(a/sqrt(b), sqrt(b))`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeFunctions {
    pub a: f64,
    pub b: f64,
    pub x1: f64,
    pub x2: f64,
}

pub fn edge_functions(p: TorusParams) -> EdgeFunctions {
    let sb = p.b().sqrt();
    EdgeFunctions {
        a: p.a(),
        b: p.b(),
        x1: 0.5 / sb,
        x2: (p.a() - 0.5) / sb,
    }
}

impl EdgeFunctions {
    pub fn y1(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        ((1.0 - a).powi(2) / b + b) / (2.0 * b.sqrt()) + (1.0 - a) / b * x
    }

    pub fn y2(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        (a * a / b + b) / (2.0 * b.sqrt()) - a / b * x
    }

    pub fn dy1_da(&self, x: f64) -> f64 {
        ((self.a - 1.0) / self.b.sqrt() - x) / self.b
    }

    pub fn dy2_da(&self, x: f64) -> f64 {
        (self.a / self.b.sqrt() - x) / self.b
    }

    pub fn dy1_db(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        -0.75 * (1.0 - a).powi(2) * b.powf(-2.5) + 0.25 / b.sqrt() - (1.0 - a) * x / (b * b)
    }

    pub fn dy2_db(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        -0.75 * a * a * b.powf(-2.5) + 0.25 / b.sqrt() + a * x / (b * b)
    }

    /// Half-height of the vertical edges at `x = +-x1`.
    pub fn vertical_half_height(&self) -> f64 {
        self.y2(self.x1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VoronoiCell {
    pub params: TorusParams,
    /// Counter-clockwise, starting at the lower end of the right vertical edge.
    pub vertices: Vec<Point>,
    pub x1: f64,
    pub x2: f64,
    /// Inradius `1 / (2 sqrt(b))`.
    pub r1: f64,
    /// Circumradius; every vertex lies at this distance from the origin.
    pub r2: f64,
}

pub fn build_cell(p: TorusParams) -> VoronoiCell {
    let e = edge_functions(p);
    let h = e.vertical_half_height();
    let top = Point::new(e.x2, e.y1(e.x2));
    let raw = vec![
        Point::new(e.x1, -h),
        Point::new(e.x1, h),
        top,
        Point::new(-e.x1, h),
        Point::new(-e.x1, -h),
        -top,
    ];
    let (a, b) = (p.a(), p.b());
    VoronoiCell {
        params: p,
        vertices: dedup_cyclic(raw, 1e-12),
        x1: e.x1,
        x2: e.x2,
        r1: e.x1,
        r2: circumradius(a, b),
    }
}

pub fn circumradius(a: f64, b: f64) -> f64 {
    ((a * a + b * b) * ((a - 1.0).powi(2) + b * b) / (4.0 * b.powi(3))).sqrt()
}

impl VoronoiCell {
    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.vertices.clone()).expect("Voronoi cell is a convex polygon")
    }

    /// Centre `B (1/2, 1/2)` of the parallelogram representative with the
    /// origin at its lower-left corner.
    pub fn parallelogram_center(&self) -> Point {
        canonical_basis(self.params).apply(Point::new(0.5, 0.5))
    }

    /// The parallelogram representative with the origin at its lower-left corner.
    pub fn parallelogram(&self) -> ConvexPolygon {
        let basis = canonical_basis(self.params);
        ConvexPolygon::new(vec![
            Point::ORIGIN,
            basis.col(0),
            basis.col(0) + basis.col(1),
            basis.col(1),
        ])
        .expect("unit-volume parallelogram")
    }

    pub fn edge_functions(&self) -> EdgeFunctions {
        edge_functions(self.params)
    }

    pub fn vertices_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.vertices).expect("points serialize")
    }
}

/// Reduces `d` modulo the lattice to coefficients in `[-1/2, 1/2]^2`.
fn wrap_parallelogram(p: TorusParams, d: Point) -> Point {
    let sb = p.b().sqrt();
    // B^{-1} = [[sqrt(b), -a/sqrt(b)], [0, 1/sqrt(b)]]
    let c1 = sb * d.x - p.a() / sb * d.y;
    let c2 = d.y / sb;
    let (r1, r2) = (c1.round(), c2.round());
    d - canonical_basis(p).apply(Point::new(r1, r2))
}

fn min_over_window(p: TorusParams, d: Point, half: i64) -> f64 {
    let basis = canonical_basis(p);
    let mut best = f64::INFINITY;
    for i in -half..=half {
        for j in -half..=half {
            best = best.min((d - basis.lattice_point(i, j)).norm_sq());
        }
    }
    best
}

/// Squared geodesic distance between `x` and `y` on `T_{a,b}`.
pub fn geodesic_dist_sq(p: TorusParams, x: Point, y: Point) -> f64 {
    let d = wrap_parallelogram(p, x - y);
    let best = min_over_window(p, d, 2);
    debug_assert!(
        (best - min_over_window(p, d, 3)).abs() <= 1e-14 * best.max(1.0),
        "5x5 translate window missed the minimizer"
    );
    best
}

/// The representative of `x` inside `D_{a,b}` (ties on the boundary resolve
/// to the first translate found).
pub fn wrap_to_cell(p: TorusParams, x: Point) -> Point {
    let cell = build_cell(p).polygon();
    let basis = canonical_basis(p);
    let d = wrap_parallelogram(p, x);
    let mut best = d;
    let mut best_n = f64::INFINITY;
    for i in -3..=3 {
        for j in -3..=3 {
            let q = d - basis.lattice_point(i, j);
            if cell.contains(q, 1e-12) {
                return q;
            }
            if q.norm_sq() < best_n {
                best_n = q.norm_sq();
                best = q;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn square_cell() {
        let c = build_cell(TorusParams::SQUARE);
        assert_eq!(c.vertices.len(), 4);
        for v in &c.vertices {
            assert_abs_diff_eq!(v.x.abs(), 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(v.y.abs(), 0.5, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(c.r1, 0.5);
        assert_abs_diff_eq!(c.r2, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn equilateral_cell_is_regular() {
        let c = build_cell(TorusParams::EQUILATERAL);
        assert_eq!(c.vertices.len(), 6);
        assert_abs_diff_eq!(c.r2, 0.620_403_239_401_399_7, epsilon = 1e-12);
        let n = c.vertices.len();
        let side = c.vertices[0].dist(c.vertices[1]);
        for i in 0..n {
            assert_abs_diff_eq!(c.vertices[i].dist(c.vertices[(i + 1) % n]), side, epsilon = 1e-12);
        }
    }

    #[test]
    fn generic_cell() {
        let p = TorusParams::new(0.2, 1.2).unwrap();
        let c = build_cell(p);
        assert_eq!(c.vertices.len(), 6);
        assert_abs_diff_eq!(c.polygon().area(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.x2, -0.273_861_278_752_583_1, epsilon = 1e-12);
        assert!(c.r1 < c.r2);
        for v in &c.vertices {
            assert!(c.vertices.iter().any(|w| (*w + *v).norm() < 1e-12));
        }
    }

    #[test]
    fn edge_function_identities() {
        let e = edge_functions(TorusParams::SQUARE);
        assert_abs_diff_eq!(e.x2, -e.x1);
        for x in [-0.5, -0.1, 0.3] {
            assert_abs_diff_eq!(e.y2(x), 0.5, epsilon = 1e-15);
        }
        let e = edge_functions(TorusParams::new(0.5, 1.3).unwrap());
        for x in [-0.4, 0.0, 0.2, 0.43] {
            assert_abs_diff_eq!(e.y2(x), e.y1(-x), epsilon = 1e-15);
        }
        let e = edge_functions(TorusParams::new(0.31, 1.1).unwrap());
        assert_abs_diff_eq!(e.y1(e.x2), e.y2(e.x2), epsilon = 1e-14);
        assert_abs_diff_eq!(e.y1(-e.x1), e.y2(e.x1), epsilon = 1e-14);
    }

    #[test]
    fn edge_derivatives_match_finite_differences() {
        let h = 1e-6;
        for (a, b) in [(0.1, 1.3), (0.37, 1.0), (0.5, 0.9), (0.25, 2.2)] {
            let e = edge_functions(TorusParams::new(a, b).unwrap());
            let ea = |da: f64, db: f64| EdgeFunctions { a: a + da, b: b + db, ..e };
            for x in [-0.3, 0.0, 0.17] {
                let fd1a = (ea(h, 0.0).y1(x) - ea(-h, 0.0).y1(x)) / (2.0 * h);
                let fd2a = (ea(h, 0.0).y2(x) - ea(-h, 0.0).y2(x)) / (2.0 * h);
                let fd1b = (ea(0.0, h).y1(x) - ea(0.0, -h).y1(x)) / (2.0 * h);
                let fd2b = (ea(0.0, h).y2(x) - ea(0.0, -h).y2(x)) / (2.0 * h);
                assert_abs_diff_eq!(e.dy1_da(x), fd1a, epsilon = 1e-8);
                assert_abs_diff_eq!(e.dy2_da(x), fd2a, epsilon = 1e-8);
                assert_abs_diff_eq!(e.dy1_db(x), fd1b, epsilon = 1e-8);
                assert_abs_diff_eq!(e.dy2_db(x), fd2b, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn distance_examples() {
        let p = TorusParams::SQUARE;
        assert_abs_diff_eq!(geodesic_dist_sq(p, Point::ORIGIN, Point::new(0.9, 0.0)), 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(geodesic_dist_sq(p, Point::ORIGIN, Point::new(0.5, 0.5)), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(geodesic_dist_sq(p, Point::new(3.2, -7.1), Point::new(0.2, 0.9)), 0.0, epsilon = 1e-20);
    }

    #[test]
    fn parallelogram_representative() {
        let p = TorusParams::new(0.2, 1.2).unwrap();
        let c = build_cell(p);
        let par = c.parallelogram();
        assert_abs_diff_eq!(par.area(), 1.0, epsilon = 1e-14);
        let ctr = c.parallelogram_center();
        assert_abs_diff_eq!(par.centroid().x, ctr.x, epsilon = 1e-14);
        assert_abs_diff_eq!(par.centroid().y, ctr.y, epsilon = 1e-14);
        assert!(geodesic_dist_sq(p, ctr, Point::ORIGIN) <= c.r2 * c.r2 + 1e-12);
    }
}
