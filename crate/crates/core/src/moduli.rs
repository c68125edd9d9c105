//! Unit-volume flat tori: the `(a, b)` moduli parameterization, reduction of
//! arbitrary lattice bases into the fundamental domain, and dual lattices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;

/// Slack allowed when testing membership in U before clamping onto it.
const DOMAIN_SLACK: f64 = 1e-12;
/// Relative tolerance on `|det| = 1` for user-supplied bases.
pub const UNIMODULAR_TOL: f64 = 1e-9;
/// Bases with a larger 2-norm condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;
/// Upper bound on the number of dual vectors a single enumeration may return.
pub const ENUMERATION_CAP: usize = 1_000_000;

/// A point `(a, b)` of the fundamental domain
/// `U = { b > 0, 0 <= a <= 1/2, a^2 + b^2 >= 1 }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct TorusParams {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
struct RawParams {
    a: f64,
    b: f64,
}

impl TryFrom<RawParams> for TorusParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        TorusParams::new(r.a, r.b)
    }
}

impl TorusParams {
    pub const SQUARE: TorusParams = TorusParams { a: 0.0, b: 1.0 };
    pub const EQUILATERAL: TorusParams = TorusParams {
        a: 0.5,
        b: 0.866_025_403_784_438_6,
    };

    /// Validates membership in U. Values within `1e-12` of the boundary are
    /// clamped onto it.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= 0.0 {
            return Err(Error::OutsideDomain { a, b });
        }
        if a < -DOMAIN_SLACK || a > 0.5 + DOMAIN_SLACK {
            return Err(Error::OutsideDomain { a, b });
        }
        let a = a.clamp(0.0, 0.5);
        let gap = a * a + b * b - 1.0;
        if gap < -DOMAIN_SLACK {
            return Err(Error::OutsideDomain { a, b });
        }
        let mut b = if gap < 0.0 { (1.0 - a * a).sqrt() } else { b };
        while a * a + b * b < 1.0 {
            b = f64::from_bits(b.to_bits() + 1);
        }
        Ok(Self { a, b })
    }

    /// Like [`TorusParams::new`] but only requires the hexagonal cell formulas
    /// to stay valid (`b > 0`, `0 <= a <= 1/2`, `a <= a^2 + b^2`). This lets
    /// finite-difference stencils step slightly below the arc `a^2 + b^2 = 1`.
    pub fn relaxed(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite())
            || b <= 0.0
            || !(0.0..=0.5).contains(&a)
            || a > a * a + b * b
        {
            return Err(Error::OutsideDomain { a, b });
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn in_domain(&self) -> bool {
        self.a >= 0.0 && self.a <= 0.5 && self.a * self.a + self.b * self.b >= 1.0 - DOMAIN_SLACK
    }

    /// Lowest admissible `b` for a given `a`.
    pub fn lower_b(a: f64) -> f64 {
        (1.0 - a * a).max(0.0).sqrt()
    }
}

impl fmt::Display for TorusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A 2x2 real matrix whose columns generate a lattice. Stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Basis2 {
    pub m: [[f64; 2]; 2],
}

impl Basis2 {
    pub const IDENTITY: Basis2 = Basis2 {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };

    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self {
            m: [[m11, m12], [m21, m22]],
        }
    }

    pub fn from_columns(u: Point, v: Point) -> Self {
        Self::new(u.x, v.x, u.y, v.y)
    }

    pub fn col(&self, j: usize) -> Point {
        Point::new(self.m[0][j], self.m[1][j])
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn mul(&self, o: &Basis2) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    pub fn mul_int(&self, w: &[[i64; 2]; 2]) -> Self {
        self.mul(&Basis2::new(
            w[0][0] as f64,
            w[0][1] as f64,
            w[1][0] as f64,
            w[1][1] as f64,
        ))
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y,
            self.m[1][0] * p.x + self.m[1][1] * p.y,
        )
    }

    /// Lattice point `B (i, j)`.
    pub fn lattice_point(&self, i: i64, j: i64) -> Point {
        self.apply(Point::new(i as f64, j as f64))
    }

    pub fn inverse(&self) -> Result<Self> {
        let cond = self.condition_number();
        if !(cond <= MAX_CONDITION) {
            return Err(Error::DegenerateBasis { condition: cond });
        }
        let d = self.det();
        Ok(Self::new(
            self.m[1][1] / d,
            -self.m[0][1] / d,
            -self.m[1][0] / d,
            self.m[0][0] / d,
        ))
    }

    /// Ratio of singular values (infinite for singular matrices).
    pub fn condition_number(&self) -> f64 {
        let [[a, b], [c, d]] = self.m;
        let fro = a * a + b * b + c * c + d * d;
        let det = (a * d - b * c).abs();
        if det == 0.0 || !fro.is_finite() {
            return f64::INFINITY;
        }
        // sigma_max^2 + sigma_min^2 = fro, sigma_max * sigma_min = det
        let disc = ((fro - 2.0 * det) * (fro + 2.0 * det)).max(0.0).sqrt();
        let smax2 = 0.5 * (fro + disc);
        let smin2 = det * det / smax2;
        (smax2 / smin2).sqrt()
    }

    pub fn max_abs_diff(&self, o: &Basis2) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.m[i][j] - o.m[i][j]).abs());
            }
        }
        m
    }
}

/// `B_{a,b} = [[1/sqrt(b), a/sqrt(b)], [0, sqrt(b)]]`.
pub fn canonical_basis(p: TorusParams) -> Basis2 {
    let sb = p.b.sqrt();
    Basis2::new(1.0 / sb, p.a / sb, 0.0, sb)
}

/// Output of [`reduce_basis`]: `B * unimodular = orthogonal * B_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reduction {
    pub params: TorusParams,
    pub unimodular: [[i64; 2]; 2],
    pub orthogonal: Basis2,
}

/// Reduces a unit-volume lattice basis to its moduli point in U.
///
/// Lagrange-Gauss reduction brings the columns to `|u| <= |v|` with
/// `|u.v| <= |u|^2 / 2`; flipping `v` makes the angle acute. Rotating `u`
/// onto the x-axis (and reflecting `v` into the upper half plane) then reads
/// off `b = 1/|u|^2` and `a = u.v / |u|^2`.
pub fn reduce_basis(basis: &Basis2) -> Result<Reduction> {
    let condition = basis.condition_number();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::DegenerateBasis { condition });
    }
    let det = basis.det();
    if (det.abs() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::NonUnimodular { det: det.abs() });
    }

    let mut u = basis.col(0);
    let mut v = basis.col(1);
    // columns of w track the unimodular transform
    let mut w = [[1i64, 0], [0, 1]];
    for _ in 0..256 {
        if u.norm_sq() > v.norm_sq() {
            std::mem::swap(&mut u, &mut v);
            for row in w.iter_mut() {
                row.swap(0, 1);
            }
        }
        let mu = (u.dot(v) / u.norm_sq()).round();
        if mu == 0.0 {
            break;
        }
        v = v - u * mu;
        let k = mu as i64;
        for row in w.iter_mut() {
            row[1] -= k * row[0];
        }
    }
    if u.dot(v) < 0.0 {
        v = -v;
        for row in w.iter_mut() {
            row[1] = -row[1];
        }
    }

    let uu = u.norm_sq();
    let a = u.dot(v) / uu;
    let b = det.abs() / uu;
    let a = a.clamp(0.0, 0.5);
    let b = b.max(TorusParams::lower_b(a));
    let params = TorusParams::new(a, b)?;

    let orthogonal = basis.mul_int(&w).mul(&canonical_basis(params).inverse()?);
    Ok(Reduction {
        params,
        unimodular: w,
        orthogonal,
    })
}

/// Dual lattice `B^{-T}(Z^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualLattice {
    pub basis: Basis2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualVector {
    /// Integer coordinates in the dual basis.
    pub index: [i64; 2],
    pub k: Point,
}

pub fn dual_basis(basis: &Basis2) -> Result<DualLattice> {
    Ok(DualLattice {
        basis: basis.inverse()?.transpose(),
    })
}

impl DualLattice {
    pub fn of(p: TorusParams) -> Self {
        let sb = p.b.sqrt();
        Self {
            basis: Basis2::new(sb, 0.0, -p.a / sb, 1.0 / sb),
        }
    }

    pub fn vector(&self, m: i64, n: i64) -> DualVector {
        DualVector {
            index: [m, n],
            k: self.basis.lattice_point(m, n),
        }
    }
}

/// All dual vectors with `|k| <= radius`, sorted by length then index.
pub fn enumerate_dual(dual: &DualLattice, radius: f64) -> Result<Vec<DualVector>> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::BadParameter(format!("radius must be positive, got {radius}")));
    }
    // (m, n) = B^T k with B = D^{-T}, so |m| <= |row_0(D^{-1})| * radius.
    let inv = dual.basis.inverse()?;
    let det = dual.basis.det().abs();
    let estimate = std::f64::consts::PI * radius * radius / det;
    if estimate > ENUMERATION_CAP as f64 {
        return Err(Error::RadiusTooLarge {
            estimate: estimate as usize,
            cap: ENUMERATION_CAP,
        });
    }
    let mmax = (Point::new(inv.m[0][0], inv.m[0][1]).norm() * radius).floor() as i64;
    let nmax = (Point::new(inv.m[1][0], inv.m[1][1]).norm() * radius).floor() as i64;
    let r2 = radius * radius * (1.0 + 1e-14);
    let mut out = Vec::new();
    for m in -mmax..=mmax {
        for n in -nmax..=nmax {
            let v = dual.vector(m, n);
            if v.k.norm_sq() <= r2 {
                out.push(v);
                if out.len() > ENUMERATION_CAP {
                    return Err(Error::RadiusTooLarge {
                        estimate: out.len(),
                        cap: ENUMERATION_CAP,
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| {
        x.k.norm_sq()
            .total_cmp(&y.k.norm_sq())
            .then(x.index.cmp(&y.index))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_basis(TorusParams::SQUARE), Basis2::IDENTITY);
        let c = canonical_basis(TorusParams::new(0.2, 1.2).unwrap());
        assert_abs_diff_eq!(c.m[0][0], 0.912_870_929_175_276_9, epsilon = 1e-12);
        assert_abs_diff_eq!(c.m[0][1], 0.182_574_185_835_055_4, epsilon = 1e-12);
        assert_abs_diff_eq!(c.m[1][1], 1.095_445_115_010_332, epsilon = 1e-12);
        let e = canonical_basis(TorusParams::EQUILATERAL);
        assert_abs_diff_eq!(e.m[1][1], 0.930_604_859_102_100, epsilon = 1e-12);
        assert_abs_diff_eq!(e.det(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn domain_validation() {
        assert!(TorusParams::new(0.6, 1.0).is_err());
        assert!(TorusParams::new(0.3, 0.9).is_err());
        assert!(TorusParams::new(0.0, 0.0).is_err());
        assert!(TorusParams::new(f64::NAN, 1.0).is_err());
        // boundary clamp
        let p = TorusParams::new(0.5 + 1e-13, 0.866_025_403_784_438).unwrap();
        assert_eq!(p.a(), 0.5);
        assert!(p.a() * p.a() + p.b() * p.b() >= 1.0);
        assert!(TorusParams::relaxed(0.5, 0.8).is_ok());
        assert!(TorusParams::new(0.5, 0.8).is_err());
    }

    #[test]
    fn reduce_shifted_params() {
        // B_{0.7, 1}: a -> a - 1 then reflection lands on 0.3
        let b = Basis2::new(1.0, 0.7, 0.0, 1.0);
        let r = reduce_basis(&b).unwrap();
        assert_abs_diff_eq!(r.params.a(), 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(r.params.b(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn reduce_identity() {
        let r = reduce_basis(&Basis2::IDENTITY).unwrap();
        assert_eq!(r.params, TorusParams::SQUARE);
    }

    #[test]
    fn reduce_witness_holds() {
        let b = Basis2::new(2.0, 7.3, 0.1, 0.865);
        let s = b.det().abs().sqrt();
        let b = Basis2::new(b.m[0][0] / s, b.m[0][1] / s, b.m[1][0] / s, b.m[1][1] / s);
        let r = reduce_basis(&b).unwrap();
        let w = r.unimodular;
        assert_eq!((w[0][0] * w[1][1] - w[0][1] * w[1][0]).abs(), 1);
        let lhs = b.mul_int(&w);
        let rhs = r.orthogonal.mul(&canonical_basis(r.params));
        assert!(lhs.max_abs_diff(&rhs) < 1e-9);
        let qtq = r.orthogonal.transpose().mul(&r.orthogonal);
        assert!(qtq.max_abs_diff(&Basis2::IDENTITY) < 1e-9);
    }

    #[test]
    fn reduce_errors() {
        assert!(matches!(
            reduce_basis(&Basis2::new(2.0, 0.0, 0.0, 1.0)),
            Err(Error::NonUnimodular { .. })
        ));
        assert!(matches!(
            reduce_basis(&Basis2::new(1.0, 1.0, 1.0, 1.0)),
            Err(Error::DegenerateBasis { .. })
        ));
    }

    #[test]
    fn dual_examples() {
        let d = dual_basis(&Basis2::IDENTITY).unwrap();
        assert_eq!(d.basis, Basis2::IDENTITY);
        let e = dual_basis(&canonical_basis(TorusParams::EQUILATERAL)).unwrap();
        assert_abs_diff_eq!(e.basis.m[0][0], 0.930_604_859_102_100, epsilon = 1e-12);
        assert_abs_diff_eq!(e.basis.m[0][1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.basis.m[1][0], -0.537_284_965_911_770_9, epsilon = 1e-12);
        assert_abs_diff_eq!(e.basis.m[1][1], 1.074_569_931_823_542, epsilon = 1e-12);
        let closed = DualLattice::of(TorusParams::EQUILATERAL);
        assert!(closed.basis.max_abs_diff(&e.basis) < 1e-15);
    }

    #[test]
    fn dual_enumeration_small() {
        let d = DualLattice::of(TorusParams::SQUARE);
        let v = enumerate_dual(&d, 1.5).unwrap();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0].index, [0, 0]);
        assert_eq!(enumerate_dual(&d, 0.5).unwrap().len(), 1);
        assert!(matches!(enumerate_dual(&d, 1e4), Err(Error::RadiusTooLarge { .. })));
        assert!(enumerate_dual(&d, 0.0).is_err());
    }
}
