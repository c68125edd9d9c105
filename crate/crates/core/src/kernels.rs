//! Isotropic stationary kernel profiles `f`, evaluated at **squared**
//! distance.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::cellgeom::build_cell;
use crate::error::{Error, Result};
use crate::moduli::TorusParams;
use crate::point::Point;
use crate::quadrature::{integrate_polar, QuadratureConfig};

/// Number of sample points used by the monotonicity and sign checks.
pub const MONOTONICITY_GRID: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    StrictlyDecreasing,
    NonIncreasing,
}

/// Parsed form of the CLI kernel strings `constant`, `gaussian:L`,
/// `invpow:EPS:P` and `ball:R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KernelSpec {
    Constant,
    Gaussian { ell: f64 },
    InversePower { eps: f64, p: f64 },
    BallIndicator { r: f64 },
}

impl FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts
                .get(i)
                .ok_or_else(|| Error::BadParameter(format!("kernel spec {s:?} is missing a parameter")))?
                .parse::<f64>()
                .map_err(|e| Error::BadParameter(format!("kernel spec {s:?}: {e}")))
        };
        let spec = match (parts[0], parts.len()) {
            ("constant", 1) => KernelSpec::Constant,
            ("gaussian", 2) => KernelSpec::Gaussian { ell: num(1)? },
            ("invpow", 3) => KernelSpec::InversePower { eps: num(1)?, p: num(2)? },
            ("ball", 2) => KernelSpec::BallIndicator { r: num(1)? },
            _ => return Err(Error::BadParameter(format!("unknown kernel spec {s:?}"))),
        };
        make_builtin(spec)?;
        Ok(spec)
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::Constant => write!(f, "constant"),
            KernelSpec::Gaussian { ell } => write!(f, "gaussian:{ell}"),
            KernelSpec::InversePower { eps, p } => write!(f, "invpow:{eps}:{p}"),
            KernelSpec::BallIndicator { r } => write!(f, "ball:{r}"),
        }
    }
}

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A kernel profile acting on squared distance.
#[derive(Clone)]
pub struct Kernel {
    profile: Profile,
    monotonicity: Monotonicity,
    /// Squared distances where the profile jumps. Non-empty lists steer
    /// callers to quadrature routes that split there in one dimension.
    jumps: Vec<f64>,
    label: String,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("label", &self.label)
            .field("monotonicity", &self.monotonicity)
            .field("jumps", &self.jumps)
            .finish()
    }
}

pub fn make_builtin(spec: KernelSpec) -> Result<Kernel> {
    let bad = |msg: String| Err(Error::BadParameter(msg));
    let label = spec.to_string();
    Ok(match spec {
        KernelSpec::Constant => Kernel::new(label, Monotonicity::NonIncreasing, |_| 1.0),
        KernelSpec::Gaussian { ell } => {
            if !(ell > 0.0 && ell.is_finite()) {
                return bad(format!("gaussian length must be positive, got {ell}"));
            }
            let inv = 1.0 / (ell * ell);
            Kernel::new(label, Monotonicity::StrictlyDecreasing, move |t| (-t * inv).exp())
        }
        KernelSpec::InversePower { eps, p } => {
            if !(eps > 0.0 && p > 0.0 && eps.is_finite() && p.is_finite()) {
                return bad(format!("invpow needs eps > 0 and p > 0, got {eps}, {p}"));
            }
            Kernel::new(label, Monotonicity::StrictlyDecreasing, move |t| (eps + t).powf(-p))
        }
        KernelSpec::BallIndicator { r } => {
            if !(r > 0.0 && r.is_finite()) {
                return bad(format!("ball radius must be positive, got {r}"));
            }
            let r2 = r * r;
            Kernel::new(label, Monotonicity::NonIncreasing, move |t| if t <= r2 { 1.0 } else { 0.0 })
                .with_jumps(vec![r2])
        }
    })
}

impl Kernel {
    pub fn new<F>(label: impl Into<String>, monotonicity: Monotonicity, profile: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            profile: Arc::new(profile),
            monotonicity,
            jumps: Vec::new(),
            label: label.into(),
        }
    }

    /// Declares jump discontinuities at the given squared distances.
    pub fn with_jumps(mut self, mut jumps: Vec<f64>) -> Self {
        jumps.retain(|t| t.is_finite() && *t > 0.0);
        jumps.sort_by(f64::total_cmp);
        self.jumps = jumps;
        self
    }

    /// `f(t)` where `t` is a squared distance.
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.profile)(t)
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn is_smooth(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The kernel with profile `f^2`.
    pub fn squared(&self) -> Kernel {
        let f = self.profile.clone();
        Kernel {
            profile: Arc::new(move |t| {
                let v = f(t);
                v * v
            }),
            monotonicity: self.monotonicity,
            jumps: self.jumps.clone(),
            label: format!("({})^2", self.label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub kernel: String,
    pub params: TorusParams,
    /// `int_{D_{a,b}} f(|x|^2)^2 dx`; finiteness is the Hilbert-Schmidt condition.
    pub integral_f_sq: f64,
    pub sampled_range: [f64; 2],
    /// Strict decrease held on every sampled pair.
    pub strictly_decreasing: bool,
}

/// Checks sign and monotonicity on a grid over `[0, 2 r2^2]`, then integrates
/// `f^2` over the cell.
///
/// Profiles are required to be non-negative with `f(0) > 0` (indicators vanish
/// outside their support but are still admissible).
pub fn check_admissible(kernel: &Kernel, p: TorusParams, cfg: &QuadratureConfig) -> Result<AdmissibilityReport> {
    let cell = build_cell(p);
    let t_max = 2.0 * cell.r2 * cell.r2;
    let ts: Vec<f64> = (0..MONOTONICITY_GRID)
        .map(|i| t_max * i as f64 / (MONOTONICITY_GRID - 1) as f64)
        .collect();
    let vals: Vec<f64> = ts.iter().map(|&t| kernel.eval(t)).collect();
    let mut strict = true;
    for i in 1..ts.len() {
        if vals[i] > vals[i - 1] {
            return Err(Error::NotMonotone { t1: ts[i - 1], t2: ts[i] });
        }
        if vals[i] == vals[i - 1] {
            strict = false;
        }
    }
    for (&t, &v) in ts.iter().zip(&vals) {
        if !(v >= 0.0) || (t == 0.0 && !(v > 0.0)) {
            return Err(Error::NotPositive { t, value: v });
        }
    }
    let sq = kernel.squared();
    let radii: Vec<f64> = sq.jumps.iter().map(|t| t.sqrt()).collect();
    let est = integrate_polar(&cell.polygon(), Point::ORIGIN, &radii, |x| sq.eval(x.norm_sq()), cfg)?;
    if !est.value.is_finite() {
        return Err(Error::NonFiniteIntegrand { at: Point::ORIGIN });
    }
    Ok(AdmissibilityReport {
        kernel: kernel.label.clone(),
        params: p,
        integral_f_sq: est.value,
        sampled_range: [0.0, t_max],
        strictly_decreasing: strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn builtin_values() {
        let g = make_builtin(KernelSpec::Gaussian { ell: 1.0 }).unwrap();
        assert_eq!(g.eval(0.0), 1.0);
        let b = make_builtin(KernelSpec::BallIndicator { r: 0.5 }).unwrap();
        assert_eq!(b.eval(0.24), 1.0);
        assert_eq!(b.eval(0.26), 0.0);
        assert!(!b.is_smooth());
        let ip = make_builtin(KernelSpec::InversePower { eps: 1.0, p: 1.0 }).unwrap();
        assert_abs_diff_eq!(ip.eval(1.0), 0.5);
        assert!(make_builtin(KernelSpec::Gaussian { ell: 0.0 }).is_err());
        assert!(make_builtin(KernelSpec::InversePower { eps: 1.0, p: -1.0 }).is_err());
    }

    #[test]
    fn parse_specs() {
        assert_eq!("constant".parse::<KernelSpec>().unwrap(), KernelSpec::Constant);
        assert_eq!("gaussian:0.3".parse::<KernelSpec>().unwrap(), KernelSpec::Gaussian { ell: 0.3 });
        assert_eq!(
            "invpow:1.0:2.0".parse::<KernelSpec>().unwrap(),
            KernelSpec::InversePower { eps: 1.0, p: 2.0 }
        );
        assert_eq!("ball:0.5".parse::<KernelSpec>().unwrap(), KernelSpec::BallIndicator { r: 0.5 });
        for bad in ["", "gauss:1", "gaussian", "gaussian:x", "ball:-1", "invpow:1"] {
            assert!(bad.parse::<KernelSpec>().is_err(), "{bad}");
        }
        let s = KernelSpec::InversePower { eps: 1.0, p: 2.5 };
        assert_eq!(s.to_string().parse::<KernelSpec>().unwrap(), s);
    }

    #[test]
    fn admissibility() {
        let cfg = QuadratureConfig::default();
        let c = make_builtin(KernelSpec::Constant).unwrap();
        let r = check_admissible(&c, TorusParams::new(0.3, 1.4).unwrap(), &cfg).unwrap();
        assert_abs_diff_eq!(r.integral_f_sq, 1.0, epsilon = 1e-12);
        assert!(!r.strictly_decreasing);

        let g = make_builtin(KernelSpec::Gaussian { ell: 0.3 }).unwrap();
        let r = check_admissible(&g, TorusParams::SQUARE, &cfg).unwrap();
        assert!(r.integral_f_sq > 0.0 && r.integral_f_sq < 1.0);
        assert!(r.strictly_decreasing);

        let inc = Kernel::new("t", Monotonicity::NonIncreasing, |t| t);
        assert!(matches!(
            check_admissible(&inc, TorusParams::SQUARE, &cfg),
            Err(Error::NotMonotone { .. })
        ));
        let neg = Kernel::new("neg", Monotonicity::NonIncreasing, |t| 0.1 - t);
        assert!(matches!(
            check_admissible(&neg, TorusParams::SQUARE, &cfg),
            Err(Error::NotPositive { .. })
        ));
    }
}
