use thiserror::Error;

use crate::point::Point;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("({a}, {b}) is outside the fundamental domain U")]
    OutsideDomain { a: f64, b: f64 },

    #[error("basis is not unimodular: |det| = {det}")]
    NonUnimodular { det: f64 },

    #[error("degenerate basis (condition number {condition:e})")]
    DegenerateBasis { condition: f64 },

    #[error("dual enumeration would produce ~{estimate} vectors, cap is {cap}")]
    RadiusTooLarge { estimate: usize, cap: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("kernel profile is negative at t = {t} (value {value})")]
    NotPositive { t: f64, value: f64 },

    #[error("kernel profile increases between t = {t1} and t = {t2}")]
    NotMonotone { t1: f64, t2: f64 },

    #[error("integrand is not finite at ({}, {})", .at.x, .at.y)]
    NonFiniteIntegrand { at: Point },

    #[error("quadrature hit its subdivision limit (value {value}, error estimate {error:e})")]
    DepthExceeded { value: f64, error: f64 },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("({}, {}) is not a dual lattice vector", .k.x, .k.y)]
    NotDualVector { k: Point },

    #[error("imaginary part {imag:e} of an eigenvalue integral does not vanish")]
    SymmetryBroken { imag: f64 },

    #[error("objective decreased along the path at step {step}: {from} -> {to}")]
    MonotonicityViolated { step: usize, from: f64, to: f64 },

    #[error("finite-difference step too small: noise {noise:e} vs entries {scale:e}")]
    StepTooSmall { noise: f64, scale: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("circular segment area {area} outside [0, {max}]")]
    AreaOutOfRange { area: f64, max: f64 },

    #[error("degenerate region: {0}")]
    DegenerateRegion(String),

    #[error("sites {i} and {j} coincide")]
    DuplicateSites { i: usize, j: usize },

    #[error("polygon does not contain the origin")]
    OriginOutside,
}
