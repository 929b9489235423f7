use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("amplitude vector of length {len} does not match dim={dim}, modes={modes}")]
    ShapeMismatch {
        len: usize,
        dim: usize,
        modes: usize,
    },

    #[error("operands live on different spaces ({left} vs {right})")]
    SpaceMismatch { left: String, right: String },

    #[error("Hermite degree {n} exceeds the supported maximum {max}")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("parameter `{name}` = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("singular matrix in linear solve")]
    Singular,

    #[error("band {band} not found below omega = {omega_max:e} s^-1 at k = {k:e} m^-1")]
    SearchExhausted { k: f64, band: usize, omega_max: f64 },

    #[error("band tracking failed for band {band} near k = {k:e}: omega(k-h) = {lower:e}, omega(k+h) = {upper:e}")]
    BandTracking {
        k: f64,
        band: usize,
        lower: f64,
        upper: f64,
    },

    #[error("group velocity v_g/c = {target} is unattainable on band {band}: attainable range [{min}, {max}]")]
    Unattainable {
        target: f64,
        band: usize,
        min: f64,
        max: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
