//! Truncated Fock-space linear algebra.
//!
//! Single-mode spaces hold `dim` levels; two-mode spaces hold `dim * dim`
//! levels indexed `n_a * dim + n_b`.

mod builders;
mod hermite;
mod matrix;
mod state;

#[allow(unused_imports)]
pub(crate) use builders::{beam_splitter_sectors, two_mode_squeeze_sectors, SectorExp};
pub use builders::{
    build_beam_splitter, build_displacement, build_ladder, build_squeeze, build_two_mode_squeeze,
    coherent_state, total_number, Mode,
};
pub use hermite::{hermite_complex, scaled_hermite_sequence, MAX_HERMITE_DEGREE};
pub use matrix::{low_levels, OperatorMatrix};
pub use state::{moments, phase, state_fidelity, FockVector, ModeMoments, Moments};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Squeezing parameter `zeta = r e^{i phi}` with `r >= 0` and `phi` in `[0, 2 pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParam<T: Real> {
    r: T,
    phi: T,
}

impl<T: Real> SqueezeParam<T> {
    pub fn new(r: T, phi: T) -> Result<Self> {
        if !r.is_finite() || r < T::zero() {
            return Err(Error::Domain {
                name: "r",
                value: r.as_f64(),
                reason: "squeezing magnitude must be finite and non-negative",
            });
        }
        if !phi.is_finite() {
            return Err(Error::Domain {
                name: "phi",
                value: phi.as_f64(),
                reason: "squeezing phase must be finite",
            });
        }
        let two_pi = T::TAU();
        let mut phi = phi % two_pi;
        if phi < T::zero() {
            phi += two_pi;
        }
        if phi >= two_pi {
            phi = T::zero();
        }
        Ok(Self { r, phi })
    }

    pub fn zero() -> Self {
        Self {
            r: T::zero(),
            phi: T::zero(),
        }
    }

    /// Real squeezing `zeta = r`; a negative `r` becomes `|r| e^{i pi}`.
    pub fn real(r: T) -> Self {
        if r < T::zero() {
            Self {
                r: -r,
                phi: T::PI(),
            }
        } else {
            Self { r, phi: T::zero() }
        }
    }

    pub fn from_complex(zeta: C<T>) -> Result<Self> {
        let r = zeta.norm();
        let phi = if r == T::zero() {
            T::zero()
        } else {
            zeta.arg()
        };
        Self::new(r, phi)
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn zeta(&self) -> C<T> {
        C::from_polar(self.r, self.phi)
    }

    /// `zeta * s` for a non-negative real factor.
    pub fn scaled(&self, s: T) -> Self {
        Self {
            r: self.r * s.abs(),
            phi: self.phi,
        }
    }

    /// `-zeta`.
    pub fn negated(&self) -> Self {
        if self.r == T::zero() {
            return *self;
        }
        let mut phi = self.phi + T::PI();
        if phi >= T::TAU() {
            phi -= T::TAU();
        }
        Self { r: self.r, phi }
    }
}
