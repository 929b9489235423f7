use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock_core::matrix::{low_levels, space_size};
use crate::scalar::{c, Real, C};

/// Amplitudes over a truncated number basis.
///
/// Two-mode vectors are indexed `(n_a, n_b)` row-major with `a` as the slow
/// index, length `dim^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<T: Real> {
    amplitudes: Vec<C<T>>,
    dim: usize,
    modes: usize,
}

impl<T: Real> FockVector<T> {
    pub fn from_amplitudes(amplitudes: Vec<C<T>>, dim: usize, modes: usize) -> Result<Self> {
        let size = space_size(dim, modes)?;
        if amplitudes.len() != size {
            return Err(Error::ShapeMismatch {
                len: amplitudes.len(),
                dim,
                modes,
            });
        }
        Ok(Self {
            amplitudes,
            dim,
            modes,
        })
    }

    pub fn vacuum(dim: usize, modes: usize) -> Result<Self> {
        let size = space_size(dim, modes)?;
        let mut amplitudes = vec![C::zero(); size];
        amplitudes[0] = C::one();
        Ok(Self {
            amplitudes,
            dim,
            modes,
        })
    }

    /// Single-mode number state `|n>`.
    pub fn number(dim: usize, n: usize) -> Result<Self> {
        let mut v = Self::from_amplitudes(vec![C::zero(); space_size(dim, 1)?], dim, 1)?;
        if n >= dim {
            return Err(Error::InvalidDimension {
                dim,
                reason: "number state lies above the truncation",
            });
        }
        v.amplitudes[n] = C::one();
        Ok(v)
    }

    /// Two-mode number state `|n_a, n_b>`.
    pub fn number2(dim: usize, na: usize, nb: usize) -> Result<Self> {
        let mut v = Self::from_amplitudes(vec![C::zero(); space_size(dim, 2)?], dim, 2)?;
        if na >= dim || nb >= dim {
            return Err(Error::InvalidDimension {
                dim,
                reason: "number state lies above the truncation",
            });
        }
        v.amplitudes[na * dim + nb] = C::one();
        Ok(v)
    }

    /// `|a> (x) |b>` of two single-mode vectors on the same truncation.
    pub fn tensor(a: &Self, b: &Self) -> Result<Self> {
        if a.modes != 1 || b.modes != 1 || a.dim != b.dim {
            return Err(Error::SpaceMismatch {
                left: format!("dim={}, modes={}", a.dim, a.modes),
                right: format!("dim={}, modes={}", b.dim, b.modes),
            });
        }
        let amplitudes = a
            .amplitudes
            .iter()
            .flat_map(|x| b.amplitudes.iter().map(move |y| *x * *y))
            .collect();
        Self::from_amplitudes(amplitudes, a.dim, 2)
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn get(&self, n: usize) -> C<T> {
        self.amplitudes[n]
    }

    pub fn get2(&self, na: usize, nb: usize) -> C<T> {
        self.amplitudes[na * self.dim + nb]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, x| acc + x.norm_sqr())
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        let mut out = self.clone();
        if n > T::zero() {
            out.amplitudes.iter_mut().for_each(|x| *x /= n);
        }
        out
    }

    pub fn scaled(&self, s: C<T>) -> Self {
        let mut out = self.clone();
        out.amplitudes.iter_mut().for_each(|x| *x *= s);
        out
    }

    /// Population sitting in the top `ceil(dim/8)` levels of any mode.
    ///
    /// This is the truncation-leakage estimate reported by state builders:
    /// unitaries built on the truncated space preserve the norm exactly, so
    /// leakage shows up as weight pushed against the cutoff.
    pub fn edge_population(&self) -> T {
        let keep = low_levels(self.dim);
        match self.modes {
            1 => self.amplitudes[keep..]
                .iter()
                .fold(T::zero(), |acc, x| acc + x.norm_sqr()),
            _ => {
                let mut acc = T::zero();
                for na in 0..self.dim {
                    for nb in 0..self.dim {
                        if na >= keep || nb >= keep {
                            acc += self.amplitudes[na * self.dim + nb].norm_sqr();
                        }
                    }
                }
                acc
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.modes != other.modes {
            return Err(Error::SpaceMismatch {
                left: format!("dim={}, modes={}", self.dim, self.modes),
                right: format!("dim={}, modes={}", other.dim, other.modes),
            });
        }
        Ok(())
    }

    /// Inner product `<self|other>`.
    pub fn overlap(&self, other: &Self) -> Result<C<T>> {
        self.check_same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * *b))
    }

    /// Largest entrywise difference `max |u_n - v_n|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm())))
    }

    /// Restricts the vector to a smaller truncation (every mode cut to `dim`).
    pub fn truncated(&self, dim: usize) -> Result<Self> {
        if dim > self.dim {
            return Err(Error::InvalidDimension {
                dim,
                reason: "truncation must not exceed the source dimension",
            });
        }
        let amps = match self.modes {
            1 => self.amplitudes[..dim].to_vec(),
            _ => (0..dim)
                .flat_map(|na| {
                    let row = na * self.dim;
                    self.amplitudes[row..row + dim].iter().copied()
                })
                .collect(),
        };
        Self::from_amplitudes(amps, dim, self.modes)
    }

    /// Embeds a single-mode vector into a larger truncation.
    pub fn padded(&self, dim: usize) -> Result<Self> {
        if self.modes != 1 || dim < self.dim {
            return Err(Error::InvalidDimension {
                dim,
                reason: "padding must not shrink the vector",
            });
        }
        let mut amps = self.amplitudes.clone();
        amps.resize(dim, C::zero());
        Self::from_amplitudes(amps, dim, 1)
    }
}

/// `|<u|v>|^2 / (|u|^2 |v|^2)`.
pub fn state_fidelity<T: Real>(u: &FockVector<T>, v: &FockVector<T>) -> Result<T> {
    let ov = u.overlap(v)?;
    let nu = u.norm_sqr();
    let nv = v.norm_sqr();
    if nu == T::zero() || nv == T::zero() {
        return Ok(T::zero());
    }
    let f = ov.norm_sqr() / (nu * nv);
    Ok(f.min(T::one()))
}

/// Expectation values of a single mode, with quadratures `x = a^dag + a`
/// and `p = i(a^dag - a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeMoments<T: Real> {
    /// `<a>`
    pub a: C<T>,
    /// `<a^2>`
    pub a2: C<T>,
    /// `<a^dag a>`
    pub n: T,
    pub x: T,
    pub p: T,
    pub x2: T,
    pub p2: T,
}

impl<T: Real> ModeMoments<T> {
    fn from_ladder(a: C<T>, a2: C<T>, n: T) -> Self {
        let two = T::lit(2.0);
        // x = a + a^dag, p = i(a^dag - a)
        let x = two * a.re;
        let p = two * a.im;
        // x^2 = a^2 + a^dag^2 + 2 a^dag a + 1, p^2 = -a^2 - a^dag^2 + 2 a^dag a + 1
        let x2 = two * a2.re + two * n + T::one();
        let p2 = -two * a2.re + two * n + T::one();
        Self {
            a,
            a2,
            n,
            x,
            p,
            x2,
            p2,
        }
    }

    pub fn var_x(&self) -> T {
        self.x2 - self.x * self.x
    }

    pub fn var_p(&self) -> T {
        self.p2 - self.p * self.p
    }
}

/// Moments of a one- or two-mode state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments<T: Real> {
    pub mode_a: ModeMoments<T>,
    pub mode_b: Option<ModeMoments<T>>,
    /// `<a^dag b^dag>` for two-mode states.
    pub a_dag_b_dag: Option<C<T>>,
    /// `<a^dag b>` for two-mode states.
    pub a_dag_b: Option<C<T>>,
}

/// `sqrt(n)` lowering on the chosen mode: returns `(a psi)` amplitudes.
fn lower<T: Real>(amps: &[C<T>], dim: usize, modes: usize, on_b: bool) -> Vec<C<T>> {
    let mut out = vec![C::zero(); amps.len()];
    match (modes, on_b) {
        (1, _) => {
            for n in 1..dim {
                out[n - 1] = amps[n] * T::from_count(n).sqrt();
            }
        }
        (_, false) => {
            for na in 1..dim {
                let s = T::from_count(na).sqrt();
                for nb in 0..dim {
                    out[(na - 1) * dim + nb] = amps[na * dim + nb] * s;
                }
            }
        }
        (_, true) => {
            for na in 0..dim {
                for nb in 1..dim {
                    out[na * dim + nb - 1] = amps[na * dim + nb] * T::from_count(nb).sqrt();
                }
            }
        }
    }
    out
}

fn braket<T: Real>(u: &[C<T>], v: &[C<T>]) -> C<T> {
    u.iter()
        .zip(v)
        .fold(C::zero(), |acc, (a, b)| acc + a.conj() * *b)
}

fn mode_moments<T: Real>(psi: &[C<T>], dim: usize, modes: usize, on_b: bool) -> ModeMoments<T> {
    let a_psi = lower(psi, dim, modes, on_b);
    let aa_psi = lower(&a_psi, dim, modes, on_b);
    let a = braket(psi, &a_psi);
    let a2 = braket(psi, &aa_psi);
    let n = braket(&a_psi, &a_psi).re;
    ModeMoments::from_ladder(a, a2, n)
}

/// Expectation values by sparse ladder application on a normalized state.
pub fn moments<T: Real>(state: &FockVector<T>) -> Moments<T> {
    let psi = state.amplitudes();
    let dim = state.dim();
    let mode_a = mode_moments(psi, dim, state.modes(), false);
    if state.modes() == 1 {
        return Moments {
            mode_a,
            mode_b: None,
            a_dag_b_dag: None,
            a_dag_b: None,
        };
    }
    let mode_b = mode_moments(psi, dim, 2, true);
    let a_psi = lower(psi, dim, 2, false);
    let b_psi = lower(psi, dim, 2, true);
    let ab_psi = lower(&b_psi, dim, 2, false);
    // <a^dag b^dag> = conj(<a b>), <a^dag b> = <a psi | b psi>
    let ab = braket(psi, &ab_psi);
    Moments {
        mode_a,
        mode_b: Some(mode_b),
        a_dag_b_dag: Some(ab.conj()),
        a_dag_b: Some(braket(&a_psi, &b_psi)),
    }
}

/// Unit complex number `e^{i angle}`.
pub fn phase<T: Real>(angle: T) -> C<T> {
    c(angle.cos(), angle.sin())
}
