use crate::crystal_design::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Two-layer unit cell of a 1-D photonic crystal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrystalSpec<T: Real> {
    /// Width of layer A, m.
    pub l_a: T,
    /// Width of layer B, m.
    pub l_b: T,
    /// Relative permittivity of layer A.
    pub eps_a_rel: T,
    /// Relative permittivity of layer B.
    pub eps_b_rel: T,
}

impl<T: Real> Default for CrystalSpec<T> {
    /// LiNbO3 (n = 2.22) and air, 550 nm each.
    fn default() -> Self {
        Self {
            l_a: T::lit(5.5e-7),
            l_b: T::lit(5.5e-7),
            eps_a_rel: T::lit(2.22 * 2.22),
            eps_b_rel: T::one(),
        }
    }
}

impl<T: Real> CrystalSpec<T> {
    pub fn new(l_a: T, l_b: T, eps_a_rel: T, eps_b_rel: T) -> Result<Self> {
        for (name, v) in [
            ("l_A", l_a),
            ("l_B", l_b),
            ("eps_A_rel", eps_a_rel),
            ("eps_B_rel", eps_b_rel),
        ] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::Domain {
                    name,
                    value: v.as_f64(),
                    reason: "crystal parameters must be positive",
                });
            }
        }
        Ok(Self {
            l_a,
            l_b,
            eps_a_rel,
            eps_b_rel,
        })
    }

    /// Lattice period `l_A + l_B`.
    pub fn period(&self) -> T {
        self.l_a + self.l_b
    }

    /// Reduced zone edge `pi / (l_A + l_B)`.
    pub fn zone_edge(&self) -> T {
        T::PI() / self.period()
    }

    /// `omega (l_A + l_B) / (2 pi c)`.
    pub fn normalized_frequency(&self, omega: T) -> T {
        omega * self.period() / (T::TAU() * T::lit(SPEED_OF_LIGHT))
    }

    /// Inverse of [`CrystalSpec::normalized_frequency`].
    pub fn angular_frequency(&self, normalized: T) -> T {
        normalized * T::TAU() * T::lit(SPEED_OF_LIGHT) / self.period()
    }
}

/// A solved point on a photonic band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandPoint<T: Real> {
    /// Bloch wavenumber, m^-1.
    pub k: T,
    pub band_index: usize,
    /// Angular frequency, s^-1.
    pub omega: T,
    /// Group velocity, m/s.
    pub v_g: T,
}

/// Bloch condition residual of the layered medium.
///
/// Zero exactly when `omega` lies on a band at wavenumber `k`.
pub fn dispersion_residual<T: Real>(omega: T, k: T, spec: &CrystalSpec<T>) -> T {
    let bloch = (spec.period() * k).cos();
    if omega == T::zero() {
        return bloch - T::one();
    }
    let c = T::lit(SPEED_OF_LIGHT);
    let na = spec.eps_a_rel.sqrt();
    let nb = spec.eps_b_rel.sqrt();
    let pa = spec.l_a * omega * na / c;
    let pb = spec.l_b * omega * nb / c;
    // (K_A^2 + K_B^2) / (2 K_A K_B) depends only on the index contrast
    let coupling = (spec.eps_a_rel + spec.eps_b_rel) / (T::lit(2.0) * na * nb);
    bloch - pa.cos() * pb.cos() + coupling * pa.sin() * pb.sin()
}

const SCAN_STEP: f64 = 1e-3;

fn refine<T: Real>(mut lo: T, mut hi: T, k: T, spec: &CrystalSpec<T>) -> T {
    let mut f_lo = dispersion_residual(lo, k, spec);
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = dispersion_residual(mid, k, spec);
        if f_mid == T::zero() {
            return mid;
        }
        if (f_mid < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let f_hi = dispersion_residual(hi, k, spec);
    if f_hi.abs() < f_lo.abs() {
        hi
    } else {
        lo
    }
}

/// The lowest `n_bands` band frequencies at `k`, ascending.
///
/// Roots are bracketed on a scan with step `1e-3` in normalized frequency and
/// refined by bisection to the resolution of `T`.
pub fn band_frequencies<T: Real>(k: T, n_bands: usize, spec: &CrystalSpec<T>) -> Result<Vec<T>> {
    let step = spec.angular_frequency(T::lit(SCAN_STEP));
    let omega_max = spec.angular_frequency(T::from_count(n_bands + 1));
    let mut roots = Vec::with_capacity(n_bands);
    let mut prev_omega = T::zero();
    let mut prev = dispersion_residual(prev_omega, k, spec);
    if prev == T::zero() {
        roots.push(prev_omega);
    }
    let mut i = 1usize;
    while roots.len() < n_bands {
        let omega = step * T::from_count(i);
        if omega > omega_max {
            return Err(Error::SearchExhausted {
                k: k.as_f64(),
                band: roots.len() + 1,
                omega_max: omega_max.as_f64(),
            });
        }
        let f = dispersion_residual(omega, k, spec);
        if f == T::zero() {
            roots.push(omega);
        } else if prev != T::zero() && (f < T::zero()) != (prev < T::zero()) {
            roots.push(refine(prev_omega, omega, k, spec));
        }
        prev = f;
        prev_omega = omega;
        i += 1;
    }
    Ok(roots)
}

/// Angular frequency of band `band_index` (1-based) at `k`.
pub fn band_frequency<T: Real>(k: T, band_index: usize, spec: &CrystalSpec<T>) -> Result<T> {
    if band_index == 0 {
        return Err(Error::Domain {
            name: "band_index",
            value: 0.0,
            reason: "bands are numbered from 1",
        });
    }
    Ok(band_frequencies(k, band_index, spec)?[band_index - 1])
}

fn slope<T: Real>(k: T, h: T, band_index: usize, spec: &CrystalSpec<T>) -> Result<(T, T, T)> {
    let lower = band_frequency(k - h, band_index, spec)?;
    let upper = band_frequency(k + h, band_index, spec)?;
    Ok(((upper - lower) / (T::lit(2.0) * h), lower, upper))
}

/// Group velocity `|d omega / d k|` in m/s.
///
/// Central difference with step `1e-6 pi / (l_A + l_B)`, Richardson
/// extrapolated once against the half step.
pub fn group_velocity<T: Real>(k: T, band_index: usize, spec: &CrystalSpec<T>) -> Result<T> {
    let h = T::lit(1e-6) * spec.zone_edge();
    let (coarse, lower, upper) = slope(k, h, band_index, spec)?;
    let (fine, _, _) = slope(k, h / T::lit(2.0), band_index, spec)?;
    let v = ((T::lit(4.0) * fine - coarse) / T::lit(3.0)).abs();
    if !v.is_finite() || v > T::lit(1.5 * SPEED_OF_LIGHT) {
        return Err(Error::BandTracking {
            k: k.as_f64(),
            band: band_index,
            lower: lower.as_f64(),
            upper: upper.as_f64(),
        });
    }
    Ok(v)
}

/// Solve a full [`BandPoint`] at `k`.
pub fn band_point<T: Real>(k: T, band_index: usize, spec: &CrystalSpec<T>) -> Result<BandPoint<T>> {
    Ok(BandPoint {
        k,
        band_index,
        omega: band_frequency(k, band_index, spec)?,
        v_g: group_velocity(k, band_index, spec)?,
    })
}

const VG_GRID: usize = 200;

/// Wavenumber on `band_index` where `v_g / c` equals the target.
///
/// Searches the monotone stretch of `v_g(k)` that starts at the zone centre,
/// then bisects on `k`.
pub fn solve_k_for_vg<T: Real>(
    target_vg_over_c: T,
    band_index: usize,
    spec: &CrystalSpec<T>,
) -> Result<BandPoint<T>> {
    let c = T::lit(SPEED_OF_LIGHT);
    let dk = spec.zone_edge() / T::from_count(VG_GRID);
    let vg_ratio = |k: T| group_velocity(k, band_index, spec).map(|v| v / c);

    // a small offset keeps the first sample off the centre, where the
    // symmetric difference is blind to a linear band
    let k_first = dk * T::lit(1e-2);
    let mut ks = vec![k_first];
    let mut vs = vec![vg_ratio(k_first)?];
    let first = vs[0];
    let mut rising: Option<bool> = None;
    for j in 1..VG_GRID {
        let k = dk * T::from_count(j);
        let v = vg_ratio(k)?;
        let last = *vs.last().unwrap_or(&first);
        let up = v > last;
        match rising {
            None => rising = Some(up),
            Some(dir) if dir != up => break,
            _ => {}
        }
        ks.push(k);
        vs.push(v);
    }
    let (lo_v, hi_v) = vs
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    if !(target_vg_over_c >= lo_v && target_vg_over_c <= hi_v) {
        return Err(Error::Unattainable {
            target: target_vg_over_c.as_f64(),
            band: band_index,
            min: lo_v.as_f64(),
            max: hi_v.as_f64(),
        });
    }
    let j = (1..vs.len())
        .find(|&j| {
            let (a, b) = (vs[j - 1] - target_vg_over_c, vs[j] - target_vg_over_c);
            a == T::zero() || (a < T::zero()) != (b < T::zero()) || b == T::zero()
        })
        .unwrap_or(0);
    let (mut k_lo, mut k_hi) = if vs.len() == 1 {
        (ks[0], ks[0])
    } else {
        (ks[j - 1], ks[j])
    };
    let mut f_lo = vs[j.saturating_sub(1)] - target_vg_over_c;
    for _ in 0..80 {
        let mid = (k_lo + k_hi) / T::lit(2.0);
        if mid <= k_lo || mid >= k_hi {
            break;
        }
        let f_mid = vg_ratio(mid)? - target_vg_over_c;
        if f_mid == T::zero() {
            k_lo = mid;
            k_hi = mid;
            break;
        }
        if (f_mid < T::zero()) == (f_lo < T::zero()) {
            k_lo = mid;
            f_lo = f_mid;
        } else {
            k_hi = mid;
        }
    }
    band_point((k_lo + k_hi) / T::lit(2.0), band_index, spec)
}

/// Where a pump at `2 omega_s` sits on a given band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PumpDiagnostic<T: Real> {
    pub omega_p: T,
    pub normalized: T,
    pub lambda_p: T,
    pub band_index: usize,
    /// Wavenumber on the band where `omega = omega_p`, if the band reaches it.
    pub k_p: Option<T>,
}

/// Check whether `2 omega_s` lies on `band_index` and locate its wavenumber.
pub fn pump_band_diagnostic<T: Real>(
    omega_s: T,
    band_index: usize,
    spec: &CrystalSpec<T>,
) -> Result<PumpDiagnostic<T>> {
    let omega_p = T::lit(2.0) * omega_s;
    let target = |k: T| band_frequency(k, band_index, spec).map(|w| w - omega_p);
    let edge = spec.zone_edge();
    let mut k_lo = T::zero();
    let mut k_hi = edge;
    let mut f_lo = target(k_lo)?;
    let f_hi = target(k_hi)?;
    let k_p = if f_lo == T::zero() {
        Some(k_lo)
    } else if f_hi == T::zero() {
        Some(k_hi)
    } else if (f_lo < T::zero()) != (f_hi < T::zero()) {
        for _ in 0..80 {
            let mid = (k_lo + k_hi) / T::lit(2.0);
            if mid <= k_lo || mid >= k_hi {
                break;
            }
            let f_mid = target(mid)?;
            if (f_mid < T::zero()) == (f_lo < T::zero()) {
                k_lo = mid;
                f_lo = f_mid;
            } else {
                k_hi = mid;
            }
        }
        Some((k_lo + k_hi) / T::lit(2.0))
    } else {
        None
    };
    Ok(PumpDiagnostic {
        omega_p,
        normalized: spec.normalized_frequency(omega_p),
        lambda_p: T::TAU() * T::lit(SPEED_OF_LIGHT) / omega_p,
        band_index,
        k_p,
    })
}
