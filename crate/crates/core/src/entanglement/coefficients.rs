use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock_core::{scaled_hermite_sequence, MAX_HERMITE_DEGREE};
use crate::scalar::{c, cr, ln_factorial_table, Real, C};

fn check_r<T: Real>(r: T) -> Result<()> {
    if !(r.is_finite() && r >= T::zero()) {
        return Err(Error::Domain {
            name: "r",
            value: r.as_f64(),
            reason: "squeezing must be finite and non-negative",
        });
    }
    Ok(())
}

/// Number-basis coefficients of one beam-splitter output port.
#[derive(Clone, Debug, PartialEq)]
pub struct CsCoefficients<T: Real> {
    /// `<n| S(-r/2) D(alpha'/sqrt 2) |0>` for `n = 0..=n_max`.
    pub values: Vec<C<T>>,
    /// `1 - sum |CS_n|^2`, the weight above `n_max`.
    pub deficit: T,
}

/// Coefficients of `|-r/2, alpha'/sqrt 2> = S(-r/2) D(alpha'/sqrt 2)|0>`.
///
/// With `rho = r/2`, `a = alpha'/sqrt 2` and `t = tanh(rho)/2`,
/// `CS_n = exp[-a^2 e^{2 rho} (1 - tanh rho)/2] / sqrt(cosh rho) i^n t^{n/2} H_n(w) / sqrt(n!)`
/// where `2 sqrt(t) w = -i a / cosh rho`. The Hermite factor is generated by
/// the rescaled recurrence, which stays finite for every `n` and reduces to
/// the coherent-state coefficients at `r = 0`.
pub fn cs_coefficients<T: Real>(r: T, alpha_prime: T, n_max: usize) -> Result<CsCoefficients<T>> {
    check_r(r)?;
    if n_max > MAX_HERMITE_DEGREE {
        return Err(Error::DegreeOutOfRange {
            n: n_max,
            max: MAX_HERMITE_DEGREE,
        });
    }
    let rho = r / T::lit(2.0);
    let a = alpha_prime * T::FRAC_1_SQRT_2();
    let th = rho.tanh();
    let ch = rho.cosh();
    let beta = a * rho.exp();
    let prefactor = (T::lit(-0.5) * beta * beta * (T::one() - th)).exp() / ch.sqrt();
    let s = c(T::zero(), -a / ch);
    let g = scaled_hermite_sequence(n_max, s, th / T::lit(2.0));
    let turns = [
        c(T::one(), T::zero()),
        c(T::zero(), T::one()),
        c(-T::one(), T::zero()),
        c(T::zero(), -T::one()),
    ];
    let values: Vec<C<T>> = g
        .iter()
        .enumerate()
        .map(|(n, gn)| *gn * turns[n % 4] * prefactor)
        .collect();
    let weight = values.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr());
    Ok(CsCoefficients {
        deficit: T::one() - weight,
        values,
    })
}

/// One matrix element `<n1, n2| S_ab(-r/2) |l, k>` of the two-mode squeezer
/// `exp[(r/2)(a^dag b^dag - a b)]`.
pub fn tms_element<T: Real>(n1: usize, n2: usize, l: usize, k: usize, r: T) -> Result<T> {
    check_r(r)?;
    let top = n1.max(n2).max(l).max(k);
    let lf = ln_factorial_table::<T>(top);
    Ok(TmsLogs::new(r).element(n1, n2, l, k, &lf))
}

struct TmsLogs<T: Real> {
    ln_tanh: T,
    ln_cosh: T,
    identity: bool,
}

impl<T: Real> TmsLogs<T> {
    fn new(r: T) -> Self {
        let rho = r / T::lit(2.0);
        Self {
            ln_tanh: rho.tanh().ln(),
            ln_cosh: rho.cosh().ln(),
            identity: rho.tanh() == T::zero(),
        }
    }

    fn element(&self, n1: usize, n2: usize, l: usize, k: usize, lf: &[T]) -> T {
        // pairs are created or destroyed together
        if n1 + k != n2 + l {
            return T::zero();
        }
        if self.identity {
            return if n1 == l { T::one() } else { T::zero() };
        }
        let half = T::lit(0.5);
        let norm = half * (lf[l] + lf[k] + lf[n1] + lf[n2]);
        let lk = T::from_count(l + k + 1);
        let mut acc = T::zero();
        // n = n1 - l + m must lie in [0, min(n1, n2)]
        let m_lo = l.saturating_sub(n1);
        let m_hi = l.min(k);
        for m in m_lo..=m_hi {
            let n = n1 + m - l;
            let expo = self.ln_tanh * T::from_count(m + n)
                - (lk - T::from_count(2 * m)) * self.ln_cosh
                + norm
                - lf[m]
                - lf[n]
                - lf[l - m]
                - lf[k - m];
            let term = expo.exp();
            if m % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

/// All elements `<n1, n2| S_ab(-r/2) |l, k>` with every index `<= n_max`.
///
/// Elements are independent of the summation cutoff, so one table serves
/// every cutoff up to `n_max` and every `alpha'` at the same `r`.
#[derive(Clone, Debug)]
pub struct TmsTable<T: Real> {
    r: T,
    n_max: usize,
    // rows[n1 * (n_max + 1) + n2][l - l_min(n1, n2)]
    rows: Vec<Vec<T>>,
}

impl<T: Real> TmsTable<T> {
    pub fn new(r: T, n_max: usize) -> Result<Self> {
        check_r(r)?;
        let lf = ln_factorial_table::<T>(n_max);
        let logs = TmsLogs::new(r);
        let side = n_max + 1;
        let mut rows = Vec::with_capacity(side * side);
        for n1 in 0..side {
            for n2 in 0..side {
                let (lo, hi) = Self::l_range(n_max, n1, n2);
                rows.push(
                    (lo..=hi)
                        .map(|l| logs.element(n1, n2, l, l + n2 - n1, &lf))
                        .collect(),
                );
            }
        }
        Ok(Self { r, n_max, rows })
    }

    fn l_range(n_max: usize, n1: usize, n2: usize) -> (usize, usize) {
        // k = l + n2 - n1 must also lie in [0, n_max]
        let lo = n1.saturating_sub(n2);
        let hi = if n2 > n1 { n_max - (n2 - n1) } else { n_max };
        (lo, hi)
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Element `<n1, n2| S_ab(-r/2) |l, k>`; zero outside the table or the
    /// selection rule.
    pub fn get(&self, n1: usize, n2: usize, l: usize, k: usize) -> T {
        if n1.max(n2).max(l).max(k) > self.n_max || n1 + k != n2 + l {
            return T::zero();
        }
        let (lo, _) = Self::l_range(self.n_max, n1, n2);
        self.rows[n1 * (self.n_max + 1) + n2][l - lo]
    }

    /// `sum_{l,k <= cutoff} S_{n1 n2, l k} u_l v_k` for all `n1, n2 <= cutoff`.
    pub(crate) fn contract(&self, u: &[C<T>], v: &[C<T>], cutoff: usize) -> Vec<C<T>> {
        let side = cutoff + 1;
        let mut out = vec![C::zero(); side * side];
        for n1 in 0..side {
            for n2 in 0..side {
                let (lo, _) = Self::l_range(self.n_max, n1, n2);
                let row = &self.rows[n1 * (self.n_max + 1) + n2];
                let l_hi = if n2 > n1 { cutoff - (n2 - n1) } else { cutoff };
                let mut acc = C::zero();
                for l in lo..=l_hi {
                    let k = l + n2 - n1;
                    acc += u[l] * v[k] * cr(row[l - lo]);
                }
                out[n1 * side + n2] = acc;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock_core::{
        build_displacement, build_squeeze, build_two_mode_squeeze, state_fidelity, FockVector,
        SqueezeParam,
    };

    #[test]
    fn cs_vacuum_and_parity() {
        let v = cs_coefficients(0.0f64, 0.0, 10).unwrap();
        assert!((v.values[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(v.values[1..].iter().all(|x| x.norm() == 0.0));
        let sq = cs_coefficients(0.5f64, 0.0, 20).unwrap();
        for n in (1..=20).step_by(2) {
            assert_eq!(sq.values[n].norm(), 0.0);
        }
        assert!(cs_coefficients(-0.1f64, 0.5, 4).is_err());
        assert!(cs_coefficients(0.1f64, 0.5, 513).is_err());
    }

    #[test]
    fn cs_coherent_limit() {
        let ap = 0.9f64;
        let v = cs_coefficients(0.0, ap, 25).unwrap();
        let a = ap / 2f64.sqrt();
        let mut fact = 1.0f64;
        for (n, x) in v.values.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            let want = (-a * a / 2.0).exp() * a.powi(n as i32) / fact.sqrt();
            assert!((x - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn cs_matches_matrix_oracle() {
        let (r, ap, dim) = (0.8f64, 0.6, 80);
        let v = cs_coefficients(r, ap, 50).unwrap();
        let sq = build_squeeze(SqueezeParam::real(-r / 2.0), dim).unwrap();
        let d = build_displacement(c(ap / 2f64.sqrt(), 0.0), dim).unwrap();
        let oracle = sq
            .apply(&d.apply(&FockVector::vacuum(dim, 1).unwrap()).unwrap())
            .unwrap();
        let mut padded = v.values.clone();
        padded.resize(dim, C::zero());
        let got = FockVector::from_amplitudes(padded, dim, 1).unwrap();
        assert!(state_fidelity(&got, &oracle).unwrap() >= 1.0 - 1e-8);
        assert!(got.max_abs_diff(&oracle).unwrap() < 1e-8);
        assert!(v.deficit >= -1e-14 && v.deficit < 1e-8);
    }

    #[test]
    fn cs_high_degree_stays_finite() {
        let v = cs_coefficients(2.5f64, 1.5, 500).unwrap();
        assert!(v
            .values
            .iter()
            .all(|x| x.re.is_finite() && x.im.is_finite()));
        assert!(v.deficit.abs() < 1e-10);
    }

    #[test]
    fn tms_identity_and_selection_rule() {
        for (n1, n2, l, k) in [(0, 0, 0, 0), (3, 5, 3, 5), (4, 1, 2, 1), (2, 2, 1, 1)] {
            let want = if n1 == l && n2 == k { 1.0 } else { 0.0 };
            assert_eq!(tms_element(n1, n2, l, k, 0.0f64).unwrap(), want);
        }
        assert_eq!(tms_element(3, 1, 1, 0, 0.6f64).unwrap(), 0.0);
    }

    #[test]
    fn tms_matches_matrix_exponential() {
        let dim = 30;
        let u = build_two_mode_squeeze(0.6f64, dim).unwrap();
        let table = TmsTable::new(0.6f64, 8).unwrap();
        for n1 in 0..=8 {
            for n2 in 0..=8 {
                for l in 0..=8 {
                    for k in 0..=8 {
                        let want = u.get2(n1, n2, l, k);
                        let got = tms_element(n1, n2, l, k, 0.6f64).unwrap();
                        assert!((want - cr(got)).norm() < 1e-8, "({n1},{n2},{l},{k})");
                        assert_eq!(table.get(n1, n2, l, k), got);
                    }
                }
            }
        }
    }
}
