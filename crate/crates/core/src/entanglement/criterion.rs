use rayon::prelude::*;

use crate::entanglement::coefficients::{cs_coefficients, TmsTable};
use crate::error::{Error, Result};
use crate::fock_core::{
    beam_splitter_sectors, build_displacement, build_squeeze, moments, FockVector, Moments,
    SqueezeParam,
};
use crate::scalar::{c, Real, C};

/// Cutoff used for the output amplitude sums unless stated otherwise.
pub const DEFAULT_CUTOFF: usize = 60;
/// Cutoff reduction used to probe convergence.
pub const STABILITY_STEP: usize = 8;
/// Change in the criterion between the two cutoffs that marks a point unstable.
pub const STABILITY_TOL: f64 = 1e-3;

/// Beam-splitter output amplitudes `c(n1, n2)` for `n1, n2 <= cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeAmplitudes<T: Real> {
    amplitudes: Vec<C<T>>,
    cutoff: usize,
    /// `1 - sum |c|^2`.
    pub leakage: T,
}

impl<T: Real> TwoModeAmplitudes<T> {
    fn new(amplitudes: Vec<C<T>>, cutoff: usize) -> Self {
        let weight = amplitudes
            .iter()
            .fold(T::zero(), |acc, x| acc + x.norm_sqr());
        Self {
            amplitudes,
            cutoff,
            leakage: T::one() - weight,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn get(&self, n1: usize, n2: usize) -> C<T> {
        self.amplitudes[n1 * (self.cutoff + 1) + n2]
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    /// The table as a two-mode vector with `dim = cutoff + 1`, not renormalized.
    pub fn to_fock(&self) -> Result<FockVector<T>> {
        FockVector::from_amplitudes(self.amplitudes.clone(), self.cutoff + 1, 2)
    }
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::InvalidDimension {
            dim: cutoff,
            reason: "cutoff must be at least 1",
        });
    }
    Ok(())
}

fn amplitudes_with_table<T: Real>(
    table: &TmsTable<T>,
    cs: &[C<T>],
    cutoff: usize,
) -> TwoModeAmplitudes<T> {
    TwoModeAmplitudes::new(table.contract(cs, cs, cutoff), cutoff)
}

/// Output amplitudes of `B^dag |-r, alpha'>|0>` as the double sum
/// `sum_{l,k <= cutoff} S_{n1 n2, l k} CS_l CS_k`.
pub fn split_amplitudes<T: Real>(
    r: T,
    alpha_prime: T,
    cutoff: usize,
) -> Result<TwoModeAmplitudes<T>> {
    check_cutoff(cutoff)?;
    let table = TmsTable::new(r, cutoff)?;
    let cs = cs_coefficients(r, alpha_prime, cutoff)?;
    Ok(amplitudes_with_table(&table, &cs.values, cutoff))
}

/// `|-r, alpha'> = S(-r) D(alpha')|0>` on `dim` levels.
pub fn input_state<T: Real>(r: T, alpha_prime: T, dim: usize) -> Result<FockVector<T>> {
    let s = build_squeeze(SqueezeParam::real(-r), dim)?;
    let d = build_displacement(c(alpha_prime, T::zero()), dim)?;
    s.apply(&d.apply(&FockVector::vacuum(dim, 1)?)?)
}

/// `B^dag (|-r, alpha'> x |0>)` built directly from Fock-space matrices.
///
/// Output levels up to `dim - 1` in each port draw on input levels up to
/// `2 dim - 2`, so the splitter acts on a `2 dim` box, where every photon
/// number sector it needs is complete. The input is squeezed on `3 dim`
/// levels to keep the squeezer's own truncation edge out of that box.
pub fn split_state_oracle<T: Real>(r: T, alpha_prime: T, dim: usize) -> Result<FockVector<T>> {
    let work = 2 * dim;
    let psi = input_state(r, alpha_prime, 3 * dim)?.truncated(work)?;
    let input = FockVector::tensor(&psi, &FockVector::vacuum(work, 1)?)?;
    beam_splitter_sectors(work, true)?
        .apply(&input)?
        .truncated(dim)
}

/// The entanglement statistic and the moments it is assembled from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriterionResult<T: Real> {
    pub value: T,
    /// `<a^dag>`
    pub a_dag_mean: C<T>,
    /// `<a^dag a>`
    pub n_mean: T,
    /// `<a^dag b^dag>`
    pub ab_corr: C<T>,
    pub cutoff: usize,
    /// Value at `cutoff - 8`, when computed.
    pub reference: Option<T>,
    /// `|value - reference| <= 1e-3`.
    pub stable: bool,
    /// `1 - sum |c|^2` at `cutoff`.
    pub leakage: T,
}

/// `8 n + 4 - 8 Re<a^dag b^dag> + 8 (Re(<a^dag>^2) - |<a^dag>|^2)`.
///
/// This form uses that the two output ports carry identical single-mode
/// statistics.
pub fn assemble_criterion<T: Real>(n_mean: T, ab_corr: C<T>, a_dag_mean: C<T>) -> T {
    let eight = T::lit(8.0);
    eight * n_mean + T::lit(4.0) - eight * ab_corr.re
        + eight * ((a_dag_mean * a_dag_mean).re - a_dag_mean.norm_sqr())
}

/// `Var(x_a - x_b) + Var(p_a + p_b)` from the full two-mode moments,
/// without assuming symmetric ports.
pub fn criterion_from_moments<T: Real>(m: &Moments<T>) -> Result<T> {
    let (Some(b), Some(adbd), Some(adb)) = (m.mode_b, m.a_dag_b_dag, m.a_dag_b) else {
        return Err(Error::InvalidDimension {
            dim: 1,
            reason: "criterion needs a two-mode state",
        });
    };
    let a = m.mode_a;
    let two = T::lit(2.0);
    let ab = adbd.conj();
    let xx = two * ab.re + two * adb.re;
    let pp = -two * ab.re + two * adb.re;
    let var_x = a.x2 + b.x2 - two * xx - (a.x - b.x).powi(2);
    let var_p = a.p2 + b.p2 + two * pp - (a.p + b.p).powi(2);
    Ok(var_x + var_p)
}

fn criterion_of<T: Real>(amps: &TwoModeAmplitudes<T>) -> Result<(T, C<T>, T, C<T>)> {
    let m = moments(&amps.to_fock()?);
    let a_dag = m.mode_a.a.conj();
    let n = m.mode_a.n;
    let ab = m.a_dag_b_dag.unwrap_or_else(C::default);
    Ok((assemble_criterion(n, ab, a_dag), a_dag, n, ab))
}

fn duan_with_table<T: Real>(
    table: &TmsTable<T>,
    cs: &[C<T>],
    cutoff: usize,
) -> Result<CriterionResult<T>> {
    let full = amplitudes_with_table(table, cs, cutoff);
    let (value, a_dag_mean, n_mean, ab_corr) = criterion_of(&full)?;
    let coarse = cutoff.saturating_sub(STABILITY_STEP);
    let reference = if coarse >= 1 {
        Some(criterion_of(&amplitudes_with_table(table, cs, coarse))?.0)
    } else {
        None
    };
    let stable =
        value.is_finite() && reference.is_some_and(|v| (value - v).abs() <= T::lit(STABILITY_TOL));
    Ok(CriterionResult {
        value,
        a_dag_mean,
        n_mean,
        ab_corr,
        cutoff,
        reference,
        stable,
        leakage: full.leakage,
    })
}

/// Criterion from the double-sum amplitudes, with a convergence flag from
/// repeating the sums at `cutoff - 8`.
pub fn duan_criterion<T: Real>(r: T, alpha_prime: T, cutoff: usize) -> Result<CriterionResult<T>> {
    check_cutoff(cutoff)?;
    let table = TmsTable::new(r, cutoff)?;
    let cs = cs_coefficients(r, alpha_prime, cutoff)?;
    duan_with_table(&table, &cs.values, cutoff)
}

/// Criterion of the directly constructed output state.
pub fn oracle_criterion<T: Real>(r: T, alpha_prime: T, dim: usize) -> Result<T> {
    criterion_from_moments(&moments(&split_state_oracle(r, alpha_prime, dim)?))
}

/// Evenly spaced points `start, ..., end` (inclusive).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(start: f64, end: f64, n: usize) -> Result<Self> {
        if n == 0 || !start.is_finite() || !end.is_finite() || (n == 1 && start != end) {
            return Err(Error::Domain {
                name: "axis",
                value: n as f64,
                reason: "need finite bounds and n >= 1 (n = 1 only when start = end)",
            });
        }
        Ok(Self { start, end, n })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.end
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// Squeezing and displacement axes of a criterion sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub r: Axis,
    pub alpha_prime: Axis,
}

impl Default for Grid {
    /// 25 x 25 points on `[0, 1.2]^2`.
    fn default() -> Self {
        let axis = Axis {
            start: 0.0,
            end: 1.2,
            n: 25,
        };
        Self {
            r: axis,
            alpha_prime: axis,
        }
    }
}

/// One point of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow<T: Real> {
    pub r: T,
    pub alpha_prime: T,
    pub result: CriterionResult<T>,
}

/// Criterion on every `(r, alpha')` pair, `r` outer and `alpha'` inner.
///
/// Each `r` shares one matrix-element table across its `alpha'` values.
/// Rows come back in grid order whatever the thread scheduling.
pub fn criterion_sweep<T: Real>(
    r_grid: &[T],
    alpha_grid: &[T],
    cutoff: usize,
) -> Result<Vec<SweepRow<T>>> {
    check_cutoff(cutoff)?;
    let per_r: Vec<Result<Vec<SweepRow<T>>>> = r_grid
        .par_iter()
        .map(|&r| {
            let table = TmsTable::new(r, cutoff)?;
            alpha_grid
                .iter()
                .map(|&ap| {
                    let cs = cs_coefficients(r, ap, cutoff)?;
                    Ok(SweepRow {
                        r,
                        alpha_prime: ap,
                        result: duan_with_table(&table, &cs.values, cutoff)?,
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(r_grid.len() * alpha_grid.len());
    for block in per_r {
        rows.extend(block?);
    }
    Ok(rows)
}
