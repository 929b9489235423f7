//! Alternating displacement and squeezing, its closed forms and its
//! large-N limit.
//!
//! The per-lap operator is `D(alpha/N) S(zeta/N)`. After `N` laps the product
//! equals `e^{i phase} D(d_arg) S(zeta)` exactly, and as `N -> inf` it becomes
//! `e^{i Theta} S(zeta) D(alpha_tilde)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock_core::{
    build_displacement, build_squeeze, phase, FockVector, Moments, OperatorMatrix, SqueezeParam,
};
use crate::scalar::{c, cosh_m1, cosh_m1_over, cr, sinh_m_x, sinhc, sinhc_m1_over, Real, C};

/// Edge population above which a truncated state is flagged.
pub const LEAKAGE_WARNING: f64 = 1e-3;

fn check_laps(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain {
            name: "N",
            value: 0.0,
            reason: "the product needs at least one lap",
        });
    }
    Ok(())
}

/// An N-lap state together with its truncation diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct TrotterState<T: Real> {
    pub state: FockVector<T>,
    pub norm_sqr: T,
    /// Population in the top `ceil(dim/8)` levels.
    pub leakage: T,
    /// Set when `leakage` exceeds [`LEAKAGE_WARNING`].
    pub leakage_warning: bool,
}

impl<T: Real> TrotterState<T> {
    fn from_state(state: FockVector<T>) -> Self {
        let leakage = state.edge_population();
        Self {
            norm_sqr: state.norm_sqr(),
            leakage,
            leakage_warning: leakage > T::lit(LEAKAGE_WARNING),
            state,
        }
    }
}

fn lap_operator<T: Real>(
    alpha: C<T>,
    zeta: SqueezeParam<T>,
    n: u64,
    dim: usize,
) -> Result<OperatorMatrix<T>> {
    let inv = T::one() / T::lit(n as f64);
    let d = build_displacement(alpha * inv, dim)?;
    let s = build_squeeze(zeta.scaled(inv), dim)?;
    d.mul(&s)
}

/// `[D(alpha/N) S(zeta/N)]^N |0>`, squeeze first within each lap.
pub fn trotter_state<T: Real>(
    alpha: C<T>,
    zeta: SqueezeParam<T>,
    n: u64,
    dim: usize,
) -> Result<TrotterState<T>> {
    check_laps(n)?;
    let lap = lap_operator(alpha, zeta, n, dim)?;
    let mut psi = FockVector::vacuum(dim, 1)?.into_amplitudes();
    let mut next = vec![C::zero(); psi.len()];
    for _ in 0..n {
        lap.apply_into(&psi, &mut next);
        std::mem::swap(&mut psi, &mut next);
    }
    Ok(TrotterState::from_state(FockVector::from_amplitudes(
        psi, dim, 1,
    )?))
}

/// The N-fold product `[D(alpha/N) S(zeta/N)]^N` as an explicit matrix,
/// multiplied out one lap at a time.
pub fn trotter_operator<T: Real>(
    alpha: C<T>,
    zeta: SqueezeParam<T>,
    n: u64,
    dim: usize,
) -> Result<OperatorMatrix<T>> {
    check_laps(n)?;
    let lap = lap_operator(alpha, zeta, n, dim)?;
    let mut acc = lap.clone();
    for _ in 1..n {
        acc = acc.mul(&lap)?;
    }
    Ok(acc)
}

/// Parameters of `[D(alpha/N) S(zeta/N)]^N = e^{i phase} D(d_arg) S(s_arg)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiniteProductParams<T: Real> {
    pub phase: T,
    pub d_arg: C<T>,
    pub s_arg: C<T>,
}

/// Closed form of the N-lap product.
pub fn finite_product_params<T: Real>(
    alpha: C<T>,
    zeta: SqueezeParam<T>,
    n: u64,
) -> Result<FiniteProductParams<T>> {
    check_laps(n)?;
    let r = zeta.r();
    let nf = T::lit(n as f64);
    let two_n = T::lit(2.0) * nf;
    let rot = phase(zeta.phi());
    let half = r / two_n;
    let per_lap = r / nf;

    // coth(r/2N) sinh r / 2N and (cosh r - 1) coth(r/2N) / 2N, written with
    // sinhc so that r = 0 needs no special case
    let ch = half.cosh() / sinhc(half);
    let sinh_term = ch * sinhc(r);
    let cosh_term = ch * cosh_m1_over(r);
    let d_arg = alpha * (sinh_term - cosh_m1(r) / two_n)
        - alpha.conj() * rot * (cosh_term - r.sinh() / two_n);

    // Im[(alpha/N)^2 e^{-i phi}] (1/4) cosech^2(r/2N) (sinh r - N sinh(r/N))
    let phase_value = if r == T::zero() {
        T::zero()
    } else {
        let im = (alpha * alpha * rot.conj()).im;
        let bracket = (sinh_m_x(r) - nf * sinh_m_x(per_lap)) / (r * r);
        let s = sinhc(half);
        -im * bracket / (s * s)
    };
    Ok(FiniteProductParams {
        phase: phase_value,
        d_arg,
        s_arg: zeta.zeta(),
    })
}

/// `e^{i phase} D(d_arg) S(s_arg) |0>` on a truncated space.
pub fn finite_product_state<T: Real>(
    params: &FiniteProductParams<T>,
    dim: usize,
) -> Result<FockVector<T>> {
    let s = build_squeeze(SqueezeParam::from_complex(params.s_arg)?, dim)?;
    let d = build_displacement(params.d_arg, dim)?;
    let psi = d.apply(&s.apply(&FockVector::vacuum(dim, 1)?)?)?;
    Ok(psi.scaled(phase(params.phase)))
}

/// Global phase and reordered displacement of the large-N limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitParams<T: Real> {
    pub theta: T,
    pub alpha_tilde: C<T>,
}

/// `Theta = -Im[alpha^2 e^{-i phi}] (sinh r / r - 1) / r` and
/// `alpha_tilde = alpha sinh r / r + alpha^* e^{i phi} (cosh r - 1) / r`.
///
/// The `e^{-i phi}` in `Theta` is the sign selected by the large-N matrix
/// product; the opposite sign fails the overlap test for complex `alpha`.
pub fn limit_params<T: Real>(alpha: C<T>, zeta: SqueezeParam<T>) -> LimitParams<T> {
    let r = zeta.r();
    let rot = phase(zeta.phi());
    LimitParams {
        theta: -(alpha * alpha * rot.conj()).im * sinhc_m1_over(r),
        alpha_tilde: alpha * sinhc(r) + alpha.conj() * rot * cosh_m1_over(r),
    }
}

/// `e^{i Theta} S(zeta) D(alpha_tilde) |0>`.
pub fn limit_state<T: Real>(
    alpha: C<T>,
    zeta: SqueezeParam<T>,
    dim: usize,
) -> Result<FockVector<T>> {
    let p = limit_params(alpha, zeta);
    let d = build_displacement(p.alpha_tilde, dim)?;
    let s = build_squeeze(zeta, dim)?;
    let psi = s.apply(&d.apply(&FockVector::vacuum(dim, 1)?)?)?;
    Ok(psi.scaled(phase(p.theta)))
}

/// `<exp(gamma a^dag - gamma^* a)>` on the limit state, in closed form.
pub fn characteristic_function<T: Real>(
    alpha: C<T>,
    zeta: SqueezeParam<T>,
    gamma_cf: C<T>,
) -> C<T> {
    let r = zeta.r();
    let rot = phase(zeta.phi());
    let g = gamma_cf;
    let kappa = g * r.cosh() + rot * g.conj() * (r * sinhc(r));
    // (cosh r - 1)/r^2 times zeta^* is cosh_m1_over(r) e^{-i phi}
    let f = (-alpha * g * rot.conj() + alpha.conj() * g.conj() * rot) * cosh_m1_over(r)
        - (alpha * g.conj() - alpha.conj() * g) * sinhc(r);
    (cr(T::lit(-0.5) * kappa.norm_sqr()) + f).exp()
}

/// Map the position and momentum arguments `(q, p)` of
/// `<exp[-i(q Q + p P)]>` to the displacement argument, with `m = omega = hbar = 1`.
pub fn gamma_from_qp<T: Real>(q: T, p: T) -> C<T> {
    c(p, -q) * T::FRAC_1_SQRT_2()
}

/// Characteristic function at position and momentum arguments `(q, p)`.
pub fn characteristic_function_qp<T: Real>(alpha: C<T>, zeta: SqueezeParam<T>, q: T, p: T) -> C<T> {
    characteristic_function(alpha, zeta, gamma_from_qp(q, p))
}

/// First and second moments of `Q = (a + a^dag)/sqrt 2` and
/// `P = i (a^dag - a)/sqrt 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureMoments<T: Real> {
    pub q: T,
    pub p: T,
    pub q2: T,
    pub p2: T,
}

impl<T: Real> QuadratureMoments<T> {
    /// Convert Fock-space moments of `x = a + a^dag`, `p = i(a^dag - a)`.
    pub fn from_fock(m: &Moments<T>) -> Self {
        let h = T::FRAC_1_SQRT_2();
        let half = T::lit(0.5);
        let a = &m.mode_a;
        Self {
            q: a.x * h,
            p: a.p * h,
            q2: a.x2 * half,
            p2: a.p2 * half,
        }
    }
}

/// Moments read off the characteristic function by central differences.
///
/// `<Q> = i dCF/dq`, `<Q^2> = -d^2CF/dq^2` at the origin, likewise for `P`.
pub fn cf_moments<T: Real>(alpha: C<T>, zeta: SqueezeParam<T>, step: T) -> QuadratureMoments<T> {
    let cf = |q: T, p: T| characteristic_function_qp(alpha, zeta, q, p);
    let two = T::lit(2.0);
    let centre = cf(T::zero(), T::zero());
    let first = |plus: C<T>, minus: C<T>| ((plus - minus) * C::i() / (two * step)).re;
    let second = |plus: C<T>, minus: C<T>| -((plus - centre * two + minus) / (step * step)).re;
    let (qp, qm) = (cf(step, T::zero()), cf(-step, T::zero()));
    let (pp, pm) = (cf(T::zero(), step), cf(T::zero(), -step));
    QuadratureMoments {
        q: first(qp, qm),
        p: first(pp, pm),
        q2: second(qp, qm),
        p2: second(pp, pm),
    }
}

/// Quadrature variances of the limit state relative to vacuum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UncertaintyReport<T: Real> {
    /// `(Delta Q)^2` in units of `hbar / (2 m omega)`.
    pub dq2: T,
    /// `(Delta P)^2` in units of `m omega hbar / 2`.
    pub dp2: T,
    /// `Delta Q Delta P` in units of `hbar / 2`.
    pub product: T,
}

/// Quadrature uncertainties, which depend on `zeta` alone.
pub fn quadrature_uncertainties<T: Real>(zeta: SqueezeParam<T>) -> UncertaintyReport<T> {
    let r = zeta.r();
    let (s, ch) = (r.sinh(), r.cosh());
    let z = zeta.zeta() * sinhc(r);
    let dq2 = (z - cr(ch)).norm_sqr();
    let dp2 = (z + cr(ch)).norm_sqr();
    let cos2 = (T::lit(2.0) * zeta.phi()).cos();
    let s2c2 = s * s * ch * ch;
    let product = (s.powi(4) + ch.powi(4) - T::lit(2.0) * cos2 * s2c2).sqrt();
    UncertaintyReport { dq2, dp2, product }
}

/// Least-squares fit of `y = a / x^p` on a log-log scale; returns `(a, p)`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some(((my - slope * mx).exp(), -slope))
}
