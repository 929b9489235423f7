use crate::crystal_design::constants::{HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::crystal_design::dispersion::{
    pump_band_diagnostic, solve_k_for_vg, BandPoint, CrystalSpec, PumpDiagnostic,
};
use crate::error::{Error, Result};
use crate::scalar::{cosh_m1_over, sinhc, Real};

/// Physical inputs of the ring-resonator source, SI units throughout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResonatorScenario<T: Real> {
    /// Pump radiant flux, W.
    pub w_pump: T,
    /// Beam radius, m.
    pub d: T,
    /// Reduced nonlinear susceptibility, m/V.
    pub chi2_tilde: T,
    pub n_laps: u64,
    pub vg_over_c: T,
    /// Nonlinear crystal length, m.
    pub l_i: T,
    /// Stimulated-emission cross-section, m^2.
    pub sigma_em: T,
    /// Excited-atom density, m^-3.
    pub rho0: T,
    /// Time of flight through the gain medium, s.
    pub dtau2: T,
    pub n_refr: T,
    pub crystal: CrystalSpec<T>,
    /// Band carrying the signal light.
    pub signal_band: usize,
    /// Band expected to carry the pump at twice the signal frequency.
    pub pump_band: usize,
}

impl<T: Real> Default for ResonatorScenario<T> {
    fn default() -> Self {
        let crystal = CrystalSpec::default();
        Self {
            w_pump: T::lit(1e-3),
            d: T::lit(5e-6),
            chi2_tilde: T::lit(25.2e-12),
            n_laps: 1000,
            vg_over_c: T::lit(0.05),
            l_i: T::lit(10.0) * crystal.l_a,
            sigma_em: T::lit(1e-24),
            rho0: T::lit(1.45e24),
            dtau2: T::lit(4e-14),
            n_refr: T::one(),
            crystal,
            signal_band: 4,
            pump_band: 8,
        }
    }
}

fn non_negative<T: Real>(name: &'static str, v: T) -> Result<T> {
    if v.is_finite() && v >= T::zero() {
        Ok(v)
    } else {
        Err(Error::Domain {
            name,
            value: v.as_f64(),
            reason: "must be finite and non-negative",
        })
    }
}

fn positive<T: Real>(name: &'static str, v: T) -> Result<T> {
    if v.is_finite() && v > T::zero() {
        Ok(v)
    } else {
        Err(Error::Domain {
            name,
            value: v.as_f64(),
            reason: "must be finite and positive",
        })
    }
}

impl<T: Real> ResonatorScenario<T> {
    /// Check every field against its physical domain.
    ///
    /// The pump power and the gain density may be zero; all lengths, times
    /// and the refractive index must be strictly positive.
    pub fn validate(&self) -> Result<()> {
        non_negative("W_pump", self.w_pump)?;
        non_negative("chi2_tilde", self.chi2_tilde)?;
        non_negative("sigma_em", self.sigma_em)?;
        non_negative("rho0", self.rho0)?;
        positive("d", self.d)?;
        positive("vg_over_c", self.vg_over_c)?;
        positive("l_I", self.l_i)?;
        positive("dtau2", self.dtau2)?;
        positive("n_refr", self.n_refr)?;
        if self.n_laps == 0 {
            return Err(Error::Domain {
                name: "N_laps",
                value: 0.0,
                reason: "at least one lap is required",
            });
        }
        CrystalSpec::new(
            self.crystal.l_a,
            self.crystal.l_b,
            self.crystal.eps_a_rel,
            self.crystal.eps_b_rel,
        )?;
        Ok(())
    }

    /// Beam cross-section `pi d^2`, m^2.
    pub fn beam_area(&self) -> T {
        T::PI() * self.d * self.d
    }

    /// Gain-medium volume `c dtau2 pi d^2`, m^3.
    pub fn gain_volume(&self) -> T {
        T::lit(SPEED_OF_LIGHT) * self.dtau2 * self.beam_area()
    }
}

/// Pump field amplitude `sqrt(2 W / (pi d^2 eps0 c n))`, V/m.
pub fn pump_amplitude<T: Real>(w_pump: T, d: T, n_refr: T) -> T {
    let intensity = w_pump / (T::PI() * d * d);
    (T::lit(2.0) * intensity / (T::lit(VACUUM_PERMITTIVITY) * T::lit(SPEED_OF_LIGHT) * n_refr))
        .sqrt()
}

/// Per-lap and accumulated times of flight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LapTimes<T: Real> {
    /// Time in the nonlinear crystal per lap, s.
    pub dtau1: T,
    /// Total time in the nonlinear crystal, s.
    pub t1: T,
    /// Total time in the gain medium, s.
    pub t2: T,
}

pub fn lap_times<T: Real>(l_i: T, vg: T, dtau2: T, n_laps: u64) -> LapTimes<T> {
    let n = T::lit(n_laps as f64);
    let dtau1 = l_i / vg;
    LapTimes {
        dtau1,
        t1: n * dtau1,
        t2: n * dtau2,
    }
}

/// Accumulated squeezing `r` and its level `10 log10(e^{2r})` in dB.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Squeezing<T: Real> {
    pub r: T,
    pub level_db: T,
}

pub fn squeezing_level_db<T: Real>(r: T) -> T {
    T::lit(20.0) * r / T::LN_10()
}

pub fn squeezing_parameter<T: Real>(
    t1: T,
    omega_s: T,
    amplitude: T,
    chi2_tilde: T,
) -> Squeezing<T> {
    let r = t1 * omega_s * amplitude * chi2_tilde;
    Squeezing {
        r,
        level_db: squeezing_level_db(r),
    }
}

/// Displacement rate of the gain medium, s^-1.
///
/// `gamma = sqrt(2) pi (c / lambda_s) (sigma_em / sigma) rho0 dV`. Passing
/// `sigma_em = sigma` and `rho0 dV = 1` gives the ideal rate.
pub fn gain_rate<T: Real>(lambda_s: T, sigma_em: T, sigma: T, rho0: T, dv: T) -> T {
    T::SQRT_2() * T::PI() * T::lit(SPEED_OF_LIGHT) / lambda_s * (sigma_em / sigma) * rho0 * dv
}

/// Accumulated displacement `alpha = dtau2 gamma N`.
pub fn displacement_parameter<T: Real>(dtau2: T, gamma: T, n_laps: u64) -> T {
    dtau2 * gamma * T::lit(n_laps as f64)
}

/// Effective displacement after the lap-by-lap product with `phi = pi`:
/// `alpha [sinh r / r - (cosh r - 1) / r]`.
pub fn lie_trotter_alpha_prime<T: Real>(alpha: T, r: T) -> T {
    alpha * (sinhc(r) - cosh_m1_over(r))
}

/// `<a^dag a>` of the squeezed coherent output.
pub fn mean_photon_number<T: Real>(r: T, alpha_prime: T) -> T {
    let (s, c) = (r.sinh(), r.cosh());
    let a2 = alpha_prime * alpha_prime;
    a2 * (c * c + T::lit(2.0) * s * c) + (T::one() + a2) * s * s
}

/// Output radiant flux `hbar omega_s n / (4 N (dtau1 + dtau2))`, W.
pub fn output_flux<T: Real>(
    r: T,
    alpha_prime: T,
    omega_s: T,
    n_laps: u64,
    dtau1: T,
    dtau2: T,
) -> T {
    let n = T::lit(n_laps as f64);
    T::lit(HBAR) * omega_s * mean_photon_number(r, alpha_prime)
        / (T::lit(4.0) * n * (dtau1 + dtau2))
}

/// Every intermediate of the design chain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DesignReport<T: Real> {
    pub scenario: ResonatorScenario<T>,
    /// Pump amplitude, V/m.
    pub amplitude: T,
    pub laps: LapTimes<T>,
    pub signal: BandPoint<T>,
    pub lambda_s: T,
    pub squeezing: Squeezing<T>,
    /// Coupling `beta = omega_s A chi2_tilde / v_g`, m^-1.
    pub beta: T,
    /// Squeezing Hamiltonian strength `hbar omega_s A chi2_tilde`, J.
    pub kappa: T,
    pub gamma: T,
    pub alpha: T,
    pub alpha_prime: T,
    pub mean_n: T,
    pub w_out: T,
    pub pump: PumpDiagnostic<T>,
}

/// Run the full chain from pump and gain parameters to the output flux.
pub fn design<T: Real>(scenario: &ResonatorScenario<T>) -> Result<DesignReport<T>> {
    scenario.validate()?;
    let s = scenario;
    let c = T::lit(SPEED_OF_LIGHT);
    let amplitude = pump_amplitude(s.w_pump, s.d, s.n_refr);
    let vg = s.vg_over_c * c;
    let laps = lap_times(s.l_i, vg, s.dtau2, s.n_laps);
    let signal = solve_k_for_vg(s.vg_over_c, s.signal_band, &s.crystal)?;
    let omega_s = signal.omega;
    let lambda_s = T::TAU() * c / omega_s;
    let squeezing = squeezing_parameter(laps.t1, omega_s, amplitude, s.chi2_tilde);
    let gamma = gain_rate(lambda_s, s.sigma_em, s.beam_area(), s.rho0, s.gain_volume());
    let alpha = displacement_parameter(s.dtau2, gamma, s.n_laps);
    let alpha_prime = lie_trotter_alpha_prime(alpha, squeezing.r);
    let mean_n = mean_photon_number(squeezing.r, alpha_prime);
    let w_out = output_flux(
        squeezing.r,
        alpha_prime,
        omega_s,
        s.n_laps,
        laps.dtau1,
        s.dtau2,
    );
    let pump = pump_band_diagnostic(omega_s, s.pump_band, &s.crystal)?;
    Ok(DesignReport {
        scenario: *s,
        amplitude,
        laps,
        signal,
        lambda_s,
        squeezing,
        beta: omega_s * amplitude * s.chi2_tilde / vg,
        kappa: T::lit(HBAR) * omega_s * amplitude * s.chi2_tilde,
        gamma,
        alpha,
        alpha_prime,
        mean_n,
        w_out,
        pump,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pump_amplitude_examples() {
        let a = pump_amplitude(1e-3f64, 5e-6, 1.0);
        assert!((a / 9.79e4 - 1.0).abs() < 5e-3, "{a}");
        assert!((pump_amplitude(4e-3f64, 5e-6, 1.0) / a - 2.0).abs() < 1e-12);
        assert_eq!(pump_amplitude(0.0f64, 5e-6, 1.0), 0.0);
    }

    #[test]
    fn lap_time_examples() {
        let vg = 0.05 * SPEED_OF_LIGHT;
        let t = lap_times(5.5e-6f64, vg, 4e-14, 1000);
        assert!((t.t1 / 3.67e-10 - 1.0).abs() < 5e-3);
        assert!((t.t2 - 4e-11).abs() < 1e-24);
        let one = lap_times(5.5e-6f64, vg, 4e-14, 1);
        assert_eq!(one.t1, one.dtau1);
        let fast = lap_times(5.5e-6f64, 2.0 * vg, 4e-14, 1000);
        assert!((fast.t1 * 2.0 / t.t1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn squeezing_examples() {
        let s = squeezing_parameter(3.67e-10f64, 2.03e15, 9.79e4, 25.2e-12);
        assert!((s.r / 1.84 - 1.0).abs() < 0.01);
        assert!((s.level_db - 15.9).abs() < 0.1);
        assert_eq!(
            squeezing_parameter(0.0f64, 2.03e15, 9.79e4, 25.2e-12).level_db,
            0.0
        );
        assert!((squeezing_level_db(1.0f64) - 8.69).abs() < 5e-3);
    }

    #[test]
    fn gain_and_alpha() {
        let sigma = std::f64::consts::PI * 25e-12;
        let dv = SPEED_OF_LIGHT * 4e-14 * sigma;
        let g = gain_rate(9.29e-7f64, 1e-24, sigma, 1.45e24, dv);
        assert!((g / 2.50e10 - 1.0).abs() < 0.01, "{g}");
        assert_eq!(gain_rate(9.29e-7f64, 1e-24, sigma, 0.0, dv), 0.0);
        let ideal = gain_rate(9.29e-7f64, 1.0, 1.0, 1.0, 1.0);
        assert!(
            (ideal - 2f64.sqrt() * std::f64::consts::PI * SPEED_OF_LIGHT / 9.29e-7).abs() < 1.0
        );
        let alpha = displacement_parameter(4e-14, g, 1000);
        assert!((alpha - 1.0).abs() < 0.01);
        assert_eq!(displacement_parameter(4e-14, g, 0), 0.0);
    }

    #[test]
    fn alpha_prime_examples() {
        let ap = lie_trotter_alpha_prime(1.0f64, 1.84);
        assert!((ap / 0.458 - 1.0).abs() < 5e-3, "{ap}");
        assert_eq!(lie_trotter_alpha_prime(0.7f64, 0.0), 0.7);
        let mut last = f64::INFINITY;
        for i in 0..50 {
            let v = lie_trotter_alpha_prime(1.0f64, i as f64 * 0.05);
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn photon_number_and_flux() {
        assert!((mean_photon_number(0.0f64, 0.6) - 0.36).abs() < 1e-15);
        assert!((mean_photon_number(0.8f64, 0.0) - 0.8f64.sinh().powi(2)).abs() < 1e-15);
        assert!((mean_photon_number(1.84f64, 0.458) - 17.7).abs() < 0.1);
        assert_eq!(output_flux(0.0f64, 0.0, 2e15, 1000, 3.67e-13, 4e-14), 0.0);
        let w1 = output_flux(1.0f64, 0.3, 2e15, 1000, 3.67e-13, 4e-14);
        let ratio = w1 / mean_photon_number(1.0, 0.3);
        let w2 = output_flux(1.5f64, 0.2, 2e15, 1000, 3.67e-13, 4e-14);
        assert!((w2 / mean_photon_number(1.5, 0.2) / ratio - 1.0).abs() < 1e-14);
    }

    #[test]
    fn default_scenario_chain() {
        let rep = design(&ResonatorScenario::<f64>::default()).unwrap();
        assert!((rep.squeezing.r / 1.84 - 1.0).abs() < 0.01);
        assert!((rep.alpha_prime / 0.458 - 1.0).abs() < 5e-3);
        assert!((rep.w_out / 2.31e-9 - 1.0).abs() < 0.03);
        // r accumulates N crystal passes of beta l_I
        let r_from_beta = rep.beta * rep.scenario.l_i * rep.scenario.n_laps as f64;
        assert!((r_from_beta / rep.squeezing.r - 1.0).abs() < 1e-12);
        let r_from_kappa = rep.kappa * rep.laps.t1 / HBAR;
        assert!((r_from_kappa / rep.squeezing.r - 1.0).abs() < 1e-12);
        let k_p = rep.pump.k_p.expect("pump frequency lies on band 8");
        assert!(k_p >= 0.0 && (rep.pump.normalized - 2.37).abs() < 0.01);
    }

    #[test]
    fn scenario_validation() {
        let mut s = ResonatorScenario::<f64>::default();
        assert!(s.validate().is_ok());
        s.d = 0.0;
        assert!(s.validate().is_err());
        let s = ResonatorScenario::<f64> {
            n_laps: 0,
            ..Default::default()
        };
        assert!(s.validate().is_err());
    }
}
