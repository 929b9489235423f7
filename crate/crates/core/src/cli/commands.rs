use std::fmt::Write as _;

use anyhow::{bail, Context};
use serde_json::{json, Value};

use crate::crystal_design::constants::SPEED_OF_LIGHT;
use crate::crystal_design::{
    band_frequencies, design, group_velocity, CrystalSpec, DesignReport, ResonatorScenario,
};
use crate::entanglement::{criterion_sweep, duan_criterion, CriterionResult, Grid};
use crate::fock_core::{state_fidelity, SqueezeParam};
use crate::scalar::C;
use crate::trotter::{limit_state, trotter_state};

/// Nine significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.8e}")
}

/// `k,band,omega,omega_normalized,vg_over_c` over `k_points` samples of
/// `[0, pi/(l_A+l_B)]`, bands `1..=n_bands`.
pub fn bands_csv(
    spec: &CrystalSpec<f64>,
    k_points: usize,
    n_bands: usize,
) -> anyhow::Result<String> {
    if k_points == 0 || n_bands == 0 {
        bail!("need at least one k point and one band");
    }
    let edge = spec.zone_edge();
    let mut out = String::from("k,band,omega,omega_normalized,vg_over_c\n");
    for j in 0..k_points {
        let k = if k_points == 1 {
            0.0
        } else if j + 1 == k_points {
            edge
        } else {
            edge * j as f64 / (k_points - 1) as f64
        };
        let omegas = band_frequencies(k, n_bands, spec)?;
        for (i, &omega) in omegas.iter().enumerate() {
            let vg = group_velocity(k, i + 1, spec)?;
            writeln!(
                out,
                "{},{},{},{},{}",
                sci(k),
                i + 1,
                sci(omega),
                sci(spec.normalized_frequency(omega)),
                sci(vg / SPEED_OF_LIGHT)
            )?;
        }
    }
    Ok(out)
}

fn quantity(value: f64, unit: &str) -> Value {
    json!({ "value": value, "unit": unit })
}

fn scenario_json(s: &ResonatorScenario<f64>) -> Value {
    json!({
        "w_pump": s.w_pump,
        "d": s.d,
        "chi2_tilde": s.chi2_tilde,
        "n_laps": s.n_laps,
        "vg_over_c": s.vg_over_c,
        "l_i": s.l_i,
        "sigma_em": s.sigma_em,
        "rho0": s.rho0,
        "dtau2": s.dtau2,
        "n_refr": s.n_refr,
        "l_a": s.crystal.l_a,
        "l_b": s.crystal.l_b,
        "eps_a_rel": s.crystal.eps_a_rel,
        "eps_b_rel": s.crystal.eps_b_rel,
        "signal_band": s.signal_band,
        "pump_band": s.pump_band,
    })
}

/// The design report as a JSON value.
pub fn design_json(rep: &DesignReport<f64>) -> Value {
    json!({
        "A": quantity(rep.amplitude, "V/m"),
        "dtau1": quantity(rep.laps.dtau1, "s"),
        "T1": quantity(rep.laps.t1, "s"),
        "omega_s": quantity(rep.signal.omega, "rad/s"),
        "lambda_s": quantity(rep.lambda_s, "m"),
        "k_s": quantity(rep.signal.k, "1/m"),
        "r": quantity(rep.squeezing.r, "1"),
        "squeezing_dB": quantity(rep.squeezing.level_db, "dB"),
        "gamma": quantity(rep.gamma, "1/s"),
        "alpha": quantity(rep.alpha, "1"),
        "alpha_prime": quantity(rep.alpha_prime, "1"),
        "mean_n": quantity(rep.mean_n, "1"),
        "W_out": quantity(rep.w_out, "W"),
        "pump": {
            "omega_p": quantity(rep.pump.omega_p, "rad/s"),
            "omega_normalized": quantity(rep.pump.normalized, "1"),
            "lambda_p": quantity(rep.pump.lambda_p, "m"),
            "band": rep.pump.band_index,
            "k_p": rep.pump.k_p.map_or(Value::Null, |k| quantity(k, "1/m")),
        },
        "scenario": scenario_json(&rep.scenario),
    })
}

pub fn design_report(scenario: &ResonatorScenario<f64>) -> anyhow::Result<String> {
    let rep = design(scenario)?;
    Ok(serde_json::to_string_pretty(&design_json(&rep))? + "\n")
}

/// Parse `8,16,32` or a doubling range `8..512`.
pub fn parse_n_list(raw: &str) -> anyhow::Result<Vec<u64>> {
    let list: Vec<u64> = if let Some((a, b)) = raw.split_once("..") {
        let a: u64 = a.trim().parse().context("N range start")?;
        let b: u64 = b.trim().parse().context("N range end")?;
        if a == 0 || b < a {
            bail!("N range `{raw}` must satisfy 1 <= start <= end");
        }
        std::iter::successors(Some(a), |&n| n.checked_mul(2))
            .take_while(|&n| n <= b)
            .collect()
    } else {
        raw.split(',')
            .map(|s| s.trim().parse().with_context(|| format!("N value `{s}`")))
            .collect::<anyhow::Result<_>>()?
    };
    if list.is_empty() || list.contains(&0) {
        bail!("N list `{raw}` must hold positive integers");
    }
    Ok(list)
}

/// `N,infidelity,leakage` of the N-lap product against the limit state.
pub fn trotter_csv(
    alpha: C<f64>,
    zeta: SqueezeParam<f64>,
    n_list: &[u64],
    dim: usize,
) -> anyhow::Result<String> {
    let target = limit_state(alpha, zeta, dim)?;
    let mut out = String::from("N,infidelity,leakage\n");
    for &n in n_list {
        let ts = trotter_state(alpha, zeta, n, dim)?;
        let infidelity = 1.0 - state_fidelity(&ts.state, &target)?;
        writeln!(out, "{n},{},{}", sci(infidelity), sci(ts.leakage))?;
    }
    Ok(out)
}

/// `r,alpha_prime,criterion,stable` for every grid point, `r` outer.
pub fn entangle_csv(grid: &Grid, cutoff: usize) -> anyhow::Result<String> {
    let rows = criterion_sweep(&grid.r.points(), &grid.alpha_prime.points(), cutoff)?;
    let mut out = String::from("r,alpha_prime,criterion,stable\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            sci(row.r),
            sci(row.alpha_prime),
            sci(row.result.value),
            row.result.stable
        )?;
    }
    Ok(out)
}

fn complex_json(z: C<f64>) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn criterion_json(r: f64, alpha_prime: f64, res: &CriterionResult<f64>) -> Value {
    json!({
        "r": r,
        "alpha_prime": alpha_prime,
        "value": res.value,
        "a_dag_mean": complex_json(res.a_dag_mean),
        "n_mean": res.n_mean,
        "ab_corr": complex_json(res.ab_corr),
        "cutoff": res.cutoff,
        "reference": res.reference,
        "stable": res.stable,
        "leakage": res.leakage,
    })
}

pub fn entangle_point(r: f64, alpha_prime: f64, cutoff: usize) -> anyhow::Result<String> {
    let res = duan_criterion(r, alpha_prime, cutoff)?;
    Ok(serde_json::to_string_pretty(&criterion_json(r, alpha_prime, &res))? + "\n")
}

/// Parse `r,alpha_prime`.
pub fn parse_point(raw: &str) -> anyhow::Result<(f64, f64)> {
    let (r, a) = raw
        .split_once(',')
        .with_context(|| format!("point `{raw}` must look like r,alpha_prime"))?;
    Ok((
        r.trim().parse().context("point r")?,
        a.trim().parse().context("point alpha_prime")?,
    ))
}
