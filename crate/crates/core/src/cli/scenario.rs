use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};

use crate::crystal_design::ResonatorScenario;
use crate::entanglement::{Axis, Grid};

/// Keys accepted in a scenario file.
pub const SCENARIO_KEYS: [&str; 22] = [
    "w_pump",
    "d",
    "chi2_tilde",
    "n_laps",
    "vg_over_c",
    "l_i",
    "sigma_em",
    "rho0",
    "dtau2",
    "n_refr",
    "l_a",
    "l_b",
    "eps_a_rel",
    "eps_b_rel",
    "signal_band",
    "pump_band",
    "out",
    "grid",
    "cutoff",
    "dim",
    "k_points",
    "bands",
];

/// Resonator parameters plus the optional run settings a file may carry.
///
/// Anything absent keeps the [`ResonatorScenario`] default. Command-line
/// flags take precedence over the run settings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScenarioFile {
    pub scenario: ResonatorScenario<f64>,
    pub out: Option<PathBuf>,
    pub grid: Option<Grid>,
    pub cutoff: Option<usize>,
    pub dim: Option<usize>,
    pub k_points: Option<usize>,
    pub bands: Option<usize>,
}

fn number(key: &str, raw: &str) -> anyhow::Result<f64> {
    let v: f64 = raw
        .trim()
        .parse()
        .with_context(|| format!("{key}: `{raw}` is not a number"))?;
    if !v.is_finite() {
        bail!("{key}: value must be finite");
    }
    Ok(v)
}

fn count<N: std::str::FromStr>(key: &str, raw: &str) -> anyhow::Result<N> {
    raw.trim()
        .parse()
        .map_err(|_| anyhow!("{key}: `{raw}` is not a non-negative integer"))
}

fn parse_axis(raw: &str) -> anyhow::Result<Axis> {
    let parts: Vec<&str> = raw.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        bail!("axis `{raw}` must look like start:end:n");
    };
    Ok(Axis::new(
        number("axis start", a)?,
        number("axis end", b)?,
        count("axis n", n)?,
    )?)
}

/// Parse `r0:r1:n,a0:a1:n`.
pub fn parse_grid(raw: &str) -> anyhow::Result<Grid> {
    let (r, a) = raw
        .split_once(',')
        .ok_or_else(|| anyhow!("grid `{raw}` must look like r0:r1:n,a0:a1:n"))?;
    Ok(Grid {
        r: parse_axis(r)?,
        alpha_prime: parse_axis(a)?,
    })
}

impl ScenarioFile {
    /// Set one key from its textual value.
    pub fn set(&mut self, key: &str, raw: &str) -> anyhow::Result<()> {
        let s = &mut self.scenario;
        match key {
            "w_pump" => s.w_pump = number(key, raw)?,
            "d" => s.d = number(key, raw)?,
            "chi2_tilde" => s.chi2_tilde = number(key, raw)?,
            "n_laps" => s.n_laps = count(key, raw)?,
            "vg_over_c" => s.vg_over_c = number(key, raw)?,
            "l_i" => s.l_i = number(key, raw)?,
            "sigma_em" => s.sigma_em = number(key, raw)?,
            "rho0" => s.rho0 = number(key, raw)?,
            "dtau2" => s.dtau2 = number(key, raw)?,
            "n_refr" => s.n_refr = number(key, raw)?,
            "l_a" => s.crystal.l_a = number(key, raw)?,
            "l_b" => s.crystal.l_b = number(key, raw)?,
            "eps_a_rel" => s.crystal.eps_a_rel = number(key, raw)?,
            "eps_b_rel" => s.crystal.eps_b_rel = number(key, raw)?,
            "signal_band" => s.signal_band = count(key, raw)?,
            "pump_band" => s.pump_band = count(key, raw)?,
            "out" => self.out = Some(PathBuf::from(raw.trim())),
            "grid" => self.grid = Some(parse_grid(raw.trim())?),
            "cutoff" => self.cutoff = Some(count(key, raw)?),
            "dim" => self.dim = Some(count(key, raw)?),
            "k_points" => self.k_points = Some(count(key, raw)?),
            "bands" => self.bands = Some(count(key, raw)?),
            other => bail!(
                "unknown scenario key `{other}` (expected one of: {})",
                SCENARIO_KEYS.join(", ")
            ),
        }
        Ok(())
    }

    /// Parse either a JSON object or `key = value` lines.
    ///
    /// In the line format `#` starts a comment and blank lines are skipped.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut file = Self::default();
        if text.trim_start().starts_with('{') {
            let value: serde_json::Value =
                serde_json::from_str(text).context("scenario is not valid JSON")?;
            let obj = value
                .as_object()
                .ok_or_else(|| anyhow!("scenario JSON must be an object"))?;
            for (key, v) in obj {
                let raw = match v {
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::String(s) => s.clone(),
                    _ => bail!("{key}: expected a number or a string"),
                };
                file.set(key, &raw)?;
            }
        } else {
            for (i, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, raw) = line
                    .split_once('=')
                    .ok_or_else(|| anyhow!("line {}: expected `key = value`", i + 1))?;
                file.set(key.trim(), raw)
                    .with_context(|| format!("line {}", i + 1))?;
            }
        }
        file.scenario.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading scenario {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in scenario {}", path.display()))
    }
}
