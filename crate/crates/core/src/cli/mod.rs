//! Command-line front end. Each subcommand writes one CSV or JSON artifact.

mod commands;
mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

pub use commands::{
    bands_csv, criterion_json, design_json, design_report, entangle_csv, entangle_point,
    parse_n_list, parse_point, sci, trotter_csv,
};
pub use scenario::{parse_grid, ScenarioFile, SCENARIO_KEYS};

use crate::entanglement::DEFAULT_CUTOFF;
use crate::fock_core::SqueezeParam;
use crate::scalar::c;

#[derive(Debug, Parser)]
#[command(
    name = "pcsqueeze",
    version,
    about = "Squeezed-light source design and Fock-space checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scenario file, JSON or `key = value` lines, SI units.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overwrite an existing output file.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Band structure and group velocity across the reduced zone.
    Bands {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k_points: Option<usize>,
        #[arg(long)]
        bands: Option<usize>,
    },
    /// Pump-to-output design chain as a JSON report.
    Design {
        #[command(flatten)]
        common: Common,
    },
    /// Infidelity of the N-lap product against its large-N limit.
    Trotter {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha_im: f64,
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
        /// `8,16,32` or the doubling range `8..512`.
        #[arg(long, default_value = "8..512")]
        n_list: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Inseparability criterion of the split beam over an `(r, alpha')` grid.
    Entangle {
        #[command(flatten)]
        common: Common,
        /// `r0:r1:n,a0:a1:n`
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Single point `r,alpha_prime`; emits JSON instead of CSV.
        #[arg(long)]
        point: Option<String>,
    },
}

const DEFAULT_K_POINTS: usize = 200;
const DEFAULT_BANDS: usize = 8;
const DEFAULT_DIM: usize = 60;

fn load(common: &Common) -> anyhow::Result<ScenarioFile> {
    match &common.scenario {
        Some(path) => ScenarioFile::load(path),
        None => Ok(ScenarioFile::default()),
    }
}

/// Write to `path` (refusing to replace a file unless `force`) or stdout.
pub fn emit(text: &str, path: Option<&Path>, force: bool) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            if p.exists() && !force {
                bail!("{} exists; pass --force to overwrite", p.display());
            }
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Run a parsed command and return its artifact with the output path.
pub fn render(command: &Command) -> anyhow::Result<(String, Option<PathBuf>, bool)> {
    let (common, text, file) = match command {
        Command::Bands {
            common,
            k_points,
            bands,
        } => {
            let file = load(common)?;
            let k = k_points.or(file.k_points).unwrap_or(DEFAULT_K_POINTS);
            let n = bands.or(file.bands).unwrap_or(DEFAULT_BANDS);
            (common, bands_csv(&file.scenario.crystal, k, n)?, file)
        }
        Command::Design { common } => {
            let file = load(common)?;
            (common, design_report(&file.scenario)?, file)
        }
        Command::Trotter {
            common,
            alpha,
            alpha_im,
            r,
            phi,
            n_list,
            dim,
        } => {
            let file = load(common)?;
            let zeta = SqueezeParam::new(*r, *phi)?;
            let dim = dim.or(file.dim).unwrap_or(DEFAULT_DIM);
            let text = trotter_csv(c(*alpha, *alpha_im), zeta, &parse_n_list(n_list)?, dim)?;
            (common, text, file)
        }
        Command::Entangle {
            common,
            grid,
            cutoff,
            point,
        } => {
            let file = load(common)?;
            let cutoff = cutoff.or(file.cutoff).unwrap_or(DEFAULT_CUTOFF);
            let text = if let Some(p) = point {
                let (r, ap) = parse_point(p)?;
                entangle_point(r, ap, cutoff)?
            } else {
                let grid = match grid {
                    Some(g) => parse_grid(g)?,
                    None => file.grid.unwrap_or_default(),
                };
                entangle_csv(&grid, cutoff)?
            };
            (common, text, file)
        }
    };
    let out = common.out.clone().or(file.out);
    Ok((text, out, common.force))
}

/// Parse arguments, run, and write the artifact.
pub fn run<I, S>(args: I) -> anyhow::Result<()>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (text, out, force) = render(&cli.command)?;
    emit(&text, out.as_deref(), force)
}
