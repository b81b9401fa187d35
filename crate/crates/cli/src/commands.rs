//! The `build`, `sample` and `cwt` subcommands as library calls. Each
//! returns the bytes it would write so that callers decide where they go.

use std::fmt::Write as _;
use std::path::Path;

use mexhat_core::fock_space::p0_overlap;
use mexhat_core::transform_engine::{linspace, scalogram};
use mexhat_core::wavelet_builder::{build_wavelet_ungated, l2_norm, zero_crossings, MotherWavelet};

use crate::config::{OutputFormat, RunConfig, WaveletSpec};
use crate::error::{CliError, Result};
use crate::signal::read_signal;

#[derive(Debug, Clone, PartialEq)]
pub struct BuildReport {
    pub g: Vec<f64>,
    pub envelope: Vec<f64>,
    /// `⟨p=0|ψ⟩`; zero exactly when the wavelet is admissible.
    pub residual: f64,
    pub l2_norm: f64,
    pub crossings: usize,
    pub admissible: bool,
}

impl BuildReport {
    pub fn render(&self) -> String {
        let list = |v: &[f64]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        let _ = writeln!(out, "g: [{}]", list(&self.g));
        let _ = writeln!(out, "envelope: [{}]", list(&self.envelope));
        let _ = writeln!(out, "residual: {}", self.residual);
        let _ = writeln!(out, "l2_norm: {}", self.l2_norm);
        let _ = writeln!(out, "crossings: {}", self.crossings);
        let _ = writeln!(out, "admissible: {}", self.admissible);
        out
    }
}

/// Reports on the wavelet even when it fails the gate; `admissible` says
/// whether it did.
pub fn cmd_build(spec: &WaveletSpec) -> Result<BuildReport> {
    let g = spec.coefficients()?;
    let (w, admissible) = match spec.build() {
        Ok(w) => (w, true),
        Err(CliError::Core(mexhat_core::Error::Inadmissible { .. })) => {
            (build_wavelet_ungated(&g)?, false)
        }
        Err(e) => return Err(e),
    };
    Ok(BuildReport {
        g: w.g().as_slice().to_vec(),
        envelope: w.envelope().coeffs().to_vec(),
        residual: p0_overlap(w.g()),
        l2_norm: l2_norm(&w),
        crossings: zero_crossings(&w)?.count(),
        admissible,
    })
}

pub fn sample_points(w: &MotherWavelet, spec: &WaveletSpec) -> Vec<(f64, f64)> {
    let (lo, hi) = spec.sample_range;
    linspace(lo, hi, spec.sample_count)
        .into_iter()
        .map(|x| (x, w.evaluate(x)))
        .collect()
}

pub fn cmd_sample(spec: &WaveletSpec, format: OutputFormat) -> Result<String> {
    let w = spec.build()?;
    let points = sample_points(&w, spec);
    Ok(match format {
        OutputFormat::Csv => sample_csv(&points),
        OutputFormat::Svg => sample_svg(&points),
    })
}

pub fn sample_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,psi\n");
    for (x, y) in points {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

/// One polyline, y flipped so that up is positive, viewBox fitted to the data.
pub fn sample_svg(points: &[(f64, f64)]) -> String {
    let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
        points.iter().map(pick).fold(init, f)
    };
    let x_min = fold(f64::min, f64::INFINITY, |p| p.0);
    let x_max = fold(f64::max, f64::NEG_INFINITY, |p| p.0);
    let y_min = fold(f64::min, f64::INFINITY, |p| p.1);
    let y_max = fold(f64::max, f64::NEG_INFINITY, |p| p.1);
    let width = x_max - x_min;
    let (top, height) = if y_max > y_min {
        (-y_max, y_max - y_min)
    } else {
        (-y_max - 0.5, 1.0)
    };
    // + 0.0 turns -0 into 0
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{},{}", x, -y + 0.0))
        .collect();
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" preserveAspectRatio=\"none\">\n\
         <polyline fill=\"none\" stroke=\"black\" vector-effect=\"non-scaling-stroke\" points=\"{}\"/>\n\
         </svg>\n",
        x_min,
        top + 0.0,
        width,
        height,
        coords.join(" ")
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct CwtOutput {
    pub csv: String,
    pub warnings: Vec<String>,
}

pub fn cmd_cwt(cfg: &RunConfig) -> Result<CwtOutput> {
    if cfg.output_format != OutputFormat::Csv {
        return Err(CliError::Invalid("cwt writes csv only".into()));
    }
    let path = cfg
        .signal_path
        .as_deref()
        .ok_or_else(|| CliError::Invalid("cwt needs a signal path".into()))?;
    if cfg.mu_grid.is_empty() {
        return Err(CliError::Invalid("cwt needs mu and s grids".into()));
    }
    cwt_on_file(&cfg.wavelet, path, &cfg.mu_grid, &cfg.s_grid)
}

pub fn cwt_on_file(
    spec: &WaveletSpec,
    signal: &Path,
    mus: &[f64],
    ss: &[f64],
) -> Result<CwtOutput> {
    let w = spec.build()?;
    let f = read_signal(signal)?;
    let table = scalogram(&w, &f, mus, ss)?;
    let mut csv = String::from("mu,s,w\n");
    let mut warnings = Vec::new();
    for (mu, s, cell) in table.iter() {
        let _ = writeln!(csv, "{mu},{s},{}", cell.value.re);
        if let Some(short) = cell.shortfall {
            warnings.push(format!(
                "mu = {mu}, s = {s}: wavelet window [{}, {}] extends past signal [{}, {}]",
                short.window.0, short.window.1, short.grid.0, short.grid.1
            ));
        }
    }
    Ok(CwtOutput { csv, warnings })
}
