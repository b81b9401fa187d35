//! Flat `key = value` run configuration.
//!
//! ```text
//! # Mexican hat
//! g = 0.5, 0, -0.5
//! normalize = false
//! sample_range = -5, 5
//! sample_count = 1001
//! signal = hat.csv
//! mu = 0.5
//! mu = 1
//! s = -1, 0, 1
//! ```
//!
//! Values may be comma separated, and repeating a list key appends to it.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mexhat_core::fock_space::GCoefficients;
use mexhat_core::wavelet_builder::{
    build_wavelet, project_admissible, solve_free_coefficient, MotherWavelet,
};

use crate::error::{CliError, Result};

pub const DEFAULT_SAMPLE_RANGE: (f64, f64) = (-5.0, 5.0);
pub const DEFAULT_SAMPLE_COUNT: usize = 1001;

const LIST_KEYS: &[&str] = &["g", "partial_g", "raw_g", "mu", "s"];
const SCALAR_KEYS: &[&str] = &[
    "free_index",
    "project",
    "normalize",
    "sample_range",
    "sample_count",
    "signal",
    "output",
    "format",
];

#[derive(Debug, Clone, PartialEq)]
pub enum WaveletDef {
    /// Coefficients used as given; must already be admissible.
    Exact(Vec<f64>),
    /// Coefficients with one even slot solved for.
    Partial { g: Vec<f64>, free_index: usize },
    /// Arbitrary coefficients, projected when `project` is set.
    Raw { g: Vec<f64>, project: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSpec {
    pub def: WaveletDef,
    pub normalize: bool,
    pub sample_range: (f64, f64),
    pub sample_count: usize,
}

impl WaveletSpec {
    /// Coefficients after any solving or projection, before the gate.
    pub fn coefficients(&self) -> Result<GCoefficients> {
        Ok(match &self.def {
            WaveletDef::Exact(g) => GCoefficients::new(g.clone())?,
            WaveletDef::Partial { g, free_index } => {
                solve_free_coefficient(&GCoefficients::new(g.clone())?, *free_index)?
            }
            WaveletDef::Raw { g, project: true } => project_admissible(g)?,
            WaveletDef::Raw { g, project: false } => GCoefficients::new(g.clone())?,
        })
    }

    pub fn build(&self) -> Result<MotherWavelet> {
        let w = build_wavelet(&self.coefficients()?)?;
        Ok(if self.normalize { w.normalized()? } else { w })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "svg" | "svg-polyline" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown format {other:?}, expected csv or svg")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub wavelet: WaveletSpec,
    pub signal_path: Option<PathBuf>,
    pub mu_grid: Vec<f64>,
    pub s_grid: Vec<f64>,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl RunConfig {
    /// Reads a config file. Relative `signal` and `output` paths are taken
    /// relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        let mut cfg = RunConfig::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        cfg.signal_path = cfg.signal_path.map(|p| base.join(p));
        cfg.output_path = cfg.output_path.map(|p| base.join(p));
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let entries = Entries::parse(text)?;

        let modes: Vec<&str> = ["g", "partial_g", "raw_g"]
            .into_iter()
            .filter(|k| entries.has(k))
            .collect();
        let def = match modes.as_slice() {
            ["g"] => {
                entries.forbid("free_index", "g")?;
                entries.forbid("project", "g")?;
                WaveletDef::Exact(entries.numbers("g")?)
            }
            ["partial_g"] => {
                entries.forbid("project", "partial_g")?;
                let free_index = entries
                    .scalar::<usize>("free_index")?
                    .ok_or_else(|| CliError::Invalid("partial_g needs free_index".into()))?;
                WaveletDef::Partial {
                    g: entries.numbers("partial_g")?,
                    free_index,
                }
            }
            ["raw_g"] => {
                entries.forbid("free_index", "raw_g")?;
                WaveletDef::Raw {
                    g: entries.numbers("raw_g")?,
                    project: entries.scalar::<bool>("project")?.unwrap_or(false),
                }
            }
            [] => {
                return Err(CliError::Invalid(
                    "one of g, partial_g or raw_g is required".into(),
                ))
            }
            _ => {
                return Err(CliError::Invalid(format!(
                    "exactly one wavelet definition allowed, found {}",
                    modes.join(", ")
                )))
            }
        };

        let sample_range = match entries.get("sample_range") {
            None => DEFAULT_SAMPLE_RANGE,
            Some(e) => {
                let v = e.numbers()?;
                if v.len() != 2 {
                    return Err(e.error("sample_range needs exactly two values"));
                }
                if !(v[0] < v[1]) {
                    return Err(e.error("sample_range needs lo < hi"));
                }
                (v[0], v[1])
            }
        };
        let sample_count = entries
            .scalar::<usize>("sample_count")?
            .unwrap_or(DEFAULT_SAMPLE_COUNT);
        if sample_count < 2 {
            return Err(CliError::Invalid(format!(
                "sample_count must be at least 2, got {sample_count}"
            )));
        }

        let mu_grid = entries.numbers("mu")?;
        let s_grid = entries.numbers("s")?;
        if mu_grid.is_empty() != s_grid.is_empty() {
            return Err(CliError::Invalid(
                "mu and s grids must be given together".into(),
            ));
        }
        if let Some(bad) = mu_grid.iter().find(|&&mu| !(mu > 0.0)) {
            return Err(CliError::Invalid(format!("mu must be positive, got {bad}")));
        }

        Ok(RunConfig {
            wavelet: WaveletSpec {
                def,
                normalize: entries.scalar::<bool>("normalize")?.unwrap_or(false),
                sample_range,
                sample_count,
            },
            signal_path: entries.scalar::<String>("signal")?.map(PathBuf::from),
            mu_grid,
            s_grid,
            output_path: entries.scalar::<String>("output")?.map(PathBuf::from),
            output_format: entries
                .scalar::<OutputFormat>("format")?
                .unwrap_or_default(),
        })
    }
}

#[derive(Debug)]
struct Entry {
    line: usize,
    values: Vec<String>,
}

impl Entry {
    fn error(&self, msg: impl Into<String>) -> CliError {
        CliError::Config {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn numbers(&self) -> Result<Vec<f64>> {
        self.values
            .iter()
            .map(|v| match v.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(self.error(format!("expected a finite number, got {v:?}"))),
            })
            .collect()
    }
}

/// Each key maps to every line that set it, in file order.
struct Entries(HashMap<String, Vec<Entry>>);

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map: HashMap<String, Vec<Entry>> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| CliError::Config {
                line,
                msg: format!("expected key = value, got {content:?}"),
            })?;
            let key = key.trim();
            let err = |msg: String| CliError::Config { line, msg };
            if !LIST_KEYS.contains(&key) && !SCALAR_KEYS.contains(&key) {
                return Err(err(format!("unknown key {key:?}")));
            }
            if SCALAR_KEYS.contains(&key) && map.contains_key(key) {
                return Err(err(format!("{key} given more than once")));
            }
            let values: Vec<String> = if LIST_KEYS.contains(&key) || key == "sample_range" {
                value.split(',').map(|v| v.trim().to_string()).collect()
            } else {
                vec![value.trim().to_string()]
            };
            if values.iter().any(|v| v.is_empty()) {
                return Err(err(format!("empty value for {key}")));
            }
            map.entry(key.to_string())
                .or_default()
                .push(Entry { line, values });
        }
        Ok(Entries(map))
    }

    fn has(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    fn get(&self, key: &str) -> Option<&Entry> {
        self.0.get(key).and_then(|v| v.first())
    }

    fn forbid(&self, key: &str, mode: &str) -> Result<()> {
        match self.get(key) {
            Some(e) => Err(e.error(format!("{key} does not apply to {mode}"))),
            None => Ok(()),
        }
    }

    fn numbers(&self, key: &str) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for e in self.0.get(key).into_iter().flatten() {
            out.extend(e.numbers()?);
        }
        Ok(out)
    }

    fn scalar<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|e| {
                e.values[0]
                    .parse::<T>()
                    .map_err(|_| e.error(format!("invalid value {:?} for {key}", e.values[0])))
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_keys_append() {
        let cfg = RunConfig::parse("g = 0.5\ng = 0 # middle\ng = -0.5\nmu = 1, 2\nmu = 3\ns = 0\n")
            .unwrap();
        assert_eq!(cfg.wavelet.def, WaveletDef::Exact(vec![0.5, 0.0, -0.5]));
        assert_eq!(cfg.mu_grid, vec![1.0, 2.0, 3.0]);
        assert_eq!(cfg.wavelet.sample_range, DEFAULT_SAMPLE_RANGE);
        assert_eq!(cfg.output_format, OutputFormat::Csv);
    }

    #[test]
    fn exactly_one_mode() {
        assert!(matches!(
            RunConfig::parse("normalize = true\n"),
            Err(CliError::Invalid(_))
        ));
        assert!(matches!(
            RunConfig::parse("g = 1\nraw_g = 1\n"),
            Err(CliError::Invalid(_))
        ));
        assert!(RunConfig::parse("partial_g = 0, 0, -0.5\n").is_err());
        let cfg = RunConfig::parse("partial_g = 0, 0, -0.5\nfree_index = 0\n").unwrap();
        assert_eq!(
            cfg.wavelet.coefficients().unwrap().as_slice(),
            &[0.5, 0.0, -0.5]
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        match RunConfig::parse("g = 1\n\nsample_count = two\n") {
            Err(CliError::Config { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match RunConfig::parse("# c\nwhat = 1\n") {
            Err(CliError::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            RunConfig::parse("g = 1\nformat = csv\nformat = svg\n"),
            Err(CliError::Config { line: 3, .. })
        ));
    }

    #[test]
    fn range_and_count_checks() {
        assert!(RunConfig::parse("g = 1\nsample_range = 5, -5\n").is_err());
        assert!(RunConfig::parse("g = 1\nsample_range = 1\n").is_err());
        assert!(RunConfig::parse("g = 1\nsample_count = 1\n").is_err());
        assert!(RunConfig::parse("g = 1\nmu = 0\ns = 0\n").is_err());
        assert!(RunConfig::parse("g = 1\nmu = 1\n").is_err());
        let cfg = RunConfig::parse("g = 1\nsample_range = -2, 3\nsample_count = 2\nformat = svg\n")
            .unwrap();
        assert_eq!(cfg.wavelet.sample_range, (-2.0, 3.0));
        assert_eq!(cfg.wavelet.sample_count, 2);
        assert_eq!(cfg.output_format, OutputFormat::Svg);
    }

    #[test]
    fn projection_mode() {
        let cfg = RunConfig::parse("raw_g = 1, 0, 0\nproject = true\n").unwrap();
        let w = cfg.wavelet.build().unwrap();
        assert!(w.residual().abs() < 1e-15);
        let cfg = RunConfig::parse("raw_g = 1, 0, 0\n").unwrap();
        assert!(cfg.wavelet.build().is_err());
    }
}
