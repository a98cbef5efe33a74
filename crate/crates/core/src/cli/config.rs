//! Experiment settings from flags and flat `key = value` files.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::operators::SequenceFamily;
use crate::target::TargetFunction;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "DURRMEYER_OUT";
pub const DEFAULT_OUT_DIR: &str = "out";
pub const MIN_GRID: usize = 11;

/// Settings before defaults are applied; every field is optional so that a
/// file and the command line can be layered.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub presets: Option<Vec<String>>,
    pub n_values: Option<Vec<usize>>,
    pub function: Option<String>,
    pub grid: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub svg: Option<bool>,
    pub a0: Option<String>,
    pub a1: Option<String>,
    pub name: Option<String>,
}

impl PartialConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key=value, got `{line}`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::InvalidConfig(format!("line {}: {what} `{value}`", lineno + 1));
            match key {
                "preset" | "presets" => cfg.presets = Some(split_list(value)),
                "n" => cfg.n_values = Some(parse_usize_list(value).map_err(|_| bad("bad degree list"))?),
                "f" | "function" => cfg.function = Some(value.to_string()),
                "grid" => cfg.grid = Some(value.parse().map_err(|_| bad("bad grid size"))?),
                "out" => cfg.out_dir = Some(PathBuf::from(value)),
                "svg" => cfg.svg = Some(parse_bool(value).ok_or_else(|| bad("bad boolean"))?),
                "a0" => cfg.a0 = Some(value.to_string()),
                "a1" => cfg.a1 = Some(value.to_string()),
                "name" => cfg.name = Some(value.to_string()),
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(self, base: Self) -> Self {
        Self {
            presets: self.presets.or(base.presets),
            n_values: self.n_values.or(base.n_values),
            function: self.function.or(base.function),
            grid: self.grid.or(base.grid),
            out_dir: self.out_dir.or(base.out_dir),
            svg: self.svg.or(base.svg),
            a0: self.a0.or(base.a0),
            a1: self.a1.or(base.a1),
            name: self.name.or(base.name),
        }
    }

    pub fn resolve(self) -> Result<ExperimentConfig> {
        let mut families = Vec::new();
        for name in self.presets.unwrap_or_default() {
            families.push(SequenceFamily::named(&name)?);
        }
        match (self.a0, self.a1) {
            (Some(a0), Some(a1)) => families.push(SequenceFamily::linear(
                "m1-custom",
                Expr::parse(&a0)?,
                Expr::parse(&a1)?,
                None,
            )),
            (None, None) => {}
            _ => return Err(Error::InvalidConfig("--a0 and --a1 must be given together".into())),
        }
        let function = self.function.unwrap_or_else(|| "example1".into());
        let target = TargetFunction::named(&function)?;
        let cfg = ExperimentConfig {
            families,
            n_values: self.n_values.unwrap_or_else(|| vec![10]),
            name: self.name.unwrap_or_else(|| target.id().to_string()),
            target,
            grid: self.grid.unwrap_or(crate::grid::DEFAULT_GRID_POINTS),
            out_dir: self.out_dir.unwrap_or_else(default_out_dir),
            svg: self.svg.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

/// A fully resolved experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub families: Vec<SequenceFamily>,
    pub n_values: Vec<usize>,
    pub target: TargetFunction,
    pub grid: usize,
    pub out_dir: PathBuf,
    pub svg: bool,
    /// Stem of every output file.
    pub name: String,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() {
            return Err(Error::InvalidConfig(
                "no operator selected; use --preset or --a0/--a1".into(),
            ));
        }
        if self.n_values.is_empty() {
            return Err(Error::InvalidConfig("no degree given; use --n".into()));
        }
        if self.grid < MIN_GRID {
            return Err(Error::InvalidConfig(format!(
                "grid resolution {} is below the minimum {MIN_GRID}",
                self.grid
            )));
        }
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(Error::InvalidConfig(format!(
                "`{}` is not a usable file stem",
                self.name
            )));
        }
        for fam in &self.families {
            for &n in &self.n_values {
                if n < fam.min_degree() {
                    return Err(Error::InvalidConfig(format!(
                        "{} needs n >= {}, got {n}",
                        fam.name,
                        fam.min_degree()
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

pub fn parse_usize_list(s: &str) -> std::result::Result<Vec<usize>, std::num::ParseIntError> {
    split_list(s).iter().map(|t| t.parse()).collect()
}

pub fn parse_f64_list(s: &str) -> std::result::Result<Vec<f64>, std::num::ParseFloatError> {
    split_list(s).iter().map(|t| t.parse()).collect()
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" => Some(false),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_file() {
        let cfg = PartialConfig::parse(
            "# experiment\npreset = classical, m2-tilde\nn=5,10\n f = example3 \ngrid=51\nsvg=yes\nout=/tmp/x # trailing\n",
        )
        .unwrap();
        assert_eq!(
            cfg.presets.as_deref(),
            Some(&["classical".to_string(), "m2-tilde".to_string()][..])
        );
        assert_eq!(cfg.n_values, Some(vec![5, 10]));
        assert_eq!(cfg.grid, Some(51));
        assert_eq!(cfg.svg, Some(true));
        assert_eq!(cfg.out_dir, Some(PathBuf::from("/tmp/x")));
        assert!(PartialConfig::parse("colour = red").is_err());
        assert!(PartialConfig::parse("n = ten").is_err());
        assert!(PartialConfig::parse("just words").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = PartialConfig::parse("n=5\nf=example2\ngrid=31").unwrap();
        let flags = PartialConfig {
            n_values: Some(vec![20]),
            presets: Some(vec!["classical".into()]),
            ..Default::default()
        };
        let cfg = flags.over(file).resolve().unwrap();
        assert_eq!(cfg.n_values, vec![20]);
        assert_eq!(cfg.target.id(), "example2");
        assert_eq!(cfg.grid, 31);
        assert_eq!(cfg.name, "example2");
    }

    #[test]
    fn validation() {
        let base = || PartialConfig {
            presets: Some(vec!["m3-tilde".into()]),
            ..Default::default()
        };
        assert!(base().resolve().is_ok());
        assert!(PartialConfig::default().resolve().is_err());
        assert!(PartialConfig {
            grid: Some(10),
            ..base()
        }
        .resolve()
        .is_err());
        assert!(PartialConfig {
            n_values: Some(vec![3]),
            ..base()
        }
        .resolve()
        .is_err());
        assert!(PartialConfig {
            n_values: Some(vec![]),
            ..base()
        }
        .resolve()
        .is_err());
        assert!(PartialConfig {
            a0: Some("2".into()),
            ..base()
        }
        .resolve()
        .is_err());
        assert!(PartialConfig {
            function: Some("cosh".into()),
            ..base()
        }
        .resolve()
        .is_err());
        let custom = PartialConfig {
            a0: Some("(n-1)/(2n)".into()),
            a1: Some("1/n".into()),
            ..Default::default()
        }
        .resolve()
        .unwrap();
        assert_eq!(custom.families[0].name, "m1-custom");
    }
}
