//! Run configuration files.
//!
//! A config is a JSON object. A bare polygon spec (it has a `class` field)
//! and a bare experiment config (it has a `family` field) are accepted as
//! shorthands. Relative paths inside a config resolve against its directory.

use std::fs;
use std::path::{Path, PathBuf};

use hypbill::polygon::PolygonSpec;
use hypbill::shiftspace::{ExperimentConfig, Family, SubshiftHandle};
use hypbill::symdyn::{forbidden_set, ForbiddenFile, Letter, SubshiftSpec, Word};
use hypbill::Tolerances;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

/// A nested document given inline or as a path.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Path(PathBuf),
    Inline(Value),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleName {
    EvenShift,
    ThreeSymbolLimit,
}

/// One side of a distance computation.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ShiftSource {
    /// The closure SFT of a polygon's code space.
    Polygon(Source),
    /// A forbidden-set file.
    Forbidden(Source),
    Rule(RuleName),
    PeriodicOrbit {
        k: Letter,
        period: String,
    },
}

/// Starting arc of a simulation.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StartConfig {
    Endpoints {
        theta_rad: f64,
        phi_rad: f64,
    },
    /// The geodesic through `point` with direction angle `psi_rad`.
    Through {
        point: [f64; 2],
        psi_rad: f64,
    },
    /// A random chord drawn from `--seed`.
    Random,
    /// Arc 0 of the decoded periodic orbit of `word`.
    Periodic {
        word: String,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub polygon: Option<Source>,
    pub tolerances: Option<Tolerances>,
    pub start: Option<StartConfig>,
    pub n_future: Option<usize>,
    pub n_past: Option<usize>,
    /// Periodic word for `decode`, unfolding word for `render`.
    pub word: Option<String>,
    /// Period of a randomly drawn word when `decode` gets none.
    pub period: Option<usize>,
    pub first: Option<ShiftSource>,
    pub second: Option<ShiftSource>,
    pub max_m: Option<usize>,
    /// Minimize the distance over relabelings of the second alphabet.
    #[serde(default)]
    pub relabel: bool,
    pub experiment: Option<ExperimentConfig>,
    /// Render the decoded periodic orbit of `word`.
    #[serde(default)]
    pub orbit: bool,
    pub seed: Option<u64>,
    pub depth: Option<usize>,
    pub budget: Option<usize>,
}

/// A loaded config together with the directory its paths resolve against.
#[derive(Debug, Clone, Default)]
pub struct Loaded {
    pub config: RunConfig,
    pub base: PathBuf,
}

fn parse_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{}: {e}", path.display()))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| parse_error(path, e))
}

pub fn load(path: Option<&Path>) -> Result<Loaded, CliError> {
    let Some(path) = path else {
        return Ok(Loaded::default());
    };
    let value = read_json(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let config = match &value {
        Value::Object(m) if m.contains_key("class") => RunConfig {
            polygon: Some(Source::Inline(value)),
            ..RunConfig::default()
        },
        Value::Object(m) if m.contains_key("family") => RunConfig {
            experiment: Some(serde_json::from_value(value).map_err(|e| parse_error(path, e))?),
            ..RunConfig::default()
        },
        _ => serde_json::from_value(value).map_err(|e| parse_error(path, e))?,
    };
    Ok(Loaded { config, base })
}

impl Loaded {
    fn resolve(&self, source: &Source) -> Result<Value, CliError> {
        match source {
            Source::Inline(v) => Ok(v.clone()),
            Source::Path(p) => read_json(&self.base.join(p)),
        }
    }

    pub fn polygon(&self) -> Result<PolygonSpec, CliError> {
        let source = self
            .config
            .polygon
            .as_ref()
            .ok_or_else(|| CliError::Parse("config has no polygon".into()))?;
        Ok(PolygonSpec::from_value(self.resolve(source)?)?)
    }

    pub fn tolerances(&self) -> Tolerances {
        self.config.tolerances.unwrap_or_default()
    }

    pub fn shift(&self, source: &ShiftSource, name: &str) -> Result<SubshiftHandle, CliError> {
        Ok(match source {
            ShiftSource::Polygon(s) => {
                let spec = PolygonSpec::from_value(self.resolve(s)?)?;
                SubshiftHandle::sft(name, forbidden_set(&spec)?)
            }
            ShiftSource::Forbidden(s) => {
                let file: ForbiddenFile =
                    serde_json::from_value(self.resolve(s)?).map_err(|e| CliError::Parse(e.to_string()))?;
                SubshiftHandle::sft(name, SubshiftSpec::from_file(&file)?)
            }
            ShiftSource::Rule(RuleName::EvenShift) => SubshiftHandle::even_shift(),
            ShiftSource::Rule(RuleName::ThreeSymbolLimit) => SubshiftHandle::three_symbol_limit(),
            ShiftSource::PeriodicOrbit { k, period } => {
                let w = Word::parse(period)?;
                w.check_alphabet(*k)?;
                SubshiftHandle::periodic_orbit(*k, w)
            }
        })
    }

    /// The experiment with polygon paths replaced by their contents.
    pub fn experiment(&self) -> Result<ExperimentConfig, CliError> {
        let mut c = self
            .config
            .experiment
            .clone()
            .ok_or_else(|| CliError::Parse("config has no experiment".into()))?;
        if let Family::PolygonSequence { polygons, limit } = &mut c.family {
            for v in polygons.iter_mut().chain(limit.iter_mut()) {
                if let Value::String(p) = v {
                    *v = read_json(&self.base.join(p.as_str()))?;
                }
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_forms() {
        let dir = tempfile::tempdir().unwrap();
        let poly = dir.path().join("p.json");
        fs::write(
            &poly,
            r#"{"class":"ideal","vertices":[{"kind":"ideal"},{"kind":"ideal"},{"kind":"ideal"}]}"#,
        )
        .unwrap();
        let l = load(Some(&poly)).unwrap();
        assert_eq!(l.polygon().unwrap().k(), 3);

        let run = dir.path().join("run.json");
        fs::write(&run, r#"{"polygon":"p.json","word":"123"}"#).unwrap();
        let l = load(Some(&run)).unwrap();
        assert_eq!(l.polygon().unwrap().k(), 3);

        let exp = dir.path().join("e.json");
        fs::write(&exp, r#"{"family":"ttoct","n_max":3}"#).unwrap();
        assert_eq!(load(Some(&exp)).unwrap().experiment().unwrap().n_max, 3);

        fs::write(&run, r#"{"polygon":"p.json","bogus":1}"#).unwrap();
        assert!(matches!(load(Some(&run)), Err(CliError::Parse(_))));
    }
}
