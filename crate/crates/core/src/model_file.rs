//! JSON model files.
//!
//! ```json
//! {"M": 1, "W": [[0.4, 1.0], [1.0, 0.8]]}
//! ```
//!
//! Exactly one of `W` (survival matrix), `V` (direction matrix) or `rho`
//! (equilibrium of a diagonal model) must be present; `M` is the number of
//! states minus one.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equilibrium::diagonal_from_equilibrium;
use crate::error::Error;
use crate::matrix::{DirectionMatrix, SurvivalMatrix};
use crate::simplex::SimplexVector;

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot read model file: {0}")]
    Io(#[from] std::io::Error),

    /// Carries the line and column of the syntax or type error.
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),

    #[error("model file must contain exactly one of \"W\", \"V\", \"rho\" (found {0})")]
    ModelCount(usize),

    #[error("\"M\" = {declared} implies {} states, but the model has {found}", declared + 1)]
    StateCount { declared: usize, found: usize },

    #[error("invalid model: {0}")]
    Invalid(#[from] Error),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<Vec<f64>>>,
    #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
    v: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Survival(SurvivalMatrix<f64>),
    Direction(DirectionMatrix<f64>),
    /// Diagonal model with the given interior equilibrium.
    Equilibrium(SimplexVector<f64>),
}

impl ModelSpec {
    pub fn parse(json: &str) -> Result<Self, ModelFileError> {
        let raw: RawModel = serde_json::from_str(json)?;
        let present = [raw.w.is_some(), raw.v.is_some(), raw.rho.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if present != 1 {
            return Err(ModelFileError::ModelCount(present));
        }
        let check = |found: usize| {
            if found == raw.m + 1 {
                Ok(())
            } else {
                Err(ModelFileError::StateCount {
                    declared: raw.m,
                    found,
                })
            }
        };
        if let Some(rows) = raw.w {
            check(rows.len())?;
            return Ok(Self::Survival(SurvivalMatrix::from_rows(rows)?));
        }
        if let Some(rows) = raw.v {
            check(rows.len())?;
            return Ok(Self::Direction(DirectionMatrix::from_rows(rows)?));
        }
        let rho = raw.rho.expect("exactly one model present");
        check(rho.len())?;
        Ok(Self::Equilibrium(SimplexVector::new(rho)?))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelFileError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn states(&self) -> usize {
        match self {
            Self::Survival(w) => w.states(),
            Self::Direction(v) => v.states(),
            Self::Equilibrium(rho) => rho.states(),
        }
    }

    pub fn direction(&self) -> Result<DirectionMatrix<f64>, Error> {
        match self {
            Self::Survival(w) => Ok(w.to_direction()),
            Self::Direction(v) => Ok(v.clone()),
            Self::Equilibrium(rho) => diagonal_from_equilibrium(rho),
        }
    }

    pub fn survival(&self) -> Result<SurvivalMatrix<f64>, Error> {
        match self {
            Self::Survival(w) => Ok(w.clone()),
            other => Ok(other.direction()?.to_survival()),
        }
    }

    pub fn to_json(&self) -> String {
        let m = self.states() - 1;
        let raw = match self {
            Self::Survival(w) => RawModel {
                m,
                w: Some(w.to_rows()),
                v: None,
                rho: None,
            },
            Self::Direction(v) => RawModel {
                m,
                w: None,
                v: Some(v.to_rows()),
                rho: None,
            },
            Self::Equilibrium(rho) => RawModel {
                m,
                w: None,
                v: None,
                rho: Some(rho.values().to_vec()),
            },
        };
        serde_json::to_string(&raw).expect("plain numbers serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let w = ModelSpec::parse(r#"{"M": 1, "W": [[0.4, 1.0], [1.0, 0.8]]}"#).unwrap();
        assert!(matches!(w, ModelSpec::Survival(_)));
        let v = ModelSpec::parse(r#"{"M": 1, "V": [[0.6, 0.0], [0.0, 0.2]]}"#).unwrap();
        assert_eq!(v.survival().unwrap(), w.survival().unwrap().to_direction().to_survival());
        let rho = ModelSpec::parse(r#"{"M": 2, "rho": [0.5, 0.25, 0.25]}"#).unwrap();
        assert!(rho.direction().unwrap().is_diagonal());
    }

    #[test]
    fn round_trips_through_json() {
        let spec = ModelSpec::parse(r#"{"M": 1, "V": [[0.6, 0.1], [0.3, 0.2]]}"#).unwrap();
        assert_eq!(ModelSpec::parse(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn names_offending_entry() {
        let err = ModelSpec::parse(r#"{"M": 1, "W": [[0.4, 1.0], [1.5, 0.8]]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(1, 0)"), "{msg}");
    }

    #[test]
    fn rejects_ambiguous_or_missing_models() {
        let err = ModelSpec::parse(r#"{"M": 1, "W": [[1,1],[1,1]], "V": [[0,0],[0,0]]}"#).unwrap_err();
        assert!(matches!(err, ModelFileError::ModelCount(2)));
        let err = ModelSpec::parse(r#"{"M": 1}"#).unwrap_err();
        assert!(matches!(err, ModelFileError::ModelCount(0)));
    }

    #[test]
    fn rejects_wrong_state_count() {
        let err = ModelSpec::parse(r#"{"M": 2, "W": [[1,1],[1,1]]}"#).unwrap_err();
        assert!(matches!(err, ModelFileError::StateCount { declared: 2, found: 2 }));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = ModelSpec::parse("{\"M\": 1,\n \"W\": [[0.4, 1.0], [1.0 0.8]]}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }
}
