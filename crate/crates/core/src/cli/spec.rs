//! The ensemble input document.
//!
//! ```json
//! {"weights": [0.5, 0.5], "bloch": [[0, 0, 0.5], [0, 0, -0.5]]}
//! {"pure_pair": {"theta": 0.785398163397, "lambda0": 0.5}}
//! ```

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::ensemble::QubitEnsemble;
use crate::qstate::{BlochVector, PureStatePair};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PurePairSpec {
    pub theta: f64,
    #[serde(default = "half")]
    pub lambda0: f64,
}

fn half() -> f64 {
    0.5
}

/// Either explicit weights and Bloch vectors, or the symmetric pure pair
/// shorthand. Exactly one of `bloch` and `pure_pair` must be present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[[f64; 3]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure_pair: Option<PurePairSpec>,
}

impl EnsembleSpec {
    pub fn pure_pair(theta: f64, lambda0: f64) -> Self {
        Self {
            weights: None,
            bloch: None,
            pure_pair: Some(PurePairSpec { theta, lambda0 }),
        }
    }

    /// Explicit form of an ensemble, suitable for exact replay.
    pub fn from_ensemble(e: &QubitEnsemble) -> Self {
        Self {
            weights: Some([e.lambda0(), e.lambda1()]),
            bloch: Some([e.a().to_array(), e.b().to_array()]),
            pure_pair: None,
        }
    }

    /// Parses a JSON document. Syntax and field errors are usage errors.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("ensemble spec: {e}")))?;
        match (&spec.bloch, &spec.pure_pair, &spec.weights) {
            (Some(_), Some(_), _) => Err(CliError::Usage(
                "ensemble spec: give exactly one of `bloch` and `pure_pair`".into(),
            )),
            (None, None, _) => Err(CliError::Usage(
                "ensemble spec: missing `bloch` or `pure_pair`".into(),
            )),
            (Some(_), None, None) => Err(CliError::Usage(
                "ensemble spec: `bloch` requires `weights`".into(),
            )),
            (None, Some(_), Some(_)) => Err(CliError::Usage(
                "ensemble spec: `pure_pair` takes its weight from `lambda0`, not `weights`".into(),
            )),
            _ => Ok(spec),
        }
    }

    /// Angles in a `pure_pair` are converted from degrees.
    pub fn in_radians(mut self, degrees: bool) -> Self {
        if degrees {
            if let Some(p) = self.pure_pair.as_mut() {
                p.theta = p.theta.to_radians();
            }
        }
        self
    }

    /// Builds the ensemble; violated ensemble invariants are reported as
    /// invariant failures.
    pub fn to_ensemble(&self) -> Result<QubitEnsemble, CliError> {
        let invalid = |e: crate::Error| CliError::Invariant(format!("ensemble spec: {e}"));
        match (self.pure_pair, self.bloch, self.weights) {
            (Some(p), _, _) => PureStatePair::new(p.theta, p.lambda0)
                .and_then(|pair| QubitEnsemble::from_pure_pair(&pair))
                .map_err(invalid),
            (None, Some([a, b]), Some([l0, l1])) => QubitEnsemble::new(
                l0,
                l1,
                BlochVector::from_array(a),
                BlochVector::from_array(b),
            )
            .map_err(invalid),
            _ => Err(CliError::Usage("ensemble spec: incomplete".into())),
        }
    }
}
