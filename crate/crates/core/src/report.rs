//! Serializable results of the brute-force verifiers.

use serde::{Deserialize, Serialize};

use crate::nets::Split;

/// One scored alternative in a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
    /// `None` when the candidate has no feasible value.
    pub value: Option<f64>,
}

impl Candidate {
    pub fn new(label: impl Into<String>, value: Option<f64>) -> Self {
        Self {
            label: label.into(),
            split: None,
            value,
        }
    }

    pub fn for_split(split: Split, value: Option<f64>) -> Self {
        Self {
            label: split.to_string(),
            split: Some(split),
            value,
        }
    }
}

/// Inputs and tolerances a report was produced with.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_prime: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_resolution: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerance: f64,
}

/// Candidates with their scores, the winning candidate(s) and any failed
/// assertions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: Parameters,
    pub candidates: Vec<Candidate>,
    /// Labels of every candidate tied with the winner.
    pub winners: Vec<String>,
    pub winner: String,
    pub winning_value: Option<f64>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Best value and the indices of all candidates within `tol` of it, in
/// candidate order.
pub(crate) fn tied_best(
    candidates: &[Candidate],
    tol: f64,
    minimize: bool,
) -> Option<(f64, Vec<usize>)> {
    let values = candidates.iter().filter_map(|c| c.value);
    let best = if minimize {
        values.fold(f64::INFINITY, f64::min)
    } else {
        values.fold(f64::NEG_INFINITY, f64::max)
    };
    if !best.is_finite() {
        return None;
    }
    let idx = candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| c.value.is_some_and(|v| (v - best).abs() <= tol))
        .map(|(i, _)| i)
        .collect();
    Some((best, idx))
}
