//! Exhaustive comparison of evenly spaced nets over every line split.

use crate::error::Result;
use crate::inscribe::AspectRatio;
use crate::nets::{net_scale_factor, optimal_split, Split};
use crate::report::{tied_best, Candidate, Parameters, VerificationReport};
use crate::roots::bisect;

/// Candidates within this distance of the minimum count as tied.
pub const ENUMERATION_TIE_TOL: f64 = 1e-12;

fn split_value(split: Split, p: f64) -> Result<f64> {
    net_scale_factor(&split.net(), p)
}

/// Scores `N(v, k - v)` for every `v = 0..=k` and checks that the
/// predicted optimal split is among the minimizers.
pub fn enumerate_axis_nets(k: usize, p: f64) -> Result<VerificationReport> {
    AspectRatio::new(p)?;
    let predicted = optimal_split(k, p)?;
    let candidates = (0..=k)
        .map(|v| {
            let split = Split::new(v, k - v);
            Ok(Candidate::for_split(split, Some(split_value(split, p)?)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (best, idx) =
        tied_best(&candidates, ENUMERATION_TIE_TOL, true).expect("k >= 1 gives candidates");
    let winners: Vec<String> = idx.iter().map(|&i| candidates[i].label.clone()).collect();

    let mut failures = Vec::new();
    let contains = idx.iter().any(|&i| {
        candidates[i]
            .split
            .is_some_and(|s| s.canonical() == predicted)
    });
    if !contains {
        failures.push(format!(
            "predicted optimum {predicted} is not among the minimizers {winners:?} at p = {p}"
        ));
    }
    Ok(VerificationReport {
        check: "enumerate-axis-nets".into(),
        parameters: Parameters {
            k: Some(k),
            p: Some(p),
            tolerance: ENUMERATION_TIE_TOL,
            ..Default::default()
        },
        winner: if contains {
            predicted.to_string()
        } else {
            winners[0].clone()
        },
        winners,
        winning_value: Some(best),
        candidates,
        notes: Vec::new(),
        failures,
    })
}

/// Locates where the parallel net stops being optimal by bisecting the gap
/// between `N(k, 0)` and the best competing split on `[1, p_max]`.
pub fn enumerated_switch(k: usize, p_max: f64) -> Result<f64> {
    let gap = |p: f64| -> f64 {
        let parallel = split_value(Split::new(k, 0), p).unwrap_or(f64::NAN);
        let other = (1..k)
            .map(|v| split_value(Split::new(v, k - v), p).unwrap_or(f64::NAN))
            .fold(f64::INFINITY, f64::min);
        other - parallel
    };
    bisect(gap, 1.0, p_max, 0.0)
}
