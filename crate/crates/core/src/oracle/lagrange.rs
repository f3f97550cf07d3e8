//! Integer-split check of the diagonal-length argument.
//!
//! Fix the short side `c'` of a diagonally placed intruder. In the hole
//! `1/(h+1)` wide (the `a1` direction) and `1/(v+1)` tall (the `a2`
//! direction) the contacts satisfy the similar-triangle relation and
//! `a1^2 + a2^2 = c'^2`; the long side that then fits has squared length
//! `(1/(v+1) - a2)^2 + (1/(h+1) - a1)^2`. Among splits `v + h = k` this is
//! smallest for the square grid `v = h`.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::inscribe::diagonal_branch;
use crate::nets::Split;
use crate::report::{tied_best, Candidate, Parameters, VerificationReport};
use crate::roots::bisect;

const PHI_GRID: usize = 4096;
const TIE_TOL: f64 = 1e-12;

/// Contact geometry of a fixed short side `c'` in one split's hole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitGeometry {
    pub a1: f64,
    pub a2: f64,
    pub length_squared: f64,
}

/// Solves for the contacts in the `1/(h+1) x 1/(v+1)` hole. Writing
/// `a1 = c' cos(phi)`, `a2 = c' sin(phi)`, the similar-triangle relation
/// becomes `A cos(phi) - B sin(phi) = c' cos(2 phi)`; every root on
/// `[0, pi/2]` inside the constraints is a placement, and the longest one
/// is returned. `None` when no placement exists.
pub fn split_length_squared(v: usize, h: usize, c_prime: f64) -> Option<SplitGeometry> {
    let a = 1.0 / (h + 1) as f64;
    let b = 1.0 / (v + 1) as f64;
    let f = |phi: f64| a * phi.cos() - b * phi.sin() - c_prime * (2.0 * phi).cos();
    let step = FRAC_PI_2 / PHI_GRID as f64;
    let mut best: Option<SplitGeometry> = None;
    for i in 0..PHI_GRID {
        let (lo, hi) = (i as f64 * step, (i + 1) as f64 * step);
        let (f_lo, f_hi) = (f(lo), f(hi));
        if f_lo == 0.0 || f_lo.signum() != f_hi.signum() {
            let Ok(phi) = bisect(f, lo, hi, 0.0) else {
                continue;
            };
            let (a1, a2) = (c_prime * phi.cos(), c_prime * phi.sin());
            if !(a1 > 0.0 && a1 < a && a2 > 0.0 && a2 < b) {
                continue;
            }
            let length_squared = (b - a2).powi(2) + (a - a1).powi(2);
            if best.is_none_or(|g| length_squared > g.length_squared) {
                best = Some(SplitGeometry {
                    a1,
                    a2,
                    length_squared,
                });
            }
        }
    }
    best
}

/// Short side of the diagonal intruder in the square grid `N(k/2, k/2)`
/// at aspect ratio `p > 1`.
pub fn grid_diagonal_scale(k: usize, p: f64) -> Result<f64> {
    Ok(diagonal_branch(1.0, p)?.c / (k / 2 + 1) as f64)
}

/// Evaluates the squared diagonal length for every split `v + h = k` and
/// checks that the unique minimizer is `v = h = k/2`.
pub fn lagrange_split_check(k: usize, c_prime: f64) -> Result<VerificationReport> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::LineCount {
            k,
            expected: "even and at least 2",
        });
    }
    if !(c_prime > 0.0 && c_prime.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "short side must be positive, got {c_prime}"
        )));
    }
    let mut notes = Vec::new();
    let candidates: Vec<Candidate> = (0..=k)
        .map(|v| {
            let split = Split::new(v, k - v);
            let geom = split_length_squared(v, k - v, c_prime);
            if geom.is_none() {
                notes.push(format!(
                    "{split}: no diagonal placement with short side {c_prime}"
                ));
            }
            Candidate::for_split(split, geom.map(|g| g.length_squared))
        })
        .collect();
    let square = Split::new(k / 2, k / 2);
    let mut failures = Vec::new();
    let (winner, winners, best) = match tied_best(&candidates, TIE_TOL, true) {
        Some((best, idx)) => {
            let winners: Vec<String> = idx.iter().map(|&i| candidates[i].label.clone()).collect();
            if winners != [square.to_string()] {
                failures.push(format!("minimizers {winners:?} differ from {square}"));
            }
            (winners[0].clone(), winners, Some(best))
        }
        None => {
            failures.push("no split admits a diagonal placement".into());
            (String::new(), Vec::new(), None)
        }
    };
    Ok(VerificationReport {
        check: "lagrange-split".into(),
        parameters: Parameters {
            k: Some(k),
            c_prime: Some(c_prime),
            tolerance: TIE_TOL,
            ..Default::default()
        },
        candidates,
        winners,
        winner,
        winning_value: best,
        notes,
        failures,
    })
}
