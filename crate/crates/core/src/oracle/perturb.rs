//! Shift/pivot perturbations of evenly spaced vertical lines against a
//! square intruder.
//!
//! Line `i` (1-based) starts at `x = i/(k+1)`, is shifted right by `s_i` and
//! pivoted by `p_i` radians about the point at height `pivot_height`. The
//! `k + 1` cells between consecutive lines (with the square's sides as lines
//! `0` and `k + 1`) must stay disjoint inside the square, so every cell is a
//! convex quadrilateral.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point};
use crate::oracle::cell::largest_square_in_cell;
use crate::report::{tied_best, Candidate, Parameters, VerificationReport};

/// Allowed shortfall below `1/(k+1)` before a perturbation counts as an
/// improvement.
pub const LOCAL_OPT_TOL: f64 = 1e-9;

/// A line through `anchor` making angle `angle` with the vertical.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralLine {
    pub anchor: Point,
    pub angle: f64,
}

impl GeneralLine {
    /// Rejects lines that miss the closed unit square.
    pub fn new(anchor: Point, angle: f64) -> Result<Self> {
        let line = Self { anchor, angle };
        if !(angle.is_finite() && angle.abs() < FRAC_PI_2) {
            return Err(Error::InvalidPerturbation(format!(
                "angle {angle} is not near-vertical"
            )));
        }
        let (x0, x1) = (line.x_at(0.0), line.x_at(1.0));
        if x0.max(x1) < 0.0 || x0.min(x1) > 1.0 {
            return Err(Error::InvalidPerturbation(format!(
                "line through ({}, {}) misses the unit square",
                anchor.x, anchor.y
            )));
        }
        Ok(line)
    }

    pub fn vertical(x: f64) -> Self {
        Self {
            anchor: Point::new(x, 0.5),
            angle: 0.0,
        }
    }

    /// Abscissa of the line at height `y`.
    pub fn x_at(&self, y: f64) -> f64 {
        self.anchor.x + (y - self.anchor.y) * self.angle.tan()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub shifts: Vec<f64>,
    pub pivots: Vec<f64>,
    pub epsilon: f64,
}

impl PerturbationSpec {
    pub fn zero(k: usize, epsilon: f64) -> Self {
        Self {
            shifts: vec![0.0; k],
            pivots: vec![0.0; k],
            epsilon,
        }
    }

    /// Each shift and pivot is zero with probability 1/2 and otherwise
    /// uniform on `[0, epsilon]`.
    pub fn random<R: Rng + ?Sized>(k: usize, epsilon: f64, rng: &mut R) -> Self {
        let draw = |rng: &mut R| {
            if rng.random_bool(0.5) {
                0.0
            } else {
                rng.random_range(0.0..=epsilon)
            }
        };
        let shifts = (0..k).map(|_| draw(rng)).collect();
        let pivots = (0..k).map(|_| draw(rng)).collect();
        Self {
            shifts,
            pivots,
            epsilon,
        }
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidPerturbation(format!(
                "epsilon {}",
                self.epsilon
            )));
        }
        if self.shifts.len() != k || self.pivots.len() != k {
            return Err(Error::InvalidPerturbation(format!(
                "expected {k} shifts and pivots, got {} and {}",
                self.shifts.len(),
                self.pivots.len()
            )));
        }
        let in_range = |x: &f64| (0.0..=self.epsilon).contains(x);
        if !self.shifts.iter().all(in_range) || !self.pivots.iter().all(in_range) {
            return Err(Error::InvalidPerturbation(format!(
                "entries must lie in [0, {}]",
                self.epsilon
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationConfig {
    /// Height of the pivot centre on each line.
    pub pivot_height: f64,
    /// Orientation grid used by the square-in-cell search.
    pub angle_resolution: f64,
}

impl Default for PerturbationConfig {
    fn default() -> Self {
        Self {
            pivot_height: 0.5,
            angle_resolution: FRAC_PI_2 / 256.0,
        }
    }
}

/// The `k` perturbed lines, left to right.
pub fn perturbed_lines(
    k: usize,
    spec: &PerturbationSpec,
    cfg: &PerturbationConfig,
) -> Result<Vec<GeneralLine>> {
    spec.validate(k)?;
    (0..k)
        .map(|i| {
            let x = (i + 1) as f64 / (k + 1) as f64 + spec.shifts[i];
            GeneralLine::new(Point::new(x, cfg.pivot_height), spec.pivots[i])
        })
        .collect()
}

/// Cells between consecutive lines, clipped to the unit square.
pub fn perturbed_cells(lines: &[GeneralLine]) -> Result<Vec<ConvexPolygon>> {
    let k = lines.len();
    let mut all = Vec::with_capacity(k + 2);
    all.push(GeneralLine::vertical(0.0));
    all.extend_from_slice(lines);
    all.push(GeneralLine::vertical(1.0));
    all.windows(2)
        .enumerate()
        .map(|(i, w)| {
            let (l, r) = (w[0], w[1]);
            let bottom = (l.x_at(0.0), r.x_at(0.0));
            let top = (l.x_at(1.0), r.x_at(1.0));
            if bottom.0 >= bottom.1 || top.0 >= top.1 {
                return Err(Error::CrossingLines {
                    left: i,
                    right: i + 1,
                });
            }
            ConvexPolygon::new(vec![
                Point::new(bottom.0, 0.0),
                Point::new(bottom.1, 0.0),
                Point::new(top.1, 1.0),
                Point::new(top.0, 1.0),
            ])
        })
        .collect()
}

/// Scale factor of the perturbed net for a square intruder, checked against
/// the evenly spaced value `1/(k+1)`.
pub fn local_perturbation_experiment(
    k: usize,
    spec: &PerturbationSpec,
    cfg: &PerturbationConfig,
) -> Result<VerificationReport> {
    if k <= 2 {
        return Err(Error::LineCount {
            k,
            expected: "greater than 2",
        });
    }
    let cells = perturbed_cells(&perturbed_lines(k, spec, cfg)?)?;
    let candidates = cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let fit = largest_square_in_cell(cell, cfg.angle_resolution)?;
            Ok(Candidate::new(format!("cell {i}"), Some(fit.side)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (c, idx) = tied_best(&candidates, 0.0, false).expect("k + 1 cells");
    let regular = 1.0 / (k + 1) as f64;
    let mut failures = Vec::new();
    if c < regular - LOCAL_OPT_TOL {
        failures.push(format!(
            "scale factor {c} below regular {regular} for spec {}",
            serde_json::to_string(spec).expect("spec serializes")
        ));
    }
    Ok(VerificationReport {
        check: "local-perturbation".into(),
        parameters: Parameters {
            k: Some(k),
            p: Some(1.0),
            epsilon: Some(spec.epsilon),
            angle_resolution: Some(cfg.angle_resolution),
            tolerance: LOCAL_OPT_TOL,
            ..Default::default()
        },
        winners: idx.iter().map(|&i| candidates[i].label.clone()).collect(),
        winner: candidates[idx[0]].label.clone(),
        winning_value: Some(c),
        candidates,
        notes: vec![format!("regular scale factor {regular}")],
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(k: usize, spec: &PerturbationSpec) -> f64 {
        local_perturbation_experiment(k, spec, &PerturbationConfig::default())
            .unwrap()
            .winning_value
            .unwrap()
    }

    #[test]
    fn identity_perturbation() {
        let c = run(3, &PerturbationSpec::zero(3, 0.02));
        assert!((c - 0.25).abs() < 1e-9);
    }

    #[test]
    fn middle_shift_widens_one_slab() {
        let mut spec = PerturbationSpec::zero(3, 0.02);
        spec.shifts[1] = 0.01;
        let r = local_perturbation_experiment(3, &spec, &PerturbationConfig::default()).unwrap();
        assert!((r.winning_value.unwrap() - 0.26).abs() < 1e-9);
        assert_eq!(r.winner, "cell 1");
        let widths: Vec<f64> = r.candidates.iter().map(|c| c.value.unwrap()).collect();
        for (w, want) in widths.iter().zip([0.25, 0.26, 0.24, 0.25]) {
            assert!((w - want).abs() < 1e-9, "{widths:?}");
        }
    }

    #[test]
    fn pivot_enlarges_a_cell() {
        let mut spec = PerturbationSpec::zero(3, 0.02);
        spec.pivots[1] = 0.02;
        assert!(run(3, &spec) > 0.25 + 1e-6);
    }

    #[test]
    fn rejects_small_k_and_bad_specs() {
        let cfg = PerturbationConfig::default();
        assert!(local_perturbation_experiment(2, &PerturbationSpec::zero(2, 0.1), &cfg).is_err());
        let mut spec = PerturbationSpec::zero(3, 0.02);
        spec.shifts[0] = 0.03;
        assert!(matches!(
            local_perturbation_experiment(3, &spec, &cfg),
            Err(Error::InvalidPerturbation(_))
        ));
        assert!(local_perturbation_experiment(3, &PerturbationSpec::zero(4, 0.02), &cfg).is_err());
    }

    #[test]
    fn crossing_lines_detected() {
        let spec = PerturbationSpec {
            shifts: vec![0.3, 0.0, 0.0],
            pivots: vec![0.0; 3],
            epsilon: 0.3,
        };
        let err =
            local_perturbation_experiment(3, &spec, &PerturbationConfig::default()).unwrap_err();
        assert_eq!(err, Error::CrossingLines { left: 1, right: 2 });
    }

    #[test]
    fn random_specs_respect_bounds() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let spec = PerturbationSpec::random(5, 0.02, &mut rng);
            spec.validate(5).unwrap();
        }
    }
}
