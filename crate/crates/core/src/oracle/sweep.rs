//! Rotation-sweep oracle for the inscribing curve.
//!
//! A rotated rectangle fits in an axis-aligned one iff its bounding box
//! does. At angle `theta` the `c x cp` rectangle has bounding box
//! `c (cos + p sin) x c (sin + p cos)`, so the largest `c` fitting a
//! `1 x n` hole is `min(1 / (cos + p sin), n / (sin + p cos))`.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::inscribe::AspectRatio;
use crate::roots::golden_max;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Grid spacing in radians.
    pub theta_resolution: f64,
    /// Golden-section iterations around the best grid point.
    pub refinement: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            theta_resolution: 1e-5,
            refinement: 50,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta_resolution > 0.0 && self.theta_resolution <= FRAC_PI_2 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "theta resolution must be in (0, pi/2], got {}",
                self.theta_resolution
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub value: f64,
    pub theta: f64,
}

#[inline]
fn objective(n: f64, p: f64, cos: f64, sin: f64) -> f64 {
    f64::min(1.0 / (cos + p * sin), n / (sin + p * cos))
}

/// Precomputed angle grid, reusable across many `(n, p)` queries.
#[derive(Debug, Clone)]
pub struct RotationSweep {
    config: SweepConfig,
    step: f64,
    table: Vec<(f64, f64)>,
}

impl RotationSweep {
    pub fn new(config: SweepConfig) -> Result<Self> {
        config.validate()?;
        let m = (FRAC_PI_2 / config.theta_resolution).ceil() as usize;
        let step = FRAC_PI_2 / m as f64;
        let table = (0..=m)
            .map(|i| {
                let (s, c) = (i as f64 * step).sin_cos();
                (c, s)
            })
            .collect();
        Ok(Self {
            config,
            step,
            table,
        })
    }

    pub fn config(&self) -> SweepConfig {
        self.config
    }

    pub fn evaluate(&self, n: f64, p: f64) -> Result<SweepResult> {
        let n = AspectRatio::new(n)?.get();
        let p = AspectRatio::new(p)?.get();
        let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
        for (i, &(c, s)) in self.table.iter().enumerate() {
            let v = objective(n, p, c, s);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let centre = best_i as f64 * self.step;
        let lo = (centre - self.step).max(0.0);
        let hi = (centre + self.step).min(FRAC_PI_2);
        let (theta, value) = golden_max(
            |t| {
                let (s, c) = t.sin_cos();
                objective(n, p, c, s)
            },
            lo,
            hi,
            self.config.refinement,
        );
        if value >= best {
            Ok(SweepResult { value, theta })
        } else {
            Ok(SweepResult {
                value: best,
                theta: centre,
            })
        }
    }
}

/// Largest scale factor of a `1 x p` intruder in a `1 x n` hole, by sweeping
/// the rotation angle over `[0, pi/2]`.
pub fn oracle_curve_value(n: f64, p: f64, cfg: &SweepConfig) -> Result<SweepResult> {
    RotationSweep::new(*cfg)?.evaluate(n, p)
}
