//! Axis-aligned nets over the unit square and their holes.

mod scale;

pub use scale::{
    base_curve, base_curve_even, base_curve_even_term, base_curve_odd, base_curve_odd_term,
    crossover_aspect, hole_scale, max_hole, net_scale_factor, odd_crossover_unshifted, optimal_net,
    optimal_split, BaseTerm, HoleChoice,
};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Tolerance on the width and height sums of a [`HoleGrid`].
pub const HOLE_SUM_TOL: f64 = 1e-12;

/// Vertical and horizontal cut positions, each strictly increasing and
/// strictly inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNet")]
pub struct Net {
    vertical: Vec<f64>,
    horizontal: Vec<f64>,
}

#[derive(Deserialize)]
struct RawNet {
    vertical: Vec<f64>,
    horizontal: Vec<f64>,
}

impl TryFrom<RawNet> for Net {
    type Error = Error;

    fn try_from(raw: RawNet) -> Result<Self> {
        Net::new(raw.vertical, raw.horizontal)
    }
}

fn check_cuts(axis: &str, cuts: &[f64]) -> Result<()> {
    for (i, &x) in cuts.iter().enumerate() {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvalidNet(format!(
                "{axis} cut {i} at {x} is not strictly inside (0, 1)"
            )));
        }
    }
    if let Some(i) = cuts.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::InvalidNet(format!(
            "{axis} cuts are not strictly increasing at index {}",
            i + 1
        )));
    }
    Ok(())
}

impl Net {
    pub fn new(vertical: Vec<f64>, horizontal: Vec<f64>) -> Result<Self> {
        check_cuts("vertical", &vertical)?;
        check_cuts("horizontal", &horizontal)?;
        Ok(Self {
            vertical,
            horizontal,
        })
    }

    /// `v` evenly spaced vertical and `h` evenly spaced horizontal lines.
    pub fn evenly_spaced(v: usize, h: usize) -> Self {
        let cuts = |m: usize| (1..=m).map(|i| i as f64 / (m + 1) as f64).collect();
        Self {
            vertical: cuts(v),
            horizontal: cuts(h),
        }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("net serializes")
    }

    pub fn vertical(&self) -> &[f64] {
        &self.vertical
    }

    pub fn horizontal(&self) -> &[f64] {
        &self.horizontal
    }

    /// Total number of lines.
    pub fn k(&self) -> usize {
        self.vertical.len() + self.horizontal.len()
    }

    pub fn split(&self) -> Split {
        Split::new(self.vertical.len(), self.horizontal.len())
    }

    /// Returns a copy with one more vertical line at `x`.
    pub fn with_vertical(&self, x: f64) -> Result<Self> {
        let mut v = self.vertical.clone();
        v.push(x);
        v.sort_by(f64::total_cmp);
        Net::new(v, self.horizontal.clone())
    }

    /// Returns a copy with one more horizontal line at `y`.
    pub fn with_horizontal(&self, y: f64) -> Result<Self> {
        let mut h = self.horizontal.clone();
        h.push(y);
        h.sort_by(f64::total_cmp);
        Net::new(self.vertical.clone(), h)
    }

    pub fn holes(&self) -> HoleGrid {
        HoleGrid {
            widths: gaps(&self.vertical),
            heights: gaps(&self.horizontal),
        }
    }
}

fn gaps(cuts: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut prev = 0.0;
    for &x in cuts {
        out.push(x - prev);
        prev = x;
    }
    out.push(1.0 - prev);
    out
}

/// Column widths and row heights of a net; every hole is one
/// `widths[i] x heights[j]` rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoleGrid {
    pub widths: Vec<f64>,
    pub heights: Vec<f64>,
}

impl HoleGrid {
    pub fn hole_count(&self) -> usize {
        self.widths.len() * self.heights.len()
    }

    pub fn max_width(&self) -> f64 {
        self.widths.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_height(&self) -> f64 {
        self.heights.iter().copied().fold(0.0, f64::max)
    }

    /// Positive entries and unit sums within [`HOLE_SUM_TOL`].
    pub fn is_consistent(&self) -> bool {
        let ok = |xs: &[f64]| {
            xs.iter().all(|&x| x > 0.0) && (xs.iter().sum::<f64>() - 1.0).abs() <= HOLE_SUM_TOL
        };
        ok(&self.widths) && ok(&self.heights)
    }
}

/// Line counts of an evenly spaced net `N(v, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Split {
    pub vertical: usize,
    pub horizontal: usize,
}

impl Split {
    pub const fn new(vertical: usize, horizontal: usize) -> Self {
        Self {
            vertical,
            horizontal,
        }
    }

    pub fn k(self) -> usize {
        self.vertical + self.horizontal
    }

    /// The same net up to swapping the axes, with `vertical >= horizontal`.
    pub fn canonical(self) -> Self {
        Self::new(
            self.vertical.max(self.horizontal),
            self.vertical.min(self.horizontal),
        )
    }

    pub fn net(self) -> Net {
        Net::evenly_spaced(self.vertical, self.horizontal)
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N({},{})", self.vertical, self.horizontal)
    }
}
