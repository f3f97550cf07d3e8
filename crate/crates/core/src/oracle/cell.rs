//! Largest square inside a convex cell.
//!
//! A square of side `s` at orientation `theta` fits iff the cell eroded by
//! the square is non-empty. For a convex cell that erosion is the
//! intersection of the edge half-planes, each pulled inward by the square's
//! support function along the edge normal.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::{clip, ConvexPolygon, HalfPlane, Point};
use crate::roots::golden_max;

const SIDE_TOL: f64 = 1e-12;
const REFINE_ITERS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareFit {
    pub side: f64,
    /// Orientation in `[0, pi/2)`.
    pub theta: f64,
}

/// Whether a square of side `side` rotated by `theta` fits in `cell`.
pub fn square_fits(cell: &ConvexPolygon, side: f64, theta: f64) -> bool {
    if side <= 0.0 {
        return true;
    }
    let (s, c) = theta.sin_cos();
    let (e1, e2) = (Point::new(c, s), Point::new(-s, c));
    let mut region = cell.vertices().to_vec();
    for hp in cell.half_planes() {
        let support = 0.5 * side * (hp.normal.dot(e1).abs() + hp.normal.dot(e2).abs());
        let eroded = HalfPlane {
            normal: hp.normal,
            offset: hp.offset - support,
        };
        region = clip(&region, &eroded);
        if region.is_empty() {
            return false;
        }
    }
    true
}

/// Largest side at a fixed orientation, by bisection on the side length.
pub fn max_square_at(cell: &ConvexPolygon, theta: f64) -> f64 {
    let (lo_pt, hi_pt) = cell.bounding_box();
    let (mut lo, mut hi) = (0.0, (hi_pt.x - lo_pt.x).min(hi_pt.y - lo_pt.y));
    if square_fits(cell, hi, theta) {
        return hi;
    }
    while hi - lo > SIDE_TOL {
        let mid = 0.5 * (lo + hi);
        if square_fits(cell, mid, theta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Maximizes [`max_square_at`] over orientations: a grid on `[0, pi/2)` at
/// `angle_resolution`, then golden-section refinement around the best node.
pub fn largest_square_in_cell(cell: &ConvexPolygon, angle_resolution: f64) -> Result<SquareFit> {
    if !(angle_resolution > 0.0 && angle_resolution <= FRAC_PI_2) {
        return Err(Error::InvalidArgument(format!(
            "angle resolution must be in (0, pi/2], got {angle_resolution}"
        )));
    }
    if cell.area() <= 0.0 {
        return Err(Error::DegenerateCell("zero area".into()));
    }
    let m = (FRAC_PI_2 / angle_resolution).ceil() as usize;
    let step = FRAC_PI_2 / m as f64;
    let (best_i, best) = (0..m)
        .map(|i| (i, max_square_at(cell, i as f64 * step)))
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    let centre = best_i as f64 * step;
    let (theta, side) = golden_max(
        |t| max_square_at(cell, t),
        centre - step,
        centre + step,
        REFINE_ITERS,
    );
    let fit = if side > best {
        SquareFit {
            side,
            theta: theta.rem_euclid(FRAC_PI_2),
        }
    } else {
        SquareFit {
            side: best,
            theta: centre,
        }
    };
    Ok(fit)
}
