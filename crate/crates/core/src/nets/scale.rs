//! Scale factors of nets, the base curves and optimal-net selection.
//!
//! The scale factor of a net is the size of the largest intruder that still
//! fits in some hole: anything smaller hides in that hole, anything at least
//! as large touches a line wherever it is placed.

use serde::{Deserialize, Serialize};

use super::{Net, Split};
use crate::error::{Error, Result};
use crate::inscribe::{curve_value, AspectRatio, BRANCH_TIE_TOL};

/// Largest scale factor of a `1 x p` intruder inside a `w x h` hole.
pub fn hole_scale(w: f64, h: f64, p: f64) -> Result<f64> {
    let ratio = AspectRatio::of_sides(w, h)?;
    Ok(w.min(h) * curve_value(ratio.get(), p)?)
}

/// The hole attaining a net's scale factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoleChoice {
    pub column: usize,
    pub row: usize,
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
    pub scale: f64,
}

/// Scans every hole; ties keep the first hole in column-major order.
pub fn max_hole(net: &Net, p: f64) -> Result<HoleChoice> {
    AspectRatio::new(p)?;
    let grid = net.holes();
    let mut best: Option<HoleChoice> = None;
    let mut x = 0.0;
    for (column, &width) in grid.widths.iter().enumerate() {
        let mut y = 0.0;
        for (row, &height) in grid.heights.iter().enumerate() {
            let scale = hole_scale(width, height, p)?;
            if best.is_none_or(|b| scale > b.scale) {
                best = Some(HoleChoice {
                    column,
                    row,
                    x,
                    y,
                    width,
                    height,
                    scale,
                });
            }
            y += height;
        }
        x += width;
    }
    Ok(best.expect("a net always has at least one hole"))
}

/// Maximum over all holes of the largest inscribed intruder.
pub fn net_scale_factor(net: &Net, p: f64) -> Result<f64> {
    max_hole(net, p).map(|h| h.scale)
}

/// Which of the two competing nets realizes a base-curve value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseTerm {
    /// `k` parallel lines.
    Parallel,
    /// The (near-)square grid.
    Grid,
}

impl BaseTerm {
    pub fn as_str(self) -> &'static str {
        match self {
            BaseTerm::Parallel => "parallel",
            BaseTerm::Grid => "grid",
        }
    }
}

fn parallel_term(k: usize, p: f64) -> Result<f64> {
    Ok(curve_value((k + 1) as f64, p)? / (k + 1) as f64)
}

fn pick(parallel: f64, grid: f64) -> (f64, BaseTerm) {
    if grid < parallel - BRANCH_TIE_TOL {
        (grid, BaseTerm::Grid)
    } else {
        (parallel, BaseTerm::Parallel)
    }
}

/// `B_k(p)` for even `k >= 2`, with the active term.
pub fn base_curve_even_term(k: usize, p: f64) -> Result<(f64, BaseTerm)> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::LineCount {
            k,
            expected: "even and at least 2",
        });
    }
    let grid = curve_value(1.0, p)? / (k / 2 + 1) as f64;
    Ok(pick(parallel_term(k, p)?, grid))
}

/// `B_k(p) = min{ C_{k+1}(p) / (k+1), C_1(p) / (k/2+1) }` for even `k`.
pub fn base_curve_even(k: usize, p: f64) -> Result<f64> {
    base_curve_even_term(k, p).map(|(c, _)| c)
}

/// `D_k(p)` for odd `k`, with the active term.
pub fn base_curve_odd_term(k: usize, p: f64) -> Result<(f64, BaseTerm)> {
    if k % 2 != 1 {
        return Err(Error::LineCount { k, expected: "odd" });
    }
    let grid = net_scale_factor(&Net::evenly_spaced(k.div_ceil(2), k / 2), p)?;
    Ok(pick(parallel_term(k, p)?, grid))
}

/// `D_k(p)` for odd `k`: the smaller of the parallel net and the
/// `N(ceil(k/2), floor(k/2))` grid, whose holes are
/// `1/(ceil(k/2)+1) x 1/(floor(k/2)+1)`.
pub fn base_curve_odd(k: usize, p: f64) -> Result<f64> {
    base_curve_odd_term(k, p).map(|(c, _)| c)
}

/// Dispatches to the even or odd base curve.
pub fn base_curve(k: usize, p: f64) -> Result<(f64, BaseTerm)> {
    if k.is_multiple_of(2) {
        base_curve_even_term(k, p)
    } else {
        base_curve_odd_term(k, p)
    }
}

/// Aspect ratio at which the optimal net switches from parallel lines to a
/// grid: `(k+1)/(k/2+1)` for even `k`, `(k+1)/(floor(k/2)+1)` for odd `k`.
pub fn crossover_aspect(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::LineCount {
            k,
            expected: "at least 2",
        });
    }
    Ok((k + 1) as f64 / (k / 2 + 1) as f64)
}

/// Odd-`k` crossover obtained when the grid holes are taken to be
/// `1/ceil(k/2) x 1/floor(k/2)`: `(k+1) floor(k/2) / ceil(k/2)^2`.
/// Reported next to [`crossover_aspect`]; direct enumeration does not
/// support it (at `k = 3` it gives 1, enumeration gives 2).
pub fn odd_crossover_unshifted(k: usize) -> Result<f64> {
    if k < 2 || k % 2 != 1 {
        return Err(Error::LineCount {
            k,
            expected: "odd and at least 3",
        });
    }
    let (lo, hi) = ((k / 2) as f64, k.div_ceil(2) as f64);
    Ok((k + 1) as f64 * lo / (hi * hi))
}

/// Line split of the optimal axis-aligned net. At the crossover itself both
/// nets are optimal and the parallel one is returned.
pub fn optimal_split(k: usize, p: f64) -> Result<Split> {
    AspectRatio::new(p)?;
    if k == 0 {
        return Err(Error::LineCount {
            k,
            expected: "at least 1",
        });
    }
    if k == 1 || p <= crossover_aspect(k)? + BRANCH_TIE_TOL {
        Ok(Split::new(k, 0))
    } else {
        Ok(Split::new(k.div_ceil(2), k / 2))
    }
}

pub fn optimal_net(k: usize, p: f64) -> Result<Net> {
    optimal_split(k, p).map(Split::net)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn hole_scale_examples() {
        assert!(close(
            hole_scale(1.0 / 3.0, 0.5, 3.0).unwrap(),
            1.0 / 6.0,
            1e-15
        ));
        assert!(close(hole_scale(0.5, 0.5, 1.0).unwrap(), 0.5, 1e-15));
        assert!(close(hole_scale(1.0, 0.25, 2.0).unwrap(), 0.25, 1e-15));
        assert!(hole_scale(0.0, 1.0, 1.0).is_err());
        assert!(hole_scale(1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn net_scale_examples() {
        let c = |v, h, p| net_scale_factor(&Net::evenly_spaced(v, h), p).unwrap();
        assert!(close(c(2, 0, 1.0), 1.0 / 3.0, 1e-15));
        assert!(close(c(1, 1, 1.0), 0.5, 1e-15));
        assert!(close(c(2, 1, 3.0), 1.0 / 6.0, 1e-15));
        assert!(close(c(0, 0, 1.0), 1.0, 0.0));
    }

    #[test]
    fn max_hole_reports_location() {
        let net = Net::new(vec![0.2, 0.3], vec![0.6]).unwrap();
        let h = max_hole(&net, 1.0).unwrap();
        assert_eq!((h.column, h.row), (2, 0));
        assert!(close(h.x, 0.3, 1e-15) && close(h.width, 0.7, 1e-15));
        assert!(close(h.scale, 0.6, 1e-15));
    }

    #[test]
    fn base_curve_even_examples() {
        assert!(close(base_curve_even(2, 1.0).unwrap(), 1.0 / 3.0, 1e-15));
        let (c, _) = base_curve_even_term(2, 1.5).unwrap();
        assert!(close(c, 1.0 / 3.0, 1e-15));
        assert!(close(
            parallel_term(2, 1.5).unwrap(),
            curve_value(1.0, 1.5).unwrap() / 2.0,
            1e-12
        ));
        let (c, term) = base_curve_even_term(2, 3.0).unwrap();
        assert!(close(c, 2f64.sqrt() / 8.0, 1e-15));
        assert_eq!(term, BaseTerm::Grid);
        assert!(base_curve_even(3, 1.0).is_err());
        assert!(base_curve_even(0, 1.0).is_err());
    }

    #[test]
    fn base_curve_odd_examples() {
        assert!(close(base_curve_odd(3, 1.0).unwrap(), 0.25, 1e-15));
        assert!(close(base_curve_odd(3, 2.0).unwrap(), 0.25, 1e-15));
        let grid = net_scale_factor(&Net::evenly_spaced(2, 1), 2.0).unwrap();
        assert!(close(grid, 0.25, 1e-15));
        assert!(close(base_curve_odd(3, 3.0).unwrap(), 1.0 / 6.0, 1e-15));
        assert!(base_curve_odd(4, 1.0).is_err());
    }

    #[test]
    fn crossovers() {
        assert_eq!(crossover_aspect(2).unwrap(), 1.5);
        assert!(close(crossover_aspect(4).unwrap(), 5.0 / 3.0, 1e-15));
        assert_eq!(crossover_aspect(3).unwrap(), 2.0);
        assert_eq!(odd_crossover_unshifted(3).unwrap(), 1.0);
        assert!(crossover_aspect(1).is_err());
        assert!(odd_crossover_unshifted(4).is_err());
    }

    #[test]
    fn base_terms_agree_at_crossover() {
        for k in 2..=12 {
            let p = crossover_aspect(k).unwrap();
            let parallel = parallel_term(k, p).unwrap();
            let grid = net_scale_factor(&Net::evenly_spaced(k.div_ceil(2), k / 2), p).unwrap();
            assert!(close(parallel, grid, 1e-12), "k={k}: {parallel} vs {grid}");
        }
    }

    #[test]
    fn optimal_net_examples() {
        assert_eq!(optimal_split(2, 1.0).unwrap(), Split::new(2, 0));
        assert_eq!(optimal_split(2, 3.0).unwrap(), Split::new(1, 1));
        assert_eq!(optimal_split(4, 5.0 / 3.0).unwrap(), Split::new(4, 0));
        assert_eq!(optimal_split(3, 2.5).unwrap(), Split::new(2, 1));
        assert_eq!(optimal_split(1, 9.0).unwrap(), Split::new(1, 0));
        assert!(optimal_split(0, 1.0).is_err());
        let a = net_scale_factor(&Net::evenly_spaced(4, 0), 5.0 / 3.0).unwrap();
        let b = net_scale_factor(&Net::evenly_spaced(2, 2), 5.0 / 3.0).unwrap();
        assert!(close(a, b, 1e-12));
    }
}
