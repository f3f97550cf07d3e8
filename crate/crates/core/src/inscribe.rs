//! The inscribing curve: the largest similar copy of a `1 x p` rectangle
//! that fits, with rotation, inside a `1 x n` rectangular hole.
//!
//! Holes use the frame `[0, 1] x [0, n]`, short side horizontal. Three
//! placements compete:
//!
//! * plateau: the intruder stands upright at full width (`c = 1`, needs `p <= n`),
//! * vertical: the long side spans the hole's height (`c = n / p`),
//! * diagonal: one corner on each side of the hole.
//!
//! [`curve_value`] takes the best of whichever candidates are defined.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::roots::bisect;

/// Absolute tolerance for comparing branch values.
pub const BRANCH_TIE_TOL: f64 = 1e-12;

/// Residual tolerance used when solving for the vertical/diagonal crossing.
pub const CROSSOVER_RESIDUAL_TOL: f64 = 1e-12;

/// Aspect ratio of a `1 x value` rectangle, normalized so `value >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AspectRatio(f64);

impl AspectRatio {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidAspect(value))
        }
    }

    /// Aspect ratio of a `w x h` rectangle, long side over short side.
    pub fn of_sides(w: f64, h: f64) -> Result<Self> {
        if !(w > 0.0 && h > 0.0 && w.is_finite() && h.is_finite()) {
            return Err(Error::InvalidHole {
                width: w,
                height: h,
            });
        }
        Self::new((w.max(h) / w.min(h)).max(1.0))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for AspectRatio {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<AspectRatio> for f64 {
    fn from(a: AspectRatio) -> f64 {
        a.0
    }
}

impl fmt::Display for AspectRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which placement realizes the curve value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    HorizontalPlateau,
    Vertical,
    Diagonal,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::HorizontalPlateau => "horizontal-plateau",
            Branch::Vertical => "vertical",
            Branch::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Solution of the corner-contact system for a diagonally placed intruder.
///
/// `a1` is the offset of the bottom contact from the hole's lower-left
/// corner, `a2` the height of the left contact. The short side of the
/// intruder is `c`, the long side `c * p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalSolution {
    pub n: f64,
    pub p: f64,
    pub a1: f64,
    pub a2: f64,
    pub c: f64,
    /// `(a1, 0)`, `(1, n - a2)`, `(1 - a1, n)`, `(0, a2)`.
    pub corners: [Point; 4],
}

impl DiagonalSolution {
    /// Residuals of the similar-triangle relation and the two Pythagorean
    /// relations, in that order.
    pub fn residuals(&self) -> [f64; 3] {
        let Self {
            n, p, a1, a2, c, ..
        } = *self;
        [
            a1 / a2 - (n - a2) / (1.0 - a1),
            a1 * a1 + a2 * a2 - c * c,
            (1.0 - a1).powi(2) + (n - a2).powi(2) - (c * p).powi(2),
        ]
    }
}

/// One point on an inscribing curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub p: AspectRatio,
    pub c: f64,
    pub branch: Branch,
}

/// Corner-contact solution for `p > n >= 1`.
pub fn diagonal_branch(n: f64, p: f64) -> Result<DiagonalSolution> {
    let n = AspectRatio::new(n)?.get();
    let p = AspectRatio::new(p)?.get();
    if p <= n {
        return Err(Error::DiagonalDomain { n, p });
    }
    let t = (n - p) / (1.0 - p * p);
    let a2 = t;
    let a1 = 1.0 - p * t;
    let c = (t * t * (p * p + 1.0) - 2.0 * t * p + 1.0).sqrt();
    let corners = [
        Point::new(a1, 0.0),
        Point::new(1.0, n - a2),
        Point::new(1.0 - a1, n),
        Point::new(0.0, a2),
    ];
    Ok(DiagonalSolution {
        n,
        p,
        a1,
        a2,
        c,
        corners,
    })
}

/// Value and branch of the inscribing curve `C_n(p)`.
///
/// Candidates are compared with [`BRANCH_TIE_TOL`]; ties go to the earlier
/// branch in the order plateau, vertical, diagonal.
pub fn curve_sample(n: f64, p: f64) -> Result<CurveSample> {
    AspectRatio::new(n)?;
    let p_ratio = AspectRatio::new(p)?;
    let mut best = if p <= n {
        (1.0, Branch::HorizontalPlateau)
    } else {
        (n / p, Branch::Vertical)
    };
    if p > n {
        let diag = diagonal_branch(n, p)?.c;
        if diag > best.0 + BRANCH_TIE_TOL {
            best = (diag, Branch::Diagonal);
        }
    }
    Ok(CurveSample {
        p: p_ratio,
        c: best.0,
        branch: best.1,
    })
}

/// `C_n(p)`, the largest scale factor of a `1 x p` intruder in a `1 x n` hole.
pub fn curve_value(n: f64, p: f64) -> Result<f64> {
    curve_sample(n, p).map(|s| s.c)
}

/// Bracket searched for the vertical/diagonal crossing.
pub fn crossover_bracket(n: f64) -> (f64, f64) {
    (n * (1.0 + 1e-9), f64::max(20.0, 10.0 * n))
}

/// The aspect ratio `w_n > n` where the diagonal placement overtakes the
/// vertical one, i.e. the root of `diagonal(p) - n / p`.
pub fn crossover_w(n: f64) -> Result<f64> {
    let n = AspectRatio::new(n)?.get();
    let (lo, hi) = crossover_bracket(n);
    bisect(|p| crossover_residual(n, p), lo, hi, CROSSOVER_RESIDUAL_TOL)
}

/// `diagonal(p) - n / p`; negative on `(n, w_n)` and positive beyond.
pub fn crossover_residual(n: f64, p: f64) -> f64 {
    match diagonal_branch(n, p) {
        Ok(sol) => sol.c - n / p,
        Err(_) => f64::NAN,
    }
}

/// One optimal placement of the scaled intruder inside `[0, 1] x [0, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub n: f64,
    pub p: f64,
    pub c: f64,
    pub branch: Branch,
    /// Corners in order around the rectangle.
    pub corners: [Point; 4],
}

impl Placement {
    /// Maps the placement from the unit hole frame into a `width x height`
    /// hole with lower-left corner `origin`. The hole frame's short side is
    /// mapped onto the shorter of `width` and `height`.
    pub fn embed(&self, origin: Point, width: f64, height: f64) -> [Point; 4] {
        let scale = width.min(height);
        self.corners.map(|q| {
            let (x, y) = if width <= height {
                (q.x, q.y)
            } else {
                (q.y, q.x)
            };
            Point::new(origin.x + scale * x, origin.y + scale * y)
        })
    }
}

/// Explicit corner coordinates for the placement that realizes `C_n(p)`.
pub fn placement(n: f64, p: f64) -> Result<Placement> {
    let sample = curve_sample(n, p)?;
    let c = sample.c;
    let corners = match sample.branch {
        Branch::HorizontalPlateau | Branch::Vertical => [
            Point::new(0.0, 0.0),
            Point::new(c, 0.0),
            Point::new(c, c * p),
            Point::new(0.0, c * p),
        ],
        Branch::Diagonal => diagonal_branch(n, p)?.corners,
    };
    Ok(Placement {
        n,
        p,
        c,
        branch: sample.branch,
        corners,
    })
}
