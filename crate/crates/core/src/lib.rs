//! Optimal axis-aligned "tripwire" nets over the unit square.
//!
//! A net of `k` lines catches a `1 x p` rectangular intruder once the
//! intruder is too large to fit in any hole. This crate computes the
//! inscribing curve `C_n(p)` for a rectangle in a rectangular hole, scale
//! factors of arbitrary axis-aligned nets, the base curves that describe the
//! best net for each `k`, and brute-force oracles that check all of it.

pub mod error;
pub mod geometry;
pub mod inscribe;
pub mod nets;
pub mod oracle;
pub mod report;
pub mod roots;

pub use error::{Error, Result};
pub use geometry::{ConvexPolygon, Point};
pub use inscribe::{
    crossover_w, curve_sample, curve_value, diagonal_branch, placement, AspectRatio, Branch,
    CurveSample, DiagonalSolution, Placement,
};
pub use nets::{
    base_curve, base_curve_even, base_curve_odd, crossover_aspect, hole_scale, net_scale_factor,
    odd_crossover_unshifted, optimal_net, optimal_split, BaseTerm, HoleGrid, Net, Split,
};
pub use report::{Candidate, Parameters, VerificationReport};
