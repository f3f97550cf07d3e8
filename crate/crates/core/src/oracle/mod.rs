//! Brute-force verifiers that share no code path with the closed forms
//! beyond the net scale-factor definition.

pub mod cell;
pub mod enumerate;
pub mod lagrange;
pub mod perturb;
pub mod suite;
pub mod sweep;

pub use cell::{largest_square_in_cell, max_square_at, square_fits, SquareFit};
pub use enumerate::{enumerate_axis_nets, enumerated_switch, ENUMERATION_TIE_TOL};
pub use lagrange::{
    grid_diagonal_scale, lagrange_split_check, split_length_squared, SplitGeometry,
};
pub use perturb::{
    local_perturbation_experiment, perturbed_cells, perturbed_lines, GeneralLine,
    PerturbationConfig, PerturbationSpec,
};
pub use sweep::{oracle_curve_value, RotationSweep, SweepConfig, SweepResult};
