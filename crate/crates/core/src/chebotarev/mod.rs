//! Interval censuses of factorization types and the character sums behind
//! them.

mod artin;
mod census;
mod charsum;
mod classes;
mod interval;
mod sums;

pub use artin::{
    artin_schreier_census, artin_schreier_symbol, cubic_artin_class, joint_cubic_census, primitive_cube_root,
    CubicCell, JointCubicCensus, ARTIN_SCHREIER_CHECK_MAX_P,
};
pub use census::{
    error_scale, interval_census, irreducible_interval_count, trinomial_sweep, CensusReport, ClassRow,
    IrreducibleCount, TrinomialSweep, NORMALIZATION,
};
pub use charsum::{
    completed_sum_decomposition, completed_sum_from, interval_transform, twisted_class_sum, ClassIndicator,
    CompletedSum, ComplexValue, MAX_CHARSUM_P,
};
pub use classes::{
    cubic_cells, cubic_label, cycle_type_density, partitions, ratio_to_f64, ClassFamily, ClassModel, Density,
    MAX_SYMMETRIC_DEGREE,
};
pub use interval::IntervalFp;
pub use rustfft::num_complex::Complex64;
pub use sums::{chowla_sum, divisor_sums, DivisorMode};
