//! Partitions, Gelfand-Tsetlin patterns and register-width models.

mod gt;
mod partition;
mod registers;

pub use gt::{enumerate_gt_patterns, enumerate_gt_patterns_with_weight, gt_weight, validate_gt, DynkinWeight, GtPattern, GtViolation, StandardWeight};
pub use partition::{
    add_a_box_paths, balanced_shape, clog2, clog2_big, count_partitions, dynkin_from_partition, enumerate_partitions,
    partition_from_dynkin, path_contents, sym_group_dimension, validate_path, weyl_dimension, HighestWeightDynkin,
    Partition,
};
pub use registers::{register_widths, register_widths_with, Encoding, RegisterWidths, DEFAULT_EXHAUSTIVE_THRESHOLD};
