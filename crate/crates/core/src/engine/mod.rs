//! Real-valued Read-Bajraktarević operators on uniformly sampled functions.

mod fif;
mod gamma;
mod grid;
mod operator;

pub use fif::fif_from_data;
pub(crate) use gamma::probe_pair;
pub use gamma::{empirical_gamma, gamma_from_constants, gamma_gate, SpaceSpec};
pub use grid::{norm, Grid, GridFunction};
pub(crate) use operator::residual_terms;
pub use operator::{
    fixed_point, fixed_point_from, rb_apply, self_referential_residual, FixedPoint, RBParams,
    SamplingMode, ScalarFn,
};
