//! Clifford-valued fractal interpolation.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`] implements the real Clifford algebra ℝₙ (generators square to
//!   `-1`) with dense blade storage, conjugation, the Clifford norm and the
//!   paravector subspace with its closed-form elementary functions.
//! * [`partition`] builds families of affine contractions `L_i` whose images
//!   tile an interval `X`.
//! * [`engine`] samples real functions on a uniform grid over `X` and applies
//!   the Read-Bajraktarević operator
//!   `Tf = q_i∘L_i⁻¹ + (s_i∘L_i⁻¹)·(f∘L_i⁻¹)` on each `X_i`, iterating it to its
//!   fixed point. It also evaluates the contraction constants γ for the
//!   supported function spaces.
//! * [`hyper`] lifts the operator to ℝₙ-valued functions blade by blade and
//!   provides pointwise algebraic post-processing of the result.

pub mod algebra;
pub mod engine;
mod error;
pub mod hyper;
pub mod partition;

pub use algebra::{
    blade_mul, omega, BladeIndex, Multivector, Paravector, ParavectorMatrix, MAX_DIM,
};
pub use engine::{
    empirical_gamma, fif_from_data, fixed_point, fixed_point_from, gamma_gate, norm, rb_apply,
    self_referential_residual, FixedPoint, Grid, GridFunction, RBParams, SamplingMode, ScalarFn,
    SpaceSpec,
};
pub use error::{Error, Result};
pub use hyper::{
    clifford_empirical_gamma, clifford_fixed_point, clifford_norm_f, clifford_rb_apply,
    pointwise_product, pv_restrict, residual, CliffordFixedPoint, CliffordGridFunction,
    CliffordRBParams,
};
pub use partition::{AffineMap, AffinePartition};
