//! The real Clifford algebra ℝₙ generated by `e_1, …, e_n` with
//! `e_i e_j + e_j e_i = -2 δ_ij`, and its paravector subspace 𝔸ₙ₊₁.
//!
//! Multivectors are stored densely: coefficient `coeffs[mask]` belongs to the
//! blade `e_A` whose index set `A` has bit `i - 1` set for each `i ∈ A`.

mod blade;
mod matrix;
mod multivector;
mod paravector;
mod text;

pub use blade::{blade_mul, BladeIndex};
pub use matrix::ParavectorMatrix;
pub(crate) use multivector::conj_flips as multivector_conj_flips;
pub use multivector::Multivector;
pub use paravector::{omega, Paravector};

/// Largest supported ambient dimension (4096 coefficients per multivector).
pub const MAX_DIM: usize = 12;

pub(crate) fn check_dim(n: usize) -> crate::Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(crate::error::invalid(format!(
            "algebra dimension must lie in 1..={MAX_DIM}, got {n}"
        )));
    }
    Ok(())
}
