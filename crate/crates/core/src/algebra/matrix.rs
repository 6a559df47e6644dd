use super::{Multivector, Paravector};
use crate::error::invalid;
use crate::{Error, Result};

/// A `k × k` matrix `H = (H_ij)` over 𝔸ₙ₊₁, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ParavectorMatrix {
    k: usize,
    n: usize,
    entries: Vec<Paravector>,
}

impl ParavectorMatrix {
    pub fn new(k: usize, entries: Vec<Paravector>) -> Result<Self> {
        if k == 0 || entries.len() != k * k {
            return Err(invalid(format!(
                "a {k}×{k} matrix needs {} entries, got {}",
                k * k,
                entries.len()
            )));
        }
        let n = entries[0].n();
        if let Some(bad) = entries.iter().find(|h| h.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(ParavectorMatrix { k, n, entries })
    }

    pub fn identity(k: usize, n: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(Paravector::real(n, if i == j { 1.0 } else { 0.0 })?);
            }
        }
        Self::new(k, entries)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Paravector {
        &self.entries[i * self.k + j]
    }

    /// `L(x)_i = Σ_j H_ij x_j`, computed in the full algebra ℝₙ.
    pub fn apply_full(&self, x: &[Paravector]) -> Result<Vec<Multivector>> {
        if x.len() != self.k {
            return Err(invalid(format!(
                "expected {} entries, got {}",
                self.k,
                x.len()
            )));
        }
        if let Some(bad) = x.iter().find(|v| v.n() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: bad.n(),
            });
        }
        let x: Vec<Multivector> = x.iter().map(Paravector::to_multivector).collect();
        (0..self.k)
            .map(|i| {
                let mut acc = Multivector::zero(self.n)?;
                for (j, xj) in x.iter().enumerate() {
                    let term = self.entry(i, j).to_multivector().geometric_product(xj)?;
                    acc = acc.checked_add(&term)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// The endomorphism `𝓛 = π ∘ L` of 𝔸ₙ₊₁ᵏ.
    pub fn right_linear_apply(&self, x: &[Paravector]) -> Result<Vec<Paravector>> {
        Ok(self
            .apply_full(x)?
            .iter()
            .map(Multivector::paravector_part)
            .collect())
    }
}
