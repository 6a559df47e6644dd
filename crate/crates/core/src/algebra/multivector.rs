use std::ops::{Add, Mul, Neg, Sub};

use super::blade::{product_is_negative, BladeIndex};
use super::{check_dim, Paravector};
use crate::error::invalid;
use crate::{Error, Result};

/// An element `x = Σ_A x_A e_A` of ℝₙ with all `2ⁿ` coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    n: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Multivector {
            n,
            coeffs: vec![0.0; 1 << n],
        })
    }

    pub fn scalar(n: usize, value: f64) -> Result<Self> {
        let mut x = Self::zero(n)?;
        x.coeffs[0] = value;
        Ok(x)
    }

    /// `coeff · e_A`.
    pub fn blade(n: usize, blade: BladeIndex, coeff: f64) -> Result<Self> {
        blade.check(n)?;
        let mut x = Self::zero(n)?;
        x.coeffs[blade.mask() as usize] = coeff;
        Ok(x)
    }

    /// The generator `e_i` (1-based).
    pub fn basis_vector(n: usize, i: usize) -> Result<Self> {
        Self::blade(n, BladeIndex::basis(i)?, 1.0)
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if coeffs.len() != 1 << n {
            return Err(invalid(format!(
                "n = {n} needs {} coefficients, got {}",
                1usize << n,
                coeffs.len()
            )));
        }
        Ok(Multivector { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient `x_A`; zero for blades outside the algebra.
    pub fn coeff(&self, blade: BladeIndex) -> f64 {
        self.coeffs
            .get(blade.mask() as usize)
            .copied()
            .unwrap_or(0.0)
    }

    pub fn set_coeff(&mut self, blade: BladeIndex, value: f64) -> Result<()> {
        blade.check(self.n)?;
        self.coeffs[blade.mask() as usize] = value;
        Ok(())
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Nonzero `(blade, coefficient)` pairs in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeIndex, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(m, c)| (BladeIndex::from_mask(m as u32), *c))
    }

    /// The Clifford product `xy`.
    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        self.same_dim(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &xa) in self.coeffs.iter().enumerate() {
            if xa == 0.0 {
                continue;
            }
            for (b, &yb) in other.coeffs.iter().enumerate() {
                if yb == 0.0 {
                    continue;
                }
                let term = xa * yb;
                if product_is_negative(a as u32, b as u32) {
                    out[a ^ b] -= term;
                } else {
                    out[a ^ b] += term;
                }
            }
        }
        Ok(Multivector {
            n: self.n,
            coeffs: out,
        })
    }

    /// Clifford conjugation `x̄ = Σ x_A ē_A`, with `ē_i = -e_i` and the factor
    /// order reversed. On a blade of grade `g` this is the sign
    /// `(-1)^{g(g+1)/2}`.
    pub fn conj(&self) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| if conj_flips(m as u32) { -c } else { c })
            .collect();
        Multivector { n: self.n, coeffs }
    }

    /// Clifford norm `|x| = (Σ x_A²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Projection π onto the paravector subspace (grades 0 and 1).
    pub fn paravector_part(&self) -> Paravector {
        let vector = (0..self.n).map(|i| self.coeffs[1 << i]).collect();
        Paravector::from_parts_unchecked(self.coeffs[0], vector)
    }

    /// Keeps only the coefficients of the given grade.
    pub fn grade_part(&self, grade: u32) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| {
                if (m as u32).count_ones() == grade {
                    c
                } else {
                    0.0
                }
            })
            .collect();
        Multivector { n: self.n, coeffs }
    }

    /// Largest absolute coefficient on blades of grade ≥ 2.
    pub fn max_higher_grade(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(m, _)| m.count_ones() >= 2)
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: f64) -> Multivector {
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Multivector, op: impl Fn(f64, f64) -> f64) -> Result<Multivector> {
        self.same_dim(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(Multivector { n: self.n, coeffs })
    }

    fn same_dim(&self, other: &Multivector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn conj_flips(mask: u32) -> bool {
    let g = mask.count_ones();
    (g * (g + 1) / 2) & 1 == 1
}

// Operator forms panic on mismatched dimensions; use the `checked_*` and
// `geometric_product` methods to get an error instead.

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.checked_add(rhs)
            .expect("multivector dimensions differ")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.checked_sub(rhs)
            .expect("multivector dimensions differ")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs)
            .expect("multivector dimensions differ")
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}
