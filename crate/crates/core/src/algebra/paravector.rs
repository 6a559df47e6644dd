use super::{check_dim, Multivector};
use crate::error::invalid;
use crate::{Error, Result};

/// Below this vector-part norm the closed forms switch to their Taylor
/// expansions around `|𝒙| = 0`.
const SMALL_VECTOR: f64 = 1e-8;

/// A paravector `x = x₀ + Σ x_i e_i` in 𝔸ₙ₊₁ = ℝ ⊕ ℝⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector {
    scalar: f64,
    vector: Vec<f64>,
}

impl Paravector {
    pub fn new(scalar: f64, vector: Vec<f64>) -> Result<Self> {
        check_dim(vector.len())?;
        Ok(Paravector { scalar, vector })
    }

    pub(crate) fn from_parts_unchecked(scalar: f64, vector: Vec<f64>) -> Self {
        Paravector { scalar, vector }
    }

    pub fn real(n: usize, scalar: f64) -> Result<Self> {
        Self::new(scalar, vec![0.0; n])
    }

    pub fn n(&self) -> usize {
        self.vector.len()
    }

    /// `Sc(x) = x₀`.
    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    /// `Vec(x) = 𝒙`, as the coefficients of `e_1, …, e_n`.
    pub fn vector(&self) -> &[f64] {
        &self.vector
    }

    pub fn vector_norm(&self) -> f64 {
        self.vector.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.scalar * self.scalar + self.vector.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    pub fn conj(&self) -> Paravector {
        Paravector {
            scalar: self.scalar,
            vector: self.vector.iter().map(|v| -v).collect(),
        }
    }

    pub fn to_multivector(&self) -> Multivector {
        let n = self.n();
        let mut coeffs = vec![0.0; 1 << n];
        coeffs[0] = self.scalar;
        for (i, &v) in self.vector.iter().enumerate() {
            coeffs[1 << i] = v;
        }
        Multivector::from_coeffs(n, coeffs).expect("paravector dimension validated at construction")
    }

    /// `ω(𝒙) = 𝒙 / |𝒙|`.
    pub fn omega(&self) -> Result<Vec<f64>> {
        unit_direction(&self.vector)
    }

    /// `exp(x) = e^{x₀} (cos|𝒙| + ω(𝒙) sin|𝒙|)`.
    pub fn exp(&self) -> Paravector {
        let r = self.vector_norm();
        let growth = self.scalar.exp();
        let vector_factor = growth * sinc(r);
        Paravector {
            scalar: growth * r.cos(),
            vector: self.vector.iter().map(|v| v * vector_factor).collect(),
        }
    }

    /// `sin(x) = sin x₀ cosh|𝒙| + ω(𝒙) cos x₀ sinh|𝒙|`.
    ///
    /// The `cos x₀` factor on the vector part is what the power series
    /// `Σ (-1)^k x^{2k+1} / (2k+1)!` produces, since `𝒙² = -|𝒙|²`.
    pub fn sin(&self) -> Paravector {
        let r = self.vector_norm();
        let (s0, c0) = self.scalar.sin_cos();
        let vector_factor = c0 * sinhc(r);
        Paravector {
            scalar: s0 * r.cosh(),
            vector: self.vector.iter().map(|v| v * vector_factor).collect(),
        }
    }

    /// `x⁻¹ = x̄ / |x|²`; a paravector satisfies `x x̄ = x̄ x = |x|²`.
    pub fn inverse(&self) -> Result<Paravector> {
        let norm_sq = self.scalar * self.scalar + self.vector.iter().map(|v| v * v).sum::<f64>();
        if norm_sq == 0.0 {
            return Err(Error::DivisionByZero(
                "the zero paravector has no inverse".into(),
            ));
        }
        let conj = self.conj();
        Ok(Paravector {
            scalar: conj.scalar / norm_sq,
            vector: conj.vector.iter().map(|v| v / norm_sq).collect(),
        })
    }

    /// Product in 𝔸₄ under the quaternion table `e_1 e_2 = e_3` (cyclic),
    /// `e_i² = -1`.
    ///
    /// This is an explicitly defined product on 𝔸₄ and differs from the
    /// Clifford product in ℝ₃, where `e_1 e_2` is the bivector `e_12`.
    pub fn quaternion_mul(&self, other: &Paravector) -> Result<Paravector> {
        if self.n() != 3 || other.n() != 3 {
            return Err(invalid(format!(
                "the quaternion table needs n = 3, got n = {} and n = {}",
                self.n(),
                other.n()
            )));
        }
        let (a0, a) = (self.scalar, &self.vector);
        let (b0, b) = (other.scalar, &other.vector);
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let vector = (0..3).map(|i| a0 * b[i] + b0 * a[i] + cross[i]).collect();
        Ok(Paravector {
            scalar: a0 * b0 - dot,
            vector,
        })
    }
}

/// `ω(𝒙) = 𝒙 / |𝒙|` as a grade-1 multivector; `ω(𝒙)² = -1`.
pub fn omega(vector: &[f64]) -> Result<Multivector> {
    check_dim(vector.len())?;
    let unit = unit_direction(vector)?;
    Ok(Paravector {
        scalar: 0.0,
        vector: unit,
    }
    .to_multivector())
}

fn unit_direction(vector: &[f64]) -> Result<Vec<f64>> {
    let r = vector.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::Domain("ω(𝒙) is undefined for 𝒙 = 0".into()));
    }
    Ok(vector.iter().map(|v| v / r).collect())
}

/// `sin r / r`
fn sinc(r: f64) -> f64 {
    if r < SMALL_VECTOR {
        1.0 - r * r / 6.0
    } else {
        r.sin() / r
    }
}

/// `sinh r / r`
fn sinhc(r: f64) -> f64 {
    if r < SMALL_VECTOR {
        1.0 + r * r / 6.0
    } else {
        r.sinh() / r
    }
}
