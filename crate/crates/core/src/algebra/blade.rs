use std::fmt;

use crate::error::invalid;
use crate::{Error, Result};

/// A subset `A ⊆ {1, …, n}` encoded as a bitmask; names the basis blade `e_A`.
///
/// Bit `i - 1` is set iff `i ∈ A`. The empty mask is `e_∅ = e_0 = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BladeIndex(u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub const fn from_mask(mask: u32) -> Self {
        BladeIndex(mask)
    }

    /// The generator `e_i`, `i ≥ 1`.
    pub fn basis(i: usize) -> Result<Self> {
        if i == 0 || i > 32 {
            return Err(invalid(format!("generator index {i} out of range")));
        }
        Ok(BladeIndex(1 << (i - 1)))
    }

    /// Builds `e_A` from a set of distinct generator indices in any order.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            let bit = Self::basis(i)?.0;
            if mask & bit != 0 {
                return Err(invalid(format!("repeated generator index {i}")));
            }
            mask |= bit;
        }
        Ok(BladeIndex(mask))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_scalar(self) -> bool {
        self.0 == 0
    }

    /// Increasing generator indices of the blade.
    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    /// Text key for dimension `n`: concatenated increasing indices, empty for
    /// the scalar blade. For `n ≥ 10` indices are separated by commas.
    pub fn key(self, n: usize) -> String {
        let indices = self.indices();
        if n >= 10 {
            indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        } else {
            indices.iter().map(|i| i.to_string()).collect()
        }
    }

    /// Parses a key produced by [`BladeIndex::key`] for dimension `n`.
    ///
    /// For `n ≤ 9` a key without commas is read one digit per generator; for
    /// `n ≥ 10` it names a single generator. Comma-separated keys are accepted
    /// for any `n`. Indices must be strictly increasing.
    pub fn parse_key(key: &str, n: usize) -> Result<Self> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Self::SCALAR);
        }
        let indices: Vec<usize> = if key.contains(',') {
            key.split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad_key(key)))
                .collect::<Result<_>>()?
        } else {
            if n >= 10 {
                // a lone index; multi-index keys carry commas at this size
                vec![key.parse::<usize>().map_err(|_| bad_key(key))?]
            } else {
                key.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| bad_key(key))
                    })
                    .collect::<Result<_>>()?
            }
        };
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!(
                "blade key {key:?} must list increasing indices"
            )));
        }
        if let Some(&i) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(invalid(format!(
                "blade key {key:?}: index {i} outside 1..={n}"
            )));
        }
        Self::from_indices(&indices)
    }

    pub(crate) fn check(self, n: usize) -> Result<()> {
        if n < 32 && self.0 >> n != 0 {
            return Err(invalid(format!(
                "blade mask {:#b} does not fit dimension n = {n}",
                self.0
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        let indices = self.indices();
        if indices.iter().any(|&i| i >= 10) {
            write!(f, "{{{}}}", self.key(10))
        } else {
            f.write_str(&self.key(0))
        }
    }
}

fn bad_key(key: &str) -> Error {
    invalid(format!("malformed blade key {key:?}"))
}

/// `true` when `e_a e_b = -e_{a ⊕ b}`.
///
/// Moving each generator of `b` left past the larger generators of `a` costs
/// one sign flip per transposition; each generator shared by `a` and `b`
/// annihilates to `e_i² = -1`.
#[inline]
pub(crate) fn product_is_negative(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (a >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    (swaps + (a & b).count_ones()) & 1 == 1
}

/// Product of two basis blades in ℝₙ: `e_a e_b = sign · e_{a XOR b}`.
pub fn blade_mul(a: BladeIndex, b: BladeIndex, n: usize) -> Result<(i8, BladeIndex)> {
    super::check_dim(n)?;
    a.check(n)?;
    b.check(n)?;
    let sign = if product_is_negative(a.0, b.0) { -1 } else { 1 };
    Ok((sign, BladeIndex(a.0 ^ b.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(indices: &[usize]) -> BladeIndex {
        BladeIndex::from_indices(indices).unwrap()
    }

    #[test]
    fn generator_squares_to_minus_one() {
        assert_eq!(
            blade_mul(e(&[1]), e(&[1]), 3).unwrap(),
            (-1, BladeIndex::SCALAR)
        );
    }

    #[test]
    fn scalar_blade_is_identity() {
        for mask in 0..8 {
            let a = BladeIndex::from_mask(mask);
            assert_eq!(blade_mul(BladeIndex::SCALAR, a, 3).unwrap(), (1, a));
            assert_eq!(blade_mul(a, BladeIndex::SCALAR, 3).unwrap(), (1, a));
        }
    }

    #[test]
    fn e12_times_e1() {
        assert_eq!(blade_mul(e(&[1, 2]), e(&[1]), 2).unwrap(), (1, e(&[2])));
        assert_eq!(blade_mul(e(&[1]), e(&[1, 2]), 2).unwrap(), (-1, e(&[2])));
    }

    #[test]
    fn rejects_masks_outside_dimension() {
        assert!(blade_mul(e(&[3]), e(&[1]), 2).is_err());
        assert!(blade_mul(e(&[1]), e(&[1]), 0).is_err());
        assert!(blade_mul(e(&[1]), e(&[1]), 13).is_err());
    }

    #[test]
    fn keys() {
        assert_eq!(e(&[]).key(3), "");
        assert_eq!(e(&[1, 2]).key(3), "12");
        assert_eq!(e(&[1, 10, 12]).key(12), "1,10,12");
        assert_eq!(BladeIndex::parse_key("", 2).unwrap(), BladeIndex::SCALAR);
        assert_eq!(BladeIndex::parse_key("13", 3).unwrap(), e(&[1, 3]));
        assert_eq!(BladeIndex::parse_key("2,11", 12).unwrap(), e(&[2, 11]));
        assert!(BladeIndex::parse_key("21", 3).is_err());
        assert!(BladeIndex::parse_key("4", 3).is_err());
        assert!(BladeIndex::parse_key("11", 3).is_err());
        assert_eq!(BladeIndex::parse_key("12", 12).unwrap(), e(&[12]));
        assert!(BladeIndex::parse_key("13", 12).is_err());
        assert!(BladeIndex::parse_key("x", 3).is_err());
        assert_eq!(e(&[1, 3]).to_string(), "e13");
        assert_eq!(BladeIndex::SCALAR.to_string(), "1");
    }
}
