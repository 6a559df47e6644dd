//! Affine contractions `L_i` whose images tile an interval `X = [x_lo, x_hi]`.
//!
//! The images `X_i = L_i(X)` have pairwise disjoint interiors and their
//! closures cover `X`. Shared endpoints are owned by the left subinterval;
//! the last subinterval owns `x_hi`.

use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::{Error, Result};

/// Relative tolerance for matching image endpoints to knots.
const KNOT_TOL: f64 = 1e-12;

/// `L(x) = slope · x + intercept` with `0 < |slope| < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    slope: f64,
    intercept: f64,
}

impl AffineMap {
    pub fn new(slope: f64, intercept: f64) -> Result<Self> {
        if !(slope.is_finite() && intercept.is_finite()) {
            return Err(invalid("affine map coefficients must be finite"));
        }
        if slope == 0.0 || slope.abs() >= 1.0 {
            return Err(invalid(format!(
                "slope {slope} does not give a nontrivial contraction (need 0 < |a| < 1)"
            )));
        }
        Ok(AffineMap { slope, intercept })
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    /// `L⁻¹(y) = (y - b) / a`.
    #[inline]
    pub fn inverse_apply(&self, y: f64) -> f64 {
        (y - self.intercept) / self.slope
    }

    /// `Lip(L) = |a|`.
    pub fn lipschitz(&self) -> f64 {
        self.slope.abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffinePartition {
    x_lo: f64,
    x_hi: f64,
    maps: Vec<AffineMap>,
    knots: Vec<f64>,
}

impl AffinePartition {
    /// `N` equal pieces: `L_i(x) = (x - x_lo)/N + x_lo + (i - 1)(x_hi - x_lo)/N`.
    pub fn uniform(x_lo: f64, x_hi: f64, pieces: usize) -> Result<Self> {
        check_interval(x_lo, x_hi)?;
        if pieces < 2 {
            return Err(invalid(format!(
                "a partition needs N ≥ 2 pieces, got {pieces}"
            )));
        }
        let width = x_hi - x_lo;
        let n = pieces as f64;
        let knots: Vec<f64> = (0..=pieces)
            .map(|i| {
                if i == pieces {
                    x_hi
                } else {
                    x_lo + i as f64 * width / n
                }
            })
            .collect();
        let maps = (0..pieces)
            .map(|i| AffineMap::new(1.0 / n, x_lo - x_lo / n + i as f64 * width / n))
            .collect::<Result<_>>()?;
        Ok(AffinePartition {
            x_lo,
            x_hi,
            maps,
            knots,
        })
    }

    /// `L_i` maps `[k_0, k_N]` onto `[k_{i-1}, k_i]`, orientation preserving.
    pub fn from_knots(knots: &[f64]) -> Result<Self> {
        if knots.len() < 3 {
            return Err(invalid(format!(
                "need at least 3 knots for N ≥ 2, got {}",
                knots.len()
            )));
        }
        if knots.iter().any(|k| !k.is_finite()) {
            return Err(invalid("knots must be finite"));
        }
        if let Some(i) = knots.windows(2).position(|w| w[0] >= w[1]) {
            return Err(invalid(format!(
                "knots must be strictly increasing (knot {} = {} ≥ knot {} = {})",
                i,
                knots[i],
                i + 1,
                knots[i + 1]
            )));
        }
        let (x_lo, x_hi) = (knots[0], knots[knots.len() - 1]);
        let width = x_hi - x_lo;
        let maps = knots
            .windows(2)
            .map(|w| {
                let slope = (w[1] - w[0]) / width;
                AffineMap::new(slope, w[0] - slope * x_lo)
            })
            .collect::<Result<_>>()?;
        Ok(AffinePartition {
            x_lo,
            x_hi,
            maps,
            knots: knots.to_vec(),
        })
    }

    /// Validates an arbitrary family of affine contractions, listed in the
    /// left-to-right order of their images, against the tiling conditions.
    pub fn from_maps(x_lo: f64, x_hi: f64, maps: Vec<AffineMap>) -> Result<Self> {
        check_interval(x_lo, x_hi)?;
        if maps.len() < 2 {
            return Err(invalid(format!(
                "a partition needs N ≥ 2 maps, got {}",
                maps.len()
            )));
        }
        let tol = KNOT_TOL * (x_hi - x_lo);
        let mut knots = vec![x_lo];
        for (i, m) in maps.iter().enumerate() {
            let (a, b) = (m.apply(x_lo), m.apply(x_hi));
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let expected = knots[i];
            if (lo - expected).abs() > tol {
                return Err(invalid(format!(
                    "image of map {} starts at {lo}, expected {expected}: images must be adjacent and ordered",
                    i + 1
                )));
            }
            knots.push(hi);
        }
        let last = *knots.last().unwrap();
        if (last - x_hi).abs() > tol {
            return Err(invalid(format!(
                "images cover up to {last}, not to x_hi = {x_hi}"
            )));
        }
        *knots.last_mut().unwrap() = x_hi;
        Ok(AffinePartition {
            x_lo,
            x_hi,
            maps,
            knots,
        })
    }

    pub fn x_lo(&self) -> f64 {
        self.x_lo
    }

    pub fn x_hi(&self) -> f64 {
        self.x_hi
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &AffineMap {
        &self.maps[i]
    }

    /// `N + 1` subinterval endpoints; `X_i = [knots[i], knots[i + 1]]` (0-based).
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn lipschitz_constants(&self) -> Vec<f64> {
        self.maps.iter().map(AffineMap::lipschitz).collect()
    }

    /// 0-based index of the subinterval owning `x`.
    pub fn locate(&self, x: f64) -> Result<usize> {
        if !(x >= self.x_lo && x <= self.x_hi) {
            return Err(Error::Domain(format!(
                "x = {x} lies outside X = [{}, {}]",
                self.x_lo, self.x_hi
            )));
        }
        let interior = &self.knots[1..self.knots.len() - 1];
        Ok(interior.partition_point(|&k| k < x))
    }
}

fn check_interval(x_lo: f64, x_hi: f64) -> Result<()> {
    if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
        return Err(invalid(format!(
            "interval [{x_lo}, {x_hi}] must be finite with x_lo < x_hi"
        )));
    }
    Ok(())
}
