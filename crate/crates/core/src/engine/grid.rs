use serde::{Deserialize, Serialize};

use super::SpaceSpec;
use crate::error::invalid;
use crate::{Error, Result};

/// `M + 1` equally spaced points `x_j = x_lo + j (x_hi - x_lo) / M`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_lo: f64,
    x_hi: f64,
    m: usize,
}

impl Grid {
    pub fn new(x_lo: f64, x_hi: f64, m: usize) -> Result<Self> {
        if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
            return Err(invalid(format!(
                "grid interval [{x_lo}, {x_hi}] must be finite with x_lo < x_hi"
            )));
        }
        if m == 0 {
            return Err(invalid("grid needs M ≥ 1 intervals"));
        }
        Ok(Grid { x_lo, x_hi, m })
    }

    pub fn x_lo(&self) -> f64 {
        self.x_lo
    }

    pub fn x_hi(&self) -> f64 {
        self.x_hi
    }

    /// Number of grid intervals `M`.
    pub fn intervals(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.m + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.m as f64
    }

    #[inline]
    pub fn point(&self, j: usize) -> f64 {
        if j == self.m {
            self.x_hi
        } else {
            self.x_lo + (self.x_hi - self.x_lo) * (j as f64 / self.m as f64)
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.m).map(|j| self.point(j))
    }

    /// Cell index `j` and weight `t ∈ [0, 1]` with `x = (1 - t) x_j + t x_{j+1}`.
    fn cell(&self, x: f64) -> (usize, f64) {
        let u = (x - self.x_lo) / (self.x_hi - self.x_lo) * self.m as f64;
        let j = (u.floor().max(0.0) as usize).min(self.m - 1);
        (j, (u - j as f64).clamp(0.0, 1.0))
    }
}

/// Samples of a real function on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(format!(
                "grid with M = {} needs {} samples, got {}",
                grid.m,
                grid.len(),
                values.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("sample {j} is not finite")));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.points().map(f).collect())
    }

    pub(crate) fn from_raw(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        GridFunction { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Piecewise-linear evaluation; `x` is clamped to the grid interval.
    pub fn interpolate(&self, x: f64) -> f64 {
        let (j, t) = self.grid.cell(x);
        if t == 0.0 {
            self.values[j]
        } else if t == 1.0 {
            self.values[j + 1]
        } else {
            (1.0 - t) * self.values[j] + t * self.values[j + 1]
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max_j |f_j - g_j|`.
    pub fn sup_distance(&self, other: &GridFunction) -> Result<f64> {
        self.same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(GridFunction {
            grid: self.grid,
            values,
        })
    }

    pub(crate) fn same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid != other.grid {
            return Err(invalid(format!(
                "grids differ: {:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }
}

/// Sup norm for `C⁰`, composite trapezoidal `Lᵖ` norm for `Lp`.
pub fn norm(space: &SpaceSpec, f: &GridFunction) -> Result<f64> {
    space.validate()?;
    match *space {
        SpaceSpec::Ck { k: 0 } => Ok(f.sup_norm()),
        SpaceSpec::Lp { p } => {
            let h = f.grid.step();
            let powered: Vec<f64> = f.values.iter().map(|v| v.abs().powf(p)).collect();
            let ends = (powered[0] + powered[powered.len() - 1]) / 2.0;
            let integral = h * (powered.iter().sum::<f64>() - ends);
            Ok(integral.powf(1.0 / p))
        }
        ref other => Err(Error::NotImplemented(format!(
            "numerical norm for {other:?}; only C0 and Lp are evaluated on grids"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(m: usize) -> Grid {
        Grid::new(0.0, 1.0, m).unwrap()
    }

    #[test]
    fn grid_points_hit_endpoints() {
        let g = Grid::new(-1.0, 2.0, 3).unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![-1.0, 0.0, 1.0, 2.0]);
        assert!(Grid::new(0.0, 1.0, 0).is_err());
        assert!(Grid::new(1.0, 0.0, 4).is_err());
    }

    #[test]
    fn constant_one_has_unit_norms() {
        let f = GridFunction::from_fn(unit(64), |_| 1.0).unwrap();
        assert_eq!(norm(&SpaceSpec::Ck { k: 0 }, &f).unwrap(), 1.0);
        for p in [1.0, 2.0, 3.5] {
            assert!((norm(&SpaceSpec::Lp { p }, &f).unwrap() - 1.0).abs() < 1e-14);
        }
        let z = GridFunction::zeros(unit(64));
        assert_eq!(norm(&SpaceSpec::Lp { p: 2.0 }, &z).unwrap(), 0.0);
        assert_eq!(norm(&SpaceSpec::Ck { k: 0 }, &z).unwrap(), 0.0);
    }

    #[test]
    fn l2_norm_of_identity_converges_quadratically() {
        // ∫₀¹ x² dx = 1/3; trapezoid error is h²/6 on the integral.
        let exact = (1.0f64 / 3.0).sqrt();
        let mut last = f64::INFINITY;
        for m in [16, 32, 64, 128] {
            let f = GridFunction::from_fn(unit(m), |x| x).unwrap();
            let err = (norm(&SpaceSpec::Lp { p: 2.0 }, &f).unwrap() - exact).abs();
            let h = 1.0 / m as f64;
            assert!(err <= h * h, "M = {m}: error {err}");
            assert!(err < last / 3.5);
            last = err;
        }
    }

    #[test]
    fn unsupported_norms() {
        let f = GridFunction::zeros(unit(8));
        assert!(matches!(
            norm(&SpaceSpec::Ck { k: 1 }, &f),
            Err(Error::NotImplemented(_))
        ));
        let w = SpaceSpec::Wsp {
            smoothness: 0.5,
            p: 2.0,
        };
        assert!(matches!(norm(&w, &f), Err(Error::NotImplemented(_))));
    }

    #[test]
    fn interpolation_is_linear_between_samples() {
        let f = GridFunction::new(unit(2), vec![0.0, 2.0, 1.0]).unwrap();
        assert_eq!(f.interpolate(0.25), 1.0);
        assert_eq!(f.interpolate(0.5), 2.0);
        assert_eq!(f.interpolate(0.75), 1.5);
        assert_eq!(f.interpolate(1.0), 1.0);
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(GridFunction::new(unit(2), vec![0.0, 1.0]).is_err());
        assert!(GridFunction::new(unit(2), vec![0.0, f64::NAN, 1.0]).is_err());
    }
}
