use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Grid, GridFunction};
use crate::error::invalid;
use crate::partition::AffinePartition;
use crate::{Error, Result};

/// How `f ∘ L_i⁻¹` is sampled on the grid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Every pre-image `L_i⁻¹(x_j)` is itself a grid point. Requires all knots
    /// on the grid and each subinterval's cell count to divide `M`.
    #[default]
    Aligned,
    /// Pre-images are evaluated by linear interpolation (`O(M⁻²)` bias for
    /// smooth functions).
    Interpolated,
}

/// A real function of `x ∈ X` used for the `q_i` and `s_i`.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarFn {
    Constant(f64),
    /// Ascending coefficients: `[d, c]` is `d + c x`.
    Poly(Vec<f64>),
    Samples(GridFunction),
}

impl ScalarFn {
    #[inline]
    fn eval(&self, pre: &Preimage) -> f64 {
        match self {
            ScalarFn::Constant(c) => *c,
            ScalarFn::Poly(coeffs) => horner(coeffs, pre.point),
            ScalarFn::Samples(f) => match pre.index {
                Some(p) => f.value(p),
                None => f.interpolate(pre.point),
            },
        }
    }

    /// Pointwise value at `x`; samples are linearly interpolated.
    pub fn value_at(&self, x: f64) -> f64 {
        match self {
            ScalarFn::Constant(c) => *c,
            ScalarFn::Poly(coeffs) => horner(coeffs, x),
            ScalarFn::Samples(f) => f.interpolate(x),
        }
    }

    /// `‖·‖_∞`, taken as the maximum over the grid for non-constant functions.
    pub fn sup_norm(&self, grid: &Grid) -> f64 {
        match self {
            ScalarFn::Constant(c) => c.abs(),
            ScalarFn::Poly(coeffs) => grid
                .points()
                .map(|x| horner(coeffs, x).abs())
                .fold(0.0, f64::max),
            ScalarFn::Samples(f) => f.sup_norm(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ScalarFn::Constant(c) => *c == 0.0,
            ScalarFn::Poly(coeffs) => coeffs.iter().all(|&c| c == 0.0),
            ScalarFn::Samples(f) => f.is_zero(),
        }
    }

    fn check(&self, grid: &Grid, what: &str) -> Result<()> {
        match self {
            ScalarFn::Constant(c) if !c.is_finite() => {
                Err(invalid(format!("{what}: constant is not finite")))
            }
            ScalarFn::Poly(coeffs) if coeffs.iter().any(|c| !c.is_finite()) => Err(invalid(
                format!("{what}: polynomial coefficients must be finite"),
            )),
            ScalarFn::Samples(f) if f.grid() != grid => Err(invalid(format!(
                "{what}: sampled on {:?}, expected {:?}",
                f.grid(),
                grid
            ))),
            _ => Ok(()),
        }
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Pre-image of one grid point under its owning map.
#[derive(Clone, Copy, Debug)]
struct Preimage {
    owner: usize,
    point: f64,
    /// Grid index of `point` in aligned mode.
    index: Option<usize>,
}

/// Grid geometry shared by every operator built on the same partition.
#[derive(Debug)]
struct Pullback {
    preimages: Vec<Preimage>,
    /// Grid index of each knot (aligned mode only).
    knot_index: Option<Vec<usize>>,
}

impl Pullback {
    fn build(partition: &AffinePartition, grid: &Grid, mode: SamplingMode) -> Result<Self> {
        let knot_index = match mode {
            SamplingMode::Aligned => Some(aligned_knots(partition, grid)?),
            SamplingMode::Interpolated => None,
        };
        let m = grid.intervals();
        let preimages = (0..=m)
            .map(|j| {
                let x = grid.point(j);
                let owner = partition.locate(x)?;
                let map = partition.map(owner);
                Ok(match &knot_index {
                    Some(k) => {
                        let cells = k[owner + 1] - k[owner];
                        let p = if map.slope() > 0.0 {
                            (j - k[owner]) * (m / cells)
                        } else {
                            (k[owner + 1] - j) * (m / cells)
                        };
                        Preimage {
                            owner,
                            point: grid.point(p),
                            index: Some(p),
                        }
                    }
                    None => {
                        let point = map
                            .inverse_apply(x)
                            .clamp(partition.x_lo(), partition.x_hi());
                        Preimage {
                            owner,
                            point,
                            index: None,
                        }
                    }
                })
            })
            .collect::<Result<_>>()?;
        Ok(Pullback {
            preimages,
            knot_index,
        })
    }

    /// Grid index of `L_i(x_p)` (aligned mode).
    fn forward(
        &self,
        partition: &AffinePartition,
        grid: &Grid,
        i: usize,
        p: usize,
    ) -> Option<usize> {
        let k = self.knot_index.as_ref()?;
        let cells = k[i + 1] - k[i];
        let step = grid.intervals() / cells;
        Some(if partition.map(i).slope() > 0.0 {
            k[i] + p / step
        } else {
            k[i + 1] - p / step
        })
        .filter(|_| p % step == 0)
    }
}

fn aligned_knots(partition: &AffinePartition, grid: &Grid) -> Result<Vec<usize>> {
    let m = grid.intervals();
    let h = grid.step();
    let mut out = Vec::with_capacity(partition.knots().len());
    for (i, &knot) in partition.knots().iter().enumerate() {
        let idx = ((knot - grid.x_lo()) / h).round();
        if idx < 0.0 || idx > m as f64 || (grid.point(idx as usize) - knot).abs() > 1e-9 * h {
            return Err(Error::Configuration(format!(
                "knot {i} = {knot} is not a grid point for M = {m}; choose M accordingly or use interpolated mode"
            )));
        }
        out.push(idx as usize);
    }
    for (i, w) in out.windows(2).enumerate() {
        let cells = w[1] - w[0];
        if cells == 0 || m % cells != 0 {
            return Err(Error::Configuration(format!(
                "subinterval {} spans {cells} grid cells, which does not divide M = {m}",
                i + 1
            )));
        }
    }
    Ok(out)
}

/// Data of the operator `Tf = q_i∘L_i⁻¹ + (s_i∘L_i⁻¹)·(f∘L_i⁻¹)` on `X_i`.
#[derive(Clone, Debug)]
pub struct RBParams {
    partition: AffinePartition,
    grid: Grid,
    q: Vec<ScalarFn>,
    s: Vec<ScalarFn>,
    mode: SamplingMode,
    pullback: Arc<Pullback>,
}

impl RBParams {
    pub fn new(
        partition: AffinePartition,
        grid: Grid,
        q: Vec<ScalarFn>,
        s: Vec<ScalarFn>,
        mode: SamplingMode,
    ) -> Result<Self> {
        if grid.x_lo() != partition.x_lo() || grid.x_hi() != partition.x_hi() {
            return Err(invalid(format!(
                "grid spans [{}, {}] but the partition spans [{}, {}]",
                grid.x_lo(),
                grid.x_hi(),
                partition.x_lo(),
                partition.x_hi()
            )));
        }
        let n = partition.len();
        if grid.intervals() < n {
            return Err(invalid(format!(
                "grid has M = {} < N = {n}",
                grid.intervals()
            )));
        }
        check_len("q", &q, n)?;
        check_len("s", &s, n)?;
        for (i, f) in q.iter().enumerate() {
            f.check(&grid, &format!("q[{i}]"))?;
        }
        for (i, f) in s.iter().enumerate() {
            f.check(&grid, &format!("s[{i}]"))?;
        }
        let pullback = Arc::new(Pullback::build(&partition, &grid, mode)?);
        Ok(RBParams {
            partition,
            grid,
            q,
            s,
            mode,
            pullback,
        })
    }

    /// Same partition, grid and multipliers with new `q_i`.
    pub fn with_q(&self, q: Vec<ScalarFn>) -> Result<Self> {
        check_len("q", &q, self.partition.len())?;
        for (i, f) in q.iter().enumerate() {
            f.check(&self.grid, &format!("q[{i}]"))?;
        }
        Ok(RBParams { q, ..self.clone() })
    }

    pub fn partition(&self) -> &AffinePartition {
        &self.partition
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn q(&self) -> &[ScalarFn] {
        &self.q
    }

    pub fn s(&self) -> &[ScalarFn] {
        &self.s
    }

    pub fn mode(&self) -> SamplingMode {
        self.mode
    }

    /// `‖s_i‖_∞` for each map.
    pub fn s_sup_norms(&self) -> Vec<f64> {
        self.s.iter().map(|s| s.sup_norm(&self.grid)).collect()
    }

    /// `max_i ‖s_i‖_∞`, the sup-norm Lipschitz constant of `T` in aligned mode.
    pub fn max_s(&self) -> f64 {
        self.s_sup_norms().into_iter().fold(0.0, f64::max)
    }
}

fn check_len<T>(name: &str, v: &[T], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(invalid(format!(
            "{name} has {} entries, the partition has N = {n} maps",
            v.len()
        )));
    }
    Ok(())
}

/// One application of the operator.
pub fn rb_apply(params: &RBParams, f: &GridFunction) -> Result<GridFunction> {
    if f.grid() != &params.grid {
        return Err(invalid(format!(
            "function grid {:?} differs from operator grid {:?}",
            f.grid(),
            params.grid
        )));
    }
    let values = params
        .pullback
        .preimages
        .iter()
        .map(|pre| {
            let fv = match pre.index {
                Some(p) => f.value(p),
                None => f.interpolate(pre.point),
            };
            params.q[pre.owner].eval(pre) + params.s[pre.owner].eval(pre) * fv
        })
        .collect();
    Ok(GridFunction::from_raw(params.grid, values))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    pub solution: GridFunction,
    pub iterations: usize,
    /// A-posteriori bound `γ/(1-γ) ‖f_k - f_{k-1}‖_∞` on the distance to the
    /// exact fixed point of the discrete operator.
    pub residual_bound: f64,
}

/// Banach iteration `f_{k+1} = T f_k` from `f_0 = 0`.
///
/// Stops once `‖f_{k+1} - f_k‖_∞ ≤ tol (1 - γ)/γ`, which guarantees
/// `‖f_{k+1} - ψ‖_∞ ≤ tol` when `γ` bounds the sup-norm contraction factor.
/// With `γ = 0` the operator is constant and one step is exact.
pub fn fixed_point(params: &RBParams, tol: f64, max_iter: usize, gamma: f64) -> Result<FixedPoint> {
    fixed_point_from(
        params,
        GridFunction::zeros(params.grid),
        tol,
        max_iter,
        gamma,
    )
}

pub fn fixed_point_from(
    params: &RBParams,
    init: GridFunction,
    tol: f64,
    max_iter: usize,
    gamma: f64,
) -> Result<FixedPoint> {
    iterate_to_fixed_point(init, tol, max_iter, gamma, |f| rb_apply(params, f))
}

fn iterate_to_fixed_point(
    init: GridFunction,
    tol: f64,
    max_iter: usize,
    gamma: f64,
    apply: impl Fn(&GridFunction) -> Result<GridFunction>,
) -> Result<FixedPoint> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(invalid(format!(
            "contraction constant γ = {gamma} must lie in [0, 1)"
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(invalid("max_iter must be at least 1"));
    }
    if gamma == 0.0 {
        return Ok(FixedPoint {
            solution: apply(&init)?,
            iterations: 1,
            residual_bound: 0.0,
        });
    }
    let threshold = tol * (1.0 - gamma) / gamma;
    let mut current = init;
    let mut step = f64::INFINITY;
    for k in 1..=max_iter {
        let next = apply(&current)?;
        step = next.sup_distance(&current)?;
        current = next;
        if !step.is_finite() {
            return Err(Error::NonConvergence {
                iterations: k,
                last_step: step,
            });
        }
        if step <= threshold {
            return Ok(FixedPoint {
                solution: current,
                iterations: k,
                residual_bound: gamma / (1.0 - gamma) * step,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        last_step: step,
    })
}

/// `ψ(L_i(x_p)) - q_i(x_p) - s_i(x_p) ψ(x_p)` for every map `i` and every grid
/// point `x_p` whose image is a grid point, in `(i, p)` order.
pub(crate) fn residual_terms(params: &RBParams, psi: &GridFunction) -> Result<Vec<f64>> {
    if params.mode != SamplingMode::Aligned {
        return Err(Error::Configuration(
            "the self-referential residual needs an aligned grid".into(),
        ));
    }
    if psi.grid() != &params.grid {
        return Err(invalid(format!(
            "function grid {:?} differs from operator grid {:?}",
            psi.grid(),
            params.grid
        )));
    }
    let mut out = Vec::with_capacity(params.partition.len() * params.grid.len());
    for i in 0..params.partition.len() {
        for p in 0..params.grid.len() {
            let Some(j) = params
                .pullback
                .forward(&params.partition, &params.grid, i, p)
            else {
                continue;
            };
            let pre = Preimage {
                owner: i,
                point: params.grid.point(p),
                index: Some(p),
            };
            out.push(psi.value(j) - params.q[i].eval(&pre) - params.s[i].eval(&pre) * psi.value(p));
        }
    }
    Ok(out)
}

/// `max |ψ(L_i(x)) - q_i(x) - s_i(x) ψ(x)|` over maps and aligned grid points.
///
/// Junction points are checked against both adjacent maps, so discontinuous
/// data leaves a nonzero residual there even at the discrete fixed point.
pub fn self_referential_residual(params: &RBParams, psi: &GridFunction) -> Result<f64> {
    Ok(residual_terms(params, psi)?
        .into_iter()
        .fold(0.0, |m, r| m.max(r.abs())))
}
