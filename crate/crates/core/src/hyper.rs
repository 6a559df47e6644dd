//! The Clifford lift of the Read-Bajraktarević operator.
//!
//! An ℝₙ-valued function `f = Σ_A f_A e_A` is stored as one [`GridFunction`]
//! per blade. The lifted operator acts blade by blade,
//! `T̃f = Σ_A T_A(f_A) e_A`, where `T_A` uses the blade's own `q_{i,A}` and the
//! shared real multipliers `s_i`. No coefficients mix between blades, so `T̃`
//! contracts with the same constant as the scalar operators.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{check_dim, BladeIndex, Multivector};
use crate::engine::{
    fixed_point, norm, rb_apply, residual_terms, Grid, GridFunction, RBParams, SamplingMode,
    ScalarFn, SpaceSpec,
};
use crate::error::invalid;
use crate::partition::AffinePartition;
use crate::{Error, Result};

/// Samples of an ℝₙ-valued function; blades without an entry are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordGridFunction {
    n: usize,
    grid: Grid,
    components: BTreeMap<BladeIndex, GridFunction>,
}

impl CliffordGridFunction {
    pub fn zeros(n: usize, grid: Grid) -> Result<Self> {
        check_dim(n)?;
        Ok(CliffordGridFunction {
            n,
            grid,
            components: BTreeMap::new(),
        })
    }

    pub fn from_components(
        n: usize,
        grid: Grid,
        components: impl IntoIterator<Item = (BladeIndex, GridFunction)>,
    ) -> Result<Self> {
        let mut out = Self::zeros(n, grid)?;
        for (blade, f) in components {
            if out.components.contains_key(&blade) {
                return Err(invalid(format!("blade {blade} given twice")));
            }
            out.set_component(blade, f)?;
        }
        Ok(out)
    }

    /// `f e_A`.
    pub fn embed(n: usize, blade: BladeIndex, f: GridFunction) -> Result<Self> {
        let grid = *f.grid();
        Self::from_components(n, grid, [(blade, f)])
    }

    pub fn constant(grid: Grid, value: &Multivector) -> Result<Self> {
        let components = value
            .terms()
            .map(|(blade, c)| (blade, GridFunction::from_raw(grid, vec![c; grid.len()])))
            .collect::<Vec<_>>();
        Self::from_components(value.n(), grid, components)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Stored component `f_A`; `None` means identically zero.
    pub fn component(&self, blade: BladeIndex) -> Option<&GridFunction> {
        self.components.get(&blade)
    }

    pub fn component_or_zero(&self, blade: BladeIndex) -> GridFunction {
        self.components
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| GridFunction::zeros(self.grid))
    }

    /// Blades with a nonzero component.
    pub fn blades(&self) -> impl Iterator<Item = BladeIndex> + '_ {
        self.components.keys().copied()
    }

    pub fn set_component(&mut self, blade: BladeIndex, f: GridFunction) -> Result<()> {
        blade.check(self.n)?;
        if f.grid() != &self.grid {
            return Err(invalid(format!(
                "component {blade} is sampled on a different grid"
            )));
        }
        if f.is_zero() {
            self.components.remove(&blade);
        } else {
            self.components.insert(blade, f);
        }
        Ok(())
    }

    /// `f(x_j) = Σ_A f_A(x_j) e_A`.
    pub fn value_at(&self, j: usize) -> Multivector {
        let mut coeffs = vec![0.0; 1 << self.n];
        for (blade, f) in &self.components {
            coeffs[blade.mask() as usize] = f.value(j);
        }
        Multivector::from_coeffs(self.n, coeffs).expect("dimension validated at construction")
    }

    /// Pointwise Clifford conjugation.
    pub fn conj(&self) -> CliffordGridFunction {
        let components = self
            .components
            .iter()
            .map(|(&blade, f)| {
                let flip = crate::algebra::multivector_conj_flips(blade.mask());
                let values = if flip {
                    f.values().iter().map(|v| -v).collect()
                } else {
                    f.values().to_vec()
                };
                (blade, GridFunction::from_raw(self.grid, values))
            })
            .collect();
        CliffordGridFunction {
            n: self.n,
            grid: self.grid,
            components,
        }
    }

    pub fn sub(&self, other: &CliffordGridFunction) -> Result<CliffordGridFunction> {
        self.compatible(other)?;
        let blades: BTreeSet<_> = self.blades().chain(other.blades()).collect();
        let parts = blades
            .into_iter()
            .map(|b| {
                Ok((
                    b,
                    self.component_or_zero(b).sub(&other.component_or_zero(b))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_components(self.n, self.grid, parts)
    }

    fn compatible(&self, other: &CliffordGridFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.grid != other.grid {
            return Err(invalid(format!(
                "grids differ: {:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }
}

/// Partition, grid and real multipliers `s_i` shared by all blades, plus
/// Clifford-valued `q_i = Σ_A q_{i,A} e_A`.
#[derive(Clone, Debug)]
pub struct CliffordRBParams {
    n: usize,
    base: RBParams,
    q: Vec<BTreeMap<BladeIndex, ScalarFn>>,
}

impl CliffordRBParams {
    pub fn new(
        n: usize,
        partition: AffinePartition,
        grid: Grid,
        q: Vec<BTreeMap<BladeIndex, ScalarFn>>,
        s: Vec<ScalarFn>,
        mode: SamplingMode,
    ) -> Result<Self> {
        check_dim(n)?;
        let pieces = partition.len();
        let zero_q = vec![ScalarFn::Constant(0.0); pieces];
        let base = RBParams::new(partition, grid, zero_q, s, mode)?;
        if q.len() != pieces {
            return Err(invalid(format!(
                "q has {} entries, the partition has N = {pieces} maps",
                q.len()
            )));
        }
        for qi in &q {
            for blade in qi.keys() {
                blade.check(n)?;
            }
        }
        let params = CliffordRBParams { n, base, q };
        // validates every component q_{i,A} against the grid
        for blade in params.active_blades() {
            params.component_params(blade)?;
        }
        Ok(params)
    }

    /// Builds the lift from one real `RBParams` per blade; all must share
    /// partition, grid, multipliers and sampling mode.
    pub fn from_components(n: usize, components: &BTreeMap<BladeIndex, RBParams>) -> Result<Self> {
        let first = components
            .values()
            .next()
            .ok_or_else(|| invalid("no components given"))?;
        for (blade, p) in components {
            if p.partition() != first.partition()
                || p.grid() != first.grid()
                || p.s() != first.s()
                || p.mode() != first.mode()
            {
                return Err(invalid(format!(
                    "component {blade} does not share partition, grid, multipliers and mode"
                )));
            }
        }
        let pieces = first.partition().len();
        let q = (0..pieces)
            .map(|i| {
                components
                    .iter()
                    .map(|(&b, p)| (b, p.q()[i].clone()))
                    .collect()
            })
            .collect();
        Self::new(
            n,
            first.partition().clone(),
            *first.grid(),
            q,
            first.s().to_vec(),
            first.mode(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &Grid {
        self.base.grid()
    }

    pub fn partition(&self) -> &AffinePartition {
        self.base.partition()
    }

    pub fn s(&self) -> &[ScalarFn] {
        self.base.s()
    }

    pub fn q(&self) -> &[BTreeMap<BladeIndex, ScalarFn>] {
        &self.q
    }

    /// The real operator with the multipliers `s_i`; its `q_i` are zero.
    pub fn scalar_part(&self) -> &RBParams {
        &self.base
    }

    /// Blades on which some `q_{i,A}` is nonzero.
    pub fn active_blades(&self) -> BTreeSet<BladeIndex> {
        self.q
            .iter()
            .flat_map(|qi| qi.iter().filter(|(_, f)| !f.is_zero()).map(|(&b, _)| b))
            .collect()
    }

    /// The real operator `T_A` acting on blade `A`.
    pub fn component_params(&self, blade: BladeIndex) -> Result<RBParams> {
        let q = self
            .q
            .iter()
            .map(|qi| qi.get(&blade).cloned().unwrap_or(ScalarFn::Constant(0.0)))
            .collect();
        self.base.with_q(q)
    }

    fn check_function(&self, f: &CliffordGridFunction) -> Result<()> {
        if f.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.n,
            });
        }
        if &f.grid != self.grid() {
            return Err(invalid(format!(
                "function grid {:?} differs from operator grid {:?}",
                f.grid,
                self.grid()
            )));
        }
        Ok(())
    }
}

fn component_error(blade: BladeIndex, n: usize, source: Error) -> Error {
    Error::Component {
        blade: blade.key(n),
        source: Box::new(source),
    }
}

/// `T̃f = Σ_A T_A(f_A) e_A`.
pub fn clifford_rb_apply(
    params: &CliffordRBParams,
    f: &CliffordGridFunction,
) -> Result<CliffordGridFunction> {
    params.check_function(f)?;
    let blades: BTreeSet<_> = params
        .active_blades()
        .into_iter()
        .chain(f.blades())
        .collect();
    let parts = blades
        .into_iter()
        .map(|blade| {
            let component = params.component_params(blade)?;
            Ok((blade, rb_apply(&component, &f.component_or_zero(blade))?))
        })
        .collect::<Result<Vec<_>>>()?;
    CliffordGridFunction::from_components(params.n, *params.grid(), parts)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordFixedPoint {
    pub solution: CliffordGridFunction,
    /// Iterations used by each solved blade.
    pub iterations: BTreeMap<BladeIndex, usize>,
    /// `(Σ_A b_A²)^{1/2}` over the per-blade sup-norm error bounds `b_A`.
    pub residual_bound: f64,
}

/// Solves each active blade independently with the real solver; blades with
/// zero `q_{i,A}` have the zero fixed point.
pub fn clifford_fixed_point(
    params: &CliffordRBParams,
    tol: f64,
    max_iter: usize,
    gamma: f64,
) -> Result<CliffordFixedPoint> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(invalid(format!(
            "contraction constant γ = {gamma} must lie in [0, 1)"
        )));
    }
    let blades: Vec<_> = params.active_blades().into_iter().collect();
    let solved = blades
        .par_iter()
        .map(|&blade| {
            let component = params
                .component_params(blade)
                .map_err(|e| component_error(blade, params.n, e))?;
            let fp = fixed_point(&component, tol, max_iter, gamma)
                .map_err(|e| component_error(blade, params.n, e))?;
            Ok((blade, fp))
        })
        .collect::<Result<Vec<_>>>()?;
    let iterations = solved.iter().map(|(b, fp)| (*b, fp.iterations)).collect();
    let residual_bound = solved
        .iter()
        .map(|(_, fp)| fp.residual_bound.powi(2))
        .sum::<f64>()
        .sqrt();
    let solution = CliffordGridFunction::from_components(
        params.n,
        *params.grid(),
        solved.into_iter().map(|(b, fp)| (b, fp.solution)),
    )?;
    Ok(CliffordFixedPoint {
        solution,
        iterations,
        residual_bound,
    })
}

/// `‖f‖ = (Σ_A ‖f_A‖²)^{1/2}` for `C⁰` or `Lᵖ` component norms.
pub fn clifford_norm_f(f: &CliffordGridFunction, space: &SpaceSpec) -> Result<f64> {
    norm(space, &GridFunction::zeros(f.grid))?;
    let mut total = 0.0;
    for g in f.components.values() {
        total += norm(space, g)?.powi(2);
    }
    Ok(total.sqrt())
}

/// `max_{i,x} |ψ(L_i(x)) - q_i(x) - s_i(x) ψ(x)|` in the Clifford norm, over
/// grid points `x` whose image `L_i(x)` is a grid point.
pub fn residual(params: &CliffordRBParams, psi: &CliffordGridFunction) -> Result<f64> {
    params.check_function(psi)?;
    let blades: BTreeSet<_> = params
        .active_blades()
        .into_iter()
        .chain(psi.blades())
        .collect();
    let mut squared: Option<Vec<f64>> = None;
    for blade in blades {
        let terms = residual_terms(
            &params.component_params(blade)?,
            &psi.component_or_zero(blade),
        )?;
        match squared.as_mut() {
            None => squared = Some(terms.iter().map(|t| t * t).collect()),
            Some(acc) => acc.iter_mut().zip(&terms).for_each(|(a, t)| *a += t * t),
        }
    }
    let squared = match squared {
        Some(s) => s,
        // still reject non-aligned operators
        None => residual_terms(params.scalar_part(), &GridFunction::zeros(*params.grid()))?,
    };
    Ok(squared.into_iter().fold(0.0, f64::max).sqrt())
}

/// `(fg)(x_j) = f(x_j) g(x_j)` with the Clifford product at every grid point.
pub fn pointwise_product(
    f: &CliffordGridFunction,
    g: &CliffordGridFunction,
) -> Result<CliffordGridFunction> {
    f.compatible(g)?;
    let dim = 1usize << f.n;
    let len = f.grid.len();
    let mut dense = vec![vec![0.0; len]; dim];
    for j in 0..len {
        let prod = f.value_at(j).geometric_product(&g.value_at(j))?;
        for (mask, c) in prod.coeffs().iter().enumerate() {
            dense[mask][j] = *c;
        }
    }
    let parts = dense.into_iter().enumerate().map(|(mask, values)| {
        (
            BladeIndex::from_mask(mask as u32),
            GridFunction::from_raw(f.grid, values),
        )
    });
    CliffordGridFunction::from_components(f.n, f.grid, parts)
}

/// Pointwise projection onto paravectors: drops components of grade ≥ 2.
pub fn pv_restrict(f: &CliffordGridFunction) -> CliffordGridFunction {
    let components = f
        .components
        .iter()
        .filter(|(b, _)| b.grade() <= 1)
        .map(|(&b, g)| (b, g.clone()))
        .collect();
    CliffordGridFunction {
        n: f.n,
        grid: f.grid,
        components,
    }
}

/// Largest observed `‖T̃f - T̃g‖ / ‖f - g‖` with `‖f‖ = (Σ_A ‖f_A‖_∞²)^{1/2}`,
/// over `trials` random pairs populating every blade. Pairs are drawn per
/// blade as in [`crate::empirical_gamma`].
pub fn clifford_empirical_gamma(
    params: &CliffordRBParams,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(invalid("empirical γ needs at least one trial"));
    }
    let sup = SpaceSpec::Ck { k: 0 };
    let grid = *params.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1usize << params.n;
    let mut worst: f64 = 0.0;
    for trial in 0..trials {
        let (mut f_parts, mut g_parts) = (Vec::with_capacity(dim), Vec::with_capacity(dim));
        for mask in 0..dim {
            let (f, g) = crate::engine::probe_pair(&mut rng, grid.len(), trial);
            let blade = BladeIndex::from_mask(mask as u32);
            f_parts.push((blade, GridFunction::from_raw(grid, f)));
            g_parts.push((blade, GridFunction::from_raw(grid, g)));
        }
        let f = CliffordGridFunction::from_components(params.n, grid, f_parts)?;
        let g = CliffordGridFunction::from_components(params.n, grid, g_parts)?;
        let denom = clifford_norm_f(&f.sub(&g)?, &sup)?;
        if denom == 0.0 {
            continue;
        }
        let diff = clifford_rb_apply(params, &f)?.sub(&clifford_rb_apply(params, &g)?)?;
        worst = worst.max(clifford_norm_f(&diff, &sup)? / denom);
    }
    Ok(worst)
}
