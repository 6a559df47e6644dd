use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{rb_apply, GridFunction, RBParams};
use crate::error::invalid;
use crate::Result;

/// The function space `𝓕(X)` a contraction certificate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", deny_unknown_fields)]
pub enum SpaceSpec {
    /// `C^k(X)`.
    Ck { k: u32 },
    /// `C^{k,α}(X)`, `0 < α ≤ 1`.
    CkAlpha { k: u32, alpha: f64 },
    /// `Lᵖ(X)`, `1 ≤ p < ∞`.
    Lp { p: f64 },
    /// Sobolev-Slobodeckij `W^{s,p}(X)`.
    Wsp {
        #[serde(rename = "s")]
        smoothness: f64,
        p: f64,
    },
    /// Besov `B^s_{p,q}(X)`.
    Bspq {
        #[serde(rename = "s")]
        smoothness: f64,
        p: f64,
        q: f64,
    },
    /// Triebel-Lizorkin `F^s_{p,q}(X)`.
    Fspq {
        #[serde(rename = "s")]
        smoothness: f64,
        p: f64,
        q: f64,
    },
}

impl SpaceSpec {
    pub fn validate(&self) -> Result<()> {
        let exponent = |name: &str, v: f64| {
            if v.is_finite() && v >= 1.0 {
                Ok(())
            } else {
                Err(invalid(format!("{name} must lie in [1, ∞), got {v}")))
            }
        };
        let smooth = |v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(format!("smoothness s must be positive, got {v}")))
            }
        };
        match *self {
            SpaceSpec::Ck { .. } => Ok(()),
            SpaceSpec::CkAlpha { alpha, .. } => {
                if alpha > 0.0 && alpha <= 1.0 {
                    Ok(())
                } else {
                    Err(invalid(format!(
                        "Hölder exponent α must lie in (0, 1], got {alpha}"
                    )))
                }
            }
            SpaceSpec::Lp { p } => exponent("p", p),
            SpaceSpec::Wsp { smoothness, p } => {
                smooth(smoothness)?;
                exponent("p", p)
            }
            SpaceSpec::Bspq { smoothness, p, q } | SpaceSpec::Fspq { smoothness, p, q } => {
                smooth(smoothness)?;
                exponent("p", p)?;
                exponent("q", q)
            }
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SpaceSpec::Ck { .. } => "Ck",
            SpaceSpec::CkAlpha { .. } => "CkAlpha",
            SpaceSpec::Lp { .. } => "Lp",
            SpaceSpec::Wsp { .. } => "Wsp",
            SpaceSpec::Bspq { .. } => "Bspq",
            SpaceSpec::Fspq { .. } => "Fspq",
        }
    }
}

/// Contraction constant γ for one-dimensional `X` from the Lipschitz
/// constants `Lip(L_i)` and the bounds `‖s_i‖_∞`:
///
/// | space | γ |
/// |---|---|
/// | `C^k` | `max_i Lip(L_i)^{-(k+1)} ‖s_i‖_∞` |
/// | `C^{k,α}` | `max_i Lip(L_i)^{-(k+α)} ‖s_i‖_∞` |
/// | `Lᵖ` | `Σ_i Lip(L_i) ‖s_i‖_∞ᵖ` |
/// | `W^{s,p}`, `F^s_{p,q}` | `Σ_i Lip(L_i)^{1-sp} ‖s_i‖_∞ᵖ` |
/// | `B^s_{p,q}` | `Σ_i Lip(L_i)^{(1/p-s)q} ‖s_i‖_∞^q` |
///
/// The `C^k` constants carry a negative exponent on `Lip(L_i) < 1`, so they
/// always exceed the observed sup-norm factor `max_i ‖s_i‖_∞`.
pub fn gamma_from_constants(space: &SpaceSpec, lipschitz: &[f64], s_sup: &[f64]) -> f64 {
    let pairs = lipschitz.iter().zip(s_sup);
    match *space {
        SpaceSpec::Ck { k } => pairs
            .map(|(l, s)| l.powf(-(k as f64 + 1.0)) * s)
            .fold(0.0, f64::max),
        SpaceSpec::CkAlpha { k, alpha } => pairs
            .map(|(l, s)| l.powf(-(k as f64 + alpha)) * s)
            .fold(0.0, f64::max),
        SpaceSpec::Lp { p } => pairs.map(|(l, s)| l * s.powf(p)).sum(),
        SpaceSpec::Wsp { smoothness, p } | SpaceSpec::Fspq { smoothness, p, .. } => pairs
            .map(|(l, s)| l.powf(1.0 - smoothness * p) * s.powf(p))
            .sum(),
        SpaceSpec::Bspq { smoothness, p, q } => pairs
            .map(|(l, s)| l.powf((1.0 / p - smoothness) * q) * s.powf(q))
            .sum(),
    }
}

/// γ of `space` for the operator `params`; the caller checks `γ < 1`.
pub fn gamma_gate(space: &SpaceSpec, params: &RBParams) -> Result<f64> {
    space.validate()?;
    Ok(gamma_from_constants(
        space,
        &params.partition().lipschitz_constants(),
        &params.s_sup_norms(),
    ))
}

/// Largest observed `‖Tf - Tg‖_∞ / ‖f - g‖_∞` over `trials` random pairs.
///
/// `f` is uniform in `[-1, 1]`. On even trials `g = f + a σ` with a random
/// sign pattern `σ` and amplitude `a`; such a difference attains the sup-norm
/// Lipschitz constant `max_j |s(x_j)|` of an aligned operator. On odd trials
/// `g` is uniform as well.
pub fn empirical_gamma(params: &RBParams, trials: usize, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(invalid("empirical γ needs at least one trial"));
    }
    let grid = *params.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for trial in 0..trials {
        let (f, g) = probe_pair(&mut rng, grid.len(), trial);
        let f = GridFunction::new(grid, f)?;
        let g = GridFunction::new(grid, g)?;
        let denom = f.sup_distance(&g)?;
        if denom == 0.0 {
            continue;
        }
        let num = rb_apply(params, &f)?.sup_distance(&rb_apply(params, &g)?)?;
        worst = worst.max(num / denom);
    }
    Ok(worst)
}

fn random_function(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

pub(crate) fn probe_pair(rng: &mut ChaCha8Rng, len: usize, trial: usize) -> (Vec<f64>, Vec<f64>) {
    let f = random_function(rng, len);
    let g = if trial % 2 == 0 {
        let amplitude = rng.random_range(0.1..=1.0);
        f.iter()
            .map(|v| {
                if rng.random_bool(0.5) {
                    v + amplitude
                } else {
                    v - amplitude
                }
            })
            .collect()
    } else {
        random_function(rng, len)
    };
    (f, g)
}
