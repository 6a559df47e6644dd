//! JSON problem files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 2,
//!   "partition": {"interval": [0.0, 1.0], "N": 2},
//!   "q": [{"": {"poly": [0.0, 1.0]}, "12": 0.5}, {"": {"poly": [1.0, -1.0]}}],
//!   "s": [0.5, 0.5],
//!   "grid_M": 1024,
//!   "tol": 1e-10,
//!   "space": {"tag": "Lp", "p": 2}
//! }
//! ```
//!
//! `n = 0` selects scalar mode, where each `q` entry is a single function
//! spec. Instead of `partition` and `q`, a `fif` block builds interpolation
//! data: `{"x": [...], "y": [...]}` (scalar) or `{"x": [...], "y": {"1": [...]}}`.

use std::collections::BTreeMap;
use std::path::Path;

use cliffrac_core::{
    fif_from_data, AffinePartition, BladeIndex, CliffordRBParams, Grid, GridFunction, RBParams,
    SamplingMode, ScalarFn, SpaceSpec,
};
use serde::{Deserialize, Serialize};

use crate::output::OutputFormat;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

const DEFAULT_MAX_ITER: usize = 10_000;
const DEFAULT_TRIALS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<QSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fif: Option<FifSpec>,
    pub s: Vec<FunctionSpec>,
    #[serde(rename = "grid_M")]
    pub grid_m: usize,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    pub space: SpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<SamplingMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_params: Option<GateParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionSpec {
    pub interval: [f64; 2],
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub pieces: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knots: Option<Vec<f64>>,
}

/// A real function: a bare number is a constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Constant(f64),
    Poly(PolySpec),
    Samples(SamplesSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolySpec {
    /// Ascending coefficients.
    pub poly: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesSpec {
    pub samples: Vec<f64>,
}

/// One `q_i`: a single function in scalar mode, blade key → function otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QSpec {
    Scalar(FunctionSpec),
    Blades(BTreeMap<String, FunctionSpec>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FifSpec {
    pub x: Vec<f64>,
    pub y: FifValues,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FifValues {
    Scalar(Vec<f64>),
    Blades(BTreeMap<String, Vec<f64>>),
}

/// Parameters used when `check` reports all six space constants.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub enum Problem {
    Scalar(RBParams),
    Clifford(CliffordRBParams),
}

impl Problem {
    /// The real operator carrying partition, grid and multipliers.
    pub fn scalar_part(&self) -> &RBParams {
        match self {
            Problem::Scalar(p) => p,
            Problem::Clifford(c) => c.scalar_part(),
        }
    }
}

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: ProblemConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::config(
                if path == "." {
                    "<root>".to_string()
                } else {
                    path
                },
                e.into_inner(),
            )
        })?;
        if config.version != SCHEMA_VERSION {
            return Err(CliError::config(
                "version",
                format!(
                    "unsupported schema version {}, expected {SCHEMA_VERSION}",
                    config.version
                ),
            ));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading {}", path.display()),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config values are finite")
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter.unwrap_or(DEFAULT_MAX_ITER)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn trials(&self) -> usize {
        self.trials.unwrap_or(DEFAULT_TRIALS)
    }

    pub fn mode(&self) -> SamplingMode {
        self.mode.unwrap_or_default()
    }

    /// Checks every field and builds the operator.
    pub fn build(&self) -> Result<Problem, CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::config(
                "tol",
                format!("must be positive, got {}", self.tol),
            ));
        }
        if self.max_iter == Some(0) {
            return Err(CliError::config("max_iter", "must be at least 1"));
        }
        if self.trials == Some(0) {
            return Err(CliError::config("trials", "must be at least 1"));
        }
        self.space
            .validate()
            .map_err(|e| CliError::config("space", e))?;
        if self.n > cliffrac_core::MAX_DIM {
            return Err(CliError::config(
                "n",
                format!("must be at most {}", cliffrac_core::MAX_DIM),
            ));
        }
        match (&self.fif, &self.partition, &self.q) {
            (Some(fif), None, None) => self.build_fif(fif),
            (None, Some(partition), Some(q)) => self.build_general(partition, q),
            (Some(_), _, _) => Err(CliError::config(
                "fif",
                "give either `fif` or `partition` with `q`, not both",
            )),
            (None, None, _) => Err(CliError::config(
                "partition",
                "missing (or give a `fif` block)",
            )),
            (None, Some(_), None) => Err(CliError::config("q", "missing")),
        }
    }

    fn grid(&self, x_lo: f64, x_hi: f64) -> Result<Grid, CliError> {
        Grid::new(x_lo, x_hi, self.grid_m).map_err(|e| CliError::config("grid_M", e))
    }

    fn build_general(&self, spec: &PartitionSpec, q: &[QSpec]) -> Result<Problem, CliError> {
        let [x_lo, x_hi] = spec.interval;
        let partition = match (spec.pieces, &spec.knots) {
            (Some(pieces), None) => AffinePartition::uniform(x_lo, x_hi, pieces)
                .map_err(|e| CliError::config("partition.N", e))?,
            (None, Some(knots)) => {
                if knots.first() != Some(&x_lo) || knots.last() != Some(&x_hi) {
                    return Err(CliError::config(
                        "partition.knots",
                        "first and last knot must equal the interval endpoints",
                    ));
                }
                AffinePartition::from_knots(knots)
                    .map_err(|e| CliError::config("partition.knots", e))?
            }
            _ => {
                return Err(CliError::config(
                    "partition",
                    "give exactly one of `N` and `knots`",
                ))
            }
        };
        let pieces = partition.len();
        let grid = self.grid(x_lo, x_hi)?;
        if q.len() != pieces {
            return Err(CliError::config(
                "q",
                format!(
                    "has {} entries, the partition has N = {pieces} maps",
                    q.len()
                ),
            ));
        }
        let s = self.multipliers(&grid, pieces)?;
        let mode = self.mode();
        let op_error = |e: cliffrac_core::Error| match e {
            cliffrac_core::Error::Configuration(_) => CliError::config("grid_M", e),
            other => CliError::config("<root>", other),
        };
        if self.n == 0 {
            let q = q
                .iter()
                .enumerate()
                .map(|(i, spec)| match spec {
                    QSpec::Scalar(f) => f.build(&grid, &format!("q[{i}]")),
                    QSpec::Blades(_) => Err(CliError::config(
                        format!("q[{i}]"),
                        "scalar mode (n = 0) expects a single function spec",
                    )),
                })
                .collect::<Result<_, _>>()?;
            return RBParams::new(partition, grid, q, s, mode)
                .map(Problem::Scalar)
                .map_err(op_error);
        }
        let q = q
            .iter()
            .enumerate()
            .map(|(i, spec)| match spec {
                QSpec::Blades(map) => map
                    .iter()
                    .map(|(key, f)| {
                        let field = format!("q[{i}].{key:?}");
                        let blade = BladeIndex::parse_key(key, self.n)
                            .map_err(|e| CliError::config(&field, e))?;
                        Ok((blade, f.build(&grid, &field)?))
                    })
                    .collect::<Result<BTreeMap<_, _>, CliError>>(),
                QSpec::Scalar(_) => Err(CliError::config(
                    format!("q[{i}]"),
                    "expected a map from blade keys to function specs when n ≥ 1",
                )),
            })
            .collect::<Result<_, _>>()?;
        CliffordRBParams::new(self.n, partition, grid, q, s, mode)
            .map(Problem::Clifford)
            .map_err(op_error)
    }

    fn build_fif(&self, fif: &FifSpec) -> Result<Problem, CliError> {
        let s = self
            .s
            .iter()
            .enumerate()
            .map(|(i, f)| match f {
                FunctionSpec::Constant(c) => Ok(*c),
                _ => Err(CliError::config(
                    format!("s[{i}]"),
                    "interpolation data needs constant multipliers",
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mode = self.mode();
        let data_for = |field: &str, ys: &[f64]| -> Result<RBParams, CliError> {
            if ys.len() != fif.x.len() {
                return Err(CliError::config(
                    field,
                    format!("has {} values for {} x positions", ys.len(), fif.x.len()),
                ));
            }
            let data: Vec<_> = fif.x.iter().copied().zip(ys.iter().copied()).collect();
            fif_from_data(&data, &s, self.grid_m, mode).map_err(|e| match e {
                cliffrac_core::Error::Configuration(_) => CliError::config("grid_M", e),
                other => CliError::config(field, other),
            })
        };
        match (&fif.y, self.n) {
            (FifValues::Scalar(ys), 0) => Ok(Problem::Scalar(data_for("fif.y", ys)?)),
            (FifValues::Blades(map), n) if n > 0 => {
                if map.is_empty() {
                    return Err(CliError::config("fif.y", "no blade data given"));
                }
                let mut components = BTreeMap::new();
                for (key, ys) in map {
                    let field = format!("fif.y.{key:?}");
                    let blade =
                        BladeIndex::parse_key(key, n).map_err(|e| CliError::config(&field, e))?;
                    if components.insert(blade, data_for(&field, ys)?).is_some() {
                        return Err(CliError::config(&field, "blade given twice"));
                    }
                }
                CliffordRBParams::from_components(n, &components)
                    .map(Problem::Clifford)
                    .map_err(|e| CliError::config("fif", e))
            }
            (FifValues::Scalar(_), _) => Err(CliError::config(
                "fif.y",
                "expected a map from blade keys to values when n ≥ 1",
            )),
            (FifValues::Blades(_), _) => Err(CliError::config(
                "fif.y",
                "scalar mode (n = 0) expects a plain array",
            )),
        }
    }

    fn multipliers(&self, grid: &Grid, pieces: usize) -> Result<Vec<ScalarFn>, CliError> {
        if self.s.len() != pieces {
            return Err(CliError::config(
                "s",
                format!(
                    "has {} entries, the partition has N = {pieces} maps",
                    self.s.len()
                ),
            ));
        }
        self.s
            .iter()
            .enumerate()
            .map(|(i, f)| f.build(grid, &format!("s[{i}]")))
            .collect()
    }

    /// The configured space and the six spaces at the gate parameters.
    pub fn gate_spaces(&self) -> Vec<SpaceSpec> {
        let mut params = GateParams {
            k: Some(0),
            alpha: Some(1.0),
            p: Some(2.0),
            q: Some(2.0),
            s: Some(0.5),
        };
        match self.space {
            SpaceSpec::Ck { k } => params.k = Some(k),
            SpaceSpec::CkAlpha { k, alpha } => {
                params.k = Some(k);
                params.alpha = Some(alpha);
            }
            SpaceSpec::Lp { p } => params.p = Some(p),
            SpaceSpec::Wsp { smoothness, p } => {
                params.s = Some(smoothness);
                params.p = Some(p);
            }
            SpaceSpec::Bspq { smoothness, p, q } | SpaceSpec::Fspq { smoothness, p, q } => {
                params.s = Some(smoothness);
                params.p = Some(p);
                params.q = Some(q);
            }
        }
        if let Some(given) = &self.gate_params {
            params.k = given.k.or(params.k);
            params.alpha = given.alpha.or(params.alpha);
            params.p = given.p.or(params.p);
            params.q = given.q.or(params.q);
            params.s = given.s.or(params.s);
        }
        let (k, alpha, p, q, s) = (
            params.k.unwrap(),
            params.alpha.unwrap(),
            params.p.unwrap(),
            params.q.unwrap(),
            params.s.unwrap(),
        );
        vec![
            SpaceSpec::Ck { k },
            SpaceSpec::CkAlpha { k, alpha },
            SpaceSpec::Lp { p },
            SpaceSpec::Wsp { smoothness: s, p },
            SpaceSpec::Bspq {
                smoothness: s,
                p,
                q,
            },
            SpaceSpec::Fspq {
                smoothness: s,
                p,
                q,
            },
        ]
    }
}

impl FunctionSpec {
    fn build(&self, grid: &Grid, field: &str) -> Result<ScalarFn, CliError> {
        match self {
            FunctionSpec::Constant(c) => Ok(ScalarFn::Constant(*c)),
            FunctionSpec::Poly(p) => {
                if p.poly.iter().any(|c| !c.is_finite()) {
                    return Err(CliError::config(
                        format!("{field}.poly"),
                        "coefficients must be finite",
                    ));
                }
                Ok(ScalarFn::Poly(p.poly.clone()))
            }
            FunctionSpec::Samples(s) => GridFunction::new(*grid, s.samples.clone())
                .map(ScalarFn::Samples)
                .map_err(|e| CliError::config(format!("{field}.samples"), e)),
        }
    }
}
