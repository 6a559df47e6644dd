use std::fmt;
use std::path::{Path, PathBuf};

use cliffrac_core::{
    clifford_empirical_gamma, clifford_fixed_point, empirical_gamma, fixed_point, gamma_gate,
    self_referential_residual, Error, SamplingMode, SpaceSpec,
};

use crate::config::{Problem, ProblemConfig};
use crate::output::{OutputFormat, Solution};
use crate::CliError;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    /// Directory that relative and default output paths are placed under.
    pub output_dir: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub space: SpaceSpec,
    pub gate_gamma: f64,
    pub empirical_gamma: f64,
    /// `max ‖s_i‖_∞`, the sup-norm factor driving the iteration.
    pub solver_gamma: f64,
    pub iterations: usize,
    pub residual_bound: f64,
    /// Self-referential residual on aligned grids.
    pub residual: Option<f64>,
    pub output: PathBuf,
    pub format: OutputFormat,
    pub solution: Solution,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub space: SpaceSpec,
    pub gamma: f64,
    pub all_spaces: Vec<(SpaceSpec, f64)>,
    pub empirical_gamma: f64,
}

impl CheckReport {
    pub fn passes(&self) -> bool {
        self.gamma < 1.0
    }
}

#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub x: f64,
    pub line: String,
}

fn describe(space: &SpaceSpec) -> String {
    match *space {
        SpaceSpec::Ck { k } => format!("Ck(k={k})"),
        SpaceSpec::CkAlpha { k, alpha } => format!("CkAlpha(k={k}, alpha={alpha})"),
        SpaceSpec::Lp { p } => format!("Lp(p={p})"),
        SpaceSpec::Wsp { smoothness, p } => format!("Wsp(s={smoothness}, p={p})"),
        SpaceSpec::Bspq { smoothness, p, q } => format!("Bspq(s={smoothness}, p={p}, q={q})"),
        SpaceSpec::Fspq { smoothness, p, q } => format!("Fspq(s={smoothness}, p={p}, q={q})"),
    }
}

fn solver_error(e: Error) -> CliError {
    match e {
        Error::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
        Error::Component { ref source, .. } if matches!(**source, Error::NonConvergence { .. }) => {
            CliError::NonConvergence(e.to_string())
        }
        other => CliError::config("<root>", other),
    }
}

fn empirical(problem: &Problem, config: &ProblemConfig) -> Result<f64, CliError> {
    match problem {
        Problem::Scalar(p) => empirical_gamma(p, config.trials(), config.seed()),
        Problem::Clifford(c) => clifford_empirical_gamma(c, config.trials(), config.seed()),
    }
    .map_err(|e| CliError::config("trials", e))
}

pub fn check(config: &ProblemConfig) -> Result<CheckReport, CliError> {
    let problem = config.build()?;
    let params = problem.scalar_part();
    let gamma = gamma_gate(&config.space, params).map_err(|e| CliError::config("space", e))?;
    let all_spaces = config
        .gate_spaces()
        .into_iter()
        .map(|space| {
            let g = gamma_gate(&space, params).map_err(|e| CliError::config("gate_params", e))?;
            Ok((space, g))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(CheckReport {
        space: config.space,
        gamma,
        all_spaces,
        empirical_gamma: empirical(&problem, config)?,
    })
}

fn resolve_output(
    config: &ProblemConfig,
    config_path: &Path,
    options: &SolveOptions,
) -> (PathBuf, OutputFormat) {
    let configured = config.output.as_ref();
    let explicit = options
        .output
        .clone()
        .or_else(|| configured.and_then(|o| o.path.as_ref()).map(PathBuf::from));
    let format = options
        .format
        .or_else(|| configured.and_then(|o| o.format))
        .or_else(|| explicit.as_deref().and_then(OutputFormat::from_path))
        .unwrap_or_default();
    let path = match explicit {
        Some(p) if p.is_relative() => match &options.output_dir {
            Some(dir) => dir.join(p),
            None => p,
        },
        Some(p) => p,
        None => {
            let stem = config_path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "problem".into());
            let name = format!("{stem}.solution.{}", format.extension());
            match (&options.output_dir, config_path.parent()) {
                (Some(dir), _) => dir.join(name),
                (None, Some(parent)) => parent.join(name),
                (None, None) => PathBuf::from(name),
            }
        }
    };
    (path, format)
}

/// Gates, solves, and writes the sampled solution. Nothing is written when
/// the gate or the iteration fails.
pub fn solve(
    config: &ProblemConfig,
    config_path: &Path,
    options: &SolveOptions,
) -> Result<SolveReport, CliError> {
    let problem = config.build()?;
    let params = problem.scalar_part();
    let gate_gamma = gamma_gate(&config.space, params).map_err(|e| CliError::config("space", e))?;
    if gate_gamma >= 1.0 {
        return Err(CliError::Gate(format!(
            "γ = {gate_gamma} for {} is not below 1, no fixed point is certified",
            describe(&config.space)
        )));
    }
    let solver_gamma = params.max_s();
    if solver_gamma >= 1.0 {
        return Err(CliError::NonConvergence(format!(
            "max ‖s_i‖∞ = {solver_gamma} is not below 1, the sup-norm iteration is not a contraction"
        )));
    }
    let empirical_gamma = empirical(&problem, config)?;
    let aligned = params.mode() == SamplingMode::Aligned;
    let (solution, iterations, residual_bound, residual) = match &problem {
        Problem::Scalar(p) => {
            let fp = fixed_point(p, config.tol, config.max_iter(), solver_gamma)
                .map_err(solver_error)?;
            let residual = if aligned {
                Some(self_referential_residual(p, &fp.solution).map_err(solver_error)?)
            } else {
                None
            };
            (
                Solution::from_scalar(&fp.solution),
                fp.iterations,
                fp.residual_bound,
                residual,
            )
        }
        Problem::Clifford(c) => {
            let fp = clifford_fixed_point(c, config.tol, config.max_iter(), solver_gamma)
                .map_err(solver_error)?;
            let residual = if aligned {
                Some(cliffrac_core::residual(c, &fp.solution).map_err(solver_error)?)
            } else {
                None
            };
            let iterations = fp.iterations.values().copied().max().unwrap_or(0);
            (
                Solution::from_clifford(&fp.solution),
                iterations,
                fp.residual_bound,
                residual,
            )
        }
    };
    let (output, format) = resolve_output(config, config_path, options);
    solution.write(&output, format)?;
    Ok(SolveReport {
        space: config.space,
        gate_gamma,
        empirical_gamma,
        solver_gamma,
        iterations,
        residual_bound,
        residual,
        output,
        format,
        solution,
    })
}

pub fn eval(solution: &Solution, xs: &[f64]) -> Result<Vec<EvalPoint>, CliError> {
    xs.iter()
        .map(|&x| {
            Ok(EvalPoint {
                x,
                line: solution.eval_line(x)?,
            })
        })
        .collect()
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(f, "gamma ({}): {}", describe(&self.space), self.gate_gamma)?;
        writeln!(f, "sup-norm gamma: {}", self.solver_gamma)?;
        writeln!(f, "empirical gamma: {}", self.empirical_gamma)?;
        writeln!(f, "error bound: {:e}", self.residual_bound)?;
        match self.residual {
            Some(r) => writeln!(f, "residual: {r:e}")?,
            None => writeln!(f, "residual: n/a (interpolated sampling)")?,
        }
        write!(
            f,
            "output: {} ({})",
            self.output.display(),
            self.format.extension()
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "configured {}: {}", describe(&self.space), self.gamma)?;
        for (space, gamma) in &self.all_spaces {
            writeln!(f, "  {}: {}", describe(space), gamma)?;
        }
        writeln!(f, "empirical gamma: {}", self.empirical_gamma)?;
        write!(
            f,
            "{}",
            if self.passes() {
                "gate: pass"
            } else {
                "gate: FAIL"
            }
        )
    }
}
