//! Hyperparameter search for LSSVM regressors.
//!
//! A position in the search box is decoded to `(C, kernel)` on a log₁₀ scale
//! (except the MLP kernel's slope and offset, which are linear). The
//! objective is the mean squared error on a chronological holdout carved off
//! the end of the training split.

use serde::Serialize;

use crate::dataset::SupervisedDataset;
use crate::error::{Error, Result};
use crate::eval::mse;
use crate::lssvm::{train, KernelSpec, LssvmModel, TrainingSet};
use crate::swarm::{abc_minimize, pso_minimize, AbcConfig, Bounds, OptResult, PsoConfig};

/// Default share of the training split held out for validation.
pub const DEFAULT_HOLDOUT: f64 = 0.25;

/// Objective value assigned to parameters whose training system is
/// numerically unusable.
pub const FAILED_FIT_PENALTY: f64 = 1e300;

/// Kernel-specific search dimensions.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum KernelSearch {
    Rbf { log10_sigma2: (f64, f64) },
    Linear,
    Polynomial { degree: u32, log10_scale: (f64, f64) },
    Mlp { slope: (f64, f64), offset: (f64, f64) },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSpace {
    pub log10_c: (f64, f64),
    pub kernel: KernelSearch,
}

impl Default for SearchSpace {
    fn default() -> Self {
        Self {
            log10_c: (-2.0, 4.0),
            kernel: KernelSearch::Rbf { log10_sigma2: (-3.0, 3.0) },
        }
    }
}

impl SearchSpace {
    /// Default space for a kernel family (`rbf`, `linear`, `poly`, `mlp`).
    pub fn for_kernel(name: &str) -> Result<Self> {
        let kernel = match name {
            "rbf" => return Ok(Self::default()),
            "linear" => KernelSearch::Linear,
            "poly" | "polynomial" => KernelSearch::Polynomial { degree: 2, log10_scale: (-2.0, 3.0) },
            "mlp" => KernelSearch::Mlp { slope: (0.001, 2.0), offset: (-2.0, 2.0) },
            other => return Err(Error::input(format!("unknown kernel `{other}`"))),
        };
        Ok(Self { log10_c: (-2.0, 4.0), kernel })
    }

    pub fn dim(&self) -> usize {
        self.intervals().len()
    }

    fn intervals(&self) -> Vec<(f64, f64)> {
        let mut v = vec![self.log10_c];
        match &self.kernel {
            KernelSearch::Rbf { log10_sigma2 } => v.push(*log10_sigma2),
            KernelSearch::Linear => {}
            KernelSearch::Polynomial { log10_scale, .. } => v.push(*log10_scale),
            KernelSearch::Mlp { slope, offset } => {
                v.push(*slope);
                v.push(*offset);
            }
        }
        v
    }

    pub fn bounds(&self) -> Result<Bounds> {
        let (lo, hi) = self.intervals().into_iter().unzip();
        Bounds::new(lo, hi)
    }

    /// The untuned baseline for this kernel family: `C = 1` with unit kernel
    /// parameters.
    pub fn default_params(&self) -> (f64, KernelSpec) {
        let kernel = match &self.kernel {
            KernelSearch::Rbf { .. } => KernelSpec::rbf(1.0),
            KernelSearch::Linear => KernelSpec::Linear,
            KernelSearch::Polynomial { degree, .. } => KernelSpec::Polynomial { degree: *degree, scale: 1.0 },
            KernelSearch::Mlp { .. } => KernelSpec::Mlp { slope: 1.0, offset: 0.0 },
        };
        (1.0, kernel)
    }

    pub fn decode(&self, position: &[f64]) -> Result<(f64, KernelSpec)> {
        let intervals = self.intervals();
        if position.len() != intervals.len() {
            return Err(Error::input(format!(
                "position has {} coordinates, search space has {}",
                position.len(),
                intervals.len()
            )));
        }
        for (j, (x, (lo, hi))) in position.iter().zip(&intervals).enumerate() {
            if !(lo <= x && x <= hi) {
                return Err(Error::input(format!(
                    "coordinate {j} = {x} is outside [{lo}, {hi}]"
                )));
            }
        }
        let c = 10f64.powf(position[0]);
        let kernel = match &self.kernel {
            KernelSearch::Rbf { .. } => KernelSpec::rbf(10f64.powf(position[1])),
            KernelSearch::Linear => KernelSpec::Linear,
            KernelSearch::Polynomial { degree, .. } => KernelSpec::Polynomial {
                degree: *degree,
                scale: 10f64.powf(position[1]),
            },
            KernelSearch::Mlp { .. } => KernelSpec::Mlp { slope: position[1], offset: position[2] },
        };
        Ok((c, kernel))
    }

    /// Inverse of [`SearchSpace::decode`].
    pub fn encode(&self, c: f64, kernel: &KernelSpec) -> Result<Vec<f64>> {
        let mut v = vec![c.log10()];
        match (&self.kernel, kernel) {
            (KernelSearch::Rbf { .. }, KernelSpec::Rbf { sigma2 }) => v.push(sigma2.log10()),
            (KernelSearch::Linear, KernelSpec::Linear) => {}
            (KernelSearch::Polynomial { degree, .. }, KernelSpec::Polynomial { degree: d, scale })
                if degree == d =>
            {
                v.push(scale.log10())
            }
            (KernelSearch::Mlp { .. }, KernelSpec::Mlp { slope, offset }) => {
                v.push(*slope);
                v.push(*offset);
            }
            _ => return Err(Error::input(format!("kernel {kernel} does not belong to this search space"))),
        }
        Ok(v)
    }
}

/// `(C, σ²) = (10^p₀, 10^p₁)` over the default RBF space.
pub fn decode_params(position: &[f64]) -> Result<(f64, f64)> {
    match SearchSpace::default().decode(position)? {
        (c, KernelSpec::Rbf { sigma2 }) => Ok((c, sigma2)),
        _ => unreachable!("default space is RBF"),
    }
}

/// Holdout-MSE objective over a search space.
#[derive(Debug, Clone)]
pub struct ValidationObjective {
    space: SearchSpace,
    fit: TrainingSet,
    val_inputs: Vec<Vec<f64>>,
    val_targets: Vec<f64>,
}

impl ValidationObjective {
    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn fit_rows(&self) -> usize {
        self.fit.len()
    }

    pub fn validation_rows(&self) -> usize {
        self.val_targets.len()
    }

    /// Validation MSE of a model trained on the fit part with these parameters.
    pub fn mse_at(&self, c: f64, kernel: KernelSpec) -> Result<f64> {
        let model = train(&self.fit, kernel, c)?;
        let preds = model.predict_many(&self.val_inputs)?;
        Ok(mse(&self.val_targets, &preds)?.mse)
    }

    /// Objective value at a search-space position. Numerical failures map to
    /// [`FAILED_FIT_PENALTY`].
    pub fn evaluate(&self, position: &[f64]) -> f64 {
        match self.space.decode(position).and_then(|(c, k)| self.mse_at(c, k)) {
            Ok(v) if v.is_finite() => v,
            _ => FAILED_FIT_PENALTY,
        }
    }
}

/// Splits `train` into a leading fit part and a trailing validation part of
/// `holdout_fraction` of the rows.
pub fn make_validation_objective(
    train: &SupervisedDataset,
    holdout_fraction: f64,
    space: &SearchSpace,
) -> Result<ValidationObjective> {
    if !(holdout_fraction > 0.0 && holdout_fraction < 0.5) {
        return Err(Error::input(format!(
            "holdout fraction must be in (0, 0.5), got {holdout_fraction}"
        )));
    }
    space.bounds()?;
    let n = train.len();
    let n_val = (holdout_fraction * n as f64 + 1e-9).floor() as usize;
    let n_fit = n - n_val;
    if n_val < 5 || n_fit < 5 {
        return Err(Error::input(format!(
            "holdout of {holdout_fraction} on {n} rows leaves {n_fit} fit / {n_val} validation rows; need at least 5 each"
        )));
    }
    Ok(ValidationObjective {
        space: space.clone(),
        fit: TrainingSet::new(train.features[..n_fit].to_vec(), train.targets[..n_fit].to_vec())?,
        val_inputs: train.features[n_fit..].to_vec(),
        val_targets: train.targets[n_fit..].to_vec(),
    })
}

/// Optimizer driving a tuning run.
#[derive(Debug, Clone, PartialEq)]
pub enum Optimizer {
    Abc(AbcConfig),
    Pso(PsoConfig),
}

impl Optimizer {
    pub fn name(&self) -> &'static str {
        match self {
            Optimizer::Abc(_) => "abc",
            Optimizer::Pso(_) => "pso",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Optimizer::Abc(c) => c.seed,
            Optimizer::Pso(c) => c.seed,
        }
    }

    fn echo(&self) -> serde_json::Value {
        match self {
            Optimizer::Abc(c) => serde_json::json!({
                "optimizer": "abc",
                "colony_sn": c.colony_sn,
                "limit": c.limit,
                "max_cycles": c.max_cycles,
                "theta_range": [c.theta_range.0, c.theta_range.1],
            }),
            Optimizer::Pso(c) => serde_json::json!({
                "optimizer": "pso",
                "particles": c.particles,
                "inertia": c.inertia,
                "cognitive": c.cognitive,
                "social": c.social,
                "max_iters": c.max_iters,
                "velocity_clamp": c.velocity_clamp,
            }),
        }
    }

    fn minimize(&self, objective: &ValidationObjective, bounds: &Bounds) -> Result<OptResult> {
        let f = |x: &[f64]| objective.evaluate(x);
        match self {
            Optimizer::Abc(c) => abc_minimize(f, bounds, c),
            Optimizer::Pso(c) => pso_minimize(f, bounds, c),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TuneResult {
    pub optimizer: &'static str,
    pub best_c: f64,
    pub best_kernel: KernelSpec,
    pub best_position: Vec<f64>,
    pub best_validation_mse: f64,
    /// Best-so-far validation MSE per cycle, exactly as the optimizer reported it.
    pub history: Vec<f64>,
    pub evaluations: usize,
    pub seed: u64,
    pub space: SearchSpace,
    pub holdout_fraction: f64,
    pub config_echo: serde_json::Value,
    /// Refit on the whole training split with the best parameters.
    pub final_model: LssvmModel,
}

#[derive(Serialize)]
struct TuneJson<'a> {
    optimizer: &'a str,
    best_c: f64,
    best_sigma2: Option<f64>,
    best_kernel: &'a KernelSpec,
    best_validation_mse: f64,
    history: &'a [f64],
    evaluations: usize,
    seed: u64,
    config_echo: serde_json::Value,
}

impl TuneResult {
    pub fn best_sigma2(&self) -> Option<f64> {
        match self.best_kernel {
            KernelSpec::Rbf { sigma2 } => Some(sigma2),
            _ => None,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut echo = self.config_echo.clone();
        echo["holdout_fraction"] = self.holdout_fraction.into();
        echo["search_space"] = serde_json::to_value(&self.space).expect("serializable");
        serde_json::to_value(TuneJson {
            optimizer: self.optimizer,
            best_c: self.best_c,
            best_sigma2: self.best_sigma2(),
            best_kernel: &self.best_kernel,
            best_validation_mse: self.best_validation_mse,
            history: &self.history,
            evaluations: self.evaluations,
            seed: self.seed,
            config_echo: echo,
        })
        .expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn convergence_csv(&self) -> String {
        crate::swarm::convergence_csv(&self.history)
    }
}

/// Tunes `(C, kernel)` on `train` with the given optimizer and holdout.
pub fn tune(
    train_split: &SupervisedDataset,
    space: &SearchSpace,
    optimizer: &Optimizer,
    holdout_fraction: f64,
) -> Result<TuneResult> {
    let objective = make_validation_objective(train_split, holdout_fraction, space)?;
    let bounds = space.bounds()?;
    let result = optimizer.minimize(&objective, &bounds)?;
    if result.best_objective >= FAILED_FIT_PENALTY {
        return Err(Error::Numerical {
            message: "no evaluated parameters produced a usable model".into(),
            condition: f64::INFINITY,
        });
    }
    let (best_c, best_kernel) = space.decode(&result.best_position)?;
    let final_model = train(&train_split.training_set()?, best_kernel, best_c)?;
    Ok(TuneResult {
        optimizer: optimizer.name(),
        best_c,
        best_kernel,
        best_position: result.best_position,
        best_validation_mse: result.best_objective,
        history: result.history,
        evaluations: result.evaluations,
        seed: optimizer.seed(),
        space: space.clone(),
        holdout_fraction,
        config_echo: optimizer.echo(),
        final_model,
    })
}

pub fn tune_lssvm_abc(train_split: &SupervisedDataset, space: &SearchSpace, config: &AbcConfig) -> Result<TuneResult> {
    tune(train_split, space, &Optimizer::Abc(config.clone()), DEFAULT_HOLDOUT)
}

pub fn tune_lssvm_pso(train_split: &SupervisedDataset, space: &SearchSpace, config: &PsoConfig) -> Result<TuneResult> {
    tune(train_split, space, &Optimizer::Pso(config.clone()), DEFAULT_HOLDOUT)
}
