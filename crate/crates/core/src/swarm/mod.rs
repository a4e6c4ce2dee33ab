//! Bound-constrained black-box minimization.
//!
//! [`abc_minimize`] is the artificial bee colony optimizer; [`pso_minimize`]
//! is a global-best particle swarm used as the baseline. Both take an
//! objective `Fn(&[f64]) -> f64 + Sync`, draw all randomness from a
//! [`SwarmRng`] in a fixed order, and fold batch evaluations back in index
//! order, so results depend only on the seed and never on thread scheduling.

mod abc;
mod benchmarks;
mod pso;
mod rng;

pub use abc::{
    abc_minimize, abc_minimize_observed, fitness, neighbor_move, roulette_select, scout_reinit,
    selection_probabilities, AbcConfig, AbcPhase, FoodSource,
};
pub use benchmarks::{benchmark_objectives, rastrigin, rosenbrock, sphere, Benchmark};
pub use pso::{pso_minimize, PsoConfig};
pub use rng::SwarmRng;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::input("bounds must have at least one dimension"));
        }
        if lower.len() != upper.len() {
            return Err(Error::input(format!(
                "bounds dimension mismatch: {} lower vs {} upper",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::input(format!(
                    "bounds for dimension {j} must be finite with lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same `[lo, hi]` interval in every one of `dim` dimensions.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(*lo, *hi);
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((v, lo), hi)| lo <= v && v <= hi)
    }
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub best_position: Vec<f64>,
    pub best_objective: f64,
    /// Best-so-far objective after each cycle; never increases.
    pub history: Vec<f64>,
    /// Number of objective calls, including initialization.
    pub evaluations: usize,
    /// Food sources abandoned and re-seeded by scouts. Always 0 for PSO.
    pub scout_events: usize,
}

impl OptResult {
    /// Renders the history as `cycle,best_objective` CSV, cycles numbered from 1.
    pub fn convergence_csv(&self) -> String {
        convergence_csv(&self.history)
    }
}

pub fn convergence_csv(history: &[f64]) -> String {
    let mut out = String::from("cycle,best_objective\n");
    for (i, v) in history.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, v));
    }
    out
}

/// Evaluates every candidate, optionally on the rayon pool. The first
/// non-finite value in index order aborts the run.
pub(crate) fn evaluate_batch<F>(objective: &F, candidates: &[Vec<f64>], parallel: bool) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let values: Vec<f64> = if parallel && candidates.len() > 1 {
        candidates.par_iter().map(|x| objective(x)).collect()
    } else {
        candidates.iter().map(|x| objective(x)).collect()
    };
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation {
            position: candidates[i].clone(),
            value: values[i],
        });
    }
    Ok(values)
}
