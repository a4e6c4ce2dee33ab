//! Global-best particle swarm.
//!
//! `v ← w·v + c1·r1·(pbest − x) + c2·r2·(gbest − x)`, with each velocity
//! component clamped to `±velocity_clamp · (upper − lower)` and positions
//! clamped to the bounds (a clamped coordinate's velocity is zeroed).
//!
//! Draw order: initial position uniforms for every particle, then initial
//! velocity uniforms; per iteration, `(r1, r2)` per particle per dimension.

use super::abc::Best;
use super::{evaluate_batch, Bounds, OptResult, SwarmRng};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig {
    pub particles: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub max_iters: usize,
    /// Velocity limit as a fraction of each dimension's width.
    pub velocity_clamp: f64,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            particles: 20,
            inertia: 0.7,
            cognitive: 1.5,
            social: 1.5,
            max_iters: 50,
            velocity_clamp: 0.5,
            seed: 0,
            parallel: true,
        }
    }
}

impl PsoConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.particles < 2 {
            return Err(Error::input("PSO needs at least 2 particles"));
        }
        if !(self.inertia > 0.0 && self.inertia <= 1.0) {
            return Err(Error::input(format!("PSO inertia must be in (0, 1], got {}", self.inertia)));
        }
        if !(self.cognitive > 0.0 && self.social > 0.0) {
            return Err(Error::input("PSO acceleration coefficients must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::input("PSO max_iters must be positive"));
        }
        if !(self.velocity_clamp > 0.0 && self.velocity_clamp.is_finite()) {
            return Err(Error::input("PSO velocity clamp must be positive"));
        }
        Ok(())
    }
}

pub fn pso_minimize<F>(objective: F, bounds: &Bounds, config: &PsoConfig) -> Result<OptResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate()?;
    let np = config.particles;
    let dim = bounds.dim();
    let vmax: Vec<f64> = (0..dim).map(|j| config.velocity_clamp * bounds.width(j)).collect();
    let mut rng = SwarmRng::new(config.seed);

    let mut positions: Vec<Vec<f64>> = (0..np)
        .map(|_| {
            (0..dim)
                .map(|j| rng.uniform_in(bounds.lower()[j], bounds.upper()[j]))
                .collect()
        })
        .collect();
    let mut velocities: Vec<Vec<f64>> = (0..np)
        .map(|_| (0..dim).map(|j| rng.uniform_in(-vmax[j], vmax[j])).collect())
        .collect();

    let values = evaluate_batch(&objective, &positions, config.parallel)?;
    let mut evaluations = np;
    let mut pbest = positions.clone();
    let mut pbest_obj = values;
    let mut best = Best::default();
    for (x, &v) in pbest.iter().zip(&pbest_obj) {
        best.offer(x, v);
    }

    let mut history = Vec::with_capacity(config.max_iters);
    for _ in 0..config.max_iters {
        for i in 0..np {
            for j in 0..dim {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let x = positions[i][j];
                let v = config.inertia * velocities[i][j]
                    + config.cognitive * r1 * (pbest[i][j] - x)
                    + config.social * r2 * (best.position[j] - x);
                let v = v.clamp(-vmax[j], vmax[j]);
                let moved = x + v;
                let clamped = moved.clamp(bounds.lower()[j], bounds.upper()[j]);
                velocities[i][j] = if clamped == moved { v } else { 0.0 };
                positions[i][j] = clamped;
            }
        }
        let values = evaluate_batch(&objective, &positions, config.parallel)?;
        evaluations += np;
        for (i, v) in values.into_iter().enumerate() {
            if v < pbest_obj[i] {
                pbest_obj[i] = v;
                pbest[i].clone_from(&positions[i]);
                best.offer(&positions[i], v);
            }
        }
        history.push(best.objective);
    }

    Ok(OptResult {
        best_position: best.position,
        best_objective: best.objective,
        history,
        evaluations,
        scout_events: 0,
    })
}
