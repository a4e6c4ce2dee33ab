//! Artificial bee colony.
//!
//! One cycle runs three phases over `SN` food sources:
//!
//! 1. **Employed**: each source `i` proposes `vᵢⱼ = xᵢⱼ + θ(xᵢⱼ − xₖⱼ)` for a
//!    random partner `k ≠ i`, dimension `j` and `θ` drawn from
//!    `theta_range`; the proposal replaces `xᵢ` only if it is strictly better.
//! 2. **Onlooker**: `SN` onlookers each pick a source by roulette wheel on
//!    `pᵢ = fitᵢ / Σ fitⱼ` with `fitᵢ = 1 / (1 + objᵢ)`, then move as above.
//! 3. **Scout**: at most one exhausted source (trials at `limit`) is
//!    abandoned and re-seeded uniformly inside the bounds.
//!
//! Draw order per cycle: employed bees by index (`k`, `j`, `θ`), then each
//! onlooker (`u`, `k`, `j`, `θ`), then the scout's `D` uniforms. Proposals of
//! a phase are generated from the state at the start of that phase,
//! evaluated as one batch, and folded back in index order.

use super::{evaluate_batch, Bounds, OptResult, SwarmRng};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct AbcConfig {
    /// Number of food sources `SN`; also the number of employed and of onlooker bees.
    pub colony_sn: usize,
    /// Stagnation threshold. `None` means `SN · D`.
    pub limit: Option<usize>,
    pub max_cycles: usize,
    /// Interval `θ` is drawn from in the neighbor move.
    pub theta_range: (f64, f64),
    pub seed: u64,
    /// Evaluate each phase's proposals on the rayon pool. Does not affect results.
    pub parallel: bool,
}

impl Default for AbcConfig {
    fn default() -> Self {
        Self {
            colony_sn: 20,
            limit: None,
            max_cycles: 50,
            theta_range: (-1.0, 1.0),
            seed: 0,
            parallel: true,
        }
    }
}

impl AbcConfig {
    /// One-sided step: `θ ∈ [0, 1]`, so a move never points toward `x_k`.
    pub fn paper_compat(mut self) -> Self {
        self.theta_range = (0.0, 1.0);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn effective_limit(&self, dim: usize) -> usize {
        self.limit.unwrap_or(self.colony_sn * dim)
    }

    pub fn validate(&self) -> Result<()> {
        if self.colony_sn < 2 {
            return Err(Error::input("ABC colony needs at least 2 food sources"));
        }
        if self.limit == Some(0) {
            return Err(Error::input("ABC limit must be positive"));
        }
        if self.max_cycles == 0 {
            return Err(Error::input("ABC max_cycles must be positive"));
        }
        let (lo, hi) = self.theta_range;
        if !(lo.is_finite() && hi.is_finite() && -1.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(Error::input(format!(
                "theta range must be a non-empty subinterval of [-1, 1], got [{lo}, {hi}]"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoodSource {
    pub position: Vec<f64>,
    pub objective: f64,
    pub fitness: f64,
    /// Consecutive failed improvement attempts, saturating at `limit`.
    pub trials: usize,
}

impl FoodSource {
    fn new(position: Vec<f64>, objective: f64) -> Self {
        Self {
            position,
            objective,
            fitness: fitness_unchecked(objective),
            trials: 0,
        }
    }
}

/// Phase boundaries reported to the observer of [`abc_minimize_observed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbcPhase {
    Initialized,
    Employed,
    Onlooker,
    Scout,
}

/// Maps an objective value to a positive selection weight.
///
/// `1 / (1 + v)` for `v ≥ 0`; `1 + |v|` for negative objectives.
pub fn fitness(objective: f64) -> Result<f64> {
    if !objective.is_finite() {
        return Err(Error::input(format!("objective value {objective} is not finite")));
    }
    Ok(fitness_unchecked(objective))
}

fn fitness_unchecked(v: f64) -> f64 {
    if v >= 0.0 {
        1.0 / (1.0 + v)
    } else {
        1.0 + v.abs()
    }
}

/// Copy of `x_i` with coordinate `j` moved to `x_ij + θ(x_ij − x_kj)`,
/// clamped to the bounds.
pub fn neighbor_move(x_i: &[f64], x_k: &[f64], j: usize, theta: f64, bounds: &Bounds) -> Vec<f64> {
    let mut v = x_i.to_vec();
    v[j] = (x_i[j] + theta * (x_i[j] - x_k[j])).clamp(bounds.lower()[j], bounds.upper()[j]);
    v
}

/// `pᵢ = fitᵢ / Σ fitⱼ`.
pub fn selection_probabilities(fits: &[f64]) -> Result<Vec<f64>> {
    if fits.is_empty() {
        return Err(Error::input("no fitness values"));
    }
    if let Some(f) = fits.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(Error::input(format!("fitness values must be positive, got {f}")));
    }
    let total: f64 = fits.iter().sum();
    Ok(fits.iter().map(|f| f / total).collect())
}

/// Roulette wheel: the first index whose cumulative probability exceeds `u`.
pub fn roulette_select(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}

/// `xʲ = x_minʲ + rʲ (x_maxʲ − x_minʲ)`.
pub fn scout_reinit(bounds: &Bounds, r: &[f64]) -> Vec<f64> {
    bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .zip(r)
        .map(|((lo, hi), r)| lo + r * (hi - lo))
        .collect()
}

pub fn abc_minimize<F>(objective: F, bounds: &Bounds, config: &AbcConfig) -> Result<OptResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    abc_minimize_observed(objective, bounds, config, |_, _, _| {})
}

/// Like [`abc_minimize`], calling `observer(phase, cycle, sources)` after
/// initialization (cycle 0) and after every phase of every cycle.
pub fn abc_minimize_observed<F, O>(
    objective: F,
    bounds: &Bounds,
    config: &AbcConfig,
    mut observer: O,
) -> Result<OptResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
    O: FnMut(AbcPhase, usize, &[FoodSource]),
{
    config.validate()?;
    let sn = config.colony_sn;
    let dim = bounds.dim();
    let limit = config.effective_limit(dim);
    let (theta_lo, theta_hi) = config.theta_range;
    let mut rng = SwarmRng::new(config.seed);

    let initial: Vec<Vec<f64>> = (0..sn)
        .map(|_| {
            let r: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
            scout_reinit(bounds, &r)
        })
        .collect();
    let values = evaluate_batch(&objective, &initial, config.parallel)?;
    let mut evaluations = sn;
    let mut sources: Vec<FoodSource> = initial
        .into_iter()
        .zip(values)
        .map(|(x, v)| FoodSource::new(x, v))
        .collect();

    let mut best = Best::default();
    for s in &sources {
        best.offer(&s.position, s.objective);
    }
    observer(AbcPhase::Initialized, 0, &sources);

    let mut history = Vec::with_capacity(config.max_cycles);
    let mut scout_events = 0;

    for cycle in 1..=config.max_cycles {
        // Employed bees: one per source.
        let mut targets = Vec::with_capacity(sn);
        let mut proposals = Vec::with_capacity(sn);
        for i in 0..sn {
            let k = rng.index_except(sn, i);
            let j = rng.index(dim);
            let theta = rng.uniform_in(theta_lo, theta_hi);
            targets.push(i);
            proposals.push(neighbor_move(&sources[i].position, &sources[k].position, j, theta, bounds));
        }
        let values = evaluate_batch(&objective, &proposals, config.parallel)?;
        evaluations += sn;
        fold(&mut sources, &targets, proposals, values, limit, &mut best);
        observer(AbcPhase::Employed, cycle, &sources);

        // Onlookers: roulette on fitness, then the same move.
        let fits: Vec<f64> = sources.iter().map(|s| s.fitness).collect();
        let probs = selection_probabilities(&fits)?;
        let mut targets = Vec::with_capacity(sn);
        let mut proposals = Vec::with_capacity(sn);
        for _ in 0..sn {
            let i = roulette_select(&probs, rng.uniform());
            let k = rng.index_except(sn, i);
            let j = rng.index(dim);
            let theta = rng.uniform_in(theta_lo, theta_hi);
            targets.push(i);
            proposals.push(neighbor_move(&sources[i].position, &sources[k].position, j, theta, bounds));
        }
        let values = evaluate_batch(&objective, &proposals, config.parallel)?;
        evaluations += sn;
        fold(&mut sources, &targets, proposals, values, limit, &mut best);
        observer(AbcPhase::Onlooker, cycle, &sources);

        // Scout: the exhausted source with the worst objective, lowest index on ties.
        let exhausted = sources
            .iter()
            .enumerate()
            .filter(|(_, s)| s.trials >= limit)
            .fold(None::<(usize, f64)>, |acc, (i, s)| match acc {
                Some((_, worst)) if s.objective <= worst => acc,
                _ => Some((i, s.objective)),
            });
        if let Some((i, _)) = exhausted {
            let r: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
            let x = scout_reinit(bounds, &r);
            let v = evaluate_batch(&objective, std::slice::from_ref(&x), false)?[0];
            evaluations += 1;
            scout_events += 1;
            best.offer(&x, v);
            sources[i] = FoodSource::new(x, v);
        }
        observer(AbcPhase::Scout, cycle, &sources);

        history.push(best.objective);
    }

    Ok(OptResult {
        best_position: best.position,
        best_objective: best.objective,
        history,
        evaluations,
        scout_events,
    })
}

/// Greedy replacement in index order. Objectives are compared directly; the
/// fitness map is monotone so this is the same ordering without its loss of
/// resolution near zero.
fn fold(
    sources: &mut [FoodSource],
    targets: &[usize],
    proposals: Vec<Vec<f64>>,
    values: Vec<f64>,
    limit: usize,
    best: &mut Best,
) {
    for ((&i, x), v) in targets.iter().zip(proposals).zip(values) {
        if v < sources[i].objective {
            best.offer(&x, v);
            sources[i] = FoodSource::new(x, v);
        } else {
            sources[i].trials = (sources[i].trials + 1).min(limit);
        }
    }
}

#[derive(Default)]
pub(crate) struct Best {
    pub position: Vec<f64>,
    pub objective: f64,
}

impl Best {
    pub fn offer(&mut self, x: &[f64], v: f64) {
        if self.position.is_empty() || v < self.objective {
            self.position = x.to_vec();
            self.objective = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swarm::sphere;

    #[test]
    fn fitness_values() {
        assert_eq!(fitness(0.0).unwrap(), 1.0);
        assert_eq!(fitness(1.0).unwrap(), 0.5);
        assert_eq!(fitness(3.0).unwrap(), 0.25);
        assert_eq!(fitness(-2.0).unwrap(), 3.0);
        assert!(fitness(f64::NAN).is_err());
        assert!(fitness(f64::INFINITY).is_err());
    }

    #[test]
    fn neighbor_move_examples() {
        let b = Bounds::uniform(2, -10.0, 10.0).unwrap();
        assert_eq!(neighbor_move(&[1.0, 2.0], &[5.0, -3.0], 1, 0.0, &b), vec![1.0, 2.0]);
        let b1 = Bounds::uniform(1, -10.0, 10.0).unwrap();
        assert_eq!(neighbor_move(&[2.0], &[0.0], 0, 0.5, &b1), vec![3.0]);
        for theta in [-1.0, -0.3, 0.7, 1.0] {
            assert_eq!(neighbor_move(&[1.0, 2.0], &[1.0, 2.0], 0, theta, &b), vec![1.0, 2.0]);
        }
        // Only coordinate j changes, and the result is clamped.
        assert_eq!(neighbor_move(&[9.0, 2.0], &[0.0, 0.0], 0, 1.0, &b), vec![10.0, 2.0]);
    }

    #[test]
    fn selection_probability_examples() {
        assert_eq!(selection_probabilities(&[1.0, 1.0]).unwrap(), vec![0.5, 0.5]);
        assert_eq!(selection_probabilities(&[1.0, 3.0]).unwrap(), vec![0.25, 0.75]);
        assert_eq!(selection_probabilities(&[0.5, 0.25, 0.25]).unwrap(), vec![0.5, 0.25, 0.25]);
        assert!(selection_probabilities(&[1.0, 0.0]).is_err());
        assert!(selection_probabilities(&[1.0, -1.0]).is_err());
    }

    #[test]
    fn roulette_boundaries() {
        let p = [0.25, 0.75];
        assert_eq!(roulette_select(&p, 0.0), 0);
        assert_eq!(roulette_select(&p, 0.2499), 0);
        assert_eq!(roulette_select(&p, 0.25), 1);
        assert_eq!(roulette_select(&p, 0.999_999), 1);
    }

    #[test]
    fn scout_reinit_examples() {
        let b = Bounds::new(vec![-1.0, 2.0], vec![3.0, 4.0]).unwrap();
        assert_eq!(scout_reinit(&b, &[0.0, 0.0]), vec![-1.0, 2.0]);
        assert_eq!(scout_reinit(&b, &[1.0, 1.0]), vec![3.0, 4.0]);
        let b = Bounds::uniform(1, 0.0, 10.0).unwrap();
        assert_eq!(scout_reinit(&b, &[0.5]), vec![5.0]);
    }

    #[test]
    fn config_validation() {
        assert!(AbcConfig { colony_sn: 1, ..Default::default() }.validate().is_err());
        assert!(AbcConfig { max_cycles: 0, ..Default::default() }.validate().is_err());
        assert!(AbcConfig { limit: Some(0), ..Default::default() }.validate().is_err());
        assert!(AbcConfig { theta_range: (0.0, 1.5), ..Default::default() }.validate().is_err());
        assert!(AbcConfig { theta_range: (0.5, 0.5), ..Default::default() }.validate().is_err());
        assert_eq!(AbcConfig::default().paper_compat().theta_range, (0.0, 1.0));
        assert_eq!(AbcConfig::default().effective_limit(3), 60);
    }

    #[test]
    fn constant_objective() {
        let b = Bounds::uniform(2, -1.0, 1.0).unwrap();
        let cfg = AbcConfig { max_cycles: 30, ..Default::default() };
        let r = abc_minimize(|_| 7.0, &b, &cfg).unwrap();
        assert_eq!(r.best_objective, 7.0);
        assert!(r.history.iter().all(|&v| v == 7.0));
        assert_eq!(r.history.len(), 30);
    }

    #[test]
    fn stagnation_triggers_scouts() {
        let b = Bounds::uniform(1, 0.0, 1.0).unwrap();
        let cfg = AbcConfig { colony_sn: 4, limit: Some(3), max_cycles: 20, ..Default::default() };
        let mut max_trials = 0;
        let mut reached_limit = [false; 4];
        let r = abc_minimize_observed(|_| 1.0, &b, &cfg, |_, _, s| {
            for (i, src) in s.iter().enumerate() {
                max_trials = max_trials.max(src.trials);
                reached_limit[i] |= src.trials == 3;
            }
        })
        .unwrap();
        assert!(r.scout_events > 0);
        assert!(max_trials <= 3);
        assert!(reached_limit.iter().all(|&x| x));
    }

    #[test]
    fn evaluation_count() {
        let b = Bounds::uniform(2, -5.0, 5.0).unwrap();
        let cfg = AbcConfig { colony_sn: 10, max_cycles: 15, ..Default::default() };
        let r = abc_minimize(sphere, &b, &cfg).unwrap();
        assert_eq!(r.evaluations, 10 + 15 * 20 + r.scout_events);
    }

    #[test]
    fn non_finite_objective_aborts() {
        let b = Bounds::uniform(1, -1.0, 1.0).unwrap();
        let err = abc_minimize(|x| if x[0] > 0.5 { f64::INFINITY } else { 0.0 }, &b, &AbcConfig::default())
            .unwrap_err();
        match err {
            Error::Evaluation { position, .. } => assert!(position[0] > 0.5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parallel_and_serial_agree() {
        let b = Bounds::uniform(3, -5.0, 5.0).unwrap();
        let cfg = AbcConfig { seed: 9, ..Default::default() };
        let a = abc_minimize(sphere, &b, &cfg).unwrap();
        let s = abc_minimize(sphere, &b, &AbcConfig { parallel: false, ..cfg }).unwrap();
        assert_eq!(a, s);
    }
}
