//! Watch one ABC run phase by phase: best value, stagnating sources and
//! scout restarts.
//!
//! ```text
//! cargo run --example bee_colony
//! ```

use swarm_lssvm::swarm::{abc_minimize_observed, rastrigin, AbcConfig, AbcPhase, Bounds};

fn main() -> swarm_lssvm::Result<()> {
    let bounds = Bounds::uniform(4, -5.12, 5.12)?;
    let config = AbcConfig { max_cycles: 120, limit: Some(30), ..AbcConfig::default().with_seed(7) };

    let result = abc_minimize_observed(rastrigin, &bounds, &config, |phase, cycle, sources| {
        if phase == AbcPhase::Scout && cycle % 20 == 0 {
            let best = sources.iter().map(|s| s.objective).fold(f64::INFINITY, f64::min);
            let stale = sources.iter().filter(|s| s.trials >= 15).count();
            println!("cycle {cycle:>3}  colony best {best:>10.4e}  sources past half the limit {stale:>2}");
        }
    })?;

    println!(
        "best {:.3e} at {:.4?} after {} evaluations, {} scout restarts",
        result.best_objective, result.best_position, result.evaluations, result.scout_events
    );
    Ok(())
}
