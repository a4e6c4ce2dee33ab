//! Write best-so-far validation curves for ABC and PSO tuning runs as CSV,
//! ready for plotting.
//!
//! ```text
//! cargo run --release --example convergence_curves -- out_dir
//! ```

use std::path::PathBuf;

use swarm_lssvm::eval::{emit_convergence, prepare_split};
use swarm_lssvm::indicators::IndicatorConfig;
use swarm_lssvm::prelude::*;
use swarm_lssvm::synthetic::random_walk_ohlcv;

fn main() -> Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "convergence".into()));
    std::fs::create_dir_all(&dir).map_err(|e| Error::Io { path: dir.display().to_string(), source: e })?;

    let series = random_walk_ohlcv("WALK", 500, 11);
    let split = prepare_split(&series, &IndicatorConfig::default(), 0.7, true, false)?;
    let space = SearchSpace::default();

    let abc = tune_lssvm_abc(&split.train, &space, &AbcConfig::default().with_seed(42))?;
    let pso = tune_lssvm_pso(&split.train, &space, &PsoConfig::default().with_seed(42))?;
    for (name, r) in [("abc", &abc), ("pso", &pso)] {
        let path = dir.join(format!("{name}_convergence.csv"));
        emit_convergence(r, &path)?;
        println!(
            "{}: {} cycles, {:.5} -> {:.5}",
            path.display(),
            r.history.len(),
            r.history[0],
            r.history[r.history.len() - 1]
        );
    }
    Ok(())
}
