//! Tune `(C, σ²)` on noisy sinc data with both optimizers and compare
//! against the untuned defaults.
//!
//! ```text
//! cargo run --release --example tune_sinc
//! ```

use swarm_lssvm::dataset::split_chronological;
use swarm_lssvm::prelude::*;
use swarm_lssvm::synthetic::sinc_dataset;

fn main() -> Result<()> {
    let split = split_chronological(&sinc_dataset(200, 0.05, 3), 0.7)?;
    let space = SearchSpace::default();
    let test_mse = |c: f64, k: KernelSpec| -> Result<f64> {
        let m = train(&split.train.training_set()?, k, c)?;
        Ok(mse(&split.test.targets, &m.predict_many(&split.test.features)?)?.mse)
    };

    let abc = tune_lssvm_abc(&split.train, &space, &AbcConfig::default().with_seed(1))?;
    let pso = tune_lssvm_pso(&split.train, &space, &PsoConfig::default().with_seed(1))?;

    println!("{:<10}{:>12}{:>12}{:>14}{:>12}", "method", "C", "sigma2", "validation", "test");
    for r in [&abc, &pso] {
        println!(
            "{:<10}{:>12.4}{:>12.4}{:>14.6}{:>12.6}",
            r.optimizer,
            r.best_c,
            r.best_sigma2().unwrap_or(f64::NAN),
            r.best_validation_mse,
            test_mse(r.best_c, r.best_kernel)?
        );
    }
    println!("{:<10}{:>12.4}{:>12.4}{:>14}{:>12.6}", "default", 1.0, 1.0, "-", test_mse(1.0, KernelSpec::rbf(1.0))?);
    Ok(())
}
