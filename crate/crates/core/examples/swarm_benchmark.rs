//! ABC against PSO on sphere, Rosenbrock and Rastrigin with equal budgets.
//!
//! ```text
//! cargo run --release --example swarm_benchmark -- 5
//! ```
//! The optional argument is the dimension (default 2).

use swarm_lssvm::swarm::{abc_minimize, benchmark_objectives, pso_minimize, AbcConfig, Bounds, PsoConfig};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn main() -> swarm_lssvm::Result<()> {
    let dim: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    println!("dimension {dim}, 20 agents, 100 cycles, 30 seeds\n");
    println!("{:<12}{:>14}{:>14}", "objective", "ABC median", "PSO median");
    for b in benchmark_objectives() {
        let bounds = Bounds::uniform(dim, b.lower, b.upper)?;
        let mut abc = Vec::new();
        let mut pso = Vec::new();
        for seed in 0..30 {
            abc.push(abc_minimize(b.objective, &bounds, &AbcConfig { max_cycles: 100, ..AbcConfig::default().with_seed(seed) })?.best_objective);
            pso.push(pso_minimize(b.objective, &bounds, &PsoConfig { max_iters: 100, ..PsoConfig::default().with_seed(seed) })?.best_objective);
        }
        println!("{:<12}{:>14.3e}{:>14.3e}", b.name, median(abc), median(pso));
    }
    Ok(())
}
