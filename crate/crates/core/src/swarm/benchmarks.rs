use std::f64::consts::PI;

/// `Σ xⱼ²`
pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// `Σ 100 (xⱼ₊₁ − xⱼ²)² + (1 − xⱼ)²`
pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

/// `10 D + Σ (xⱼ² − 10 cos 2πxⱼ)`
pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64 + x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos()).sum::<f64>()
}

/// A named test objective with its customary search interval.
#[derive(Debug, Clone, Copy)]
pub struct Benchmark {
    pub name: &'static str,
    pub objective: fn(&[f64]) -> f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn benchmark_objectives() -> [Benchmark; 3] {
    [
        Benchmark { name: "sphere", objective: sphere, lower: -5.0, upper: 5.0 },
        Benchmark { name: "rosenbrock", objective: rosenbrock, lower: -2.048, upper: 2.048 },
        Benchmark { name: "rastrigin", objective: rastrigin, lower: -5.12, upper: 5.12 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(sphere(&[3.0, 4.0]), 25.0);
        assert_eq!(rosenbrock(&[1.0, 1.0]), 0.0);
        assert_eq!(rosenbrock(&[1.0, 1.0, 1.0, 1.0]), 0.0);
        assert_eq!(rastrigin(&[0.0, 0.0]), 0.0);
        assert_eq!(sphere(&[0.0; 5]), 0.0);
        assert_eq!(rosenbrock(&[0.0, 0.0]), 1.0);
        assert!((rastrigin(&[1.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn names() {
        let names: Vec<_> = benchmark_objectives().iter().map(|b| b.name).collect();
        assert_eq!(names, ["sphere", "rosenbrock", "rastrigin"]);
    }
}
