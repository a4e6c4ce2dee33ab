//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's numerics: the kernels, the linear
//! algebra and the indicators are restated from their definitions.

#![allow(dead_code)]

use swarm_lssvm::dataset::SplitDataset;
use swarm_lssvm::eval::mse;
use swarm_lssvm::lssvm::{train, KernelSpec};

pub fn rbf(x: &[f64], z: &[f64], sigma2: f64) -> f64 {
    let d2: f64 = x.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum();
    (-d2 / sigma2).exp()
}

/// Gauss-Jordan inverse with partial pivoting. Panics on a singular input.
pub fn invert(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        assert!(m[piv][col].abs() > 1e-300, "singular matrix");
        m.swap(col, piv);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    let pivot_row = m[col].clone();
                    for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                        *v -= f * p;
                    }
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `(b, a)` for the bordered LSSVM system with an RBF kernel, solved as
/// `inverse · rhs`.
pub fn lssvm_explicit(inputs: &[Vec<f64>], targets: &[f64], sigma2: f64, c: f64) -> (f64, Vec<f64>) {
    let n = inputs.len();
    let mut a = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..n {
        a[0][i + 1] = 1.0;
        a[i + 1][0] = 1.0;
        for j in 0..n {
            a[i + 1][j + 1] = rbf(&inputs[i], &inputs[j], sigma2);
        }
        a[i + 1][i + 1] += 1.0 / c;
    }
    let inv = invert(&a);
    let rhs: Vec<f64> = std::iter::once(0.0).chain(targets.iter().copied()).collect();
    let x: Vec<f64> = inv
        .iter()
        .map(|row| row.iter().zip(&rhs).map(|(p, q)| p * q).sum())
        .collect();
    (x[0], x[1..].to_vec())
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

// ---- indicators -----------------------------------------------------------

fn ratio_index(up: f64, down: f64) -> f64 {
    if up == 0.0 && down == 0.0 {
        50.0
    } else if down == 0.0 {
        100.0
    } else {
        let r = up / down;
        100.0 * r / (1.0 + r)
    }
}

pub fn naive_rsi(closes: &[f64], window: usize) -> Vec<Option<f64>> {
    let diffs: Vec<f64> = closes.windows(2).map(|w| w[1] - w[0]).collect();
    (0..closes.len())
        .map(|i| {
            if i < window {
                return None;
            }
            let recent = &diffs[i - window..i];
            let up: f64 = recent.iter().filter(|d| **d > 0.0).sum::<f64>() / window as f64;
            let down: f64 = -recent.iter().filter(|d| **d < 0.0).sum::<f64>() / window as f64;
            Some(ratio_index(up, down))
        })
        .collect()
}

pub fn naive_mfi(high: &[f64], low: &[f64], close: &[f64], volume: &[f64], window: usize) -> Vec<Option<f64>> {
    let tp: Vec<f64> = (0..close.len()).map(|i| (high[i] + low[i] + close[i]) / 3.0).collect();
    let pos: Vec<f64> = (0..close.len())
        .map(|i| if i > 0 && tp[i] > tp[i - 1] { tp[i] * volume[i] } else { 0.0 })
        .collect();
    let neg: Vec<f64> = (0..close.len())
        .map(|i| if i > 0 && tp[i] < tp[i - 1] { tp[i] * volume[i] } else { 0.0 })
        .collect();
    (0..close.len())
        .map(|i| {
            (i >= window).then(|| {
                let p: f64 = pos[i + 1 - window..=i].iter().sum();
                let n: f64 = neg[i + 1 - window..=i].iter().sum();
                ratio_index(p, n)
            })
        })
        .collect()
}

/// Closed-form weighted sum `(1−α)ᵗ x₀ + Σ α(1−α)ᵗ⁻ᵏ xₖ`.
pub fn naive_ema(x: &[f64], alpha: f64) -> Vec<f64> {
    (0..x.len())
        .map(|t| {
            let mut s = (1.0 - alpha).powi(t as i32) * x[0];
            for (k, xk) in x.iter().enumerate().take(t + 1).skip(1) {
                s += alpha * (1.0 - alpha).powi((t - k) as i32) * xk;
            }
            s
        })
        .collect()
}

pub fn naive_stoch_k(close: &[f64], high: &[f64], low: &[f64], window: usize) -> Vec<Option<f64>> {
    (0..close.len())
        .map(|i| {
            (i + 1 >= window).then(|| {
                let mut lows = low[i + 1 - window..=i].to_vec();
                let mut highs = high[i + 1 - window..=i].to_vec();
                lows.sort_by(f64::total_cmp);
                highs.sort_by(f64::total_cmp);
                let (lp, hp) = (lows[0], highs[window - 1]);
                if hp == lp {
                    50.0
                } else {
                    100.0 * (close[i] - lp) / (hp - lp)
                }
            })
        })
        .collect()
}

pub fn naive_macd(closes: &[f64], fast: f64, slow: f64, signal: f64) -> (Vec<f64>, Vec<f64>) {
    let f = naive_ema(closes, fast);
    let s = naive_ema(closes, slow);
    let line: Vec<f64> = f.iter().zip(&s).map(|(a, b)| a - b).collect();
    let sig = naive_ema(&line, signal);
    (line, sig)
}

// ---- tuning ---------------------------------------------------------------

/// Test MSE of an RBF model trained on the full training split.
pub fn rbf_test_mse(split: &SplitDataset, c: f64, sigma2: f64) -> Option<f64> {
    let model = train(&split.train.training_set().ok()?, KernelSpec::rbf(sigma2), c).ok()?;
    let preds = model.predict_many(&split.test.features).ok()?;
    Some(mse(&split.test.targets, &preds).ok()?.mse)
}

/// Smallest test MSE on a 20×20 grid, log-uniform over
/// `C ∈ [10⁻², 10⁴]` and `σ² ∈ [10⁻³, 10³]`.
pub fn grid_oracle(split: &SplitDataset) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..20 {
        for j in 0..20 {
            let lc = -2.0 + 6.0 * i as f64 / 19.0;
            let ls = -3.0 + 6.0 * j as f64 / 19.0;
            if let Some(m) = rbf_test_mse(split, 10f64.powf(lc), 10f64.powf(ls)) {
                best = best.min(m);
            }
        }
    }
    best
}
