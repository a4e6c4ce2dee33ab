//! Seeded synthetic data for examples and tests.

use chrono::{Datelike, Days, NaiveDate, Weekday};
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::dataset::{OhlcvBar, OhlcvSeries, SupervisedDataset};

/// Geometric random walk of daily bars on weekdays starting 2009-01-02.
pub fn random_walk_ohlcv(symbol: &str, n: usize, seed: u64) -> OhlcvSeries {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut date = NaiveDate::from_ymd_opt(2009, 1, 2).expect("valid date");
    let mut prev_close = 30.0;
    let mut bars = Vec::with_capacity(n);
    for _ in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        let gap: f64 = rng.sample(StandardNormal);
        let open = prev_close * (0.003 * gap).exp();
        let close = open * (0.015 * z).exp();
        let wick_hi: f64 = rng.random::<f64>() * 0.01;
        let wick_lo: f64 = rng.random::<f64>() * 0.01;
        let vol_z: f64 = rng.sample(StandardNormal);
        bars.push(OhlcvBar {
            date,
            open,
            high: open.max(close) * (1.0 + wick_hi),
            low: open.min(close) * (1.0 - wick_lo),
            close,
            adj_close: close * 0.98,
            volume: (1.0e6 * (0.3 * vol_z).exp()).round(),
        });
        prev_close = close;
        date = next_weekday(date);
    }
    OhlcvSeries::new(symbol, bars).expect("synthetic bars are valid")
}

fn next_weekday(d: NaiveDate) -> NaiveDate {
    let mut next = d + Days::new(1);
    while matches!(next.weekday(), Weekday::Sat | Weekday::Sun) {
        next = next + Days::new(1);
    }
    next
}

/// `y = sin(x)/x + ε` with `x ~ U[-10, 10]` and `ε ~ N(0, noise²)`, in draw
/// order (not sorted by `x`), so a leading/trailing split is an iid split.
pub fn sinc_dataset(n: usize, noise: f64, seed: u64) -> SupervisedDataset {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let start = NaiveDate::from_ymd_opt(2000, 1, 1).expect("valid date");
    let mut features = Vec::with_capacity(n);
    let mut targets = Vec::with_capacity(n);
    for _ in 0..n {
        let x: f64 = rng.random_range(-10.0..10.0);
        let e: f64 = rng.sample(StandardNormal);
        features.push(vec![x]);
        targets.push(sinc(x) + noise * e);
    }
    let dates = (0..n as u64).map(|i| start + Days::new(i)).collect();
    SupervisedDataset::new(vec!["x".into()], features, targets, dates).expect("synthetic rows are valid")
}

pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_is_valid_and_seeded() {
        let a = random_walk_ohlcv("W", 300, 1);
        assert_eq!(a.len(), 300);
        assert_eq!(a, random_walk_ohlcv("W", 300, 1));
        assert_ne!(a, random_walk_ohlcv("W", 300, 2));
        assert!(a.bars().iter().all(|b| !matches!(b.date.weekday(), Weekday::Sat | Weekday::Sun)));
    }

    #[test]
    fn sinc_shape() {
        let d = sinc_dataset(200, 0.05, 3);
        assert_eq!(d.len(), 200);
        assert_eq!(d.n_features(), 1);
        assert!(d.features.iter().all(|r| (-10.0..10.0).contains(&r[0])));
        assert_eq!(sinc(0.0), 1.0);
    }
}
