//! Technical indicators over daily bars.
//!
//! Windowed indicators leave their leading values empty until a full window
//! is available; [`IndicatorSeries::first_valid_index`] marks the first
//! defined value. Degenerate windows (no movement at all) resolve to the
//! neutral midpoint 50 instead of dividing by zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorConfig {
    pub rsi_window: usize,
    pub mfi_window: usize,
    /// EMA period `N`; the smoothing factor is `2 / (N + 1)`.
    pub ema_period: usize,
    pub stoch_window: usize,
    pub macd_fast_alpha: f64,
    pub macd_slow_alpha: f64,
    pub signal_alpha: f64,
}

impl Default for IndicatorConfig {
    fn default() -> Self {
        Self {
            rsi_window: 14,
            mfi_window: 14,
            ema_period: 10,
            stoch_window: 14,
            macd_fast_alpha: 0.15,
            macd_slow_alpha: 0.075,
            signal_alpha: 0.2,
        }
    }
}

impl IndicatorConfig {
    pub fn ema_alpha(&self) -> f64 {
        2.0 / (self.ema_period as f64 + 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in [
            ("rsi_window", self.rsi_window),
            ("mfi_window", self.mfi_window),
            ("ema_period", self.ema_period),
            ("stoch_window", self.stoch_window),
        ] {
            if w < 2 {
                return Err(Error::input(format!("{name} must be >= 2, got {w}")));
            }
        }
        for (name, a) in [
            ("macd_fast_alpha", self.macd_fast_alpha),
            ("macd_slow_alpha", self.macd_slow_alpha),
            ("signal_alpha", self.signal_alpha),
        ] {
            check_alpha(name, a)?;
        }
        Ok(())
    }

    /// Index of the first bar at which every feature indicator is defined.
    pub fn warmup(&self) -> usize {
        // EMA and MACD are defined from bar 0.
        self.rsi_window
            .max(self.mfi_window)
            .max(self.stoch_window - 1)
    }
}

/// Indicator output aligned with its input bars.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSeries {
    pub values: Vec<Option<f64>>,
    pub first_valid_index: usize,
}

impl IndicatorSeries {
    fn from_fn(n: usize, first_valid_index: usize, mut f: impl FnMut(usize) -> f64) -> Self {
        let values = (0..n)
            .map(|i| (i >= first_valid_index).then(|| f(i)))
            .collect();
        Self { values, first_valid_index }
    }

    fn dense(values: Vec<f64>) -> Self {
        Self {
            values: values.into_iter().map(Some).collect(),
            first_valid_index: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.values.get(i).copied().flatten()
    }
}

fn check_alpha(name: &str, a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::input(format!("{name} must be in (0, 1], got {a}")));
    }
    Ok(())
}

fn check_window(window: usize, len: usize, what: &str) -> Result<()> {
    if window < 2 {
        return Err(Error::input(format!("{what} window must be >= 2, got {window}")));
    }
    if len <= window {
        return Err(Error::input(format!(
            "{what} needs more than {window} bars, got {len}"
        )));
    }
    Ok(())
}

fn check_lengths(lens: &[usize]) -> Result<()> {
    if lens.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::input(format!("input series lengths differ: {lens:?}")));
    }
    Ok(())
}

/// `100 − 100 / (1 + up/down)` for two non-negative sums, with the
/// degenerate cases mapped to 100, 0 and 50.
fn oscillator(up: f64, down: f64) -> f64 {
    match (up > 0.0, down > 0.0) {
        (true, true) => 100.0 - 100.0 / (1.0 + up / down),
        (true, false) => 100.0,
        (false, true) => 0.0,
        (false, false) => 50.0,
    }
}

/// Relative strength index from simple means of the last `window`
/// close-to-close gains and losses.
pub fn rsi(closes: &[f64], window: usize) -> Result<IndicatorSeries> {
    check_window(window, closes.len(), "RSI")?;
    Ok(IndicatorSeries::from_fn(closes.len(), window, |i| {
        let (mut gains, mut losses) = (0.0, 0.0);
        for t in i + 1 - window..=i {
            let d = closes[t] - closes[t - 1];
            if d > 0.0 {
                gains += d;
            } else {
                losses -= d;
            }
        }
        oscillator(gains / window as f64, losses / window as f64)
    }))
}

/// Money flow index. Each bar's money flow `TP · V` (with
/// `TP = (H + L + C) / 3`) counts as positive when `TP` rose from the
/// previous bar, negative when it fell, and is dropped when unchanged.
pub fn mfi(high: &[f64], low: &[f64], close: &[f64], volume: &[f64], window: usize) -> Result<IndicatorSeries> {
    check_lengths(&[high.len(), low.len(), close.len(), volume.len()])?;
    check_window(window, close.len(), "MFI")?;
    if let Some(v) = volume.iter().find(|v| v.is_nan() || **v < 0.0) {
        return Err(Error::input(format!("volume must be non-negative, got {v}")));
    }
    let tp: Vec<f64> = (0..close.len())
        .map(|i| (high[i] + low[i] + close[i]) / 3.0)
        .collect();
    Ok(IndicatorSeries::from_fn(close.len(), window, |i| {
        let (mut pos, mut neg) = (0.0, 0.0);
        for t in i + 1 - window..=i {
            let flow = tp[t] * volume[t];
            if tp[t] > tp[t - 1] {
                pos += flow;
            } else if tp[t] < tp[t - 1] {
                neg += flow;
            }
        }
        oscillator(pos, neg)
    }))
}

/// Exponential moving average seeded with the first observation.
pub fn ema(series: &[f64], alpha: f64) -> Result<IndicatorSeries> {
    check_alpha("EMA alpha", alpha)?;
    if series.is_empty() {
        return Err(Error::input("EMA of an empty series"));
    }
    Ok(IndicatorSeries::dense(ema_values(series, alpha)))
}

fn ema_values(series: &[f64], alpha: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(series.len());
    let mut prev = series[0];
    out.push(prev);
    for &x in &series[1..] {
        // An unchanged input leaves the average untouched; the weighted sum
        // would drift by an ulp.
        if x != prev {
            prev = alpha * x + (1.0 - alpha) * prev;
        }
        out.push(prev);
    }
    out
}

/// Stochastic %K over a trailing inclusive window of highs and lows.
pub fn stochastic_k(close: &[f64], high: &[f64], low: &[f64], window: usize) -> Result<IndicatorSeries> {
    check_lengths(&[close.len(), high.len(), low.len()])?;
    check_window(window, close.len(), "%K")?;
    Ok(IndicatorSeries::from_fn(close.len(), window - 1, |i| {
        let span = i + 1 - window..=i;
        let lp = low[span.clone()].iter().copied().fold(f64::INFINITY, f64::min);
        let hp = high[span].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hp == lp {
            50.0
        } else {
            (close[i] - lp) / (hp - lp) * 100.0
        }
    }))
}

/// MACD line (fast EMA minus slow EMA of closes) and its signal line.
pub fn macd(closes: &[f64], config: &IndicatorConfig) -> Result<(IndicatorSeries, IndicatorSeries)> {
    if closes.len() < 2 {
        return Err(Error::input(format!("MACD needs at least 2 bars, got {}", closes.len())));
    }
    check_alpha("macd_fast_alpha", config.macd_fast_alpha)?;
    check_alpha("macd_slow_alpha", config.macd_slow_alpha)?;
    check_alpha("signal_alpha", config.signal_alpha)?;
    let fast = ema_values(closes, config.macd_fast_alpha);
    let slow = ema_values(closes, config.macd_slow_alpha);
    let line: Vec<f64> = fast.iter().zip(&slow).map(|(f, s)| f - s).collect();
    let signal = ema_values(&line, config.signal_alpha);
    Ok((IndicatorSeries::dense(line), IndicatorSeries::dense(signal)))
}

/// All indicators for one bar series.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorTable {
    pub rsi: IndicatorSeries,
    pub mfi: IndicatorSeries,
    pub ema: IndicatorSeries,
    pub stoch_k: IndicatorSeries,
    pub macd: IndicatorSeries,
    pub macd_signal: IndicatorSeries,
}

impl IndicatorTable {
    pub fn compute(
        high: &[f64],
        low: &[f64],
        close: &[f64],
        volume: &[f64],
        config: &IndicatorConfig,
    ) -> Result<Self> {
        config.validate()?;
        let (macd, macd_signal) = macd(close, config)?;
        Ok(Self {
            rsi: rsi(close, config.rsi_window)?,
            mfi: mfi(high, low, close, volume, config.mfi_window)?,
            ema: ema(close, config.ema_alpha())?,
            stoch_k: stochastic_k(close, high, low, config.stoch_window)?,
            macd,
            macd_signal,
        })
    }

    pub fn warmup(&self) -> usize {
        [&self.rsi, &self.mfi, &self.ema, &self.stoch_k, &self.macd]
            .iter()
            .map(|s| s.first_valid_index)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valid(s: &IndicatorSeries) -> Vec<f64> {
        s.values.iter().flatten().copied().collect()
    }

    #[test]
    fn rsi_clamps() {
        let up: Vec<f64> = (0..30).map(|i| 10.0 + i as f64).collect();
        let s = rsi(&up, 14).unwrap();
        assert_eq!(s.first_valid_index, 14);
        assert!(s.values[..14].iter().all(Option::is_none));
        assert!(valid(&s).iter().all(|&v| v == 100.0));

        let down: Vec<f64> = up.iter().rev().copied().collect();
        assert!(valid(&rsi(&down, 14).unwrap()).iter().all(|&v| v == 0.0));

        let alt: Vec<f64> = (0..30).map(|i| 10.0 + (i % 2) as f64).collect();
        assert!(valid(&rsi(&alt, 14).unwrap()).iter().all(|&v| v == 50.0));

        assert!(valid(&rsi(&[5.0; 20], 14).unwrap()).iter().all(|&v| v == 50.0));
    }

    #[test]
    fn rsi_value() {
        // Window 2 over changes +2, -1: gains 1, losses 0.5, RS 2.
        let s = rsi(&[1.0, 3.0, 2.0], 2).unwrap();
        assert!((s.get(2).unwrap() - (100.0 - 100.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn rsi_errors() {
        assert!(rsi(&[1.0; 14], 14).is_err());
        assert!(rsi(&[1.0; 30], 1).is_err());
    }

    #[test]
    fn mfi_clamps() {
        let n = 20;
        let rising: Vec<f64> = (0..n).map(|i| 10.0 + i as f64).collect();
        let vol = vec![1000.0; n];
        let s = mfi(&rising, &rising, &rising, &vol, 14).unwrap();
        assert!(valid(&s).iter().all(|&v| v == 100.0));

        let falling: Vec<f64> = rising.iter().rev().copied().collect();
        let s = mfi(&falling, &falling, &falling, &vol, 14).unwrap();
        assert!(valid(&s).iter().all(|&v| v == 0.0));

        // TP alternates 10, 11 with volume chosen so each up-flow equals each
        // down-flow: 11·10 = 110 up, 10·11 = 110 down.
        let tp: Vec<f64> = (0..n).map(|i| 10.0 + (i % 2) as f64).collect();
        let vol: Vec<f64> = (0..n).map(|i| if i % 2 == 1 { 10.0 } else { 11.0 }).collect();
        let s = mfi(&tp, &tp, &tp, &vol, 14).unwrap();
        assert!(valid(&s).iter().all(|&v| v == 50.0));
    }

    #[test]
    fn mfi_errors() {
        let x = vec![1.0; 20];
        assert!(mfi(&x, &x, &x[..19], &x, 14).is_err());
        assert!(mfi(&x, &x, &x, &[-1.0; 20], 14).is_err());
        assert!(mfi(&x[..10], &x[..10], &x[..10], &x[..10], 14).is_err());
    }

    #[test]
    fn ema_examples() {
        assert_eq!(valid(&ema(&[3.0; 5], 0.3).unwrap()), vec![3.0; 5]);
        let s = [1.0, 5.0, -2.0, 7.5];
        assert_eq!(valid(&ema(&s, 1.0).unwrap()), s.to_vec());
        assert_eq!(valid(&ema(&[0.0, 10.0], 0.5).unwrap()), vec![0.0, 5.0]);
        assert!(ema(&s, 0.0).is_err());
        assert!(ema(&s, 1.5).is_err());
        assert!(ema(&[], 0.5).is_err());
    }

    #[test]
    fn stochastic_examples() {
        // Window over bars 1..=3: LP = 8, HP = 12.
        let high = [20.0, 12.0, 11.0, 10.0];
        let low = [1.0, 9.0, 9.5, 8.0];
        let s = stochastic_k(&[5.0, 11.0, 10.0, 12.0], &high, &low, 3).unwrap();
        assert_eq!(s.first_valid_index, 2);
        assert_eq!(s.get(1), None);
        assert_eq!(s.get(3), Some(100.0));
        let s = stochastic_k(&[5.0, 11.0, 10.0, 8.0], &high, &low, 3).unwrap();
        assert_eq!(s.get(3), Some(0.0));
        let s = stochastic_k(&[5.0, 11.0, 10.0, 10.0], &high, &low, 3).unwrap();
        assert_eq!(s.get(3), Some(50.0));
        let flat = [4.0; 4];
        assert_eq!(stochastic_k(&flat, &flat, &flat, 3).unwrap().get(3), Some(50.0));
        assert!(stochastic_k(&flat[..3], &flat[..3], &flat[..3], 3).is_err());
    }

    #[test]
    fn macd_examples() {
        let cfg = IndicatorConfig::default();
        let (line, signal) = macd(&[42.0; 10], &cfg).unwrap();
        assert!(valid(&line).iter().all(|&v| v == 0.0));
        assert!(valid(&signal).iter().all(|&v| v == 0.0));

        let (line, _) = macd(&[0.0, 10.0], &cfg).unwrap();
        assert!((line.get(1).unwrap() - 0.75).abs() < 1e-12);

        assert!(macd(&[1.0], &cfg).is_err());
    }

    #[test]
    fn macd_step_decays() {
        // Both EMAs converge to 1 after a unit step, so the line returns to 0.
        let mut closes = vec![0.0; 10];
        closes.extend(std::iter::repeat_n(1.0, 400));
        let (line, signal) = macd(&closes, &IndicatorConfig::default()).unwrap();
        assert!(line.get(20).unwrap() > 0.01);
        assert!(line.get(409).unwrap().abs() < 1e-6);
        assert!(signal.get(409).unwrap().abs() < 1e-6);
    }

    #[test]
    fn config_warmup() {
        let cfg = IndicatorConfig::default();
        assert_eq!(cfg.warmup(), 14);
        assert!((cfg.ema_alpha() - 2.0 / 11.0).abs() < 1e-15);
        let cfg = IndicatorConfig { stoch_window: 30, ..Default::default() };
        assert_eq!(cfg.warmup(), 29);
        assert!(IndicatorConfig { rsi_window: 1, ..Default::default() }.validate().is_err());
        assert!(IndicatorConfig { signal_alpha: 0.0, ..Default::default() }.validate().is_err());
    }
}
