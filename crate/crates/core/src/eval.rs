//! Metrics, the three-way method comparison and convergence output.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::dataset::{apply_scaler, build_supervised, fit_scaler, split_chronological, OhlcvSeries, SplitDataset};
use crate::error::{Error, Result};
use crate::indicators::IndicatorConfig;
use crate::lssvm::{train, KernelSpec, LssvmModel};
use crate::swarm::{AbcConfig, PsoConfig};
use crate::tuner::{tune, Optimizer, SearchSpace, TuneResult, DEFAULT_HOLDOUT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub mse: f64,
    pub n: usize,
}

/// Mean squared error.
pub fn mse(targets: &[f64], predictions: &[f64]) -> Result<Metrics> {
    if targets.len() != predictions.len() {
        return Err(Error::input(format!(
            "{} targets but {} predictions",
            targets.len(),
            predictions.len()
        )));
    }
    if targets.is_empty() {
        return Err(Error::input("cannot compute MSE of zero points"));
    }
    let sum: f64 = targets
        .iter()
        .zip(predictions)
        .map(|(t, p)| (t - p) * (t - p))
        .sum();
    Ok(Metrics {
        mse: sum / targets.len() as f64,
        n: targets.len(),
    })
}

pub const METHOD_ABC: &str = "LSSVM-ABC";
pub const METHOD_PSO: &str = "LSSVM-PSO";
pub const METHOD_DEFAULT: &str = "LSSVM";

#[derive(Debug, Clone, PartialEq)]
pub struct CompareConfig {
    pub indicators: IndicatorConfig,
    pub train_ratio: f64,
    pub scale: bool,
    pub use_adj_close: bool,
    pub space: SearchSpace,
    pub holdout_fraction: f64,
    pub abc: AbcConfig,
    pub pso: PsoConfig,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self {
            indicators: IndicatorConfig::default(),
            train_ratio: 0.7,
            scale: true,
            use_adj_close: false,
            space: SearchSpace::default(),
            holdout_fraction: DEFAULT_HOLDOUT,
            abc: AbcConfig::default(),
            pso: PsoConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MethodResult {
    pub method: &'static str,
    pub test_mse: f64,
    pub c: f64,
    pub kernel: KernelSpec,
    pub validation_mse: Option<f64>,
    pub seed: Option<u64>,
    pub wall_time_secs: f64,
    pub model: LssvmModel,
    pub tune: Option<TuneResult>,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub symbol: String,
    pub train_rows: usize,
    pub test_rows: usize,
    pub rows: Vec<MethodResult>,
}

#[derive(Serialize)]
struct RowJson<'a> {
    method: &'a str,
    test_mse: f64,
    best_c: f64,
    best_kernel: &'a KernelSpec,
    validation_mse: Option<f64>,
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_secs: Option<f64>,
}

impl CompareReport {
    pub fn row(&self, method: &str) -> Option<&MethodResult> {
        self.rows.iter().find(|r| r.method == method)
    }

    /// Machine-readable report. Wall times are only included when asked for,
    /// since they differ between otherwise identical runs.
    pub fn to_json(&self, include_timings: bool) -> String {
        let rows: Vec<RowJson> = self
            .rows
            .iter()
            .map(|r| RowJson {
                method: r.method,
                test_mse: r.test_mse,
                best_c: r.c,
                best_kernel: &r.kernel,
                validation_mse: r.validation_mse,
                seed: r.seed,
                wall_time_secs: include_timings.then_some(r.wall_time_secs),
            })
            .collect();
        let v = serde_json::json!({
            "symbol": self.symbol,
            "train_rows": self.train_rows,
            "test_rows": self.test_rows,
            "rows": rows,
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{}  (train {} rows, test {} rows)\n{:<10} {:>14} {:>12}  {:<28} {:>9}\n",
            self.symbol, self.train_rows, self.test_rows, "method", "test MSE", "C", "kernel", "time (s)"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<10} {:>14.6} {:>12.5e}  {:<28} {:>9.3}\n",
                r.method,
                r.test_mse,
                r.c,
                r.kernel.to_string(),
                r.wall_time_secs
            ));
        }
        out
    }
}

/// Builds features, splits chronologically, standardizes on the training
/// rows only, and compares the two tuned models with the untuned default.
pub fn run_compare(series: &OhlcvSeries, config: &CompareConfig) -> Result<CompareReport> {
    let split = prepare_split(series, &config.indicators, config.train_ratio, config.scale, config.use_adj_close)?;
    compare_split(series.symbol(), &split, config)
}

/// Dataset, split and (optionally) train-fitted standardization for a series.
pub fn prepare_split(
    series: &OhlcvSeries,
    indicators: &IndicatorConfig,
    train_ratio: f64,
    scale: bool,
    use_adj_close: bool,
) -> Result<SplitDataset> {
    let series = if use_adj_close { series.adjusted() } else { series.clone() };
    let ds = build_supervised(&series, indicators)?;
    let split = split_chronological(&ds, train_ratio)?;
    if !scale {
        return Ok(split);
    }
    let scaler = fit_scaler(&split.train)?;
    Ok(SplitDataset {
        train: apply_scaler(&scaler, &split.train)?,
        test: apply_scaler(&scaler, &split.test)?,
    })
}

/// Three-way comparison on an already prepared split.
pub fn compare_split(symbol: &str, split: &SplitDataset, config: &CompareConfig) -> Result<CompareReport> {
    let test_mse = |m: &LssvmModel| -> Result<f64> {
        Ok(mse(&split.test.targets, &m.predict_many(&split.test.features)?)?.mse)
    };

    let mut rows = Vec::with_capacity(3);
    for (method, optimizer) in [
        (METHOD_ABC, Optimizer::Abc(config.abc.clone())),
        (METHOD_PSO, Optimizer::Pso(config.pso.clone())),
    ] {
        let start = Instant::now();
        let t = tune(&split.train, &config.space, &optimizer, config.holdout_fraction)?;
        let elapsed = start.elapsed().as_secs_f64();
        rows.push(MethodResult {
            method,
            test_mse: test_mse(&t.final_model)?,
            c: t.best_c,
            kernel: t.best_kernel,
            validation_mse: Some(t.best_validation_mse),
            seed: Some(t.seed),
            wall_time_secs: elapsed,
            model: t.final_model.clone(),
            tune: Some(t),
        });
    }

    let start = Instant::now();
    let (c, kernel) = config.space.default_params();
    let model = train(&split.train.training_set()?, kernel, c)?;
    rows.push(MethodResult {
        method: METHOD_DEFAULT,
        test_mse: test_mse(&model)?,
        c,
        kernel,
        validation_mse: None,
        seed: None,
        wall_time_secs: start.elapsed().as_secs_f64(),
        model,
        tune: None,
    });

    Ok(CompareReport {
        symbol: symbol.to_string(),
        train_rows: split.train.len(),
        test_rows: split.test.len(),
        rows,
    })
}

/// Writes the `cycle,best_objective` history of a tuning run.
pub fn emit_convergence(result: &TuneResult, path: &Path) -> Result<()> {
    std::fs::write(path, result.convergence_csv()).map_err(|e| Error::io(path, e))
}
