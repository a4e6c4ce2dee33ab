//! Least-squares SVM regression with swarm-tuned hyperparameters.
//!
//! The crate covers the whole forecasting pipeline for daily price bars:
//!
//! - [`dataset`]: OHLCV CSV parsing, six-input feature rows
//!   (close, RSI, MFI, EMA, %K, MACD) with next-close targets, chronological
//!   splitting and train-fitted standardization.
//! - [`indicators`]: the technical indicators behind those features.
//! - [`lssvm`]: kernels, training by one dense linear solve, prediction and
//!   the JSON model file.
//! - [`swarm`]: artificial bee colony and particle swarm minimizers with
//!   seeded, schedule-independent results.
//! - [`tuner`]: search spaces over `(C, kernel parameter)` and the holdout
//!   objective that ties the optimizers to the regressor.
//! - [`eval`]: metrics and the three-way method comparison.
//!
//! ```
//! use swarm_lssvm::prelude::*;
//!
//! let data = TrainingSet::new(vec![vec![0.0], vec![1.0]], vec![0.0, 1.0]).unwrap();
//! let model = train(&data, KernelSpec::Linear, 100.0).unwrap();
//! assert!((model.predict(&[0.5]).unwrap() - 0.5).abs() < 1e-12);
//! ```

pub mod cli;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod indicators;
pub mod lssvm;
pub mod reference;
pub mod swarm;
pub mod synthetic;
pub mod tuner;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::dataset::{
        apply_scaler, build_supervised, fit_scaler, parse_ohlcv_csv, split_chronological, OhlcvSeries,
        SupervisedDataset,
    };
    pub use crate::error::{Error, Result};
    pub use crate::eval::{mse, run_compare, CompareConfig};
    pub use crate::indicators::IndicatorConfig;
    pub use crate::lssvm::{train, KernelSpec, LssvmModel, TrainingSet};
    pub use crate::swarm::{abc_minimize, pso_minimize, AbcConfig, Bounds, OptResult, PsoConfig};
    pub use crate::tuner::{tune_lssvm_abc, tune_lssvm_pso, SearchSpace, TuneResult};
}
