//! The full forecasting pipeline on one ticker: indicators, 70/30 split,
//! LSSVM-ABC vs LSSVM-PSO vs untuned LSSVM.
//!
//! ```text
//! cargo run --release --example stock_compare -- ADBE.csv
//! ```
//! Without an argument the bundled synthetic series is used. A file named
//! after a ticker from the published table also prints the reference row.

use std::path::PathBuf;

use swarm_lssvm::dataset::parse_ohlcv_csv;
use swarm_lssvm::eval::{run_compare, CompareConfig};
use swarm_lssvm::reference::reference_row;

fn main() -> swarm_lssvm::Result<()> {
    let path: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/WALK.csv")));
    let symbol = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let text = std::fs::read_to_string(&path).map_err(|e| swarm_lssvm::Error::Io { path: path.display().to_string(), source: e })?;
    let series = parse_ohlcv_csv(&symbol, &text)?;

    let report = run_compare(&series, &CompareConfig::default())?;
    print!("{}", report.to_table());
    if let Some(r) = reference_row(&symbol) {
        println!("published: LSSVM-ABC {} / LSSVM-PSO {} / LSSVM {}", r.lssvm_abc, r.lssvm_pso, r.lssvm);
    }
    Ok(())
}
