//! Technical indicators and the six-input feature table for a bar series.
//!
//! ```text
//! cargo run --example indicators                         # bundled sample
//! cargo run --example indicators -- path/to/ADBE.csv
//! ```

use swarm_lssvm::dataset::{build_supervised, parse_ohlcv_csv};
use swarm_lssvm::indicators::IndicatorConfig;

fn main() -> swarm_lssvm::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/WALK.csv").to_string());
    let text = std::fs::read_to_string(&path).map_err(|e| swarm_lssvm::Error::Io { path: path.clone(), source: e })?;
    let series = parse_ohlcv_csv("sample", &text)?;
    let config = IndicatorConfig::default();
    let t = series.indicators(&config)?;

    println!("{} bars, indicators defined from bar {}", series.len(), t.warmup());
    println!("{:<12}{:>9}{:>8}{:>8}{:>9}{:>8}{:>9}", "date", "close", "rsi", "mfi", "ema", "%K", "macd");
    let n = series.len();
    for i in n - 8..n {
        let f = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.2}"));
        println!(
            "{:<12}{:>9.2}{:>8}{:>8}{:>9}{:>8}{:>9}",
            series.bars()[i].date,
            series.bars()[i].close,
            f(t.rsi.get(i)),
            f(t.mfi.get(i)),
            f(t.ema.get(i)),
            f(t.stoch_k.get(i)),
            t.macd.get(i).map_or("-".into(), |x| format!("{x:.4}")),
        );
    }

    let ds = build_supervised(&series, &config)?;
    println!("\nsupervised rows: {} (features {:?}, target = next close)", ds.len(), ds.feature_names);
    Ok(())
}
