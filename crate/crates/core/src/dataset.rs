//! OHLCV input, supervised feature rows, chronological splitting and
//! feature standardization.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicators::{IndicatorConfig, IndicatorTable};
use crate::lssvm::TrainingSet;

const DATE_FORMAT: &str = "%Y-%m-%d";

/// Feature columns produced by [`build_supervised`], in order.
pub const FEATURE_NAMES: [&str; 6] = ["close", "rsi", "mfi", "ema", "stoch_k", "macd"];

/// Rows that must survive warm-up for [`build_supervised`] to succeed.
pub const MIN_SUPERVISED_ROWS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhlcvBar {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub adj_close: f64,
    pub volume: f64,
}

impl OhlcvBar {
    fn validate(&self) -> std::result::Result<(), String> {
        for (name, v) in [
            ("Open", self.open),
            ("High", self.high),
            ("Low", self.low),
            ("Close", self.close),
            ("Adj Close", self.adj_close),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be a positive price, got {v}"));
            }
        }
        if !(self.volume.is_finite() && self.volume >= 0.0) {
            return Err(format!("Volume must be non-negative, got {}", self.volume));
        }
        if self.low > self.open.min(self.close) || self.high < self.open.max(self.close) {
            return Err(format!(
                "bar range is inconsistent: low {} high {} open {} close {}",
                self.low, self.high, self.open, self.close
            ));
        }
        Ok(())
    }
}

/// Date-ascending daily bars for one symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct OhlcvSeries {
    symbol: String,
    bars: Vec<OhlcvBar>,
}

impl OhlcvSeries {
    /// Sorts by date and validates every bar. Duplicate dates are rejected.
    pub fn new(symbol: impl Into<String>, mut bars: Vec<OhlcvBar>) -> Result<Self> {
        if bars.is_empty() {
            return Err(Error::input("OHLCV series is empty"));
        }
        for b in &bars {
            b.validate().map_err(|e| Error::input(format!("{}: {e}", b.date)))?;
        }
        bars.sort_by_key(|b| b.date);
        if let Some(w) = bars.windows(2).find(|w| w[0].date == w[1].date) {
            return Err(Error::input(format!("duplicate date {}", w[0].date)));
        }
        Ok(Self { symbol: symbol.into(), bars })
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn bars(&self) -> &[OhlcvBar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Rescales open/high/low/close of each bar by `adj_close / close`, so
    /// every derived series follows the adjusted price.
    pub fn adjusted(&self) -> Self {
        let bars = self
            .bars
            .iter()
            .map(|b| {
                let f = b.adj_close / b.close;
                OhlcvBar {
                    open: b.open * f,
                    high: b.high * f,
                    low: b.low * f,
                    close: b.adj_close,
                    ..*b
                }
            })
            .collect();
        Self { symbol: self.symbol.clone(), bars }
    }

    fn column(&self, f: impl Fn(&OhlcvBar) -> f64) -> Vec<f64> {
        self.bars.iter().map(f).collect()
    }

    pub fn closes(&self) -> Vec<f64> {
        self.column(|b| b.close)
    }

    pub fn indicators(&self, config: &IndicatorConfig) -> Result<IndicatorTable> {
        IndicatorTable::compute(
            &self.column(|b| b.high),
            &self.column(|b| b.low),
            &self.closes(),
            &self.column(|b| b.volume),
            config,
        )
    }
}

/// Parses a daily-bar CSV with header `Date,Open,High,Low,Close,Adj Close,Volume`.
///
/// Header names are matched case-insensitively; `Adj Close` is optional and
/// falls back to `Close`. Rows may appear in any date order.
pub fn parse_ohlcv_csv(symbol: &str, text: &str) -> Result<OhlcvSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::parse(format!("OHLCV header: {e}")))?
        .clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
    };
    let require = |name: &str| {
        find(name).ok_or_else(|| Error::parse(format!("OHLCV header is missing column `{name}`")))
    };
    let date_col = require("Date")?;
    let open_col = require("Open")?;
    let high_col = require("High")?;
    let low_col = require("Low")?;
    let close_col = require("Close")?;
    let volume_col = require("Volume")?;
    let adj_col = find("Adj Close");

    let mut bars = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::parse(format!("OHLCV: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |col: usize, name: &str| -> Result<&str> {
            record
                .get(col)
                .ok_or_else(|| Error::parse(format!("line {line}: missing `{name}` value")))
        };
        let number = |col: usize, name: &str| -> Result<f64> {
            let raw = field(col, name)?;
            raw.parse::<f64>()
                .map_err(|_| Error::parse(format!("line {line}: cannot parse `{name}` value {raw:?}")))
        };
        let raw_date = field(date_col, "Date")?;
        let date = NaiveDate::parse_from_str(raw_date, DATE_FORMAT)
            .map_err(|_| Error::parse(format!("line {line}: cannot parse `Date` value {raw_date:?}")))?;
        let close = number(close_col, "Close")?;
        let bar = OhlcvBar {
            date,
            open: number(open_col, "Open")?,
            high: number(high_col, "High")?,
            low: number(low_col, "Low")?,
            close,
            adj_close: match adj_col {
                Some(c) => number(c, "Adj Close")?,
                None => close,
            },
            volume: number(volume_col, "Volume")?,
        };
        bar.validate()
            .map_err(|e| Error::parse(format!("line {line}: {e}")))?;
        bars.push(bar);
    }
    if bars.is_empty() {
        return Err(Error::parse("OHLCV file has no data rows"));
    }
    OhlcvSeries::new(symbol, bars).map_err(|e| match e {
        Error::Input(m) => Error::parse(format!("OHLCV: {m}")),
        other => other,
    })
}

/// Renders a series in the format [`parse_ohlcv_csv`] reads.
pub fn render_ohlcv_csv(series: &OhlcvSeries) -> String {
    let mut out = String::from("Date,Open,High,Low,Close,Adj Close,Volume\n");
    for b in series.bars() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            b.date.format(DATE_FORMAT),
            b.open,
            b.high,
            b.low,
            b.close,
            b.adj_close,
            b.volume
        ));
    }
    out
}

/// Indicator dump: `date,close,rsi,mfi,ema,stoch_k,macd,macd_signal`, with
/// empty cells during warm-up.
pub fn indicators_csv(series: &OhlcvSeries, config: &IndicatorConfig) -> Result<String> {
    let t = series.indicators(config)?;
    let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from("date,close,rsi,mfi,ema,stoch_k,macd,macd_signal\n");
    for (i, b) in series.bars().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            b.date.format(DATE_FORMAT),
            b.close,
            cell(t.rsi.get(i)),
            cell(t.mfi.get(i)),
            cell(t.ema.get(i)),
            cell(t.stoch_k.get(i)),
            cell(t.macd.get(i)),
            cell(t.macd_signal.get(i)),
        ));
    }
    Ok(out)
}

/// Per-column standardization fitted on a training split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    /// Columns with zero variance; their std is stored as 1.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zero_variance: Vec<usize>,
}

impl Scaler {
    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(x, (m, s))| (x - m) / s)
            .collect()
    }

    pub fn inverse_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(x, (m, s))| x * s + m)
            .collect()
    }
}

/// Feature rows with next-bar close targets.
#[derive(Debug, Clone, PartialEq)]
pub struct SupervisedDataset {
    pub feature_names: Vec<String>,
    pub features: Vec<Vec<f64>>,
    pub targets: Vec<f64>,
    pub dates: Vec<NaiveDate>,
    /// Standardization already applied to `features`, if any.
    pub scaler: Option<Scaler>,
}

impl SupervisedDataset {
    pub fn new(
        feature_names: Vec<String>,
        features: Vec<Vec<f64>>,
        targets: Vec<f64>,
        dates: Vec<NaiveDate>,
    ) -> Result<Self> {
        let p = feature_names.len();
        if p == 0 {
            return Err(Error::input("dataset needs at least one feature"));
        }
        if features.len() != targets.len() || features.len() != dates.len() {
            return Err(Error::input(format!(
                "dataset has {} rows, {} targets and {} dates",
                features.len(),
                targets.len(),
                dates.len()
            )));
        }
        for (i, row) in features.iter().enumerate() {
            if row.len() != p {
                return Err(Error::input(format!("row {i} has {} features, expected {p}", row.len())));
            }
            if row.iter().any(|v| !v.is_finite()) || !targets[i].is_finite() {
                return Err(Error::input(format!("row {i} contains non-finite values")));
            }
        }
        if dates.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("dataset dates must be strictly increasing"));
        }
        Ok(Self { feature_names, features, targets, dates, scaler: None })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Rows `range` as a new dataset, keeping the applied scaler.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            feature_names: self.feature_names.clone(),
            features: self.features[range.clone()].to_vec(),
            targets: self.targets[range.clone()].to_vec(),
            dates: self.dates[range].to_vec(),
            scaler: self.scaler.clone(),
        }
    }

    pub fn training_set(&self) -> Result<TrainingSet> {
        TrainingSet::new(self.features.clone(), self.targets.clone())
    }

    /// Audit dump: `date,<feature names>,target`.
    pub fn to_csv(&self) -> String {
        let mut out = format!("date,{},target\n", self.feature_names.join(","));
        for ((d, row), t) in self.dates.iter().zip(&self.features).zip(&self.targets) {
            out.push_str(&d.format(DATE_FORMAT).to_string());
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push_str(&format!(",{t}\n"));
        }
        out
    }
}

/// Feature rows for every bar past warm-up, including the last bar (which
/// has no next close). Used for prediction.
pub fn feature_rows(series: &OhlcvSeries, config: &IndicatorConfig) -> Result<(Vec<NaiveDate>, Vec<Vec<f64>>)> {
    let t = series.indicators(config)?;
    let warmup = t.warmup();
    let closes = series.closes();
    let mut dates = Vec::new();
    let mut rows = Vec::new();
    for (i, &close) in closes.iter().enumerate().skip(warmup) {
        let row = [
            Some(close),
            t.rsi.get(i),
            t.mfi.get(i),
            t.ema.get(i),
            t.stoch_k.get(i),
            t.macd.get(i),
        ];
        let row: Vec<f64> = row
            .into_iter()
            .map(|v| v.expect("past warm-up every indicator is defined"))
            .collect();
        dates.push(series.bars()[i].date);
        rows.push(row);
    }
    Ok((dates, rows))
}

/// Six-input dataset: `[close, RSI, MFI, EMA, %K, MACD]` at bar `t` with
/// target `close[t+1]`. Rows inside the indicator warm-up and the final bar
/// are dropped.
pub fn build_supervised(series: &OhlcvSeries, config: &IndicatorConfig) -> Result<SupervisedDataset> {
    config.validate()?;
    let warmup = config.warmup();
    let required = warmup + 1 + MIN_SUPERVISED_ROWS;
    if series.len() < required {
        return Err(Error::input(format!(
            "need at least {required} bars ({warmup} warm-up + {MIN_SUPERVISED_ROWS} rows + 1), got {}",
            series.len()
        )));
    }
    let (mut dates, mut rows) = feature_rows(series, config)?;
    dates.pop();
    rows.pop();
    let closes = series.closes();
    let first = series.len() - rows.len() - 1;
    let targets = (0..rows.len()).map(|i| closes[first + i + 1]).collect();
    SupervisedDataset::new(
        FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
        rows,
        targets,
        dates,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitDataset {
    pub train: SupervisedDataset,
    pub test: SupervisedDataset,
}

/// First `floor(ratio · m)` rows train, the rest test. Order is preserved.
pub fn split_chronological(ds: &SupervisedDataset, train_ratio: f64) -> Result<SplitDataset> {
    if !(train_ratio > 0.0 && train_ratio < 1.0) {
        return Err(Error::input(format!("train ratio must be in (0, 1), got {train_ratio}")));
    }
    let m = ds.len();
    if m < 10 {
        return Err(Error::input(format!("need at least 10 rows to split, got {m}")));
    }
    let n_train = (train_ratio * m as f64 + 1e-9).floor() as usize;
    if n_train == 0 || n_train == m {
        return Err(Error::input(format!(
            "train ratio {train_ratio} leaves an empty split of {m} rows"
        )));
    }
    Ok(SplitDataset {
        train: ds.slice(0..n_train),
        test: ds.slice(n_train..m),
    })
}

/// Column means and population standard deviations of `train`. Columns with
/// zero variance get std 1 and are listed in [`Scaler::zero_variance`].
pub fn fit_scaler(train: &SupervisedDataset) -> Result<Scaler> {
    if train.is_empty() {
        return Err(Error::input("cannot fit a scaler on an empty dataset"));
    }
    let n = train.len() as f64;
    let p = train.n_features();
    let mut means = vec![0.0; p];
    for row in &train.features {
        for (m, x) in means.iter_mut().zip(row) {
            *m += x;
        }
    }
    means.iter_mut().for_each(|m| *m /= n);
    let mut stds = vec![0.0; p];
    for row in &train.features {
        for ((s, x), m) in stds.iter_mut().zip(row).zip(&means) {
            *s += (x - m) * (x - m);
        }
    }
    let mut zero_variance = Vec::new();
    for (j, s) in stds.iter_mut().enumerate() {
        *s = (*s / n).sqrt();
        if *s == 0.0 {
            *s = 1.0;
            zero_variance.push(j);
        }
    }
    Ok(Scaler { means, stds, zero_variance })
}

/// Standardizes the features of `ds`. Targets are left in price units.
pub fn apply_scaler(scaler: &Scaler, ds: &SupervisedDataset) -> Result<SupervisedDataset> {
    if scaler.means.len() != ds.n_features() {
        return Err(Error::input(format!(
            "scaler has {} columns, dataset has {}",
            scaler.means.len(),
            ds.n_features()
        )));
    }
    if ds.scaler.is_some() {
        return Err(Error::input("dataset is already standardized"));
    }
    Ok(SupervisedDataset {
        features: ds.features.iter().map(|r| scaler.transform_row(r)).collect(),
        scaler: Some(scaler.clone()),
        ..ds.clone()
    })
}
