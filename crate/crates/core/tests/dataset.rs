use proptest::prelude::*;
use swarm_lssvm::dataset::{
    apply_scaler, build_supervised, feature_rows, fit_scaler, parse_ohlcv_csv, render_ohlcv_csv, split_chronological,
    FEATURE_NAMES,
};
use swarm_lssvm::eval::prepare_split;
use swarm_lssvm::indicators::IndicatorConfig;
use swarm_lssvm::synthetic::random_walk_ohlcv;

const YAHOO: &str = "\
Date,Open,High,Low,Close,Adj Close,Volume
2010-01-05,10.2,10.8,10.0,10.5,10.1,2000
2010-01-04,10.0,10.5,9.8,10.2,9.9,1500
2010-01-06,10.5,10.6,10.1,10.3,10.0,1800
";

#[test]
fn yahoo_layout_parses_and_sorts() {
    let s = parse_ohlcv_csv("ADBE", YAHOO).unwrap();
    assert_eq!(s.len(), 3);
    assert_eq!(s.closes(), vec![10.2, 10.5, 10.3]);
    assert_eq!(s.bars()[0].adj_close, 9.9);
    assert_eq!(s.symbol(), "ADBE");

    let lower = YAHOO.replacen("Date,Open,High,Low,Close,Adj Close,Volume", "date,open,high,low,close,volume", 1);
    let lower: String = lower
        .lines()
        .map(|l| {
            let mut f: Vec<&str> = l.split(',').collect();
            if f.len() == 7 {
                f.remove(5);
            }
            f.join(",") + "\n"
        })
        .collect();
    let s = parse_ohlcv_csv("X", &lower).unwrap();
    assert_eq!(s.bars()[1].adj_close, s.bars()[1].close);
}

#[test]
fn malformed_rows_name_their_line() {
    let bad_number = YAHOO.replace("10.8", "ten");
    let msg = parse_ohlcv_csv("X", &bad_number).unwrap_err().to_string();
    assert!(msg.contains("line 2"), "{msg}");

    let inverted = YAHOO.replace("10.2,10.8,10.0", "10.2,9.0,10.0");
    let err = parse_ohlcv_csv("X", &inverted).unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
    assert_eq!(err.exit_code(), 1);

    let dup = format!("{YAHOO}2010-01-04,10.0,10.5,9.8,10.2,9.9,1500\n");
    assert!(parse_ohlcv_csv("X", &dup).is_err());
    assert!(parse_ohlcv_csv("X", "Date,Open,High,Low,Close\n").is_err());
    assert!(parse_ohlcv_csv("X", "Date,Open,High,Low,Close,Volume\n").is_err());
}

#[test]
fn supervised_rows_align_with_next_close() {
    let s = random_walk_ohlcv("W", 100, 3);
    let cfg = IndicatorConfig::default();
    let ds = build_supervised(&s, &cfg).unwrap();
    assert_eq!(ds.len(), 100 - 14 - 1);
    assert_eq!(ds.feature_names, FEATURE_NAMES);
    let closes = s.closes();
    let dates: Vec<_> = s.bars().iter().map(|b| b.date).collect();
    for (i, d) in ds.dates.iter().enumerate() {
        let t = dates.iter().position(|x| x == d).unwrap();
        assert_eq!(ds.features[i][0], closes[t]);
        assert_eq!(ds.targets[i], closes[t + 1]);
    }
    let (pred_dates, rows) = feature_rows(&s, &cfg).unwrap();
    assert_eq!(rows.len(), ds.len() + 1);
    assert_eq!(*pred_dates.last().unwrap(), s.bars()[99].date);
}

#[test]
fn too_few_bars_is_an_input_error() {
    let s = random_walk_ohlcv("W", 44, 1);
    let err = build_supervised(&s, &IndicatorConfig::default()).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(build_supervised(&random_walk_ohlcv("W", 45, 1), &IndicatorConfig::default()).is_ok());
}

#[test]
fn split_is_chronological() {
    let ds = build_supervised(&random_walk_ohlcv("W", 300, 2), &IndicatorConfig::default()).unwrap();
    let split = split_chronological(&ds, 0.7).unwrap();
    assert_eq!(split.train.len(), (0.7 * ds.len() as f64).floor() as usize);
    assert_eq!(split.train.len() + split.test.len(), ds.len());
    assert!(split.train.dates.last() < split.test.dates.first());
    for bad in [0.0, 1.0, -0.5, f64::NAN] {
        assert!(split_chronological(&ds, bad).is_err());
    }
}

#[test]
fn scaling_uses_training_rows_only() {
    let s = random_walk_ohlcv("W", 400, 5);
    let cfg = IndicatorConfig::default();
    let scaled = prepare_split(&s, &cfg, 0.7, true, false).unwrap();
    let raw = prepare_split(&s, &cfg, 0.7, false, false).unwrap();
    let scaler = fit_scaler(&raw.train).unwrap();
    assert_eq!(scaled.train.scaler.as_ref(), Some(&scaler));
    assert_eq!(scaled.test.scaler.as_ref(), Some(&scaler));
    assert_eq!(scaled.test.targets, raw.test.targets);

    // Perturbing the test tail leaves the fitted scaler untouched.
    let mut bars = s.bars().to_vec();
    for b in bars.iter_mut().skip(350) {
        b.close *= 1.5;
        b.high *= 1.5;
        b.low *= 1.5;
        b.open *= 1.5;
        b.adj_close *= 1.5;
    }
    let s2 = swarm_lssvm::dataset::OhlcvSeries::new("W", bars).unwrap();
    let scaled2 = prepare_split(&s2, &cfg, 0.7, true, false).unwrap();
    assert_eq!(scaled2.train.scaler, scaled.train.scaler);
    assert_eq!(scaled2.train.features, scaled.train.features);

    let n = scaled.train.len() as f64;
    for j in 0..6 {
        let mean: f64 = scaled.train.features.iter().map(|r| r[j]).sum::<f64>() / n;
        let var: f64 = scaled.train.features.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
        assert!(mean.abs() < 1e-9 && (var - 1.0).abs() < 1e-9, "column {j}");
    }
    assert!(apply_scaler(&scaler, &scaled.train).is_err());
    for (a, b) in raw.train.features.iter().zip(&scaled.train.features) {
        let back = scaler.inverse_row(b);
        assert!(back.iter().zip(a).all(|(x, y)| (x - y).abs() <= 1e-9 * y.abs().max(1.0)));
    }
}

#[test]
fn adjusted_series_follows_adj_close() {
    let s = random_walk_ohlcv("W", 60, 8);
    let adj = s.adjusted();
    for (a, b) in adj.bars().iter().zip(s.bars()) {
        assert_eq!(a.close, b.adj_close);
        assert!((a.high / b.high - 0.98).abs() < 1e-12);
        assert_eq!(a.volume, b.volume);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>(), n in 1usize..200) {
        let s = random_walk_ohlcv("W", n, seed);
        let text = render_ohlcv_csv(&s);
        let back = parse_ohlcv_csv("W", &text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(render_ohlcv_csv(&back), text);
    }
}
