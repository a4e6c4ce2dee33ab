//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{build_supervised, feature_rows, indicators_csv, parse_ohlcv_csv, OhlcvSeries};
use crate::error::{Error, Result};
use crate::eval::{compare_split, emit_convergence, mse, prepare_split, CompareConfig, METHOD_ABC, METHOD_PSO};
use crate::indicators::IndicatorConfig;
use crate::lssvm::{parse_model, serialize_model, train, KernelSpec, ModelFile};
use crate::reference::reference_row;
use crate::swarm::{abc_minimize, benchmark_objectives, pso_minimize, AbcConfig, Bounds, PsoConfig};
use crate::tuner::{tune, Optimizer, SearchSpace};

/// Environment variable naming the directory relative `--input` paths are
/// resolved against when they do not exist as given.
pub const DATA_DIR_ENV: &str = "SWARM_LSSVM_DATA_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "swarm-lssvm",
    version,
    about = "LSSVM price regression tuned by artificial bee colony or particle swarm"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// OHLCV CSV (Date,Open,High,Low,Close[,Adj Close],Volume)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OptimizerArg::Abc)]
    optimizer: OptimizerArg,
    /// Food sources (ABC) or particles (PSO)
    #[arg(long, visible_alias = "particles", global = true, default_value_t = 20)]
    bees: usize,
    /// ABC cycles or PSO iterations
    #[arg(long, global = true, default_value_t = 50)]
    cycles: usize,
    #[arg(long, global = true, value_enum, default_value_t = KernelArg::Rbf)]
    kernel: KernelArg,
    #[arg(long, global = true, default_value_t = 0.7)]
    train_ratio: f64,
    /// Share of the training split used as the tuning holdout
    #[arg(long, global = true, default_value_t = crate::tuner::DEFAULT_HOLDOUT)]
    holdout: f64,
    /// Draw the ABC step factor from [0, 1] instead of [-1, 1]
    #[arg(long, global = true)]
    paper_compat: bool,
    /// Skip feature standardization
    #[arg(long, global = true)]
    no_scale: bool,
    /// Derive all prices from the adjusted close
    #[arg(long, global = true)]
    use_adj_close: bool,
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Convergence CSV file (`tune`) or directory (`compare`)
    #[arg(long, global = true)]
    convergence: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OptimizerArg {
    Abc,
    Pso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelArg {
    Rbf,
    Linear,
    Poly,
    Mlp,
}

impl KernelArg {
    fn name(self) -> &'static str {
        match self {
            KernelArg::Rbf => "rbf",
            KernelArg::Linear => "linear",
            KernelArg::Poly => "poly",
            KernelArg::Mlp => "mlp",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Indicator CSV for every bar
    Indicators,
    /// Six-input supervised dataset CSV (unscaled)
    Dataset,
    /// Train one LSSVM with fixed parameters on the training split
    Train(TrainArgs),
    /// Predict next closes with a saved model
    Predict {
        #[arg(long)]
        model: PathBuf,
    },
    /// Tune (C, kernel parameter) with ABC or PSO
    Tune,
    /// LSSVM-ABC vs LSSVM-PSO vs untuned LSSVM on one series
    Compare {
        /// Include wall-clock times in JSON output
        #[arg(long)]
        timings: bool,
    },
    /// Run both optimizers on sphere, rosenbrock and rastrigin
    Benchmark {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 30)]
        runs: u64,
    },
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma2: f64,
    #[arg(long, default_value_t = 2)]
    degree: u32,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, default_value_t = 1.0)]
    slope: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    offset: f64,
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit status: 0 success, 1 input error, 2 numerical error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let c = &cli.common;
    match &cli.command {
        Command::Indicators => {
            let series = load_series(c)?;
            let series = if c.use_adj_close { series.adjusted() } else { series };
            emit(c, stdout, &indicators_csv(&series, &IndicatorConfig::default())?)
        }
        Command::Dataset => {
            let series = load_series(c)?;
            let series = if c.use_adj_close { series.adjusted() } else { series };
            emit(c, stdout, &build_supervised(&series, &IndicatorConfig::default())?.to_csv())
        }
        Command::Train(args) => cmd_train(c, args, stdout),
        Command::Predict { model } => cmd_predict(c, model, stdout, stderr),
        Command::Tune => cmd_tune(c, stdout),
        Command::Compare { timings } => cmd_compare(c, *timings, stdout),
        Command::Benchmark { dim, runs } => cmd_benchmark(c, *dim, *runs, stdout),
    }
}

fn resolve_input(c: &Common) -> Result<PathBuf> {
    let path = c
        .input
        .clone()
        .ok_or_else(|| Error::input("--input <csv> is required"))?;
    if path.is_relative() && !path.exists() {
        if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
            let candidate = Path::new(&dir).join(&path);
            if candidate.exists() {
                return Ok(candidate);
            }
        }
    }
    Ok(path)
}

fn load_series(c: &Common) -> Result<OhlcvSeries> {
    let path = resolve_input(c)?;
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let symbol = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_ohlcv_csv(&symbol, &text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes to `--out` when given, stdout otherwise.
fn emit(c: &Common, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match &c.out {
        Some(path) => write_file(path, text),
        None => write_stdout(stdout, text),
    }
}

fn write_stdout(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn abc_config(c: &Common) -> AbcConfig {
    let cfg = AbcConfig {
        colony_sn: c.bees,
        max_cycles: c.cycles,
        seed: c.seed,
        ..Default::default()
    };
    if c.paper_compat {
        cfg.paper_compat()
    } else {
        cfg
    }
}

fn pso_config(c: &Common) -> PsoConfig {
    PsoConfig {
        particles: c.bees,
        max_iters: c.cycles,
        seed: c.seed,
        ..Default::default()
    }
}

fn compare_config(c: &Common) -> Result<CompareConfig> {
    Ok(CompareConfig {
        train_ratio: c.train_ratio,
        scale: !c.no_scale,
        use_adj_close: c.use_adj_close,
        space: SearchSpace::for_kernel(c.kernel.name())?,
        holdout_fraction: c.holdout,
        abc: abc_config(c),
        pso: pso_config(c),
        ..Default::default()
    })
}

fn cmd_train(c: &Common, args: &TrainArgs, stdout: &mut dyn Write) -> Result<()> {
    let series = load_series(c)?;
    let cfg = compare_config(c)?;
    let split = prepare_split(&series, &cfg.indicators, cfg.train_ratio, cfg.scale, cfg.use_adj_close)?;
    let kernel = match c.kernel {
        KernelArg::Rbf => KernelSpec::rbf(args.sigma2),
        KernelArg::Linear => KernelSpec::Linear,
        KernelArg::Poly => KernelSpec::Polynomial { degree: args.degree, scale: args.scale },
        KernelArg::Mlp => KernelSpec::Mlp { slope: args.slope, offset: args.offset },
    };
    let model = train(&split.train.training_set()?, kernel, args.c)?;
    let train_mse = mse(&split.train.targets, &model.predict_many(&split.train.features)?)?;
    let test_mse = mse(&split.test.targets, &model.predict_many(&split.test.features)?)?;
    let file = ModelFile::new(model)
        .with_feature_names(split.train.feature_names.clone())
        .with_scaler(split.train.scaler.clone());
    let text = serialize_model(&file);
    let Some(out) = &c.out else {
        return write_stdout(stdout, &text);
    };
    write_file(out, &text)?;
    let report = if c.json {
        serde_json::to_string_pretty(&serde_json::json!({
            "symbol": series.symbol(),
            "model": out.display().to_string(),
            "train_mse": train_mse,
            "test_mse": test_mse,
        }))
        .expect("serializable")
            + "\n"
    } else {
        format!(
            "{}: trained {} with C={} on {} rows\ntrain MSE {:.6}\ntest MSE  {:.6} ({} rows)\n",
            series.symbol(),
            kernel,
            args.c,
            train_mse.n,
            train_mse.mse,
            test_mse.mse,
            test_mse.n
        )
    };
    write_stdout(stdout, &report)
}

fn cmd_predict(c: &Common, model_path: &Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let text = std::fs::read_to_string(model_path).map_err(|e| Error::io(model_path, e))?;
    let file = parse_model(&text)?;
    let series = load_series(c)?;
    let series = if c.use_adj_close { series.adjusted() } else { series };
    let (dates, rows) = feature_rows(&series, &IndicatorConfig::default())?;
    let p = file.model.n_features();
    if rows.first().map_or(0, Vec::len) != p {
        return Err(Error::input(format!(
            "model expects {p} features but the input produces {}",
            rows.first().map_or(0, Vec::len)
        )));
    }
    let closes = series.closes();
    let offset = series.len() - rows.len();
    let mut out = String::from("date,predicted_next_close,actual_next_close\n");
    let (mut targets, mut preds) = (Vec::new(), Vec::new());
    for (i, (d, row)) in dates.iter().zip(&rows).enumerate() {
        let x = match &file.scaler {
            Some(s) => s.transform_row(row),
            None => row.clone(),
        };
        let pred = file.model.predict(&x)?;
        let actual = closes.get(offset + i + 1).copied();
        if let Some(a) = actual {
            targets.push(a);
            preds.push(pred);
        }
        out.push_str(&format!(
            "{},{},{}\n",
            d.format("%Y-%m-%d"),
            pred,
            actual.map(|a| a.to_string()).unwrap_or_default()
        ));
    }
    emit(c, stdout, &out)?;
    if !targets.is_empty() {
        let m = mse(&targets, &preds)?;
        let _ = writeln!(stderr, "MSE {:.6} over {} rows", m.mse, m.n);
    }
    Ok(())
}

fn cmd_tune(c: &Common, stdout: &mut dyn Write) -> Result<()> {
    let series = load_series(c)?;
    let cfg = compare_config(c)?;
    let split = prepare_split(&series, &cfg.indicators, cfg.train_ratio, cfg.scale, cfg.use_adj_close)?;
    let optimizer = match c.optimizer {
        OptimizerArg::Abc => Optimizer::Abc(cfg.abc.clone()),
        OptimizerArg::Pso => Optimizer::Pso(cfg.pso.clone()),
    };
    let result = tune(&split.train, &cfg.space, &optimizer, cfg.holdout_fraction)?;
    let test = mse(&split.test.targets, &result.final_model.predict_many(&split.test.features)?)?;

    if let Some(path) = &c.convergence {
        emit_convergence(&result, path)?;
    }
    if let Some(path) = &c.out {
        let file = ModelFile::new(result.final_model.clone())
            .with_feature_names(split.train.feature_names.clone())
            .with_scaler(split.train.scaler.clone());
        write_file(path, &serialize_model(&file))?;
    }

    let text = if c.json {
        let mut v = result.to_json_value();
        v["symbol"] = series.symbol().into();
        v["test_mse"] = test.mse.into();
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    } else {
        format!(
            "{} tuned with {}: C={:.6e} kernel={}\nvalidation MSE {:.6}\ntest MSE       {:.6} ({} rows)\nevaluations    {}\n",
            series.symbol(),
            result.optimizer,
            result.best_c,
            result.best_kernel,
            result.best_validation_mse,
            test.mse,
            test.n,
            result.evaluations
        )
    };
    write_stdout(stdout, &text)
}

fn cmd_compare(c: &Common, timings: bool, stdout: &mut dyn Write) -> Result<()> {
    let series = load_series(c)?;
    let cfg = compare_config(c)?;
    let split = prepare_split(&series, &cfg.indicators, cfg.train_ratio, cfg.scale, cfg.use_adj_close)?;
    let report = compare_split(series.symbol(), &split, &cfg)?;

    if let Some(dir) = &c.convergence {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (method, file) in [(METHOD_ABC, "abc_convergence.csv"), (METHOD_PSO, "pso_convergence.csv")] {
            if let Some(t) = report.row(method).and_then(|r| r.tune.as_ref()) {
                emit_convergence(t, &dir.join(file))?;
            }
        }
    }

    let mut text = if c.json {
        report.to_json(timings) + "\n"
    } else {
        report.to_table()
    };
    if !c.json {
        if let Some(r) = reference_row(series.symbol()) {
            text.push_str(&format!(
                "published reference ({}): LSSVM-ABC {} / LSSVM-PSO {} / LSSVM {}\n",
                r.company, r.lssvm_abc, r.lssvm_pso, r.lssvm
            ));
        }
    }
    match &c.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(())
        }
        None => write_stdout(stdout, &text),
    }
}

fn cmd_benchmark(c: &Common, dim: usize, runs: u64, stdout: &mut dyn Write) -> Result<()> {
    if dim == 0 || runs == 0 {
        return Err(Error::input("--dim and --runs must be positive"));
    }
    let mut summaries = Vec::new();
    for b in benchmark_objectives() {
        let bounds = Bounds::uniform(dim, b.lower, b.upper)?;
        for optimizer in ["abc", "pso"] {
            let mut finals = Vec::with_capacity(runs as usize);
            for r in 0..runs {
                let seed = c.seed.wrapping_add(r);
                let res = if optimizer == "abc" {
                    abc_minimize(b.objective, &bounds, &AbcConfig { seed, ..abc_config(c) })?
                } else {
                    pso_minimize(b.objective, &bounds, &PsoConfig { seed, ..pso_config(c) })?
                };
                finals.push(res.best_objective);
            }
            finals.sort_by(f64::total_cmp);
            let median = if finals.len() % 2 == 1 {
                finals[finals.len() / 2]
            } else {
                0.5 * (finals[finals.len() / 2 - 1] + finals[finals.len() / 2])
            };
            let mean = finals.iter().sum::<f64>() / finals.len() as f64;
            summaries.push(serde_json::json!({
                "objective": b.name,
                "optimizer": optimizer,
                "dim": dim,
                "runs": runs,
                "best": finals[0],
                "median": median,
                "mean": mean,
                "worst": finals[finals.len() - 1],
            }));
        }
    }
    let text = if c.json {
        serde_json::to_string_pretty(&summaries).expect("serializable") + "\n"
    } else {
        let mut t = format!(
            "{:<11} {:<4} {:>12} {:>12} {:>12} {:>12}\n",
            "objective", "opt", "best", "median", "mean", "worst"
        );
        for s in &summaries {
            t.push_str(&format!(
                "{:<11} {:<4} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}\n",
                s["objective"].as_str().unwrap_or_default(),
                s["optimizer"].as_str().unwrap_or_default(),
                s["best"].as_f64().unwrap_or(f64::NAN),
                s["median"].as_f64().unwrap_or(f64::NAN),
                s["mean"].as_f64().unwrap_or(f64::NAN),
                s["worst"].as_f64().unwrap_or(f64::NAN),
            ));
        }
        t
    };
    emit(c, stdout, &text)
}
