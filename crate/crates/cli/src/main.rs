use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fnnrhn::activations::{sigma_interval, ActivationKind};
use fnnrhn::bench::{
    compare_baseline, cross_validate_grid, default_r_grid, export_fit_curve, export_results, fmt_sig6, model_rmse,
    run_trials, BenchOptions, CsvTable, GridSpec, RmseUnits, TrialStats,
};
use fnnrhn::data::{
    grid_dataset, load_csv, load_features_csv, make_synthetic, split, Dataset, TargetColumn, TargetFunction,
};
use fnnrhn::error::{Error, Result};
use fnnrhn::model::{train, OutputRange, TrainOptions, TrainedModel};
use fnnrhn::param_gen::{BiasStrategy, GenConfig, NodeSource};

/// Feedforward networks with random hidden nodes whose weights and biases are
/// placed according to the data range and the activation function.
#[derive(Parser, Debug)]
#[command(name = "fnnrhn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit a model and write it to a file
    Train(TrainArgs),
    /// Predict with a saved model
    Predict(PredictArgs),
    /// Repeated independent fits with summary statistics
    Bench(BenchArgs),
    /// Cross-validated grid search over (r, s), then trials at the optimum
    Sweep(SweepArgs),
    /// Reproduce one of the built-in scenarios
    Demo(DemoArgs),
    /// Show the slope-sum interval and generated hidden nodes
    GenInspect(InspectArgs),
}

#[derive(Args, Debug)]
struct DataArgs {
    /// Numeric CSV file with one target column
    #[arg(long, conflicts_with = "tf")]
    data: Option<PathBuf>,
    /// Target column: header name, 0-based index, or `last`
    #[arg(long, default_value = "last")]
    target_column: TargetColumn,
    /// The CSV file has no header row
    #[arg(long)]
    no_header: bool,
    /// Synthetic target function instead of a file: osc1d, osc2d or peaks
    #[arg(long)]
    tf: Option<TargetFunction>,
    /// Training samples drawn from --tf
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Half-width of the uniform noise added to --tf training targets
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Seed for synthetic data and train/test splits
    #[arg(long, default_value_t = 1)]
    data_seed: u64,
    /// Fraction of --data rows used for training
    #[arg(long, default_value_t = 0.75)]
    train_fraction: f64,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// sigmoid, gaussian, softplus, sine or cosine
    #[arg(long, default_value = "sigmoid")]
    activation: ActivationKind,
    /// Flatness parameter
    #[arg(long, default_value_t = 0.1)]
    r: f64,
    /// Steepness multiplier (> 1)
    #[arg(long, default_value_t = 3.0)]
    s: f64,
    /// Hidden nodes
    #[arg(long, default_value_t = 100)]
    nodes: usize,
    /// Bias anchor: uniform, data or cluster
    #[arg(long, default_value = "uniform")]
    strategy: BiasStrategy,
    /// Seed for hidden-node generation (trial t uses seed + t)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    fit: FitArgs,
}

#[derive(Args, Debug)]
struct FitArgs {
    /// Output normalization range
    #[arg(long, value_enum, default_value_t = RangeArg::Unit)]
    output_range: RangeArg,
    /// Ridge penalty; 0 solves by pseudoinverse
    #[arg(long, default_value_t = 0.0)]
    ridge: f64,
    /// Relative singular-value cutoff of the pseudoinverse
    #[arg(long, default_value_t = 1e-10)]
    svd_tol: f64,
    /// Report RMSE in raw target units instead of normalized units
    #[arg(long)]
    raw_rmse: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RangeArg {
    /// [0, 1]
    Unit,
    /// [-1, 1]
    Sym,
}

impl FitArgs {
    fn options(&self) -> Result<BenchOptions> {
        if !(self.ridge >= 0.0 && self.ridge.is_finite()) {
            return Err(Error::Config(format!(
                "--ridge must be finite and >= 0, got {}",
                self.ridge
            )));
        }
        if !(self.svd_tol >= 0.0 && self.svd_tol < 1.0) {
            return Err(Error::Config(format!(
                "--svd-tol must lie in [0, 1), got {}",
                self.svd_tol
            )));
        }
        let range = match self.output_range {
            RangeArg::Unit => OutputRange::Unit,
            RangeArg::Sym => OutputRange::Symmetric,
        };
        Ok(BenchOptions {
            train: TrainOptions {
                output_range: range,
                rel_tol: self.svd_tol,
                ridge: self.ridge,
            },
            units: if self.raw_rmse {
                RmseUnits::Raw
            } else {
                RmseUnits::Normalized
            },
        })
    }
}

impl ModelArgs {
    fn config(&self) -> GenConfig {
        GenConfig::new(self.activation, self.r, self.s, self.nodes)
            .with_strategy(self.strategy)
            .with_seed(self.seed)
    }
}

#[derive(Args, Debug)]
struct TrainArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Where to write the model
    #[arg(long, default_value = "model.json")]
    model_out: PathBuf,
}

#[derive(Args, Debug)]
struct PredictArgs {
    /// Model file written by `train`
    #[arg(long)]
    model: PathBuf,
    /// CSV of inputs; with --target-column the named column is scored instead
    #[arg(long)]
    data: PathBuf,
    /// Column holding known targets (prints RMSE)
    #[arg(long)]
    target_column: Option<TargetColumn>,
    /// The CSV file has no header row
    #[arg(long)]
    no_header: bool,
    /// Prediction CSV
    #[arg(long, default_value = "predictions.csv")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Independent trials
    #[arg(long, default_value_t = 25)]
    trials: usize,
    /// Directory for result files
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    /// sigmoid, gaussian, softplus, sine or cosine
    #[arg(long, default_value = "sigmoid")]
    activation: ActivationKind,
    /// Comma-separated r values; `auto` takes 10 interior points of the valid interval
    #[arg(long, default_value = "auto")]
    r_grid: String,
    /// Comma-separated s values
    #[arg(long, default_value = "1.2,1.7,2.4,3.4,5,10,20,40,100,200")]
    s_grid: String,
    /// Cross-validation folds
    #[arg(long, default_value_t = 10)]
    folds: usize,
    /// Hidden nodes
    #[arg(long, default_value_t = 100)]
    nodes: usize,
    /// Bias anchor: uniform, data or cluster
    #[arg(long, default_value = "uniform")]
    strategy: BiasStrategy,
    /// Trials at the selected (r, s)
    #[arg(long, default_value_t = 25)]
    trials: usize,
    /// Seed for folds and hidden nodes
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    fit: FitArgs,
    /// Directory for result files
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DemoName {
    /// 1-D oscillating function, sigmoid r=0.1 s=3, 100 nodes
    Osc1d,
    /// 2-D oscillating function, sigmoid r=0.1 s=5, 500 nodes
    Osc2d,
    /// Two-spike function with all four activations at their tuned (r, s)
    Peaks,
    /// Proposed nodes against fixed [-1, 1] weights and biases on osc1d
    BaselineContrast,
}

#[derive(Args, Debug)]
struct DemoArgs {
    #[arg(value_enum)]
    name: DemoName,
    /// Seed for hidden nodes (data use seed + 1000)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials for baseline-contrast
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Directory for result files
    #[arg(long, default_value = "demo-out")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct InspectArgs {
    /// sigmoid, gaussian, softplus, sine or cosine
    #[arg(long, default_value = "sigmoid")]
    activation: ActivationKind,
    #[arg(long, default_value_t = 0.1)]
    r: f64,
    #[arg(long, default_value_t = 3.0)]
    s: f64,
    /// Hidden nodes
    #[arg(long, default_value_t = 10)]
    nodes: usize,
    /// Bias anchor: uniform, data or cluster (data and cluster need --data or --tf)
    #[arg(long, default_value = "uniform")]
    strategy: BiasStrategy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Input dimension when no data is given
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Numeric CSV file with one target column
    #[arg(long, conflicts_with = "tf")]
    data: Option<PathBuf>,
    /// Target column: header name, 0-based index, or `last`
    #[arg(long, default_value = "last")]
    target_column: TargetColumn,
    /// The CSV file has no header row
    #[arg(long)]
    no_header: bool,
    /// Synthetic target function: osc1d, osc2d or peaks
    #[arg(long)]
    tf: Option<TargetFunction>,
    /// Samples drawn from --tf
    #[arg(long, default_value_t = 1000)]
    samples: usize,
}

/// Training data plus an optional held-out set.
struct Loaded {
    train: Dataset,
    test: Option<Dataset>,
}

/// Synthetic test sets: the 300-point grid for peaks, otherwise a noise-free
/// sample of the training size.
fn synthetic_test(tf: TargetFunction, samples: usize, seed: u64) -> Result<Dataset> {
    match tf {
        TargetFunction::Peaks1D => grid_dataset(tf, 300),
        _ => make_synthetic(tf, samples, 0.0, seed.wrapping_add(1)),
    }
}

fn load_data(args: &DataArgs, split_file: bool) -> Result<Loaded> {
    match (&args.data, args.tf) {
        (Some(path), _) => {
            let ds = load_csv(path, &args.target_column, !args.no_header)?;
            if split_file {
                let (train, test) = split(&ds, args.train_fraction, args.data_seed)?;
                Ok(Loaded {
                    train,
                    test: Some(test),
                })
            } else {
                Ok(Loaded { train: ds, test: None })
            }
        }
        (None, Some(tf)) => Ok(Loaded {
            train: make_synthetic(tf, args.samples, args.noise, args.data_seed)?,
            test: Some(synthetic_test(tf, args.samples, args.data_seed)?),
        }),
        (None, None) => Err(Error::Config("one of --data or --tf is required".into())),
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn parse_grid(text: &str, flag: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{flag}: '{t}' is not a number")))
        })
        .collect()
}

fn stats_line(label: &str, s: &TrialStats) -> String {
    format!(
        "{label}: train_rmse {} +- {}, test_rmse {} +- {} over {} trials",
        fmt_sig6(s.mean_train_rmse),
        fmt_sig6(s.std_train_rmse),
        fmt_sig6(s.mean_test_rmse),
        fmt_sig6(s.std_test_rmse),
        s.trials
    )
}

fn cmd_train(args: &TrainArgs) -> Result<()> {
    let opts = args.model.fit.options()?;
    let cfg = args.model.config();
    cfg.validate()?;
    let data = load_data(&args.data, false)?;
    let model = train(&data.train.x, &data.train.y, &cfg.into(), &opts.train)?;
    model.save(&args.model_out)?;
    println!("model: {}", args.model_out.display());
    println!("rank: {} of {}", model.rank, model.beta.len());
    println!("train_rmse: {}", fmt_sig6(model_rmse(&model, &data.train, opts.units)?));
    if let Some(test) = &data.test {
        println!("test_rmse: {}", fmt_sig6(model_rmse(&model, test, opts.units)?));
    }
    Ok(())
}

fn cmd_predict(args: &PredictArgs) -> Result<()> {
    let model = TrainedModel::load(&args.model)?;
    let (x, names, target) = match &args.target_column {
        Some(col) => {
            let ds = load_csv(&args.data, col, !args.no_header)?;
            (ds.x, ds.names, Some(ds.y))
        }
        None => {
            let (x, names) = load_features_csv(&args.data, !args.no_header)?;
            (x, names, None)
        }
    };
    let pred = model.predict(&x)?;
    let mut out = names.join(",");
    out.push_str(",prediction\n");
    for l in 0..x.nrows() {
        for k in 0..x.ncols() {
            let _ = write!(out, "{},", fmt_sig6(x[(l, k)]));
        }
        let _ = writeln!(out, "{}", fmt_sig6(pred[l]));
    }
    write_file(&args.out, &out)?;
    println!("predictions: {} ({} rows)", args.out.display(), x.nrows());
    if let Some(y) = target {
        let sse: f64 = pred.iter().zip(y.iter()).map(|(p, t)| (p - t).powi(2)).sum();
        println!("rmse (raw units): {}", fmt_sig6((sse / y.len() as f64).sqrt()));
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let opts = args.model.fit.options()?;
    let cfg = args.model.config();
    cfg.validate()?;
    let data = load_data(&args.data, true)?;
    let test = data.test.expect("bench data always has a test set");
    let stats = run_trials(&data.train, &test, &cfg.into(), &opts, args.trials, args.model.seed)?;
    create_dir(&args.out_dir)?;
    let path = args.out_dir.join("trials.csv");
    export_results(&stats, &path)?;
    println!(
        "{}",
        stats_line(&format!("{} r={} s={}", cfg.kind, cfg.r, cfg.s), &stats)
    );
    println!("results: {}", path.display());
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let opts = args.fit.options()?;
    let r_grid = if args.r_grid == "auto" {
        default_r_grid(args.activation)
    } else {
        parse_grid(&args.r_grid, "--r-grid")?
    };
    let s_grid = parse_grid(&args.s_grid, "--s-grid")?;
    let spec = GridSpec {
        kind: args.activation,
        r_grid,
        s_grid,
        folds: args.folds,
        m: args.nodes,
        strategy: args.strategy,
        seed: args.seed,
    };
    let data = load_data(&args.data, true)?;
    let test = data.test.expect("sweep data always has a test set");
    let grid = cross_validate_grid(&data.train, &spec, &opts)?;
    let cfg = GenConfig::new(args.activation, grid.best_r, grid.best_s, args.nodes).with_strategy(args.strategy);
    let stats = run_trials(&data.train, &test, &cfg.into(), &opts, args.trials, args.seed)?;
    create_dir(&args.out_dir)?;
    export_results(&grid, args.out_dir.join("grid.csv"))?;
    export_results(&stats, args.out_dir.join("trials.csv"))?;
    println!(
        "best: r={} s={} (cv_rmse {} over {} folds)",
        fmt_sig6(grid.best_r),
        fmt_sig6(grid.best_s),
        fmt_sig6(grid.cv_rmse_table.min()),
        grid.folds
    );
    println!("{}", stats_line("at best", &stats));
    println!("results: {}", args.out_dir.display());
    Ok(())
}

/// A built-in fit: training set, test set and one generator setting.
struct Scenario {
    tf: TargetFunction,
    samples: usize,
    noise: f64,
    range: OutputRange,
    kind: ActivationKind,
    r: f64,
    s: f64,
    m: usize,
    curve_samples: usize,
}

const OSC1D: Scenario = Scenario {
    tf: TargetFunction::Osc1D,
    samples: 5000,
    noise: 0.2,
    range: OutputRange::Symmetric,
    kind: ActivationKind::Sigmoid,
    r: 0.1,
    s: 3.0,
    m: 100,
    curve_samples: 300,
};

const OSC2D: Scenario = Scenario {
    tf: TargetFunction::Osc2D,
    samples: 5000,
    noise: 0.2,
    range: OutputRange::Symmetric,
    kind: ActivationKind::Sigmoid,
    r: 0.1,
    s: 5.0,
    m: 500,
    curve_samples: 50,
};

const fn peaks(kind: ActivationKind, r: f64, s: f64) -> Scenario {
    Scenario {
        tf: TargetFunction::Peaks1D,
        samples: 1000,
        noise: 0.0,
        range: OutputRange::Unit,
        kind,
        r,
        s,
        m: 100,
        curve_samples: 300,
    }
}

const PEAKS: [Scenario; 4] = [
    peaks(ActivationKind::Sigmoid, 0.04, 40.0),
    peaks(ActivationKind::Gaussian, 0.54, 100.0),
    peaks(ActivationKind::Cosine, 0.08, 190.0),
    peaks(ActivationKind::Softplus, 0.32, 120.0),
];

const DATA_SEED_OFFSET: u64 = 1000;

fn scenario_data(sc: &Scenario, seed: u64) -> Result<(Dataset, Dataset)> {
    let data_seed = seed.wrapping_add(DATA_SEED_OFFSET);
    Ok((
        make_synthetic(sc.tf, sc.samples, sc.noise, data_seed)?,
        synthetic_test(sc.tf, sc.samples, data_seed)?,
    ))
}

/// Fits one scenario, writes its curve file and returns a summary row.
fn run_scenario(sc: &Scenario, seed: u64, dir: &Path, curve_name: &str) -> Result<String> {
    let (train_ds, test_ds) = scenario_data(sc, seed)?;
    let opts = TrainOptions::default().with_output_range(sc.range);
    let cfg = GenConfig::new(sc.kind, sc.r, sc.s, sc.m).with_seed(seed);
    let model = train(&train_ds.x, &train_ds.y, &cfg.into(), &opts)?;
    export_fit_curve(&model, Some(sc.tf), sc.curve_samples, dir.join(curve_name))?;
    let tr = model_rmse(&model, &train_ds, RmseUnits::Normalized)?;
    let te = model_rmse(&model, &test_ds, RmseUnits::Normalized)?;
    println!(
        "{} {} r={} s={} m={}: train_rmse {}, test_rmse {} -> {}",
        sc.tf,
        sc.kind,
        sc.r,
        sc.s,
        sc.m,
        fmt_sig6(tr),
        fmt_sig6(te),
        curve_name
    );
    Ok(format!(
        "{},{},{},{},{},{},{},{}",
        sc.tf,
        sc.kind,
        fmt_sig6(sc.r),
        fmt_sig6(sc.s),
        sc.m,
        seed,
        fmt_sig6(tr),
        fmt_sig6(te)
    ))
}

const SUMMARY_HEADER: &str = "tf,activation,r,s,nodes,seed,train_rmse,test_rmse\n";

fn cmd_demo(args: &DemoArgs) -> Result<()> {
    create_dir(&args.out_dir)?;
    let dir = args.out_dir.as_path();
    let mut summary = String::from(SUMMARY_HEADER);
    match args.name {
        DemoName::Osc1d => {
            summary += &run_scenario(&OSC1D, args.seed, dir, "osc1d_curve.csv")?;
            summary.push('\n');
        }
        DemoName::Osc2d => {
            summary += &run_scenario(&OSC2D, args.seed, dir, "osc2d_surface.csv")?;
            summary.push('\n');
        }
        DemoName::Peaks => {
            for sc in &PEAKS {
                summary += &run_scenario(sc, args.seed, dir, &format!("peaks_{}.csv", sc.kind))?;
                summary.push('\n');
            }
        }
        DemoName::BaselineContrast => {
            let (train_ds, test_ds) = scenario_data(&OSC1D, args.seed)?;
            let opts = BenchOptions {
                train: TrainOptions::default().with_output_range(OSC1D.range),
                units: RmseUnits::Normalized,
            };
            let cfg = GenConfig::new(OSC1D.kind, OSC1D.r, OSC1D.s, OSC1D.m);
            let (proposed, baseline) = compare_baseline(
                &train_ds,
                &test_ds,
                &cfg,
                (-1.0, 1.0),
                (-1.0, 1.0),
                &opts,
                args.trials,
                args.seed,
            )?;
            let mut csv = String::from("arm,");
            for (i, (arm, stats)) in [("proposed", &proposed), ("baseline", &baseline)]
                .into_iter()
                .enumerate()
            {
                let table = stats.to_csv();
                let mut lines = table.lines();
                let header = lines.next().unwrap_or_default();
                if i == 0 {
                    csv.push_str(header);
                    csv.push('\n');
                }
                for line in lines {
                    let _ = writeln!(csv, "{arm},{line}");
                }
            }
            let path = dir.join("baseline_contrast.csv");
            write_file(&path, &csv)?;
            println!("{}", stats_line("proposed sigmoid r=0.1 s=3", &proposed));
            println!("{}", stats_line("baseline a,b in [-1, 1]", &baseline));
            println!(
                "test RMSE ratio baseline/proposed: {}",
                fmt_sig6(baseline.mean_test_rmse / proposed.mean_test_rmse)
            );
            println!("results: {}", path.display());
            return Ok(());
        }
    }
    let path = dir.join("summary.csv");
    write_file(&path, &summary)?;
    println!("summary: {}", path.display());
    Ok(())
}

fn cmd_gen_inspect(args: &InspectArgs) -> Result<()> {
    let interval = sigma_interval(args.activation, args.r, args.s)?;
    let inputs = match (&args.data, args.tf) {
        (Some(path), _) => Some(load_csv(path, &args.target_column, !args.no_header)?.x),
        (None, Some(tf)) => Some(make_synthetic(tf, args.samples, 0.0, 1)?.x),
        (None, None) => None,
    };
    // the generator works in the unit box, so file data is min-max scaled first
    let (n, unit) = match &inputs {
        Some(x) => {
            let mut u = x.clone();
            for mut col in u.column_iter_mut() {
                let (lo, hi) = (col.min(), col.max());
                col.apply(|v| *v = if hi > lo { (*v - lo) / (hi - lo) } else { 0.5 });
            }
            (x.ncols(), Some(u))
        }
        None => (args.dim, None),
    };
    let cfg = GenConfig::new(args.activation, args.r, args.s, args.nodes)
        .with_strategy(args.strategy)
        .with_seed(args.seed);
    let source = NodeSource::Proposed(cfg);
    let params = source.generate(n, unit.as_ref())?;

    println!(
        "{} r={} s={}: |sigma| in [{}, {}]",
        args.activation,
        args.r,
        args.s,
        fmt_sig6(interval.lo),
        fmt_sig6(interval.hi)
    );
    let mut header = vec!["node".to_string(), "sigma".into(), "bias".into()];
    header.extend((1..=n).map(|k| format!("a{k}")));
    header.extend((1..=n).map(|k| format!("anchor{k}")));
    println!("{}", header.join(","));
    let anchors = params.anchors.as_ref().expect("proposed nodes carry anchors");
    for i in 0..params.nodes() {
        let mut row = vec![i.to_string(), fmt_sig6(params.sigma[i]), fmt_sig6(params.bias[i])];
        row.extend(params.node_weights(i).iter().map(|&v| fmt_sig6(v)));
        row.extend(anchors.row(i).iter().map(|&v| fmt_sig6(v)));
        println!("{}", row.join(","));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Train(a) => cmd_train(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Demo(a) => cmd_demo(a),
        Command::GenInspect(a) => cmd_gen_inspect(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
