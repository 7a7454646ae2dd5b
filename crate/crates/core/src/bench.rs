//! Experiment harness: RMSE, repeated trials, k-fold grid search over
//! `(r, s)`, paired comparison against fixed-range nodes, and CSV export.
//!
//! Trials and grid cells are independent given their seeds and run on the
//! rayon pool; results are collected in index order so the output does not
//! depend on scheduling.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::activations::ActivationKind;
use crate::data::{grid_points, Dataset, TargetFunction};
use crate::error::{Error, Result};
use crate::model::{train, train_with_normalizer, Normalizer, TrainOptions, TrainedModel};
use crate::param_gen::{rng_from_seed, BaselineConfig, BiasStrategy, GenConfig, NodeSource};

/// Default `s` ladder for grid searches.
pub const DEFAULT_S_GRID: [f64; 10] = [1.2, 1.7, 2.4, 3.4, 5.0, 10.0, 20.0, 40.0, 100.0, 200.0];
pub const DEFAULT_TRIALS: usize = 25;
pub const DEFAULT_FOLDS: usize = 10;

/// Ten evenly spaced interior points of the activation's `r` interval.
pub fn default_r_grid(kind: ActivationKind) -> Vec<f64> {
    kind.r_domain().interior_points(10)
}

pub fn rmse(pred: &[f64], target: &[f64]) -> Result<f64> {
    if pred.len() != target.len() {
        return Err(Error::Contract(format!(
            "prediction has {} entries, target has {}",
            pred.len(),
            target.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::Contract("RMSE of an empty vector".into()));
    }
    let sse: f64 = pred.iter().zip(target).map(|(p, t)| (p - t).powi(2)).sum();
    Ok((sse / pred.len() as f64).sqrt())
}

/// Units RMSE is reported in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RmseUnits {
    /// Targets and predictions mapped through the model's output normalizer.
    #[default]
    Normalized,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BenchOptions {
    pub train: TrainOptions,
    pub units: RmseUnits,
}

/// RMSE of `model` on `ds`.
pub fn model_rmse(model: &TrainedModel, ds: &Dataset, units: RmseUnits) -> Result<f64> {
    match units {
        RmseUnits::Normalized => {
            let pred = model.predict_normalized(&ds.x)?;
            let target = model.normalizer.normalize_outputs(&ds.y);
            rmse(pred.as_slice(), target.as_slice())
        }
        RmseUnits::Raw => {
            let pred = model.predict(&ds.x)?;
            rmse(pred.as_slice(), ds.y.as_slice())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub seed: u64,
    pub train_rmse: f64,
    pub test_rmse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialStats {
    pub mean_train_rmse: f64,
    pub std_train_rmse: f64,
    pub mean_test_rmse: f64,
    pub std_test_rmse: f64,
    pub trials: usize,
    pub per_trial: Vec<TrialRecord>,
}

/// Mean and sample standard deviation (`n - 1` divisor, 0 for one value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

impl TrialStats {
    pub fn from_records(per_trial: Vec<TrialRecord>) -> Result<Self> {
        if per_trial.is_empty() {
            return Err(Error::Config("no trials to aggregate".into()));
        }
        let train: Vec<f64> = per_trial.iter().map(|t| t.train_rmse).collect();
        let test: Vec<f64> = per_trial.iter().map(|t| t.test_rmse).collect();
        let (mean_train_rmse, std_train_rmse) = mean_std(&train);
        let (mean_test_rmse, std_test_rmse) = mean_std(&test);
        Ok(TrialStats {
            mean_train_rmse,
            std_train_rmse,
            mean_test_rmse,
            std_test_rmse,
            trials: per_trial.len(),
            per_trial,
        })
    }
}

/// Trains on the training set with each of the `seeds`, evaluating on both sets.
pub fn run_seeded_trials(
    train_ds: &Dataset,
    test_ds: &Dataset,
    source: &NodeSource,
    opts: &BenchOptions,
    seeds: &[u64],
) -> Result<TrialStats> {
    if seeds.is_empty() {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if train_ds.dim() != test_ds.dim() {
        return Err(Error::Contract(format!(
            "training data has {} inputs, test data {}",
            train_ds.dim(),
            test_ds.dim()
        )));
    }
    source.validate()?;
    let records = seeds
        .par_iter()
        .map(|&seed| {
            let model = train(&train_ds.x, &train_ds.y, &source.with_seed(seed), &opts.train)?;
            Ok(TrialRecord {
                seed,
                train_rmse: model_rmse(&model, train_ds, opts.units)?,
                test_rmse: model_rmse(&model, test_ds, opts.units)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TrialStats::from_records(records)
}

/// `trials` independent fits; trial `t` uses seed `base_seed + t`.
pub fn run_trials(
    train_ds: &Dataset,
    test_ds: &Dataset,
    source: &NodeSource,
    opts: &BenchOptions,
    trials: usize,
    base_seed: u64,
) -> Result<TrialStats> {
    let seeds: Vec<u64> = (0..trials as u64).map(|t| base_seed.wrapping_add(t)).collect();
    run_seeded_trials(train_ds, test_ds, source, opts, &seeds)
}

/// Runs two generators on identical data with identical per-trial seeds.
pub fn compare_sources(
    train_ds: &Dataset,
    test_ds: &Dataset,
    first: &NodeSource,
    second: &NodeSource,
    opts: &BenchOptions,
    trials: usize,
    base_seed: u64,
) -> Result<(TrialStats, TrialStats)> {
    first.validate()?;
    second.validate()?;
    let a = run_trials(train_ds, test_ds, first, opts, trials, base_seed)?;
    let b = run_trials(train_ds, test_ds, second, opts, trials, base_seed)?;
    Ok((a, b))
}

/// Proposed generator against fixed-range nodes of the same kind and count.
#[allow(clippy::too_many_arguments)]
pub fn compare_baseline(
    train_ds: &Dataset,
    test_ds: &Dataset,
    config: &GenConfig,
    weight_range: (f64, f64),
    bias_range: (f64, f64),
    opts: &BenchOptions,
    trials: usize,
    base_seed: u64,
) -> Result<(TrialStats, TrialStats)> {
    let baseline = NodeSource::Baseline(BaselineConfig {
        kind: config.kind,
        m: config.m,
        weight_range,
        bias_range,
        seed: config.seed,
    });
    compare_sources(
        train_ds,
        test_ds,
        &NodeSource::Proposed(*config),
        &baseline,
        opts,
        trials,
        base_seed,
    )
}

/// Grids, folds and generator settings for a search.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub kind: ActivationKind,
    pub r_grid: Vec<f64>,
    pub s_grid: Vec<f64>,
    pub folds: usize,
    pub m: usize,
    pub strategy: BiasStrategy,
    pub seed: u64,
}

impl GridSpec {
    /// Default grids and fold count for `kind`.
    pub fn new(kind: ActivationKind, m: usize) -> Self {
        GridSpec {
            kind,
            r_grid: default_r_grid(kind),
            s_grid: DEFAULT_S_GRID.to_vec(),
            folds: DEFAULT_FOLDS,
            m,
            strategy: BiasStrategy::UniformPoint,
            seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.r_grid.is_empty() || self.s_grid.is_empty() {
            return Err(Error::Config("r and s grids must be non-empty".into()));
        }
        if self.folds < 2 {
            return Err(Error::Config(format!("need at least 2 folds, got {}", self.folds)));
        }
        for &r in &self.r_grid {
            for &s in &self.s_grid {
                GenConfig::new(self.kind, r, s, self.m).validate()?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSearchResult {
    pub best_r: f64,
    pub best_s: f64,
    pub r_grid: Vec<f64>,
    pub s_grid: Vec<f64>,
    /// Mean validation RMSE; row `i` is `r_grid[i]`, column `j` is `s_grid[j]`.
    pub cv_rmse_table: DMatrix<f64>,
    pub folds: usize,
}

/// Shuffled k-fold partition of `0..n`; fold sizes differ by at most one.
pub fn kfold_indices(n: usize, folds: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if folds < 2 {
        return Err(Error::Config(format!("need at least 2 folds, got {folds}")));
    }
    if n < folds {
        return Err(Error::Config(format!("cannot split {n} samples into {folds} folds")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng_from_seed(seed));
    let mut parts = vec![Vec::with_capacity(n / folds + 1); folds];
    for (i, &row) in idx.iter().enumerate() {
        parts[i % folds].push(row);
    }
    Ok(parts)
}

/// Index `(i, j)` of the smallest entry. Ties go to the smaller `s`, then the
/// smaller `r`; NaN never wins.
pub fn select_best(table: &DMatrix<f64>, r_grid: &[f64], s_grid: &[f64]) -> Result<(usize, usize)> {
    if table.shape() != (r_grid.len(), s_grid.len()) || table.is_empty() {
        return Err(Error::Contract(format!(
            "table is {:?}, grids are {}x{}",
            table.shape(),
            r_grid.len(),
            s_grid.len()
        )));
    }
    let key = |i: usize, j: usize| {
        let v = table[(i, j)];
        (if v.is_nan() { f64::INFINITY } else { v }, s_grid[j], r_grid[i])
    };
    let mut best = (0, 0);
    for i in 0..r_grid.len() {
        for j in 0..s_grid.len() {
            let (v, s, r) = key(i, j);
            let (bv, bs, br) = key(best.0, best.1);
            if v < bv || (v == bv && (s < bs || (s == bs && r < br))) {
                best = (i, j);
            }
        }
    }
    Ok(best)
}

/// k-fold cross-validated search over `(r, s)`.
///
/// The output normalizer is fitted once on the whole of `train_ds` and shared
/// by every fold, and the fold partition is the same for every cell. Fold `f`
/// generates its nodes with seed `spec.seed + f`.
pub fn cross_validate_grid(train_ds: &Dataset, spec: &GridSpec, opts: &BenchOptions) -> Result<GridSearchResult> {
    spec.validate()?;
    let parts = kfold_indices(train_ds.len(), spec.folds, spec.seed)?;
    let normalizer = Normalizer::fit(&train_ds.x, &train_ds.y, opts.train.output_range)?;
    let splits: Vec<(Dataset, Dataset)> = (0..spec.folds)
        .map(|f| {
            let train_idx: Vec<usize> = parts
                .iter()
                .enumerate()
                .filter(|(g, _)| *g != f)
                .flat_map(|(_, p)| p.iter().copied())
                .collect();
            (
                train_ds.subset(&train_idx, format!("fold {f} train")),
                train_ds.subset(&parts[f], format!("fold {f} validation")),
            )
        })
        .collect();

    let (nr, ns) = (spec.r_grid.len(), spec.s_grid.len());
    let jobs: Vec<(usize, usize, usize)> = (0..nr)
        .flat_map(|i| (0..ns).flat_map(move |j| (0..spec.folds).map(move |f| (i, j, f))))
        .collect();
    let scores = jobs
        .par_iter()
        .map(|&(i, j, f)| {
            let config = GenConfig {
                kind: spec.kind,
                r: spec.r_grid[i],
                s: spec.s_grid[j],
                m: spec.m,
                strategy: spec.strategy,
                seed: spec.seed.wrapping_add(f as u64),
            };
            let (fit_ds, val_ds) = &splits[f];
            let model = train_with_normalizer(&fit_ds.x, &fit_ds.y, normalizer.clone(), &config.into(), &opts.train)?;
            model_rmse(&model, val_ds, opts.units)
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut table = DMatrix::zeros(nr, ns);
    for (chunk, cell) in scores.chunks(spec.folds).zip(0..nr * ns) {
        table[(cell / ns, cell % ns)] = chunk.iter().sum::<f64>() / spec.folds as f64;
    }
    let (bi, bj) = select_best(&table, &spec.r_grid, &spec.s_grid)?;
    Ok(GridSearchResult {
        best_r: spec.r_grid[bi],
        best_s: spec.s_grid[bj],
        r_grid: spec.r_grid.clone(),
        s_grid: spec.s_grid.clone(),
        cv_rmse_table: table,
        folds: spec.folds,
    })
}

/// Formats `v` like C's `%.6g`.
pub fn fmt_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Something that can be written as a results CSV.
pub trait CsvTable {
    fn to_csv(&self) -> String;
}

impl CsvTable for TrialStats {
    /// One row per trial followed by a `mean` row carrying the standard
    /// deviations.
    fn to_csv(&self) -> String {
        let mut out = String::from("row,seed,train_rmse,test_rmse,train_std,test_std\n");
        for t in &self.per_trial {
            let _ = writeln!(
                out,
                "trial,{},{},{},,",
                t.seed,
                fmt_sig6(t.train_rmse),
                fmt_sig6(t.test_rmse)
            );
        }
        let _ = writeln!(
            out,
            "mean,,{},{},{},{}",
            fmt_sig6(self.mean_train_rmse),
            fmt_sig6(self.mean_test_rmse),
            fmt_sig6(self.std_train_rmse),
            fmt_sig6(self.std_test_rmse)
        );
        out
    }
}

impl CsvTable for GridSearchResult {
    /// One row per `(r, s)` cell, `best` = 1 on the selected cell.
    fn to_csv(&self) -> String {
        let mut out = String::from("r,s,cv_rmse,best\n");
        for (i, &r) in self.r_grid.iter().enumerate() {
            for (j, &s) in self.s_grid.iter().enumerate() {
                let best = u8::from(r == self.best_r && s == self.best_s);
                let _ = writeln!(
                    out,
                    "{},{},{},{best}",
                    fmt_sig6(r),
                    fmt_sig6(s),
                    fmt_sig6(self.cv_rmse_table[(i, j)])
                );
            }
        }
        out
    }
}

pub fn export_results(table: &impl CsvTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, table.to_csv()).map_err(|e| Error::io(path, e))
}

/// Writes model predictions over a regular grid for plotting.
///
/// With a target function the grid covers its domain `[0, 1]^dim` and a
/// `target` column is included; otherwise the grid spans the model's training
/// box. `samples` counts points per axis.
pub fn export_fit_curve(
    model: &TrainedModel,
    tf: Option<TargetFunction>,
    samples: usize,
    path: impl AsRef<Path>,
) -> Result<()> {
    let dim = model.dim();
    if dim > 2 {
        return Err(Error::Unsupported(format!(
            "fit curves are only exported for 1-D or 2-D models, this one has {dim} inputs"
        )));
    }
    if let Some(tf) = tf {
        if tf.dim() != dim {
            return Err(Error::Contract(format!(
                "{tf} is {}-D but the model has {dim} inputs",
                tf.dim()
            )));
        }
    }
    let unit = grid_points(dim, samples)?;
    let x = match tf {
        Some(_) => unit,
        None => model.normalizer.denormalize_inputs(&unit),
    };
    let pred = model.predict(&x)?;
    let target: Option<DVector<f64>> = tf
        .map(|tf| {
            x.row_iter()
                .map(|row| tf.eval(&row.iter().copied().collect::<Vec<_>>()))
                .collect::<Result<Vec<f64>>>()
                .map(DVector::from_vec)
        })
        .transpose()?;

    let mut out = String::new();
    let cols: Vec<String> = (1..=dim).map(|k| format!("x{k}")).collect();
    out.push_str(&cols.join(","));
    if target.is_some() {
        out.push_str(",target");
    }
    out.push_str(",prediction\n");
    for l in 0..x.nrows() {
        let mut fields: Vec<String> = (0..dim).map(|k| fmt_sig6(x[(l, k)])).collect();
        if let Some(t) = &target {
            fields.push(fmt_sig6(t[l]));
        }
        fields.push(fmt_sig6(pred[l]));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    let path = path.as_ref();
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}
