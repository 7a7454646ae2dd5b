//! Benchmark target functions, sample generation and dataset I/O.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param_gen::rng_from_seed;

/// A regression dataset in raw (unnormalized) units.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// `N × n` inputs.
    pub x: DMatrix<f64>,
    pub y: DVector<f64>,
    pub names: Vec<String>,
    pub provenance: String,
}

impl Dataset {
    pub fn new(x: DMatrix<f64>, y: DVector<f64>, names: Vec<String>, provenance: impl Into<String>) -> Result<Self> {
        if x.nrows() == 0 {
            return Err(Error::Contract("dataset must contain at least one sample".into()));
        }
        if x.nrows() != y.len() {
            return Err(Error::Contract(format!(
                "{} input rows but {} targets",
                x.nrows(),
                y.len()
            )));
        }
        if names.len() != x.ncols() {
            return Err(Error::Contract(format!(
                "{} feature names for {} columns",
                names.len(),
                x.ncols()
            )));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Contract("dataset contains non-finite values".into()));
        }
        Ok(Dataset {
            x,
            y,
            names,
            provenance: provenance.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.x.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.x.nrows() == 0
    }

    pub fn dim(&self) -> usize {
        self.x.ncols()
    }

    /// Rows `indices`, in that order.
    pub fn subset(&self, indices: &[usize], provenance: impl Into<String>) -> Dataset {
        let x = self.x.select_rows(indices);
        let y = self.y.select_rows(indices);
        Dataset {
            x,
            y,
            names: self.names.clone(),
            provenance: provenance.into(),
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x{k}")).collect()
}

/// Synthetic benchmark functions on the unit hypercube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetFunction {
    /// `sin(20·eˣ)·x²`
    Osc1D,
    /// `sin(20·e^x₁)·x₁² + sin(20·e^x₂)·x₂²`
    Osc2D,
    /// `0.2e^{-(10x-4)²} + 0.5e^{-(80x-40)²} + 0.3e^{-(80x-20)²}`
    Peaks1D,
}

impl TargetFunction {
    pub fn name(self) -> &'static str {
        match self {
            TargetFunction::Osc1D => "osc1d",
            TargetFunction::Osc2D => "osc2d",
            TargetFunction::Peaks1D => "peaks",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            TargetFunction::Osc2D => 2,
            _ => 1,
        }
    }

    pub fn eval(self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::Contract(format!(
                "{} takes {} coordinates, got {}",
                self.name(),
                self.dim(),
                x.len()
            )));
        }
        if x.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Contract(format!(
                "{} is defined on [0, 1]^{}, got {x:?}",
                self.name(),
                self.dim()
            )));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(self, x: &[f64]) -> f64 {
        fn osc(t: f64) -> f64 {
            (20.0 * t.exp()).sin() * t * t
        }
        match self {
            TargetFunction::Osc1D => osc(x[0]),
            TargetFunction::Osc2D => osc(x[0]) + osc(x[1]),
            TargetFunction::Peaks1D => {
                let t = x[0];
                0.2 * (-(10.0 * t - 4.0).powi(2)).exp()
                    + 0.5 * (-(80.0 * t - 40.0).powi(2)).exp()
                    + 0.3 * (-(80.0 * t - 20.0).powi(2)).exp()
            }
        }
    }
}

impl fmt::Display for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TargetFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "osc1d" => Ok(TargetFunction::Osc1D),
            "osc2d" => Ok(TargetFunction::Osc2D),
            "peaks" => Ok(TargetFunction::Peaks1D),
            _ => Err(Error::Config(format!(
                "unknown target function '{s}' (expected osc1d, osc2d or peaks)"
            ))),
        }
    }
}

/// `n` samples with inputs i.i.d. uniform on the unit hypercube and targets
/// `g(x) + U(-w, w)`.
pub fn make_synthetic(tf: TargetFunction, n: usize, noise_half_width: f64, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    if !(noise_half_width.is_finite() && noise_half_width >= 0.0) {
        return Err(Error::Config(format!(
            "noise half-width {noise_half_width} must be finite and >= 0"
        )));
    }
    let dim = tf.dim();
    let mut rng = rng_from_seed(seed);
    let mut x = DMatrix::zeros(n, dim);
    let mut y = DVector::zeros(n);
    let mut point = vec![0.0; dim];
    for l in 0..n {
        for (k, p) in point.iter_mut().enumerate() {
            *p = rng.gen_range(0.0..=1.0);
            x[(l, k)] = *p;
        }
        let noise = if noise_half_width > 0.0 {
            rng.gen_range(-noise_half_width..=noise_half_width)
        } else {
            0.0
        };
        y[l] = tf.eval_unchecked(&point) + noise;
    }
    let provenance = format!("{tf} n={n} noise={noise_half_width} seed={seed}");
    Dataset::new(x, y, default_names(dim), provenance)
}

/// Regular grid over `[0, 1]^dim` with `count` points per axis, endpoints
/// included. In 2-D the first coordinate varies slowest.
pub fn grid_points(dim: usize, count: usize) -> Result<DMatrix<f64>> {
    if count < 2 {
        return Err(Error::Config(format!(
            "grid needs at least 2 points per axis, got {count}"
        )));
    }
    let axis: Vec<f64> = (0..count).map(|i| i as f64 / (count - 1) as f64).collect();
    match dim {
        1 => Ok(DMatrix::from_column_slice(count, 1, &axis)),
        2 => Ok(DMatrix::from_fn(count * count, 2, |l, k| {
            if k == 0 {
                axis[l / count]
            } else {
                axis[l % count]
            }
        })),
        _ => Err(Error::Unsupported(format!(
            "grids are only built in 1-D or 2-D, got {dim}"
        ))),
    }
}

/// Noise-free dataset of `tf` sampled on a regular grid.
pub fn grid_dataset(tf: TargetFunction, count_per_axis: usize) -> Result<Dataset> {
    let x = grid_points(tf.dim(), count_per_axis)?;
    let y = DVector::from_iterator(
        x.nrows(),
        x.row_iter().map(|row| {
            let p: Vec<f64> = row.iter().copied().collect();
            tf.eval_unchecked(&p)
        }),
    );
    Dataset::new(
        x,
        y,
        default_names(tf.dim()),
        format!("{tf} grid {count_per_axis}/axis"),
    )
}

/// Random train/test split with `round(fraction·N)` training rows.
pub fn split(ds: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Config(format!(
            "training fraction {train_fraction} must lie in (0, 1)"
        )));
    }
    let n = ds.len();
    let n_train = (train_fraction * n as f64).round() as usize;
    if n_train == 0 || n_train >= n {
        return Err(Error::Config(format!(
            "splitting {n} samples at fraction {train_fraction} leaves an empty part"
        )));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng_from_seed(seed));
    let train = ds.subset(&idx[..n_train], format!("{} [train]", ds.provenance));
    let test = ds.subset(&idx[n_train..], format!("{} [test]", ds.provenance));
    Ok((train, test))
}

/// Selects the target column of a CSV file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetColumn {
    Name(String),
    /// 0-based position.
    Index(usize),
    /// The rightmost column.
    Last,
}

impl FromStr for TargetColumn {
    type Err = std::convert::Infallible;

    /// Integers select by position, `last` the rightmost column, anything
    /// else a header name.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => TargetColumn::Index(i),
            Err(_) if s == "last" => TargetColumn::Last,
            Err(_) => TargetColumn::Name(s.to_string()),
        })
    }
}

/// Loads a numeric CSV table; the target column becomes `y`, the remaining
/// columns (in file order) become `x`.
pub fn load_csv(path: impl AsRef<Path>, target: &TargetColumn, has_header: bool) -> Result<Dataset> {
    let path = path.as_ref();
    let (names, rows) = read_table(path, has_header, 2)?;
    let width = names.len();
    let target_idx = match target {
        TargetColumn::Last => width - 1,
        TargetColumn::Index(i) if *i < width => *i,
        TargetColumn::Index(i) => {
            return Err(Error::Config(format!(
                "target column index {i} is out of range for {width} columns"
            )))
        }
        TargetColumn::Name(name) if !has_header => {
            return Err(Error::Config(format!(
                "target column '{name}' given by name but the file has no header"
            )))
        }
        TargetColumn::Name(name) => names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Config(format!("target column '{name}' not found in header {names:?}")))?,
    };

    let n = rows.len();
    let x = DMatrix::from_fn(n, width - 1, |l, k| {
        let col = if k < target_idx { k } else { k + 1 };
        rows[l][col]
    });
    let y = DVector::from_fn(n, |l, _| rows[l][target_idx]);
    let feature_names = names
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != target_idx)
        .map(|(_, n)| n.clone())
        .collect();
    Dataset::new(
        x,
        y,
        feature_names,
        format!("{} (target column {})", path.display(), names[target_idx]),
    )
}

/// Loads a numeric CSV table whose columns are all inputs.
pub fn load_features_csv(path: impl AsRef<Path>, has_header: bool) -> Result<(DMatrix<f64>, Vec<String>)> {
    let (names, rows) = read_table(path.as_ref(), has_header, 1)?;
    let x = DMatrix::from_fn(rows.len(), names.len(), |l, k| rows[l][k]);
    Ok((x, names))
}

/// Header (or `c1..cN`) and rows of a rectangular numeric CSV file.
fn read_table(path: &Path, has_header: bool, min_cols: usize) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let parse_err = |message: String| Error::Parse {
        path: path.to_path_buf(),
        message,
    };
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .from_reader(file);

    let header: Option<Vec<String>> = if has_header {
        let h = reader
            .headers()
            .map_err(|e| parse_err(format!("cannot read header: {e}")))?;
        Some(h.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = header.as_ref().map(Vec::len);
    for (i, record) in reader.records().enumerate() {
        // 1-based line in the file
        let line = i + 1 + usize::from(has_header);
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
                parse_err(format!("row {line} has {len} fields, expected {expected_len}"))
            }
            _ => parse_err(format!("row {line}: {e}")),
        })?;
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        match width {
            Some(w) if w != record.len() => {
                return Err(parse_err(format!(
                    "row {line} has {} fields, expected {w}",
                    record.len()
                )))
            }
            None => width = Some(record.len()),
            _ => {}
        }
        let values = record
            .iter()
            .enumerate()
            .map(|(col, cell)| {
                cell.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                    parse_err(format!(
                        "row {line}, column {}: '{cell}' is not a finite number",
                        col + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(values);
    }

    let width = width.unwrap_or(0);
    if rows.is_empty() {
        return Err(parse_err("no data rows".into()));
    }
    if width < min_cols {
        return Err(parse_err(format!("need at least {min_cols} columns, found {width}")));
    }
    let names: Vec<String> = header.unwrap_or_else(|| (1..=width).map(|k| format!("c{k}")).collect());
    Ok((names, rows))
}
