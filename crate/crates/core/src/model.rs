//! Train/predict pipeline and model files.
//!
//! Training is four steps with no hidden state: fit a min-max normalizer,
//! generate hidden nodes on the normalized inputs, build the hidden-layer
//! output matrix and solve for the output weights.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::activations::ActivationKind;
use crate::error::{Error, Result};
use crate::param_gen::{HiddenParams, NodeSource};
use crate::solver::{build_hidden_matrix, ridge_solve, solve_output_weights, HiddenMatrix, DEFAULT_REL_TOL};

pub const MODEL_FORMAT: &str = "fnnrhn-model";
pub const MODEL_VERSION: u32 = 1;

/// Range normalized targets are mapped into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputRange {
    /// `[0, 1]`
    #[serde(rename = "unit")]
    Unit,
    /// `[-1, 1]`
    #[serde(rename = "sym")]
    Symmetric,
}

impl OutputRange {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            OutputRange::Unit => (0.0, 1.0),
            OutputRange::Symmetric => (-1.0, 1.0),
        }
    }
}

impl fmt::Display for OutputRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputRange::Unit => "unit",
            OutputRange::Symmetric => "sym",
        })
    }
}

impl FromStr for OutputRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(OutputRange::Unit),
            "sym" => Ok(OutputRange::Symmetric),
            _ => Err(Error::Config(format!(
                "unknown output range '{s}' (expected unit or sym)"
            ))),
        }
    }
}

/// Per-dimension min-max scaling of inputs into `[0, 1]` and of the target
/// into `[output_lo, output_hi]`. Constant input columns map to 0.5.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalizer {
    pub input_min: Vec<f64>,
    pub input_max: Vec<f64>,
    pub output_lo: f64,
    pub output_hi: f64,
    pub output_min: f64,
    pub output_max: f64,
}

impl Normalizer {
    pub fn fit(x: &DMatrix<f64>, y: &DVector<f64>, range: OutputRange) -> Result<Self> {
        if x.nrows() < 2 {
            return Err(Error::Config(format!(
                "fitting a normalizer needs at least 2 samples, got {}",
                x.nrows()
            )));
        }
        Self::fit_unchecked(x, y, range)
    }

    fn fit_unchecked(x: &DMatrix<f64>, y: &DVector<f64>, range: OutputRange) -> Result<Self> {
        if x.nrows() != y.len() || x.nrows() == 0 {
            return Err(Error::Contract(format!(
                "{} input rows but {} targets",
                x.nrows(),
                y.len()
            )));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Contract("non-finite training value".into()));
        }
        let (lo, hi) = range.bounds();
        Ok(Normalizer {
            input_min: x.column_iter().map(|c| c.min()).collect(),
            input_max: x.column_iter().map(|c| c.max()).collect(),
            output_lo: lo,
            output_hi: hi,
            output_min: y.min(),
            output_max: y.max(),
        })
    }

    pub fn dim(&self) -> usize {
        self.input_min.len()
    }

    pub fn is_constant(&self, k: usize) -> bool {
        self.input_max[k] <= self.input_min[k]
    }

    /// Maps raw inputs into `[0, 1]ⁿ`, clamping points outside the training box.
    pub fn normalize_inputs(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if x.ncols() != self.dim() {
            return Err(Error::Contract(format!(
                "inputs have {} columns, model expects {}",
                x.ncols(),
                self.dim()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Contract("non-finite input value".into()));
        }
        Ok(DMatrix::from_fn(x.nrows(), x.ncols(), |l, k| {
            if self.is_constant(k) {
                0.5
            } else {
                ((x[(l, k)] - self.input_min[k]) / (self.input_max[k] - self.input_min[k])).clamp(0.0, 1.0)
            }
        }))
    }

    /// Inverse of the input map on the training box.
    pub fn denormalize_inputs(&self, xn: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(xn.nrows(), xn.ncols(), |l, k| {
            self.input_min[k] + xn[(l, k)] * (self.input_max[k] - self.input_min[k])
        })
    }

    fn output_span(&self) -> f64 {
        self.output_max - self.output_min
    }

    pub fn normalize_output(&self, y: f64) -> f64 {
        let span = self.output_span();
        if span > 0.0 {
            self.output_lo + (y - self.output_min) / span * (self.output_hi - self.output_lo)
        } else {
            0.5 * (self.output_lo + self.output_hi)
        }
    }

    pub fn denormalize_output(&self, t: f64) -> f64 {
        let span = self.output_span();
        if span > 0.0 {
            self.output_min + (t - self.output_lo) / (self.output_hi - self.output_lo) * span
        } else {
            self.output_min
        }
    }

    pub fn normalize_outputs(&self, y: &DVector<f64>) -> DVector<f64> {
        y.map(|v| self.normalize_output(v))
    }
}

/// Training knobs other than the hidden-node generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainOptions {
    pub output_range: OutputRange,
    /// Relative singular-value cutoff of the pseudoinverse.
    pub rel_tol: f64,
    /// Ridge penalty; `0` solves with the pseudoinverse.
    pub ridge: f64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions {
            output_range: OutputRange::Unit,
            rel_tol: DEFAULT_REL_TOL,
            ridge: 0.0,
        }
    }
}

impl TrainOptions {
    pub fn with_output_range(mut self, range: OutputRange) -> Self {
        self.output_range = range;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub source: NodeSource,
    pub hidden: HiddenParams,
    pub beta: DVector<f64>,
    pub normalizer: Normalizer,
    pub rank: usize,
    /// `‖Hβ - Y‖₂` on the training set, in normalized output units.
    pub residual_norm: f64,
}

impl TrainedModel {
    pub fn kind(&self) -> ActivationKind {
        self.source.kind()
    }

    pub fn dim(&self) -> usize {
        self.hidden.inputs()
    }

    /// Hidden-layer outputs for raw inputs.
    pub fn hidden_matrix(&self, x_raw: &DMatrix<f64>) -> Result<HiddenMatrix> {
        let xn = self.normalizer.normalize_inputs(x_raw)?;
        build_hidden_matrix(&self.hidden, self.kind(), &xn)
    }

    /// Network output before denormalization.
    pub fn predict_normalized(&self, x_raw: &DMatrix<f64>) -> Result<DVector<f64>> {
        Ok(&self.hidden_matrix(x_raw)?.h * &self.beta)
    }

    pub fn predict(&self, x_raw: &DMatrix<f64>) -> Result<DVector<f64>> {
        Ok(self
            .predict_normalized(x_raw)?
            .map(|t| self.normalizer.denormalize_output(t)))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            generator: self.source,
            normalizer: self.normalizer.clone(),
            hidden: HiddenFile::from(&self.hidden),
            beta: self.beta.iter().copied().collect(),
            rank: self.rank,
            residual_norm: self.residual_norm,
        };
        let mut text = serde_json::to_string_pretty(&file).expect("model serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("not a valid model file: {e}")))?;
        match value.get("format").and_then(|v| v.as_str()) {
            Some(MODEL_FORMAT) => {}
            other => {
                return Err(Error::Format(format!(
                    "expected format tag '{MODEL_FORMAT}', found {other:?}"
                )))
            }
        }
        let version = value
            .get("version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Format("missing version tag".into()))?;
        if version != u64::from(MODEL_VERSION) {
            return Err(Error::Version {
                found: u32::try_from(version).unwrap_or(u32::MAX),
                supported: MODEL_VERSION,
            });
        }
        let file: ModelFile =
            serde_json::from_value(value).map_err(|e| Error::Format(format!("malformed model file: {e}")))?;
        file.into_model()
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    generator: NodeSource,
    normalizer: Normalizer,
    hidden: HiddenFile,
    beta: Vec<f64>,
    rank: usize,
    residual_norm: f64,
}

/// Row-major dense layout of [`HiddenParams`].
#[derive(Serialize, Deserialize)]
struct HiddenFile {
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
    anchors: Option<Vec<Vec<f64>>>,
    sigma: Vec<f64>,
}

fn rows_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn matrix_from_rows(rows: &[Vec<f64>], ncols: usize, what: &str) -> Result<DMatrix<f64>> {
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Format(format!("{what} rows must all have {ncols} entries")));
    }
    Ok(DMatrix::from_fn(rows.len(), ncols, |i, k| rows[i][k]))
}

impl From<&HiddenParams> for HiddenFile {
    fn from(p: &HiddenParams) -> Self {
        HiddenFile {
            weights: rows_of(&p.weights),
            bias: p.bias.iter().copied().collect(),
            anchors: p.anchors.as_ref().map(rows_of),
            sigma: p.sigma.iter().copied().collect(),
        }
    }
}

impl ModelFile {
    fn into_model(self) -> Result<TrainedModel> {
        let m = self.hidden.weights.len();
        let n = self.normalizer.dim();
        if m == 0 || n == 0 {
            return Err(Error::Format("model has no hidden nodes or no inputs".into()));
        }
        let weights = matrix_from_rows(&self.hidden.weights, n, "weight")?;
        let anchors = self
            .hidden
            .anchors
            .as_ref()
            .map(|rows| matrix_from_rows(rows, n, "anchor"))
            .transpose()?;
        if self.hidden.bias.len() != m
            || self.hidden.sigma.len() != m
            || self.beta.len() != m
            || anchors.as_ref().is_some_and(|a| a.nrows() != m)
            || self.normalizer.input_max.len() != n
        {
            return Err(Error::Format("inconsistent lengths in model file".into()));
        }
        if self.generator.nodes() != m {
            return Err(Error::Format(format!(
                "generator declares {} nodes but the file stores {m}",
                self.generator.nodes()
            )));
        }
        Ok(TrainedModel {
            source: self.generator,
            hidden: HiddenParams {
                weights,
                bias: DVector::from_vec(self.hidden.bias),
                anchors,
                sigma: DVector::from_vec(self.hidden.sigma),
            },
            beta: DVector::from_vec(self.beta),
            normalizer: self.normalizer,
            rank: self.rank,
            residual_norm: self.residual_norm,
        })
    }
}

fn check_shapes(x: &DMatrix<f64>, y: &DVector<f64>) -> Result<()> {
    if x.nrows() != y.len() {
        return Err(Error::Contract(format!(
            "{} input rows but {} targets",
            x.nrows(),
            y.len()
        )));
    }
    if x.ncols() == 0 {
        return Err(Error::Contract("inputs have no columns".into()));
    }
    Ok(())
}

/// Fits a model on raw data. Needs at least two samples.
pub fn train(
    x_raw: &DMatrix<f64>,
    y_raw: &DVector<f64>,
    source: &NodeSource,
    opts: &TrainOptions,
) -> Result<TrainedModel> {
    check_shapes(x_raw, y_raw)?;
    source.validate()?;
    let normalizer = Normalizer::fit(x_raw, y_raw, opts.output_range)?;
    train_with_normalizer(x_raw, y_raw, normalizer, source, opts)
}

/// Fits a model using an already fitted normalizer (e.g. one fitted on the
/// full training set and reused across cross-validation folds). Accepts a
/// single sample.
pub fn train_with_normalizer(
    x_raw: &DMatrix<f64>,
    y_raw: &DVector<f64>,
    normalizer: Normalizer,
    source: &NodeSource,
    opts: &TrainOptions,
) -> Result<TrainedModel> {
    check_shapes(x_raw, y_raw)?;
    if x_raw.nrows() == 0 {
        return Err(Error::Config("no training samples".into()));
    }
    source.validate()?;
    let xn = normalizer.normalize_inputs(x_raw)?;
    let yn = normalizer.normalize_outputs(y_raw);
    let hidden = source.generate(xn.ncols(), Some(&xn))?;
    let h = build_hidden_matrix(&hidden, source.kind(), &xn)?;
    let solution = if opts.ridge > 0.0 {
        ridge_solve(&h, &yn, opts.ridge)?
    } else {
        solve_output_weights(&h, &yn, opts.rel_tol)?
    };
    Ok(TrainedModel {
        source: *source,
        hidden,
        beta: solution.beta,
        normalizer,
        rank: solution.rank,
        residual_norm: solution.residual_norm,
    })
}
