//! Random hidden-node parameters.
//!
//! For each node the generator draws a slope sum `Σᵢ` whose magnitude lies in
//! the activation's admissible interval, spreads it over the `n` input weights
//! with random shares, and then picks the bias so that the activation's
//! zero-argument point lands on an anchor inside `[0, 1]ⁿ`:
//!
//! ```text
//! a_ik = ζ_k · Σᵢ / Σ_j ζ_j,   ζ ~ U(-1, 1)ⁿ
//! b_i  = -Σ_k a_ik · x_k,      x = anchor point
//! ```
//!
//! The anchor is a uniform random point, a random training point, or the
//! centroid of one of `m` k-means clusters of the training inputs.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::activations::{sigma_interval, ActivationKind, SigmaInterval};
use crate::error::{Error, Result};

/// Smallest admissible `|Σ_j ζ_j|` before the share vector is redrawn.
pub const ZETA_SUM_EPS: f64 = 1e-3;
const MAX_ZETA_DRAWS: usize = 1000;

/// Slack allowed on normalized inputs before they count as outside `[0, 1]`.
pub const UNIT_BOX_SLACK: f64 = 1e-9;

const KMEANS_MAX_ITER: usize = 100;
const KMEANS_REL_TOL: f64 = 1e-6;

/// The PRNG used throughout the crate.
pub type Prng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Prng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BiasStrategy {
    /// Anchor drawn uniformly from the unit hypercube.
    #[serde(rename = "uniform")]
    UniformPoint,
    /// Anchor is a training input chosen uniformly with replacement.
    #[serde(rename = "data")]
    TrainingPoint,
    /// Anchor for node `i` is the centroid of the `i`-th k-means cluster.
    #[serde(rename = "cluster")]
    ClusterPrototype,
}

impl BiasStrategy {
    pub fn name(self) -> &'static str {
        match self {
            BiasStrategy::UniformPoint => "uniform",
            BiasStrategy::TrainingPoint => "data",
            BiasStrategy::ClusterPrototype => "cluster",
        }
    }

    pub fn needs_inputs(self) -> bool {
        !matches!(self, BiasStrategy::UniformPoint)
    }
}

impl fmt::Display for BiasStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BiasStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(BiasStrategy::UniformPoint),
            "data" => Ok(BiasStrategy::TrainingPoint),
            "cluster" => Ok(BiasStrategy::ClusterPrototype),
            _ => Err(Error::Config(format!(
                "unknown bias strategy '{s}' (expected uniform, data or cluster)"
            ))),
        }
    }
}

/// Full parameterization of the proposed generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub kind: ActivationKind,
    pub r: f64,
    pub s: f64,
    pub m: usize,
    pub strategy: BiasStrategy,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(kind: ActivationKind, r: f64, s: f64, m: usize) -> Self {
        GenConfig {
            kind,
            r,
            s,
            m,
            strategy: BiasStrategy::UniformPoint,
            seed: 0,
        }
    }

    pub fn with_strategy(mut self, strategy: BiasStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Checks `r`, `s` and `m`, returning the slope-sum interval they define.
    pub fn validate(&self) -> Result<SigmaInterval> {
        if self.m == 0 {
            return Err(Error::Config("number of hidden nodes must be at least 1".into()));
        }
        sigma_interval(self.kind, self.r, self.s)
    }
}

/// Fixed-range generator: every weight and bias i.i.d. uniform on a fixed
/// interval, independent of data and activation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub kind: ActivationKind,
    pub m: usize,
    pub weight_range: (f64, f64),
    pub bias_range: (f64, f64),
    pub seed: u64,
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Config("number of hidden nodes must be at least 1".into()));
        }
        for (name, (lo, hi)) in [("weight", self.weight_range), ("bias", self.bias_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::Config(format!(
                    "{name} range [{lo}, {hi}] must be finite with lo <= hi"
                )));
            }
        }
        Ok(())
    }
}

/// Where a model's hidden nodes come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum NodeSource {
    Proposed(GenConfig),
    Baseline(BaselineConfig),
}

impl NodeSource {
    pub fn kind(&self) -> ActivationKind {
        match self {
            NodeSource::Proposed(c) => c.kind,
            NodeSource::Baseline(c) => c.kind,
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            NodeSource::Proposed(c) => c.m,
            NodeSource::Baseline(c) => c.m,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            NodeSource::Proposed(c) => c.seed,
            NodeSource::Baseline(c) => c.seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            NodeSource::Proposed(c) => NodeSource::Proposed(c.with_seed(seed)),
            NodeSource::Baseline(c) => NodeSource::Baseline(BaselineConfig { seed, ..c }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            NodeSource::Proposed(c) => c.validate().map(|_| ()),
            NodeSource::Baseline(c) => c.validate(),
        }
    }

    /// Generates hidden parameters for `n`-dimensional inputs already scaled
    /// into the unit hypercube.
    pub fn generate(&self, n: usize, inputs: Option<&DMatrix<f64>>) -> Result<HiddenParams> {
        match self {
            NodeSource::Proposed(c) => generate(c, n, inputs),
            NodeSource::Baseline(c) => baseline_generate(c.m, n, c.weight_range, c.bias_range, c.seed),
        }
    }
}

impl From<GenConfig> for NodeSource {
    fn from(c: GenConfig) -> Self {
        NodeSource::Proposed(c)
    }
}

impl From<BaselineConfig> for NodeSource {
    fn from(c: BaselineConfig) -> Self {
        NodeSource::Baseline(c)
    }
}

/// Weights, biases and the bookkeeping that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenParams {
    /// `m × n`; row `i` holds the input weights of node `i`.
    pub weights: DMatrix<f64>,
    pub bias: DVector<f64>,
    /// `m × n` anchor points used for the biases; `None` for fixed-range nodes.
    pub anchors: Option<DMatrix<f64>>,
    /// Row sums of `weights`.
    pub sigma: DVector<f64>,
}

impl HiddenParams {
    pub fn nodes(&self) -> usize {
        self.weights.nrows()
    }

    pub fn inputs(&self) -> usize {
        self.weights.ncols()
    }

    pub fn node_weights(&self, i: usize) -> Vec<f64> {
        self.weights.row(i).iter().copied().collect()
    }
}

/// Draws `Σ` with magnitude uniform on `[lo, hi]` and an independent fair sign.
pub fn sample_sigma<R: Rng + ?Sized>(interval: &SigmaInterval, rng: &mut R) -> f64 {
    let magnitude = rng.gen_range(interval.lo..=interval.hi);
    if rng.gen_bool(0.5) {
        magnitude
    } else {
        -magnitude
    }
}

/// Scales the shares `zeta` so that they sum to `sigma`.
pub fn distribute_with_shares(sigma: f64, zeta: &[f64]) -> Result<Vec<f64>> {
    let total: f64 = zeta.iter().sum();
    if zeta.is_empty() || !total.is_finite() || total == 0.0 {
        return Err(Error::Contract(format!(
            "share vector must be non-empty with a finite non-zero sum (got {total})"
        )));
    }
    let scale = sigma / total;
    Ok(zeta.iter().map(|z| z * scale).collect())
}

/// Splits `sigma` into `n` random weights summing to `sigma`.
///
/// Shares are drawn from `U(-1, 1)` and redrawn while `|Σζ| < ZETA_SUM_EPS`,
/// which bounds every weight by `|sigma| / ZETA_SUM_EPS`.
pub fn distribute_weights<R: Rng + ?Sized>(sigma: f64, n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Contract("input dimension must be at least 1".into()));
    }
    if !sigma.is_finite() || sigma == 0.0 {
        return Err(Error::Contract(format!(
            "slope sum must be finite and non-zero, got {sigma}"
        )));
    }
    let mut zeta = vec![0.0; n];
    for _ in 0..MAX_ZETA_DRAWS {
        for z in zeta.iter_mut() {
            *z = rng.gen_range(-1.0..1.0);
        }
        if zeta.iter().sum::<f64>().abs() >= ZETA_SUM_EPS {
            return distribute_with_shares(sigma, &zeta);
        }
    }
    Err(Error::Numerical(format!(
        "share vector sum stayed below {ZETA_SUM_EPS} after {MAX_ZETA_DRAWS} draws"
    )))
}

/// Picks the point the node's zero-argument location is moved to.
pub fn select_anchor<R: Rng + ?Sized>(
    strategy: BiasStrategy,
    n: usize,
    inputs: Option<&DMatrix<f64>>,
    prototypes: Option<&DMatrix<f64>>,
    node_index: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    match strategy {
        BiasStrategy::UniformPoint => Ok((0..n).map(|_| rng.gen_range(0.0..=1.0)).collect()),
        BiasStrategy::TrainingPoint => {
            let inputs = inputs
                .filter(|x| x.nrows() > 0)
                .ok_or_else(|| Error::Config("training-point anchors need training inputs".into()))?;
            check_cols(inputs, n, "training inputs")?;
            let row = rng.gen_range(0..inputs.nrows());
            Ok(inputs.row(row).iter().copied().collect())
        }
        BiasStrategy::ClusterPrototype => {
            let protos = prototypes.ok_or_else(|| Error::Config("cluster anchors need cluster prototypes".into()))?;
            check_cols(protos, n, "prototypes")?;
            if node_index >= protos.nrows() {
                return Err(Error::Config(format!(
                    "node {node_index} has no prototype ({} clusters)",
                    protos.nrows()
                )));
            }
            Ok(protos.row(node_index).iter().copied().collect())
        }
    }
}

fn check_cols(x: &DMatrix<f64>, n: usize, what: &str) -> Result<()> {
    if x.ncols() != n {
        return Err(Error::Contract(format!(
            "{what} have {} columns, expected {n}",
            x.ncols()
        )));
    }
    Ok(())
}

/// `b = -aᵀx`, the bias that puts the zero argument at `x`.
pub fn compute_bias(a: &[f64], x: &[f64]) -> Result<f64> {
    if a.len() != x.len() {
        return Err(Error::Contract(format!(
            "weights have length {} but anchor has length {}",
            a.len(),
            x.len()
        )));
    }
    Ok(-a.iter().zip(x).map(|(ak, xk)| ak * xk).sum::<f64>())
}

/// Generates `config.m` hidden nodes for `n`-dimensional unit-box inputs.
///
/// `inputs` must be supplied for the data-dependent strategies and must lie in
/// `[0, 1]ⁿ`. The result depends only on `(config, n, inputs)`.
pub fn generate(config: &GenConfig, n: usize, inputs: Option<&DMatrix<f64>>) -> Result<HiddenParams> {
    let interval = config.validate()?;
    if n == 0 {
        return Err(Error::Contract("input dimension must be at least 1".into()));
    }
    if let Some(x) = inputs {
        check_cols(x, n, "training inputs")?;
        check_unit_box(x)?;
    }
    if config.strategy.needs_inputs() && inputs.is_none_or(|x| x.nrows() == 0) {
        return Err(Error::Config(format!(
            "bias strategy '{}' requires training inputs",
            config.strategy
        )));
    }
    let prototypes = match config.strategy {
        BiasStrategy::ClusterPrototype => Some(cluster_prototypes(
            inputs.expect("checked above"),
            config.m,
            config.seed,
        )?),
        _ => None,
    };

    let m = config.m;
    let mut rng = rng_from_seed(config.seed);
    let mut weights = DMatrix::zeros(m, n);
    let mut anchors = DMatrix::zeros(m, n);
    let mut bias = DVector::zeros(m);
    let mut sigma = DVector::zeros(m);
    for i in 0..m {
        let sum = sample_sigma(&interval, &mut rng);
        let a = distribute_weights(sum, n, &mut rng)?;
        let x = select_anchor(config.strategy, n, inputs, prototypes.as_ref(), i, &mut rng)?;
        bias[i] = compute_bias(&a, &x)?;
        sigma[i] = sum;
        for k in 0..n {
            weights[(i, k)] = a[k];
            anchors[(i, k)] = x[k];
        }
    }
    Ok(HiddenParams {
        weights,
        bias,
        anchors: Some(anchors),
        sigma,
    })
}

fn check_unit_box(x: &DMatrix<f64>) -> Result<()> {
    let bad = x
        .iter()
        .position(|v| !(-UNIT_BOX_SLACK..=1.0 + UNIT_BOX_SLACK).contains(v));
    if let Some(pos) = bad {
        let (row, col) = (pos % x.nrows(), pos / x.nrows());
        return Err(Error::Contract(format!(
            "input ({row}, {col}) = {} lies outside [0, 1]; normalize inputs before generating nodes",
            x[(row, col)]
        )));
    }
    Ok(())
}

/// Weights and biases i.i.d. uniform on fixed ranges.
pub fn baseline_generate(
    m: usize,
    n: usize,
    weight_range: (f64, f64),
    bias_range: (f64, f64),
    seed: u64,
) -> Result<HiddenParams> {
    BaselineConfig {
        kind: ActivationKind::Sigmoid,
        m,
        weight_range,
        bias_range,
        seed,
    }
    .validate()?;
    if n == 0 {
        return Err(Error::Contract("input dimension must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut weights = DMatrix::zeros(m, n);
    let mut bias = DVector::zeros(m);
    for i in 0..m {
        for k in 0..n {
            weights[(i, k)] = rng.gen_range(weight_range.0..=weight_range.1);
        }
        bias[i] = rng.gen_range(bias_range.0..=bias_range.1);
    }
    let sigma = DVector::from_iterator(m, weights.row_iter().map(|row| row.sum()));
    Ok(HiddenParams {
        weights,
        bias,
        anchors: None,
        sigma,
    })
}

/// k-means (Lloyd) centroids of the rows of `inputs`.
///
/// Initial centroids are `m` distinct rows sampled with `seed`. Iteration stops
/// after 100 rounds or when the total centroid shift falls below `1e-6` of the
/// total centroid norm. A cluster that loses all members keeps its centroid.
pub fn cluster_prototypes(inputs: &DMatrix<f64>, m: usize, seed: u64) -> Result<DMatrix<f64>> {
    let (rows, n) = inputs.shape();
    if m == 0 {
        return Err(Error::Config("cluster count must be at least 1".into()));
    }
    if rows < m {
        return Err(Error::Config(format!(
            "cannot form {m} clusters from {rows} training points"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let picked = index::sample(&mut rng, rows, m);
    let mut centroids = DMatrix::zeros(m, n);
    for (c, row) in picked.iter().enumerate() {
        centroids.set_row(c, &inputs.row(row));
    }

    let mut assignment = vec![usize::MAX; rows];
    for _ in 0..KMEANS_MAX_ITER {
        let mut changed = false;
        for (l, slot) in assignment.iter_mut().enumerate() {
            let best = nearest_centroid(&centroids, inputs, l);
            if *slot != best {
                *slot = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }

        let mut sums = DMatrix::<f64>::zeros(m, n);
        let mut counts = vec![0usize; m];
        for (l, &c) in assignment.iter().enumerate() {
            counts[c] += 1;
            for k in 0..n {
                sums[(c, k)] += inputs[(l, k)];
            }
        }
        let mut shift = 0.0;
        for c in 0..m {
            if counts[c] == 0 {
                continue;
            }
            for k in 0..n {
                let updated = sums[(c, k)] / counts[c] as f64;
                shift += (updated - centroids[(c, k)]).abs();
                centroids[(c, k)] = updated;
            }
        }
        let scale: f64 = centroids.iter().map(|v| v.abs()).sum();
        if shift <= KMEANS_REL_TOL * scale.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(centroids)
}

fn nearest_centroid(centroids: &DMatrix<f64>, inputs: &DMatrix<f64>, row: usize) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for c in 0..centroids.nrows() {
        let d: f64 = (0..inputs.ncols())
            .map(|k| (inputs[(row, k)] - centroids[(c, k)]).powi(2))
            .sum();
        if d < best_dist {
            best_dist = d;
            best = c;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activations::evaluate;
    use approx::assert_abs_diff_eq;

    fn rng() -> Prng {
        rng_from_seed(7)
    }

    #[test]
    fn degenerate_interval_gives_signed_magnitude() {
        let iv = SigmaInterval::new(2.0, 2.0).unwrap();
        let mut rng = rng();
        for _ in 0..100 {
            let v = sample_sigma(&iv, &mut rng);
            assert!(v == 2.0 || v == -2.0);
        }
    }

    #[test]
    fn sigma_magnitude_is_uniform() {
        let iv = SigmaInterval::new(2.20, 10.99).unwrap();
        let mut rng = rng();
        let draws = 10_000;
        let inside = (0..draws).filter(|_| sample_sigma(&iv, &mut rng).abs() <= 6.60).count();
        // uniform CDF at 6.60
        let expected = (6.60 - 2.20) / (10.99 - 2.20);
        assert_abs_diff_eq!(inside as f64 / draws as f64, expected, epsilon = 0.02);
    }

    #[test]
    fn sigma_sign_is_fair() {
        let iv = SigmaInterval::new(1.0, 3.0).unwrap();
        let mut rng = rng();
        let positive = (0..10_000).filter(|_| sample_sigma(&iv, &mut rng) > 0.0).count();
        assert_abs_diff_eq!(positive as f64 / 10_000.0, 0.5, epsilon = 0.02);
    }

    #[test]
    fn shares_scale_to_sum() {
        assert_eq!(distribute_with_shares(4.0, &[1.0, 1.0]).unwrap(), vec![2.0, 2.0]);
        assert_eq!(distribute_with_shares(2.0, &[0.5, -0.25]).unwrap(), vec![4.0, -2.0]);
        assert!(distribute_with_shares(1.0, &[0.5, -0.5]).is_err());
    }

    #[test]
    fn weights_sum_to_sigma() {
        let mut rng = rng();
        for _ in 0..200 {
            let a = distribute_weights(5.0, 7, &mut rng).unwrap();
            assert_eq!(a.len(), 7);
            assert_abs_diff_eq!(a.iter().sum::<f64>(), 5.0, epsilon = 1e-9);
            assert!(a.iter().all(|v| v.abs() <= 5.0 / ZETA_SUM_EPS));
        }
        assert!(distribute_weights(0.0, 3, &mut rng).is_err());
        assert!(distribute_weights(1.0, 0, &mut rng).is_err());
    }

    #[test]
    fn anchors_by_strategy() {
        let mut rng = rng();
        let p = select_anchor(BiasStrategy::UniformPoint, 3, None, None, 0, &mut rng).unwrap();
        assert!(p.iter().all(|v| (0.0..=1.0).contains(v)));

        let single = DMatrix::from_row_slice(1, 2, &[0.2, 0.8]);
        let p = select_anchor(BiasStrategy::TrainingPoint, 2, Some(&single), None, 5, &mut rng).unwrap();
        assert_eq!(p, vec![0.2, 0.8]);

        let protos = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.1, 0.9]);
        let p = select_anchor(BiasStrategy::ClusterPrototype, 2, None, Some(&protos), 0, &mut rng).unwrap();
        assert_eq!(p, vec![0.5, 0.5]);

        assert!(matches!(
            select_anchor(BiasStrategy::TrainingPoint, 2, None, None, 0, &mut rng),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            select_anchor(BiasStrategy::ClusterPrototype, 2, None, Some(&protos), 2, &mut rng),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn bias_rule() {
        assert_eq!(compute_bias(&[2.0, 2.0], &[0.5, 0.5]).unwrap(), -2.0);
        assert_eq!(compute_bias(&[0.0, 0.0], &[0.3, 0.9]).unwrap(), 0.0);
        assert_eq!(compute_bias(&[1.0, -1.0], &[1.0, 0.0]).unwrap(), -1.0);
        assert!(matches!(compute_bias(&[1.0], &[1.0, 0.0]), Err(Error::Contract(_))));
    }

    #[test]
    fn generated_sums_stay_in_interval() {
        let config = GenConfig::new(ActivationKind::Sigmoid, 0.1, 5.0, 500).with_seed(11);
        let params = generate(&config, 2, None).unwrap();
        assert_eq!(params.nodes(), 500);
        for &s in params.sigma.iter() {
            let mag = s.abs();
            assert!(mag >= 9f64.ln() - 1e-12 && mag <= 5.0 * 9f64.ln() + 1e-12);
            assert!((2.19..=10.99).contains(&mag));
        }
    }

    #[test]
    fn single_node_single_input() {
        for kind in ActivationKind::ALL {
            let r = kind.r_domain().interior_points(3)[1];
            let config = GenConfig::new(kind, r, 2.0, 1).with_seed(3);
            let p = generate(&config, 1, None).unwrap();
            let x = p.anchors.as_ref().unwrap()[(0, 0)];
            assert!((0.0..=1.0).contains(&x));
            assert_abs_diff_eq!(p.bias[0], -p.weights[(0, 0)] * x, epsilon = 1e-12);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let x = DMatrix::from_fn(40, 3, |i, k| ((i * 7 + k * 3) % 11) as f64 / 10.0);
        for strategy in [
            BiasStrategy::UniformPoint,
            BiasStrategy::TrainingPoint,
            BiasStrategy::ClusterPrototype,
        ] {
            let config = GenConfig::new(ActivationKind::Gaussian, 0.6, 10.0, 8)
                .with_strategy(strategy)
                .with_seed(99);
            let a = generate(&config, 3, Some(&x)).unwrap();
            let b = generate(&config, 3, Some(&x)).unwrap();
            assert_eq!(a, b);
            let c = generate(&config.with_seed(100), 3, Some(&x)).unwrap();
            assert_ne!(a.weights, c.weights);
        }
    }

    #[test]
    fn anchor_condition_holds_per_node() {
        let x = DMatrix::from_fn(30, 4, |i, k| ((i * 5 + k) % 13) as f64 / 12.0);
        for kind in ActivationKind::ALL {
            let r = kind.r_domain().interior_points(5)[2];
            let config = GenConfig::new(kind, r, 20.0, 25)
                .with_strategy(BiasStrategy::TrainingPoint)
                .with_seed(5);
            let p = generate(&config, 4, Some(&x)).unwrap();
            let anchors = p.anchors.as_ref().unwrap();
            for i in 0..p.nodes() {
                let a = p.node_weights(i);
                let at: Vec<f64> = anchors.row(i).iter().copied().collect();
                let v = evaluate(kind, &a, p.bias[i], &at).unwrap();
                assert_abs_diff_eq!(v, kind.anchor_value(), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn data_strategies_need_inputs() {
        let config = GenConfig::new(ActivationKind::Sigmoid, 0.1, 3.0, 4).with_strategy(BiasStrategy::TrainingPoint);
        assert!(matches!(generate(&config, 2, None), Err(Error::Config(_))));
    }

    #[test]
    fn unnormalized_inputs_rejected() {
        let x = DMatrix::from_row_slice(2, 1, &[0.5, 1.5]);
        let config = GenConfig::new(ActivationKind::Sigmoid, 0.1, 3.0, 4).with_strategy(BiasStrategy::TrainingPoint);
        let err = generate(&config, 1, Some(&x)).unwrap_err();
        assert!(err.to_string().contains("normalize"), "{err}");
        // slack is tolerated
        let x = DMatrix::from_row_slice(2, 1, &[-1e-12, 1.0 + 1e-12]);
        assert!(generate(&config, 1, Some(&x)).is_ok());
    }

    #[test]
    fn invalid_config_rejected() {
        let bad_r = GenConfig::new(ActivationKind::Sigmoid, 0.7, 3.0, 4);
        assert!(matches!(generate(&bad_r, 1, None), Err(Error::Domain(_))));
        let bad_m = GenConfig::new(ActivationKind::Sigmoid, 0.1, 3.0, 0);
        assert!(matches!(generate(&bad_m, 1, None), Err(Error::Config(_))));
    }

    #[test]
    fn uniform_anchor_mean() {
        let config = GenConfig::new(ActivationKind::Cosine, 0.2, 5.0, 10_000).with_seed(1);
        let p = generate(&config, 3, None).unwrap();
        let anchors = p.anchors.unwrap();
        for k in 0..3 {
            assert_abs_diff_eq!(anchors.column(k).mean(), 0.5, epsilon = 0.02);
        }
    }

    #[test]
    fn baseline_ranges() {
        let p = baseline_generate(100, 1, (-1.0, 1.0), (-1.0, 1.0), 4).unwrap();
        assert!(p.weights.iter().chain(p.bias.iter()).all(|v| (-1.0..=1.0).contains(v)));
        assert!(p.anchors.is_none());

        let p = baseline_generate(1, 1, (2.0, 2.0), (0.0, 0.0), 4).unwrap();
        assert_eq!((p.weights[(0, 0)], p.bias[0], p.sigma[0]), (2.0, 0.0, 2.0));

        let p = baseline_generate(100, 1, (-10.0, 10.0), (-1.0, 1.0), 4).unwrap();
        assert!(p.weights.iter().all(|v| (-10.0..=10.0).contains(v)));
        assert!(p.weights.iter().any(|v| v.abs() > 1.0));

        assert!(baseline_generate(3, 1, (1.0, -1.0), (0.0, 0.0), 4).is_err());
    }

    #[test]
    fn prototypes_of_two_points() {
        let x = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 1.0]);
        let p = cluster_prototypes(&x, 2, 3).unwrap();
        let mut rows: Vec<(f64, f64)> = (0..2).map(|i| (p[(i, 0)], p[(i, 1)])).collect();
        rows.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(rows, vec![(0.0, 0.0), (1.0, 1.0)]);
    }

    #[test]
    fn prototype_of_identical_points() {
        let x = DMatrix::from_fn(100, 2, |_, k| if k == 0 { 0.3 } else { 0.4 });
        let p = cluster_prototypes(&x, 1, 0).unwrap();
        assert_abs_diff_eq!(p[(0, 0)], 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(p[(0, 1)], 0.4, epsilon = 1e-15);
    }

    #[test]
    fn too_few_points_for_clusters() {
        let x = DMatrix::from_row_slice(2, 1, &[0.1, 0.2]);
        assert!(matches!(cluster_prototypes(&x, 3, 0), Err(Error::Config(_))));
    }

    /// Two tight blobs; the optimal 2-partition is found by enumerating every
    /// assignment of the points.
    #[test]
    fn prototypes_match_exhaustive_partition() {
        let offsets = [
            (0.0, 0.0),
            (0.01, 0.0),
            (-0.01, 0.0),
            (0.0, 0.01),
            (0.0, -0.01),
            (0.007, 0.007),
        ];
        let mut pts = Vec::new();
        for c in [(0.1, 0.1), (0.9, 0.9)] {
            for o in offsets {
                pts.push((c.0 + o.0, c.1 + o.1));
            }
        }
        let n = pts.len();
        let flat: Vec<f64> = pts.iter().flat_map(|p| [p.0, p.1]).collect();
        let x = DMatrix::from_row_slice(n, 2, &flat);

        let mut best = (f64::INFINITY, vec![]);
        for mask in 1u32..(1 << n) - 1 {
            let mut cents = [[0.0; 2]; 2];
            let mut counts = [0.0; 2];
            for (l, p) in pts.iter().enumerate() {
                let g = ((mask >> l) & 1) as usize;
                cents[g][0] += p.0;
                cents[g][1] += p.1;
                counts[g] += 1.0;
            }
            for g in 0..2 {
                cents[g][0] /= counts[g];
                cents[g][1] /= counts[g];
            }
            let sse: f64 = pts
                .iter()
                .enumerate()
                .map(|(l, p)| {
                    let g = ((mask >> l) & 1) as usize;
                    (p.0 - cents[g][0]).powi(2) + (p.1 - cents[g][1]).powi(2)
                })
                .sum();
            if sse < best.0 {
                best = (sse, cents.to_vec());
            }
        }
        let mut oracle = best.1;
        oracle.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
        assert!((oracle[0][0] - 0.1).abs() < 0.02 && (oracle[1][0] - 0.9).abs() < 0.02);

        for seed in 0..20 {
            let p = cluster_prototypes(&x, 2, seed).unwrap();
            let mut got: Vec<[f64; 2]> = (0..2).map(|i| [p[(i, 0)], p[(i, 1)]]).collect();
            got.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
            for (g, o) in got.iter().zip(&oracle) {
                assert_abs_diff_eq!(g[0], o[0], epsilon = 1e-9);
                assert_abs_diff_eq!(g[1], o[1], epsilon = 1e-9);
            }
            for (g, c) in got.iter().zip([0.1, 0.9]) {
                assert!((g[0] - c).abs() < 0.02 && (g[1] - c).abs() < 0.02);
            }
        }
    }

    #[test]
    fn strategy_names_roundtrip() {
        for s in [
            BiasStrategy::UniformPoint,
            BiasStrategy::TrainingPoint,
            BiasStrategy::ClusterPrototype,
        ] {
            assert_eq!(s.name().parse::<BiasStrategy>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
    }
}
