//! Hidden-layer output matrix and least-squares output weights.

use faer::Mat;
use nalgebra::{DMatrix, DVector};

use crate::activations::ActivationKind;
use crate::error::{Error, Result};
use crate::param_gen::HiddenParams;

/// Default relative cutoff below which singular values are treated as zero.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// `N × m` matrix of hidden-node outputs, one row per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenMatrix {
    pub h: DMatrix<f64>,
}

impl HiddenMatrix {
    pub fn samples(&self) -> usize {
        self.h.nrows()
    }

    pub fn nodes(&self) -> usize {
        self.h.ncols()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LsqSolution {
    pub beta: DVector<f64>,
    pub rank: usize,
    /// `‖Hβ - Y‖₂`
    pub residual_norm: f64,
}

/// Evaluates every node on every row of `x`.
///
/// Each entry is computed as `Σ_k a_ik·x_lk` (ascending `k`) plus `b_i`, the
/// same order as [`crate::activations::evaluate`], so spot checks agree exactly.
pub fn build_hidden_matrix(params: &HiddenParams, kind: ActivationKind, x: &DMatrix<f64>) -> Result<HiddenMatrix> {
    let n = params.inputs();
    if x.ncols() != n {
        return Err(Error::Contract(format!(
            "inputs have {} columns but the hidden layer expects {n}",
            x.ncols()
        )));
    }
    if x.nrows() == 0 {
        return Err(Error::Contract("no input rows".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Contract("non-finite input value".into()));
    }
    let w = &params.weights;
    let h = DMatrix::from_fn(x.nrows(), params.nodes(), |l, i| {
        let mut z = 0.0;
        for k in 0..n {
            z += w[(i, k)] * x[(l, k)];
        }
        kind.apply(z + params.bias[i])
    });
    Ok(HiddenMatrix { h })
}

fn check_system(h: &DMatrix<f64>, y: &DVector<f64>) -> Result<()> {
    if h.nrows() != y.len() {
        return Err(Error::Contract(format!(
            "hidden matrix has {} rows but target has {} entries",
            h.nrows(),
            y.len()
        )));
    }
    if h.is_empty() {
        return Err(Error::Contract("empty hidden matrix".into()));
    }
    if h.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Contract("non-finite entry in hidden matrix or target".into()));
    }
    Ok(())
}

fn residual_norm(h: &DMatrix<f64>, beta: &DVector<f64>, y: &DVector<f64>) -> f64 {
    (h * beta - y).norm()
}

/// Minimum-norm least-squares solution `β = H⁺Y` through the thin SVD.
///
/// Singular values below `rel_tol · σ_max` are dropped.
pub fn solve_output_weights(hm: &HiddenMatrix, y: &DVector<f64>, rel_tol: f64) -> Result<LsqSolution> {
    let h = &hm.h;
    check_system(h, y)?;
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::Domain(format!(
            "relative SVD cutoff {rel_tol} must lie in (0, 1)"
        )));
    }
    let (rows, cols) = h.shape();
    let svd = Mat::<f64>::from_fn(rows, cols, |i, j| h[(i, j)])
        .thin_svd()
        .map_err(|e| Error::Numerical(format!("SVD of the {rows}x{cols} hidden matrix failed: {e:?}")))?;
    let (u, v, sv) = (svd.U(), svd.V(), svd.S().column_vector());
    let cutoff = rel_tol * (0..sv.nrows()).map(|j| sv[j]).fold(0.0, f64::max);

    let mut beta = DVector::zeros(cols);
    let mut rank = 0;
    for j in 0..sv.nrows() {
        if sv[j] > cutoff && sv[j] > 0.0 {
            rank += 1;
            let coef = (0..rows).map(|l| u[(l, j)] * y[l]).sum::<f64>() / sv[j];
            for k in 0..cols {
                beta[k] += coef * v[(k, j)];
            }
        }
    }
    let residual_norm = residual_norm(h, &beta, y);
    Ok(LsqSolution {
        beta,
        rank,
        residual_norm,
    })
}

/// Minimizes `‖Hβ - Y‖² + λ‖β‖²` through the regularized normal equations.
///
/// With `λ = 0` a singular Gram matrix falls back to [`solve_output_weights`]
/// at the default cutoff. For `λ > 0` the reported rank is `m`, the rank of
/// the regularized system.
pub fn ridge_solve(hm: &HiddenMatrix, y: &DVector<f64>, lambda: f64) -> Result<LsqSolution> {
    let h = &hm.h;
    check_system(h, y)?;
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::Domain(format!("ridge penalty {lambda} must be finite and >= 0")));
    }
    let cols = h.ncols();
    let mut gram = h.tr_mul(h);
    for j in 0..cols {
        gram[(j, j)] += lambda;
    }
    let chol = gram.cholesky().filter(|c| {
        let diag = c.l_dirty().diagonal();
        let (lo, hi) = (diag.min(), diag.max());
        lo * lo > f64::EPSILON * cols as f64 * hi * hi
    });
    match chol {
        Some(chol) => {
            let beta = chol.solve(&h.tr_mul(y));
            let residual_norm = residual_norm(h, &beta, y);
            Ok(LsqSolution {
                beta,
                rank: cols,
                residual_norm,
            })
        }
        None if lambda == 0.0 => solve_output_weights(hm, y, DEFAULT_REL_TOL),
        None => Err(Error::Numerical(format!(
            "regularized Gram matrix is not positive definite (lambda = {lambda})"
        ))),
    }
}
