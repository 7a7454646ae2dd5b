//! Activation families for the hidden nodes and the closed-form limits on a
//! node's slope sum.
//!
//! Every family is evaluated on the scalar argument `z = aᵀx + b`. The
//! flattest admissible node is the one anchored at the origin corner
//! `c0 = [0, ..., 0]` with `b = 0` whose value at the opposite corner
//! `c1 = [1, ..., 1]` equals the flatness parameter `r`. Solving that
//! condition for `Σ a_k` gives [`sigma_lim1`]; the steepest admissible node
//! has a slope sum `s` times larger.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActivationKind {
    Sigmoid,
    Gaussian,
    Softplus,
    Sine,
    Cosine,
}

impl ActivationKind {
    pub const ALL: [ActivationKind; 5] = [
        ActivationKind::Sigmoid,
        ActivationKind::Gaussian,
        ActivationKind::Softplus,
        ActivationKind::Sine,
        ActivationKind::Cosine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActivationKind::Sigmoid => "sigmoid",
            ActivationKind::Gaussian => "gaussian",
            ActivationKind::Softplus => "softplus",
            ActivationKind::Sine => "sine",
            ActivationKind::Cosine => "cosine",
        }
    }

    /// Value of the activation at zero argument, i.e. at the point the
    /// generator places inside the data hypercube.
    ///
    /// Sine shares cosine's interval formulas but is evaluated as `sin(z)`, so
    /// its value at zero argument is 0.
    pub fn anchor_value(self) -> f64 {
        match self {
            ActivationKind::Sigmoid => 0.5,
            ActivationKind::Gaussian => 1.0,
            ActivationKind::Softplus => LN_2,
            ActivationKind::Sine => 0.0,
            ActivationKind::Cosine => 1.0,
        }
    }

    /// Evaluates the activation at a precomputed argument `z = aᵀx + b`.
    #[inline]
    pub fn apply(self, z: f64) -> f64 {
        match self {
            ActivationKind::Sigmoid => {
                if z >= 0.0 {
                    1.0 / (1.0 + (-z).exp())
                } else {
                    let e = z.exp();
                    e / (1.0 + e)
                }
            }
            ActivationKind::Gaussian => (-(z * z)).exp(),
            // ln(1 + e^z) without overflow for large z
            ActivationKind::Softplus => z.max(0.0) + (-z.abs()).exp().ln_1p(),
            ActivationKind::Sine => z.sin(),
            ActivationKind::Cosine => z.cos(),
        }
    }

    pub fn r_domain(self) -> RDomain {
        match self {
            ActivationKind::Sigmoid => RDomain::open(0.0, 0.5),
            ActivationKind::Gaussian => RDomain::open(0.0, 1.0),
            ActivationKind::Softplus => RDomain::open(0.0, LN_2),
            ActivationKind::Sine | ActivationKind::Cosine => RDomain {
                min: -1.0,
                max: 1.0,
                min_inclusive: true,
                max_inclusive: false,
            },
        }
    }
}

impl fmt::Display for ActivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActivationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ActivationKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            Error::Config(format!(
                "unknown activation '{s}' (expected sigmoid, gaussian, softplus, sine or cosine)"
            ))
        })
    }
}

/// Admissible interval for the flatness parameter `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RDomain {
    pub min: f64,
    pub max: f64,
    pub min_inclusive: bool,
    pub max_inclusive: bool,
}

impl RDomain {
    fn open(min: f64, max: f64) -> Self {
        RDomain {
            min,
            max,
            min_inclusive: false,
            max_inclusive: false,
        }
    }

    pub fn contains(&self, r: f64) -> bool {
        let above = if self.min_inclusive {
            r >= self.min
        } else {
            r > self.min
        };
        let below = if self.max_inclusive {
            r <= self.max
        } else {
            r < self.max
        };
        r.is_finite() && above && below
    }

    /// `n` evenly spaced points strictly inside the interval (endpoints excluded
    /// even when closed).
    pub fn interior_points(&self, n: usize) -> Vec<f64> {
        let step = (self.max - self.min) / (n as f64 + 1.0);
        (1..=n).map(|i| self.min + step * i as f64).collect()
    }
}

impl fmt::Display for RDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.min_inclusive { '[' } else { '(' };
        let close = if self.max_inclusive { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.min, self.max)
    }
}

/// Evaluates `kind` at `aᵀx + b`.
pub fn evaluate(kind: ActivationKind, a: &[f64], b: f64, x: &[f64]) -> Result<f64> {
    if a.len() != x.len() || a.is_empty() {
        return Err(Error::Contract(format!(
            "weight vector has length {} but input has length {}",
            a.len(),
            x.len()
        )));
    }
    if !b.is_finite() || a.iter().chain(x).any(|v| !v.is_finite()) {
        return Err(Error::Contract("non-finite weight, bias or input".into()));
    }
    let z = a.iter().zip(x).map(|(ak, xk)| ak * xk).sum::<f64>() + b;
    Ok(kind.apply(z))
}

fn check_r(kind: ActivationKind, r: f64) -> Result<()> {
    let domain = kind.r_domain();
    if domain.contains(r) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "r = {r} is outside the valid interval {domain} for {kind}"
        )))
    }
}

/// Magnitude of the slope sum of the flattest admissible node.
pub fn sigma_lim1(kind: ActivationKind, r: f64) -> Result<f64> {
    check_r(kind, r)?;
    let lim = match kind {
        ActivationKind::Sigmoid => ((1.0 - r) / r).ln(),
        ActivationKind::Gaussian => (-r.ln()).sqrt(),
        // ln(e^r - 1) is negative on (0, ln 2); only the magnitude is kept
        ActivationKind::Softplus => -(r.exp_m1().ln()),
        ActivationKind::Sine | ActivationKind::Cosine => r.acos(),
    };
    Ok(lim)
}

/// Magnitude bounds `[lo, hi]` for a node's slope sum, with `hi = s·lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SigmaInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::Domain(format!(
                "invalid slope-sum interval [{lo}, {hi}]: need 0 < lo <= hi"
            )));
        }
        Ok(SigmaInterval { lo, hi })
    }

    pub fn contains_magnitude(&self, sigma: f64) -> bool {
        let m = sigma.abs();
        m >= self.lo && m <= self.hi
    }
}

pub fn sigma_interval(kind: ActivationKind, r: f64, s: f64) -> Result<SigmaInterval> {
    if !(s.is_finite() && s > 1.0) {
        return Err(Error::Domain(format!(
            "steepness s = {s} must be finite and greater than 1"
        )));
    }
    let lo = sigma_lim1(kind, r)?;
    SigmaInterval::new(lo, s * lo)
}
