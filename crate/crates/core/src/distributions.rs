//! Finite distributions and direct evaluation of divergences and 0-1 Bayes risk.
//!
//! All divergences are in nats. A pair `(P, Q)` is a two-class problem with
//! prior `pi` on the class drawn from `P`; its Bayes risk curve
//! `pi -> sum_x min(pi p(x), (1 - pi) q(x))` is concave and the generalized
//! variational divergence is the gap `min(pi, 1 - pi) - risk`.

use std::fmt;

use crate::catalog::DivergenceSpec;
use crate::error::{PinskerError, Result};

/// Tolerance on `sum(probs) == 1`.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// A non-negative real or `+inf`, never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal(0.0);
    pub const INFINITY: ExtendedReal = ExtendedReal(f64::INFINITY);

    /// Wraps `value`; NaN and negative inputs are rejected.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(PinskerError::Domain {
                what: "extended real",
                value,
                domain: "[0, +inf]",
            });
        }
        Ok(Self(value))
    }

    /// Wraps a value known to be non-negative up to rounding; tiny negatives
    /// are clamped to zero and NaN maps to `+inf`.
    pub(crate) fn clamped(value: f64) -> Self {
        if value.is_nan() {
            Self::INFINITY
        } else {
            Self(value.max(0.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{}", self.0)
        } else {
            f.write_str("inf")
        }
    }
}

impl From<ExtendedReal> for f64 {
    fn from(x: ExtendedReal) -> f64 {
        x.0
    }
}

/// A probability vector over a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    probs: Vec<f64>,
}

impl FiniteDistribution {
    /// Validates that every entry is a finite non-negative number and that the
    /// entries sum to one within [`SUM_TOLERANCE`]. No renormalization is done.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(PinskerError::InvalidDistribution("empty alphabet".into()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(PinskerError::InvalidDistribution(format!(
                "entry {i} = {p} is not a non-negative number"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(PinskerError::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Builds a distribution from non-negative weights by explicit renormalization.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) || weights.iter().any(|w| w.is_nan() || *w < 0.0) {
            return Err(PinskerError::InvalidDistribution(
                "weights must be non-negative with a positive finite sum".into(),
            ));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Two distributions on the same alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionPair {
    p: FiniteDistribution,
    q: FiniteDistribution,
}

impl DistributionPair {
    pub fn new(p: FiniteDistribution, q: FiniteDistribution) -> Result<Self> {
        if p.len() != q.len() {
            return Err(PinskerError::DimensionMismatch {
                left: p.len(),
                right: q.len(),
            });
        }
        Ok(Self { p, q })
    }

    /// Convenience constructor from raw probability vectors.
    pub fn from_vecs(p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        Self::new(FiniteDistribution::new(p)?, FiniteDistribution::new(q)?)
    }

    pub fn p(&self) -> &FiniteDistribution {
        &self.p
    }

    pub fn q(&self) -> &FiniteDistribution {
        &self.q
    }

    /// The same pair with the roles of `P` and `Q` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.p
            .probs
            .iter()
            .copied()
            .zip(self.q.probs.iter().copied())
    }

    /// Priors at which the Bayes risk curve changes slope: `q / (p + q)` for
    /// every cell carrying mass, sorted and deduplicated. Cells with `q = 0`
    /// kink at 0 and cells with `p = 0` at 1.
    pub fn risk_kinks(&self) -> Vec<f64> {
        let mut kinks: Vec<f64> = self
            .cells()
            .filter(|(p, q)| p + q > 0.0)
            .map(|(p, q)| q / (p + q))
            .collect();
        kinks.sort_by(f64::total_cmp);
        kinks.dedup();
        kinks
    }
}

fn check_prior(prior: f64) -> Result<()> {
    if (0.0..=1.0).contains(&prior) {
        Ok(())
    } else {
        Err(PinskerError::Domain {
            what: "prior",
            value: prior,
            domain: "[0, 1]",
        })
    }
}

/// `I_f(P, Q) = sum_x q f(p / q)` with the zero-mass conventions
/// `q = 0, p > 0 => p f_inf`, `p = 0, q > 0 => q f(0+)` and `p = q = 0 => 0`.
pub fn f_divergence(pair: &DistributionPair, spec: &DivergenceSpec) -> ExtendedReal {
    let mut total = 0.0;
    for (p, q) in pair.cells() {
        let term = match (p > 0.0, q > 0.0) {
            (false, false) => 0.0,
            (true, false) => p * spec.f_slope_at_inf,
            (false, true) => q * spec.f_at_zero,
            (true, true) => q * (spec.f)(p / q),
        };
        total += term;
        if total == f64::INFINITY {
            return ExtendedReal::INFINITY;
        }
    }
    ExtendedReal::clamped(total)
}

/// `V(P, Q) = sum_x |p(x) - q(x)|`, in `[0, 2]`.
pub fn variational_divergence(pair: &DistributionPair) -> f64 {
    pair.cells().map(|(p, q)| (p - q).abs()).sum()
}

/// 0-1 Bayes risk `sum_x min(pi p(x), (1 - pi) q(x))`.
pub fn bayes_risk(prior: f64, pair: &DistributionPair) -> Result<f64> {
    check_prior(prior)?;
    Ok(pair
        .cells()
        .map(|(p, q)| (prior * p).min((1.0 - prior) * q))
        .sum())
}

/// Generalized variational divergence `V_pi = min(pi, 1 - pi) - L(pi)`.
///
/// Evaluated as a sum over the cells whose Bayes decision has flipped
/// relative to the prior-only decision, which is algebraically identical but
/// vanishes exactly (rather than up to rounding) outside the outermost kinks
/// and is non-negative term by term.
pub fn generalized_variational(prior: f64, pair: &DistributionPair) -> Result<f64> {
    check_prior(prior)?;
    Ok(generalized_variational_split(prior, 1.0 - prior, pair))
}

/// [`generalized_variational`] at a prior given as `(pi, 1 - pi)`.
pub(crate) fn generalized_variational_split(pi: f64, rest: f64, pair: &DistributionPair) -> f64 {
    if pi <= 0.5 {
        pair.cells()
            .map(|(p, q)| (pi * p - rest * q).max(0.0))
            .sum()
    } else {
        pair.cells()
            .map(|(p, q)| (rest * q - pi * p).max(0.0))
            .sum()
    }
}
