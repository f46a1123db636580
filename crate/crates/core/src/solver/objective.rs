//! `int_0^1 phi(pi) gamma(pi) dpi` for piecewise-linear `phi`, evaluated either
//! by integration by parts against the closed-form antiderivatives or by
//! adaptive quadrature of the density.

use crate::catalog::{AntiderivativePair, Divergence, WeightFunction};
use crate::distributions::ExtendedReal;
use crate::error::{PinskerError, Result};
use crate::quadrature::{integrate_unit, QuadConfig, Quadrature};

use super::profile::{GapProfile, ENDPOINT_SNAP};

/// Relative tolerance between the two objective paths.
pub const PATH_AGREEMENT: f64 = 1e-8;

/// First and second antiderivatives of a weight density.
pub trait Antiderivatives {
    fn gamma(&self, pi: f64) -> f64;
    fn gamma_bar(&self, pi: f64) -> f64;
}

impl Antiderivatives for AntiderivativePair {
    fn gamma(&self, pi: f64) -> f64 {
        AntiderivativePair::gamma(self, pi)
    }

    fn gamma_bar(&self, pi: f64) -> f64 {
        AntiderivativePair::gamma_bar(self, pi)
    }
}

// (alpha pi + beta) Gamma(pi) - alpha GammaBar(pi). At pi = 0 or 1 the gap
// itself vanishes, so the first product is its limit 0 whenever GammaBar is
// finite there.
fn boundary_term<A: Antiderivatives>(alpha: f64, beta: f64, pi: f64, anti: &A) -> Option<f64> {
    let phi = alpha * pi + beta;
    let at_edge = pi <= 0.0 || pi >= 1.0;
    let first = if at_edge && phi.abs() <= ENDPOINT_SNAP {
        0.0
    } else {
        phi * anti.gamma(pi)
    };
    let second = if alpha == 0.0 {
        0.0
    } else {
        alpha * anti.gamma_bar(pi)
    };
    let term = first - second;
    term.is_finite().then_some(term)
}

/// `int_l^r (alpha pi + beta) gamma(pi) dpi` by integration by parts;
/// `None` when the integral diverges.
pub fn segment_integral<A: Antiderivatives>(
    alpha: f64,
    beta: f64,
    l: f64,
    r: f64,
    anti: &A,
) -> Option<f64> {
    if r <= l || (alpha == 0.0 && beta == 0.0) {
        return Some(0.0);
    }
    Some(boundary_term(alpha, beta, r, anti)? - boundary_term(alpha, beta, l, anti)?)
}

fn atom_sum(profile: &GapProfile, weight: &WeightFunction) -> f64 {
    weight
        .atoms
        .iter()
        .map(|a| a.mass * profile.eval(a.location))
        .sum()
}

/// Closed-form objective against arbitrary antiderivatives of `weight`'s density.
pub fn objective_with<A: Antiderivatives>(
    profile: &GapProfile,
    weight: &WeightFunction,
    anti: &A,
) -> ExtendedReal {
    let mut total = atom_sum(profile, weight);
    for s in profile.segments() {
        match segment_integral(s.alpha, s.beta, s.left, s.right, anti) {
            Some(v) => total += v,
            None => return ExtendedReal::INFINITY,
        }
    }
    ExtendedReal::clamped(total)
}

/// Objective of a gap profile: `sum_segments int (alpha pi + beta) gamma dpi`
/// plus `mass * phi(c)` for every atom, via the closed-form antiderivatives.
pub fn objective(profile: &GapProfile, divergence: Divergence) -> ExtendedReal {
    objective_with(profile, &divergence.weight(), &divergence.antiderivatives())
}

/// Same objective by adaptive quadrature of each segment.
pub fn objective_by_quadrature(
    profile: &GapProfile,
    divergence: Divergence,
    cfg: &QuadConfig,
) -> ExtendedReal {
    let weight = divergence.weight();
    let mut total = atom_sum(profile, &weight);
    for s in profile.segments().iter().filter(|s| !s.is_zero()) {
        match integrate_unit(
            |pi, rest| s.at_split(pi, rest) * weight.density_split(pi, rest),
            s.left,
            s.right,
            cfg,
        ) {
            Quadrature::Converged { value, .. } => total += value,
            Quadrature::Divergent => return ExtendedReal::INFINITY,
        }
    }
    ExtendedReal::clamped(total)
}

/// Both paths, required to agree to [`PATH_AGREEMENT`].
pub fn objective_checked(
    profile: &GapProfile,
    divergence: Divergence,
    cfg: &QuadConfig,
) -> Result<ExtendedReal> {
    let closed = objective(profile, divergence);
    let quadrature = objective_by_quadrature(profile, divergence, cfg);
    let agree = match (closed.is_finite(), quadrature.is_finite()) {
        (false, false) => true,
        (true, true) => {
            let (c, q) = (closed.value(), quadrature.value());
            (c - q).abs() <= PATH_AGREEMENT * c.abs().max(q.abs()).max(1e-300)
                || (c - q).abs() < 1e-14
        }
        _ => false,
    };
    if agree {
        Ok(closed)
    } else {
        Err(PinskerError::PathDisagreement {
            closed: closed.value(),
            quadrature: quadrature.value(),
        })
    }
}
