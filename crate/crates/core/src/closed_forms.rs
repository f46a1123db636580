//! Explicit bounds in terms of the variational divergence alone.
//!
//! With a single constraint at `pi = 1/2` the supporting line has slope `a`
//! in `[-2 psi_1, 2 psi_1]` where `psi_1 = 1/2 - V/4`. It meets the prior
//! lines at `L = (a/2 - psi_1) / (a - 1)` and `U = (1 - psi_1 + a/2) / (a + 1)`,
//! so the bound is a one-dimensional minimization. For weights symmetric
//! about `1/2` (and convex) the minimizer is `a = 0`.

use crate::catalog::Divergence;
use crate::error::{PinskerError, Result};
use crate::optimize::scan_then_golden;
use crate::solver::segment_integral;

const SCAN_POINTS: usize = 64;
const KL_SCAN_POINTS: usize = 128;
const TOL: f64 = 1e-10;

fn check_v(v: f64, allow_two: bool) -> Result<()> {
    let ok = if allow_two {
        (0.0..=2.0).contains(&v)
    } else {
        (0.0..2.0).contains(&v)
    };
    if ok {
        Ok(())
    } else {
        Err(PinskerError::Domain {
            what: "v",
            value: v,
            domain: if allow_two { "[0, 2]" } else { "[0, 2)" },
        })
    }
}

// Atom contribution for a profile with phi(1/2) = V / 4.
fn atom_term(divergence: Divergence, v: f64) -> f64 {
    divergence
        .weight()
        .atoms
        .iter()
        .map(|a| a.mass * (v / 4.0 - (a.location - 0.5).abs()).max(0.0))
        .sum()
}

/// `2 [GammaBar(1/2 - V/4) + (V/4) Gamma(1/2) - GammaBar(1/2)]`, plus atoms.
pub fn symmetric_bound(divergence: Divergence, v: f64) -> Result<f64> {
    let spec = divergence.spec();
    if !spec.symmetric_gamma || !spec.convex_gamma {
        return Err(PinskerError::Hypothesis {
            name: spec.name,
            reason: "weight is not symmetric about 1/2 and convex; use asymmetric_n1_bound",
        });
    }
    check_v(v, true)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let anti = divergence.antiderivatives();
    let psi1 = 0.5 - v / 4.0;
    let value = 2.0 * (anti.gamma_bar(psi1) + v / 4.0 * anti.gamma(0.5) - anti.gamma_bar(0.5))
        + atom_term(divergence, v);
    Ok(if value.is_nan() {
        f64::INFINITY
    } else {
        value.max(0.0)
    })
}

/// Objective of the single-constraint profile with slope `a`.
fn n1_objective(divergence: Divergence, v: f64, a: f64) -> f64 {
    let anti = divergence.antiderivatives();
    let psi1 = 0.5 - v / 4.0;
    let (l, u) = (
        (a / 2.0 - psi1) / (a - 1.0),
        (1.0 - psi1 + a / 2.0) / (a + 1.0),
    );
    let (l, u) = (l.clamp(0.0, 0.5), u.clamp(0.5, 1.0));
    // phi = pi - psi_a on [L, 1/2] and 1 - pi - psi_a on [1/2, U].
    let left = segment_integral(1.0 - a, a / 2.0 - psi1, l, 0.5, &anti);
    let right = segment_integral(-1.0 - a, 1.0 - psi1 + a / 2.0, 0.5, u, &anti);
    match (left, right) {
        (Some(x), Some(y)) => x + y + atom_term(divergence, v),
        _ => f64::INFINITY,
    }
}

/// `(a*, bound)`: the single-constraint bound minimized over the slope.
pub fn asymmetric_n1(divergence: Divergence, v: f64) -> Result<(f64, f64)> {
    check_v(v, true)?;
    if v == 0.0 {
        return Ok((0.0, 0.0));
    }
    let half_width = 2.0 * (0.5 - v / 4.0);
    if half_width == 0.0 {
        return Ok((0.0, n1_objective(divergence, v, 0.0)));
    }
    Ok(scan_then_golden(
        |a| n1_objective(divergence, v, a),
        -half_width,
        half_width,
        SCAN_POINTS,
        TOL,
    ))
}

/// Bound value of [`asymmetric_n1`].
pub fn asymmetric_n1_bound(divergence: Divergence, v: f64) -> Result<f64> {
    Ok(asymmetric_n1(divergence, v)?.1)
}

// c ln(num / den) with 0 ln(.) = 0 and ln of a vanishing denominator = +inf.
fn c_ln_ratio(c: f64, num: f64, den: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    let r = num / den;
    if r > 0.0 && r.is_finite() {
        c * r.ln()
    } else {
        f64::INFINITY
    }
}

fn kl_beta_objective(v: f64, beta: f64) -> f64 {
    c_ln_ratio((v + 2.0 - beta) / 4.0, beta - 2.0 - v, beta - 2.0 + v)
        + c_ln_ratio((beta + 2.0 - v) / 4.0, beta + 2.0 - v, beta + 2.0 + v)
}

/// The best possible KL bound: minimum over `beta` in `[V - 2, 2 - V]`.
pub fn kl_bound(v: f64) -> Result<f64> {
    check_v(v, false)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let (_, value) = scan_then_golden(
        |b| kl_beta_objective(v, b),
        v - 2.0,
        2.0 - v,
        KL_SCAN_POINTS,
        TOL,
    );
    Ok(value)
}

fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Per-divergence explicit formulas for the tight bound given `V`.
///
/// `v = 2` is accepted where the bound has a finite limit or diverges
/// cleanly (`hellinger`, `jensen_shannon`, `triangular`, `variational`,
/// `agm_t`) and rejected otherwise.
pub fn corollary_bound(divergence: Divergence, v: f64) -> Result<f64> {
    use Divergence::*;
    let allow_two = matches!(
        divergence,
        Hellinger | JensenShannon | Triangular | Variational | AgmT
    );
    check_v(v, allow_two)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let value = match divergence {
        Variational => v,
        Kl => kl_bound(v)?,
        Triangular => v * v / 2.0,
        Hellinger => 2.0 - (4.0 - v * v).sqrt(),
        Jeffreys => v * ((2.0 + v) / (2.0 - v)).ln(),
        SymChi2 => 8.0 * v * v / (4.0 - v * v),
        JensenShannon => {
            // (1/2 - V/4) ln(2 - V) + (1/2 + V/4) ln(2 + V) - ln 2
            let (a, b) = (2.0 - v, 2.0 + v);
            (xlnx(a) + xlnx(b)) / 4.0 - std::f64::consts::LN_2
        }
        AgmT => {
            let s = (4.0 - v * v).sqrt();
            if s == 0.0 {
                f64::INFINITY
            } else {
                (4.0 / s).ln() - std::f64::consts::LN_2
            }
        }
        Chi2 => {
            if v < 1.0 {
                v * v
            } else {
                v / (2.0 - v)
            }
        }
    };
    Ok(value.max(0.0))
}

/// Minimizing slope of the KL single-constraint problem, `a = beta / 2`.
pub fn kl_argmin_slope(v: f64) -> Result<f64> {
    check_v(v, false)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let (b, _) = scan_then_golden(
        |b| kl_beta_objective(v, b),
        v - 2.0,
        2.0 - v,
        KL_SCAN_POINTS,
        TOL,
    );
    Ok(b / 2.0)
}
