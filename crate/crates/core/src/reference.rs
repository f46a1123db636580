//! Earlier lower bounds on KL (and symmetric f-divergences) in terms of `V`,
//! kept for comparison with the tight bounds.

use crate::catalog::Divergence;
use crate::error::{PinskerError, Result};

/// `t` beyond which `sinh t` is no longer evaluated.
pub const FEDOTOV_T_MAX: f64 = 700.0;
const SERIES_T: f64 = 1e-4;

fn check_v(v: f64, closed: bool) -> Result<()> {
    let ok = if closed {
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
            domain: if closed { "[0, 2]" } else { "[0, 2)" },
        })
    }
}

/// `KL >= V^2 / 2`.
pub fn classical_pinsker(v: f64) -> Result<f64> {
    check_v(v, true)?;
    Ok(v * v / 2.0)
}

/// Polynomial refinements of the classical inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolynomialVariant {
    /// `V^2/2 + V^4/36`
    Kullback,
    /// `V^2/2 + V^4/36 + V^6/270`
    Topsoe,
    /// `max(vajda, V^2/2 + V^4/36 + V^8/288)`
    Toussaint,
}

pub fn polynomial_bound(variant: PolynomialVariant, v: f64) -> Result<f64> {
    check_v(v, true)?;
    let v2 = v * v;
    let base = v2 / 2.0 + v2 * v2 / 36.0;
    Ok(match variant {
        PolynomialVariant::Kullback => base,
        PolynomialVariant::Topsoe => base + v2 * v2 * v2 / 270.0,
        PolynomialVariant::Toussaint => {
            let poly = base + (v2 * v2).powi(2) / 288.0;
            if v < 2.0 {
                poly.max(vajda_bound(v)?)
            } else {
                f64::INFINITY
            }
        }
    })
}

/// `ln((2 + V) / (2 - V)) - 2V / (2 + V)`.
pub fn vajda_bound(v: f64) -> Result<f64> {
    check_v(v, false)?;
    Ok((((2.0 + v) / (2.0 - v)).ln() - 2.0 * v / (2.0 + v)).max(0.0))
}

/// `((2 - V)/2) f((2 + V)/(2 - V)) - f'(1) V` for divergences with a
/// weight symmetric about `1/2`. `f'(1)` is a central difference.
pub fn gilardoni_symmetric(divergence: Divergence, v: f64) -> Result<f64> {
    let spec = divergence.spec();
    if !spec.symmetric_gamma {
        return Err(PinskerError::Hypothesis {
            name: spec.name,
            reason: "weight is not symmetric about 1/2",
        });
    }
    check_v(v, false)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let f = spec.f;
    let h = 2e-6;
    let slope_at_one = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
    Ok(((2.0 - v) / 2.0) * f((2.0 + v) / (2.0 - v)) - slope_at_one * v)
}

/// `coth t - 1/t`.
fn coth_minus_inv(t: f64) -> f64 {
    if t <= SERIES_T {
        let t2 = t * t;
        t * (1.0 / 3.0 - t2 * (1.0 / 45.0 - t2 * (2.0 / 945.0 - t2 / 4725.0)))
    } else {
        1.0 / t.tanh() - 1.0 / t
    }
}

fn ln_sinh(t: f64) -> f64 {
    if t > 20.0 {
        t + (-(-2.0 * t).exp()).ln_1p() - std::f64::consts::LN_2
    } else {
        t.sinh().ln()
    }
}

/// Point `(V(t), L(t))` of the parametric tight KL-versus-V curve:
/// `V = t (1 - (coth t - 1/t)^2)`,
/// `L = ln(t / sinh t) + t coth t - t^2 / sinh^2 t`.
pub fn fedotov_curve(t: f64) -> Result<(f64, f64)> {
    if t.is_nan() || t <= 0.0 {
        return Err(PinskerError::Domain {
            what: "t",
            value: t,
            domain: "(0, 700]",
        });
    }
    if t > FEDOTOV_T_MAX {
        return Err(PinskerError::Overflow { t });
    }
    let c = coth_minus_inv(t);
    let v = t * (1.0 - c * c);
    let l = if t <= SERIES_T {
        let t2 = t * t;
        t2 * (0.5 - t2 * (1.0 / 12.0 - t2 * (1.0 / 81.0 - t2 * (1.0 / 600.0 - t2 / 4725.0))))
    } else {
        let inv_sinh = if t > 20.0 {
            2.0 * (-t).exp() / (1.0 - (-2.0 * t).exp())
        } else {
            1.0 / t.sinh()
        };
        t.ln() - ln_sinh(t) + t / t.tanh() - (t * inv_sinh).powi(2)
    };
    Ok((v, l))
}

/// The parametric curve inverted at `v` by bisection on `t`.
pub fn fedotov_bound(v: f64) -> Result<f64> {
    check_v(v, false)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let (v_max, _) = fedotov_curve(FEDOTOV_T_MAX)?;
    if v >= v_max {
        // V ~ 2 - 1/t and L ~ ln(2t) once coth t = 1 to double precision.
        return Ok((2.0 / (2.0 - v)).ln());
    }
    let (mut lo, mut hi) = (0.0, FEDOTOV_T_MAX);
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        t = 0.5 * (lo + hi);
        let (vt, _) = fedotov_curve(t)?;
        if (vt - v).abs() <= 1e-12 {
            break;
        }
        if vt < v {
            lo = t;
        } else {
            hi = t;
        }
    }
    Ok(fedotov_curve(t)?.1)
}
