//! Independent checks on the solver: a brute-force slope grid, explicit
//! pairs realizing a risk profile, and a randomized search over such pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::Divergence;
use crate::distributions::{f_divergence, DistributionPair, ExtendedReal};
use crate::error::{PinskerError, Result};
use crate::quadrature::{integrate_unit, QuadConfig, Quadrature, OVERFLOW_THRESHOLD};
use crate::solver::{
    constraint_lines, minimize_bound, psi_from_constraints, slope_box, ConstraintSet, Line,
    RiskProfile, ENDPOINT_SNAP, PRIOR_LINES,
};

/// Largest constraint count accepted by [`slope_grid_bound`].
pub const MAX_GRID_DIM: usize = 3;
const RESIDUAL_DROP: f64 = 1e-12;
const SLOPE_SLACK: f64 = 1e-12;

/// `int_0^1 phi gamma` for `phi = min(pi, 1 - pi) - min(lines)`, by direct
/// quadrature between all pairwise crossings.
fn pointwise_objective(lines: &[Line], divergence: Divergence, cfg: &QuadConfig) -> f64 {
    let weight = divergence.weight();
    let mut all = lines.to_vec();
    all.extend_from_slice(&PRIOR_LINES);
    // Each line by its values at pi = 0 and pi = 1, rounding residue dropped.
    let snap = |y: f64| if y.abs() <= ENDPOINT_SNAP { 0.0 } else { y };
    let ends: Vec<(f64, f64)> = all
        .iter()
        .map(|l| (snap(l.intercept), snap(l.slope + l.intercept)))
        .collect();
    let phi = |pi: f64, rest: f64| {
        let psi = ends
            .iter()
            .map(|&(y0, y1)| y0 * rest + y1 * pi)
            .fold(f64::INFINITY, f64::min);
        (pi.min(rest) - psi).max(0.0)
    };

    let mut cuts = vec![0.0, 0.5, 1.0];
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if a.slope != b.slope {
                let x = (b.intercept - a.intercept) / (a.slope - b.slope);
                if x > 0.0 && x < 1.0 {
                    cuts.push(x);
                }
            }
        }
    }
    cuts.extend(weight.atoms.iter().map(|a| a.location));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let at = |x: f64| phi(x, 1.0 - x);
    let mut total: f64 = weight.atoms.iter().map(|a| a.mass * at(a.location)).sum();
    for w in cuts.windows(2) {
        let (l, r) = (w[0], w[1]);
        if at(l) <= ENDPOINT_SNAP && at(r) <= ENDPOINT_SNAP && at(0.5 * (l + r)) <= ENDPOINT_SNAP {
            continue;
        }
        match integrate_unit(
            |pi, rest| phi(pi, rest) * weight.density_split(pi, rest),
            l,
            r,
            cfg,
        ) {
            Quadrature::Converged { value, .. } => total += value,
            Quadrature::Divergent => return f64::INFINITY,
        }
        if total > OVERFLOW_THRESHOLD {
            return f64::INFINITY;
        }
    }
    total
}

/// Minimum of the objective over a uniform `resolution^n` grid on the slope
/// box, each objective computed by quadrature of the pointwise gap curve.
pub fn slope_grid_bound(
    c: &ConstraintSet,
    divergence: Divergence,
    resolution: usize,
    cfg: &QuadConfig,
) -> Result<ExtendedReal> {
    let n = c.len();
    if n > MAX_GRID_DIM {
        return Err(PinskerError::InvalidConstraints(format!(
            "slope grid supports at most {MAX_GRID_DIM} constraints, got {n}"
        )));
    }
    if resolution == 0 {
        return Err(PinskerError::Domain {
            what: "resolution",
            value: 0.0,
            domain: "positive integers",
        });
    }
    let bx = slope_box(c)?;
    let node = |i: usize, k: usize| {
        let (lo, hi) = (bx.lower[i], bx.upper[i]);
        if resolution == 1 {
            0.5 * (lo + hi)
        } else if k + 1 == resolution {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (resolution - 1) as f64
        }
    };
    let total = resolution.pow(n as u32);
    let best = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let a: Vec<f64> = (0..n)
                .map(|i| {
                    let k = idx % resolution;
                    idx /= resolution;
                    node(i, k)
                })
                .collect();
            pointwise_objective(&constraint_lines(c, &a), divergence, cfg)
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(ExtendedReal::clamped(best))
}

/// A pair whose Bayes risk curve is exactly `profile`.
///
/// Each kink `c` with slope drop `d` becomes a cell with `p = (1 - c) d` and
/// `q = c d`; leftover mass goes to one cell only `P` charges and one only
/// `Q` charges.
pub fn achieving_pair(profile: &RiskProfile) -> Result<DistributionPair> {
    let slopes = profile.slopes();
    if slopes.iter().any(|s| s.abs() > 1.0 + SLOPE_SLACK) {
        return Err(PinskerError::NonRealizable(
            "risk slopes must lie in [-1, 1]".into(),
        ));
    }
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (c, d) in profile.kinks() {
        if d > 0.0 {
            p.push((1.0 - c) * d);
            q.push(c * d);
        }
    }
    let p0 = 1.0 - p.iter().sum::<f64>();
    let q0 = 1.0 - q.iter().sum::<f64>();
    for (name, r) in [("P", p0), ("Q", q0)] {
        if r < -RESIDUAL_DROP {
            return Err(PinskerError::NonRealizable(format!(
                "negative residual mass {r} for {name}"
            )));
        }
    }
    if p0 > RESIDUAL_DROP {
        p.push(p0);
        q.push(0.0);
    }
    if q0 > RESIDUAL_DROP {
        p.push(0.0);
        q.push(q0);
    }
    if p.is_empty() {
        return Err(PinskerError::NonRealizable("profile has no mass".into()));
    }
    DistributionPair::from_vecs(p, q)
}

/// Summary of [`distribution_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// Smallest divergence found, `None` when no trial produced a pair.
    pub best: Option<ExtendedReal>,
    /// The solver bound the search is compared against.
    pub bound: ExtendedReal,
    /// `best - bound`; `NaN` without a pair, `0` when both are infinite.
    pub gap: f64,
    pub realized: usize,
    pub trials: usize,
    pub best_pair: Option<DistributionPair>,
}

impl SearchOutcome {
    pub fn exhausted(&self) -> bool {
        self.best.is_none()
    }
}

/// Derived per-trial seed; trials are reproducible independently of order.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut z = seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random concave risk curve through the constraints: supporting lines
/// with random admissible slopes plus up to five extra cutting lines that
/// stay above every constraint point.
pub fn random_profile(c: &ConstraintSet, rng: &mut ChaCha8Rng) -> Result<RiskProfile> {
    let bx = slope_box(c)?;
    let a: Vec<f64> = (0..bx.dim())
        .map(|i| {
            let (lo, hi) = (bx.lower[i], bx.upper[i]);
            match rng.gen_range(0..10) {
                0 => lo,
                1 => hi,
                _ => lo + (hi - lo) * rng.gen::<f64>(),
            }
        })
        .collect();
    let mut lines = constraint_lines(c, &a);

    let psi = psi_from_constraints(c);
    let mut pis = vec![0.0];
    pis.extend(c.points().iter().map(|p| p.pi));
    pis.push(1.0);
    let chord = |x: f64| {
        let k = pis.partition_point(|&p| p <= x).clamp(1, pis.len() - 1);
        psi[k - 1] + (psi[k] - psi[k - 1]) * (x - pis[k - 1]) / (pis[k] - pis[k - 1])
    };

    for _ in 0..rng.gen_range(0..=5) {
        let current = RiskProfile::from_lines(&lines);
        let x: f64 = rng.gen_range(0.0..1.0);
        if pis.contains(&x) {
            continue;
        }
        let (lo_y, hi_y) = (chord(x), current.eval(x));
        if hi_y <= lo_y {
            continue;
        }
        let y = lo_y + (hi_y - lo_y) * rng.gen::<f64>();
        let mut s_lo = f64::NEG_INFINITY;
        let mut s_hi = f64::INFINITY;
        for (&pk, &yk) in pis.iter().zip(&psi) {
            let s = (yk - y) / (pk - x);
            if pk > x {
                s_lo = s_lo.max(s);
            } else {
                s_hi = s_hi.min(s);
            }
        }
        let (s_lo, s_hi) = (s_lo.max(-1.0), s_hi.min(1.0));
        if s_hi < s_lo {
            continue;
        }
        let s = s_lo + (s_hi - s_lo) * rng.gen::<f64>();
        lines.push(Line::through(x, y, s));
    }
    Ok(RiskProfile::from_lines(&lines))
}

/// Random achieving pairs consistent with `c`; the smallest divergence found
/// and its gap above the solver bound.
pub fn distribution_search(
    c: &ConstraintSet,
    divergence: Divergence,
    trials: usize,
    seed: u64,
) -> Result<SearchOutcome> {
    let bound = minimize_bound(c, divergence)?.bound;
    let spec = divergence.spec();
    let found: Vec<(ExtendedReal, DistributionPair)> = (0..trials)
        .into_par_iter()
        .filter_map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
            let profile = random_profile(c, &mut rng).ok()?;
            let pair = achieving_pair(&profile).ok()?;
            Some((f_divergence(&pair, &spec), pair))
        })
        .collect();
    let realized = found.len();
    let best = found
        .into_iter()
        .min_by(|x, y| x.0.value().total_cmp(&y.0.value()));
    let gap = match &best {
        None => f64::NAN,
        Some((b, _)) if !b.is_finite() && !bound.is_finite() => 0.0,
        Some((b, _)) => b.value() - bound.value(),
    };
    Ok(SearchOutcome {
        best: best.as_ref().map(|b| b.0),
        bound,
        gap,
        realized,
        trials,
        best_pair: best.map(|b| b.1),
    })
}
