//! Tight lower bounds on `I_f` from finitely many values `V_{pi_i}(P, Q)`.
//!
//! Every risk curve consistent with the constraints lies above the chord
//! interpolant of `(pi_i, psi_i)` and below the lower envelope of any family
//! of supporting lines through those points. The slopes `a_i` of these lines
//! range over a box; for each choice the envelope `psi_a` yields a gap profile
//! `phi_a` and the objective `int phi_a gamma`. Its minimum over the box is
//! the bound.

mod objective;
mod profile;

pub use objective::{
    objective, objective_by_quadrature, objective_checked, objective_with, segment_integral,
    Antiderivatives, PATH_AGREEMENT,
};
pub use profile::{GapProfile, GapSegment, Line, RiskProfile, ENDPOINT_SNAP, PRIOR_LINES};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::Divergence;
use crate::distributions::{generalized_variational, DistributionPair, ExtendedReal};
use crate::error::{PinskerError, Result};
use crate::optimize::coordinate_search;

const VALUE_SLACK: f64 = 1e-12;
const SLOPE_SLACK: f64 = 1e-12;
const MAX_GRID: usize = 2_000_000;
/// Cap on grid nodes per axis in [`SolverOptions`].
pub const MAX_AXIS_NODES: usize = 257;
const RANDOM_STARTS: usize = 20_000;

/// One observed value `v = V_pi(P, Q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintPoint {
    pub pi: f64,
    pub v: f64,
}

/// Constraints `V_{pi_i}(P, Q) = v_i` at strictly increasing priors.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSet {
    points: Vec<ConstraintPoint>,
}

impl ConstraintSet {
    /// Values within `1e-12` outside `[0, min(pi, 1 - pi)]` are snapped to
    /// the range; anything further out is rejected.
    pub fn new(points: Vec<ConstraintPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(PinskerError::InvalidConstraints(
                "at least one constraint is required".into(),
            ));
        }
        let mut out = Vec::with_capacity(points.len());
        for (index, p) in points.into_iter().enumerate() {
            if !(p.pi > 0.0 && p.pi < 1.0) {
                return Err(PinskerError::InvalidConstraints(format!(
                    "prior {} at index {index} must lie in (0, 1)",
                    p.pi
                )));
            }
            if let Some(prev) = out.last().map(|q: &ConstraintPoint| q.pi) {
                if p.pi <= prev {
                    return Err(PinskerError::InvalidConstraints(format!(
                        "priors must be strictly increasing (index {index})"
                    )));
                }
            }
            let max = p.pi.min(1.0 - p.pi);
            if !(p.v >= -VALUE_SLACK && p.v <= max + VALUE_SLACK) {
                return Err(PinskerError::InfeasibleValue {
                    index,
                    pi: p.pi,
                    v: p.v,
                    max,
                });
            }
            out.push(ConstraintPoint {
                pi: p.pi,
                v: p.v.clamp(0.0, max),
            });
        }
        Ok(Self { points: out })
    }

    /// Convenience constructor from `(pi, v)` tuples.
    pub fn from_tuples(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|&(pi, v)| ConstraintPoint { pi, v })
                .collect(),
        )
    }

    /// The constraints a concrete pair induces at `priors`.
    pub fn from_pair(pair: &DistributionPair, priors: &[f64]) -> Result<Self> {
        let points = priors
            .iter()
            .map(|&pi| {
                Ok(ConstraintPoint {
                    pi,
                    v: generalized_variational(pi, pair)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    /// The single constraint carried by the variational divergence `v`.
    pub fn from_variational(v: f64) -> Result<Self> {
        Self::new(vec![ConstraintPoint {
            pi: 0.5,
            v: v / 4.0,
        }])
    }

    pub fn points(&self) -> &[ConstraintPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `psi_i = min(pi_i, 1 - pi_i) - v_i`, padded with `psi_0 = psi_{n+1} = 0`.
pub fn psi_from_constraints(c: &ConstraintSet) -> Vec<f64> {
    let mut psi = Vec::with_capacity(c.len() + 2);
    psi.push(0.0);
    psi.extend(c.points.iter().map(|p| p.pi.min(1.0 - p.pi) - p.v));
    psi.push(0.0);
    psi
}

fn padded_priors(c: &ConstraintSet) -> Vec<f64> {
    let mut pis = Vec::with_capacity(c.len() + 2);
    pis.push(0.0);
    pis.extend(c.points.iter().map(|p| p.pi));
    pis.push(1.0);
    pis
}

/// Admissible slopes of supporting lines at each constraint point.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl SlopeBox {
    pub fn contains(&self, a: &[f64]) -> bool {
        a.len() == self.lower.len()
            && a.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| x >= lo - SLOPE_SLACK && x <= hi + SLOPE_SLACK)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }
}

/// `lower_i` is the chord slope to the next point, `upper_i` the chord slope
/// from the previous one.
pub fn slope_box(c: &ConstraintSet) -> Result<SlopeBox> {
    let psi = psi_from_constraints(c);
    let pis = padded_priors(c);
    let chord = |k: usize| (psi[k + 1] - psi[k]) / (pis[k + 1] - pis[k]);
    let n = c.len();
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for i in 1..=n {
        let (mut lo, mut hi) = (chord(i), chord(i - 1));
        if lo > hi {
            if lo - hi > SLOPE_SLACK {
                return Err(PinskerError::Infeasible { index: i - 1 });
            }
            let mid = 0.5 * (lo + hi);
            lo = mid;
            hi = mid;
        }
        lower.push(lo);
        upper.push(hi);
    }
    Ok(SlopeBox { lower, upper })
}

fn check_slopes(c: &ConstraintSet, a: &[f64]) -> Result<()> {
    let bx = slope_box(c)?;
    if a.len() != c.len() {
        return Err(PinskerError::InvalidConstraints(format!(
            "expected {} slopes, got {}",
            c.len(),
            a.len()
        )));
    }
    for (index, (&value, (&lower, &upper))) in
        a.iter().zip(bx.lower.iter().zip(&bx.upper)).enumerate()
    {
        if !(value >= lower - SLOPE_SLACK && value <= upper + SLOPE_SLACK) {
            return Err(PinskerError::SlopeOutOfBox {
                index,
                value,
                lower,
                upper,
            });
        }
    }
    Ok(())
}

/// Supporting lines through `(pi_i, psi_i)` with slopes `a`.
pub fn constraint_lines(c: &ConstraintSet, a: &[f64]) -> Vec<Line> {
    let psi = psi_from_constraints(c);
    c.points
        .iter()
        .zip(&psi[1..])
        .zip(a)
        .map(|((p, &y), &s)| Line::through(p.pi, y, s))
        .collect()
}

/// The maximal risk curve `psi_a` for slopes `a`.
pub fn risk_profile(c: &ConstraintSet, a: &[f64]) -> Result<RiskProfile> {
    check_slopes(c, a)?;
    Ok(RiskProfile::from_lines(&constraint_lines(c, a)))
}

/// The gap profile `phi_a = min(pi, 1 - pi) - psi_a`.
pub fn gap_segments(c: &ConstraintSet, a: &[f64]) -> Result<GapProfile> {
    Ok(risk_profile(c, a)?.gap())
}

/// Search settings for [`minimize_bound_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Minimum coarse grid nodes per axis.
    pub grid_points: usize,
    /// Axes get more nodes, up to [`MAX_AXIS_NODES`], while the whole grid
    /// stays within this many nodes.
    pub grid_budget: usize,
    /// Best grid nodes refined by coordinate search.
    pub starts: usize,
    /// Final step size of the refinement.
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid_points: 17,
            grid_budget: 20_000,
            starts: 4,
            tol: 1e-10,
        }
    }
}

/// Result of [`minimize_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSolution {
    pub bound: ExtendedReal,
    pub argmin: Vec<f64>,
    pub profile: GapProfile,
    pub risk: RiskProfile,
}

fn evaluate(c: &ConstraintSet, divergence: Divergence, a: &[f64]) -> f64 {
    let risk = RiskProfile::from_lines(&constraint_lines(c, a));
    objective(&risk.gap(), divergence).value()
}

fn candidates(bx: &SlopeBox, grid_points: usize) -> Vec<Vec<f64>> {
    let n = bx.dim();
    let axis = |i: usize, k: usize| {
        let (lo, hi) = (bx.lower[i], bx.upper[i]);
        if grid_points == 1 || hi <= lo {
            0.5 * (lo + hi)
        } else if k + 1 == grid_points {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (grid_points - 1) as f64
        }
    };
    let total = grid_points.checked_pow(n as u32).filter(|&t| t <= MAX_GRID);
    match total {
        Some(total) => (0..total)
            .map(|mut idx| {
                (0..n)
                    .map(|i| {
                        let k = idx % grid_points;
                        idx /= grid_points;
                        axis(i, k)
                    })
                    .collect()
            })
            .collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            (0..RANDOM_STARTS)
                .map(|_| {
                    (0..n)
                        .map(|i| bx.lower[i] + (bx.upper[i] - bx.lower[i]) * rng.gen::<f64>())
                        .collect()
                })
                .collect()
        }
    }
}

fn axis_nodes(opts: &SolverOptions, n: usize) -> usize {
    let mut k = opts.grid_points.max(2);
    while k < MAX_AXIS_NODES
        && (k + 1)
            .checked_pow(n as u32)
            .is_some_and(|t| t <= opts.grid_budget)
    {
        k += 1;
    }
    k
}

/// Node indices by increasing value, grid-local minima first so that every
/// basin the grid resolves gets a refinement start before a second start in
/// the same basin.
fn start_order(values: &[f64], n: usize, grid_points: usize) -> Vec<usize> {
    let by_value = |idx: &mut Vec<usize>| idx.sort_by(|&x, &y| values[x].total_cmp(&values[y]));
    let mut all: Vec<usize> = (0..values.len()).collect();
    if grid_points.checked_pow(n as u32) != Some(values.len()) {
        by_value(&mut all);
        return all;
    }
    let is_local_min = |idx: usize| {
        let mut stride = 1;
        for _ in 0..n {
            let k = (idx / stride) % grid_points;
            if (k > 0 && values[idx - stride] < values[idx])
                || (k + 1 < grid_points && values[idx + stride] < values[idx])
            {
                return false;
            }
            stride *= grid_points;
        }
        true
    };
    let (mut minima, mut rest): (Vec<usize>, Vec<usize>) =
        all.drain(..).partition(|&i| is_local_min(i));
    by_value(&mut minima);
    by_value(&mut rest);
    minima.extend(rest);
    minima
}

/// Tight lower bound on `I_f` under the constraints, default search settings.
pub fn minimize_bound(c: &ConstraintSet, divergence: Divergence) -> Result<BoundSolution> {
    minimize_bound_with(c, divergence, &SolverOptions::default())
}

/// Multi-start grid over the slope box followed by coordinate search from
/// the best nodes.
pub fn minimize_bound_with(
    c: &ConstraintSet,
    divergence: Divergence,
    opts: &SolverOptions,
) -> Result<BoundSolution> {
    let bx = slope_box(c)?;
    let grid_points = axis_nodes(opts, bx.dim());
    let nodes = candidates(&bx, grid_points);
    let values: Vec<f64> = nodes
        .par_iter()
        .map(|a| evaluate(c, divergence, a))
        .collect();
    let order = start_order(&values, bx.dim(), grid_points);
    let scored: Vec<(f64, Vec<f64>)> = order
        .into_iter()
        .map(|k| (values[k], nodes[k].clone()))
        .collect();

    let steps: Vec<f64> = (0..bx.dim())
        .map(|i| (bx.upper[i] - bx.lower[i]).max(0.0) / (grid_points - 1) as f64)
        .collect();
    let mut best = scored[0].clone();
    if best.0.is_finite() {
        let refined: Vec<(f64, Vec<f64>)> = scored
            .iter()
            .filter(|s| s.0.is_finite())
            .take(opts.starts.max(1))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(_, start)| {
                let (a, fa) = coordinate_search(
                    |a| evaluate(c, divergence, a),
                    start,
                    &bx.lower,
                    &bx.upper,
                    &steps,
                    opts.tol,
                );
                (fa, a)
            })
            .collect();
        for r in refined {
            if r.0 < best.0 {
                best = r;
            }
        }
    }

    let (value, argmin) = best;
    let risk = RiskProfile::from_lines(&constraint_lines(c, &argmin));
    let profile = risk.gap();
    Ok(BoundSolution {
        bound: ExtendedReal::clamped(value),
        argmin,
        profile,
        risk,
    })
}
