//! Piecewise-linear risk curves `psi` and gap curves `phi = min(pi, 1 - pi) - psi`.

use crate::error::{PinskerError, Result};

/// Gap values this close to zero at `pi = 0` or `pi = 1` are taken as zero.
pub const ENDPOINT_SNAP: f64 = 1e-14;

const PARALLEL_SLOPES: f64 = 1e-12;

/// `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
}

impl Line {
    pub fn through(x: f64, y: f64, slope: f64) -> Self {
        Self {
            slope,
            intercept: y - slope * x,
        }
    }

    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    /// Abscissa where `other` (with a smaller slope) overtakes `self` as the minimum.
    fn crossing(&self, other: &Line) -> f64 {
        (other.intercept - self.intercept) / (self.slope - other.slope)
    }
}

/// The two lines bounding every risk curve: `psi <= pi` and `psi <= 1 - pi`.
pub const PRIOR_LINES: [Line; 2] = [
    Line {
        slope: 1.0,
        intercept: 0.0,
    },
    Line {
        slope: -1.0,
        intercept: 1.0,
    },
];

/// Pieces `(left, right, line)` of the pointwise minimum of `lines` on `[0, 1]`.
pub(crate) fn lower_envelope(lines: &[Line]) -> Vec<(f64, f64, Line)> {
    let mut sorted = lines.to_vec();
    sorted.sort_by(|a, b| {
        b.slope
            .total_cmp(&a.slope)
            .then(a.intercept.total_cmp(&b.intercept))
    });
    // Near-parallel lines have numerically meaningless crossings; of two
    // such lines keep the lower one at the midpoint.
    let mut deduped: Vec<Line> = Vec::with_capacity(sorted.len());
    for line in sorted {
        match deduped.last_mut() {
            Some(kept) if (kept.slope - line.slope).abs() <= PARALLEL_SLOPES => {
                if line.at(0.5) < kept.at(0.5) {
                    *kept = line;
                }
            }
            _ => deduped.push(line),
        }
    }
    let sorted = deduped;

    let mut hull: Vec<Line> = Vec::with_capacity(sorted.len());
    for line in sorted {
        while hull.len() >= 2 {
            let n = hull.len();
            if hull[n - 2].crossing(&line) <= hull[n - 2].crossing(&hull[n - 1]) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }

    let mut pieces = Vec::with_capacity(hull.len());
    for (k, line) in hull.iter().enumerate() {
        let left = if k == 0 {
            0.0
        } else {
            hull[k - 1].crossing(line).max(0.0)
        };
        let right = if k + 1 == hull.len() {
            1.0
        } else {
            line.crossing(&hull[k + 1]).min(1.0)
        };
        if right > left {
            pieces.push((left, right, *line));
        }
    }
    // A line through a corner beats every steeper line through it on the
    // whole interval; rounding can still leave those a sliver at the corner.
    while pieces.len() >= 2 && pieces[pieces.len() - 2].2.at(1.0).abs() <= ENDPOINT_SNAP {
        pieces.pop();
        pieces.last_mut().unwrap().1 = 1.0;
    }
    while pieces.len() >= 2 && pieces[1].2.at(0.0).abs() <= ENDPOINT_SNAP {
        pieces.remove(0);
        pieces[0].0 = 0.0;
    }
    pieces
}

/// A concave piecewise-linear Bayes risk curve on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskProfile {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl RiskProfile {
    /// Builds the profile through `(breakpoints[k], values[k])`.
    ///
    /// Requires `breakpoints` to run strictly increasing from 0 to 1, the
    /// curve to vanish at both ends, to be concave and to stay between 0 and
    /// `min(pi, 1 - pi)`.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let bad = |msg: &str| Err(PinskerError::NonRealizable(msg.to_string()));
        if breakpoints.len() < 2 || breakpoints.len() != values.len() {
            return bad("need matching breakpoints and values, at least two");
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return bad("breakpoints must start at 0 and end at 1");
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return bad("breakpoints must be strictly increasing");
        }
        if values[0].abs() > 1e-12 || values.last().unwrap().abs() > 1e-12 {
            return bad("risk must vanish at pi = 0 and pi = 1");
        }
        let slopes: Vec<f64> = breakpoints
            .windows(2)
            .zip(values.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect();
        let profile = Self::merged(breakpoints, values, slopes);
        profile.validate()?;
        Ok(profile)
    }

    /// Pointwise minimum of `lines` and the two prior lines.
    pub fn from_lines(lines: &[Line]) -> Self {
        let mut all = lines.to_vec();
        all.extend_from_slice(&PRIOR_LINES);
        let pieces = lower_envelope(&all);
        let mut breakpoints = Vec::with_capacity(pieces.len() + 1);
        let mut values = Vec::with_capacity(pieces.len() + 1);
        let mut slopes = Vec::with_capacity(pieces.len());
        for (left, _, line) in &pieces {
            breakpoints.push(*left);
            values.push(line.at(*left));
            slopes.push(line.slope);
        }
        let (_, right, last) = pieces
            .last()
            .expect("prior lines keep the envelope non-empty");
        breakpoints.push(*right);
        values.push(last.at(*right));
        Self::merged(breakpoints, values, slopes)
    }

    fn merged(breakpoints: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Self {
        let mut bp = vec![breakpoints[0]];
        let mut vals = vec![values[0]];
        let mut sl: Vec<f64> = Vec::with_capacity(slopes.len());
        for (k, &s) in slopes.iter().enumerate() {
            if let Some(&prev) = sl.last() {
                if (prev - s).abs() <= 1e-15 {
                    *bp.last_mut().unwrap() = breakpoints[k + 1];
                    *vals.last_mut().unwrap() = values[k + 1];
                    continue;
                }
            }
            sl.push(s);
            bp.push(breakpoints[k + 1]);
            vals.push(values[k + 1]);
        }
        Self {
            breakpoints: bp,
            values: vals,
            slopes: sl,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.slopes.windows(2).any(|w| w[1] > w[0] + 1e-12) {
            return Err(PinskerError::NonRealizable(
                "risk curve is not concave".into(),
            ));
        }
        for (&x, &y) in self.breakpoints.iter().zip(&self.values) {
            if y < -1e-12 || y > x.min(1.0 - x) + 1e-12 {
                return Err(PinskerError::NonRealizable(format!(
                    "risk {y} at pi = {x} leaves [0, min(pi, 1 - pi)]"
                )));
            }
        }
        Ok(())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    fn segment_of(&self, pi: f64) -> usize {
        let k = self.breakpoints.partition_point(|&x| x <= pi);
        k.saturating_sub(1).min(self.slopes.len() - 1)
    }

    pub fn eval(&self, pi: f64) -> f64 {
        let k = self.segment_of(pi);
        self.values[k] + self.slopes[k] * (pi - self.breakpoints[k])
    }

    /// Interior kinks `(location, slope drop)`.
    pub fn kinks(&self) -> Vec<(f64, f64)> {
        self.slopes
            .windows(2)
            .zip(&self.breakpoints[1..])
            .map(|(s, &c)| (c, s[0] - s[1]))
            .collect()
    }

    /// The matching gap curve `min(pi, 1 - pi) - psi`.
    pub fn gap(&self) -> GapProfile {
        let mut cuts = self.breakpoints.clone();
        cuts.push(0.5);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);

        let mut segments: Vec<GapSegment> = Vec::with_capacity(cuts.len());
        for w in cuts.windows(2) {
            let (left, right) = (w[0], w[1]);
            let k = self.segment_of(0.5 * (left + right));
            let slope = self.slopes[k];
            let intercept = self.values[k] - slope * self.breakpoints[k];
            let (alpha, mut beta) = if right <= 0.5 {
                (1.0 - slope, -intercept)
            } else {
                (-1.0 - slope, 1.0 - intercept)
            };
            // Rounding residue of a line through a corner; phi vanishes there.
            if left == 0.0 && beta.abs() <= ENDPOINT_SNAP {
                beta = 0.0;
            }
            if right == 1.0 && (alpha + beta).abs() <= ENDPOINT_SNAP {
                beta = -alpha;
            }
            if let Some(last) = segments.last_mut() {
                if (last.alpha - alpha).abs() <= 1e-14 && (last.beta - beta).abs() <= 1e-14 {
                    last.right = right;
                    continue;
                }
            }
            segments.push(GapSegment {
                left,
                right,
                alpha,
                beta,
            });
        }
        GapProfile { segments }
    }
}

/// `phi(pi) = alpha * pi + beta` on `[left, right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSegment {
    pub left: f64,
    pub right: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GapSegment {
    pub fn at(&self, pi: f64) -> f64 {
        self.alpha * pi + self.beta
    }

    /// `phi` at a prior given as `(pi, 1 - pi)`; above `1/2` it is evaluated
    /// from the value at `pi = 1`, which keeps the tail at full precision.
    pub fn at_split(&self, pi: f64, rest: f64) -> f64 {
        if pi <= 0.5 {
            self.alpha * pi + self.beta
        } else {
            (self.alpha + self.beta) - self.alpha * rest
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }
}

/// A piecewise-linear candidate `V_pi` curve covering `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    segments: Vec<GapSegment>,
}

impl GapProfile {
    pub fn segments(&self) -> &[GapSegment] {
        &self.segments
    }

    /// The profile that vanishes everywhere.
    pub fn zero() -> Self {
        Self {
            segments: vec![GapSegment {
                left: 0.0,
                right: 1.0,
                alpha: 0.0,
                beta: 0.0,
            }],
        }
    }

    pub fn eval(&self, pi: f64) -> f64 {
        let k = self
            .segments
            .partition_point(|s| s.right < pi)
            .min(self.segments.len() - 1);
        self.segments[k].at(pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_of_prior_lines() {
        let p = RiskProfile::from_lines(&[]);
        assert_eq!(p.breakpoints(), &[0.0, 0.5, 1.0]);
        assert_eq!(p.slopes(), &[1.0, -1.0]);
        assert_eq!(p.kinks(), vec![(0.5, 2.0)]);
        assert!(p.gap().segments().iter().all(GapSegment::is_zero));
    }

    #[test]
    fn envelope_drops_dominated_lines() {
        let lines = [Line::through(0.5, 0.25, 0.0), Line::through(0.5, 0.9, 0.0)];
        let p = RiskProfile::from_lines(&lines);
        assert_eq!(p.breakpoints(), &[0.0, 0.25, 0.75, 1.0]);
        assert_eq!(p.slopes(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn line_through_corner_keeps_zero_pieces_out() {
        // Passes through (1, 0): the 1 - pi line is active only at pi = 1.
        let p = RiskProfile::from_lines(&[Line::through(1.0, 0.0, -0.2)]);
        assert_eq!(p.slopes().len(), 2);
        assert!((p.breakpoints()[1] - 0.2 / 1.2).abs() < 1e-15);
    }

    #[test]
    fn rounded_corner_crossing_is_dropped() {
        // Lower box slope of (0.72, 0.0779...) puts the line through (1, ~0).
        let psi = 0.28 - 0.202_063_080_043_792_25;
        let line = Line::through(0.72, psi, -psi / 0.28);
        let p = RiskProfile::from_lines(&[line]);
        assert_eq!(*p.breakpoints().last().unwrap(), 1.0);
        assert!(p.breakpoints()[p.breakpoints().len() - 2] < 0.99);
        let last = *p.gap().segments().last().unwrap();
        assert_eq!(last.right, 1.0);
        assert_eq!(last.alpha + last.beta, 0.0);
    }

    #[test]
    fn near_parallel_lines_collapse() {
        let lines = [
            Line {
                slope: -0.548_614_418_554_085_9,
                intercept: 0.548_614_418_554_085_9,
            },
            Line {
                slope: -0.548_614_418_554_084_4,
                intercept: 0.548_614_418_554_085_3,
            },
            Line {
                slope: 0.711_220_075_426_16,
                intercept: 0.056_413_182_390_274_264,
            },
        ];
        let p = RiskProfile::from_lines(&lines);
        let (bp, vals, sl) = (p.breakpoints(), p.values(), p.slopes());
        for k in 0..sl.len() {
            let predicted = vals[k] + sl[k] * (bp[k + 1] - bp[k]);
            assert!((predicted - vals[k + 1]).abs() < 1e-12);
        }
    }

    #[test]
    fn explicit_profile_validation() {
        assert!(RiskProfile::new(vec![0.0, 0.1, 0.9, 1.0], vec![0.0, 0.1, 0.1, 0.0]).is_ok());
        // Zero risk everywhere: disjoint supports.
        assert!(RiskProfile::new(vec![0.0, 0.5, 1.0], vec![0.0, 0.0, 0.0]).is_ok());
        assert!(RiskProfile::new(
            vec![0.0, 0.25, 0.5, 0.75, 1.0],
            vec![0.0, 0.1, 0.05, 0.1, 0.0]
        )
        .is_err());
        // Above min(pi, 1 - pi).
        assert!(RiskProfile::new(vec![0.0, 0.2, 1.0], vec![0.0, 0.3, 0.0]).is_err());
        assert!(RiskProfile::new(vec![0.0, 1.0], vec![0.1, 0.0]).is_err());
    }

    #[test]
    fn gap_eval_matches_definition() {
        let p = RiskProfile::new(vec![0.0, 0.1, 0.9, 1.0], vec![0.0, 0.1, 0.1, 0.0]).unwrap();
        let g = p.gap();
        for k in 0..=100 {
            let x = k as f64 / 100.0;
            assert!((g.eval(x) - (x.min(1.0 - x) - p.eval(x))).abs() < 1e-15);
        }
    }
}
