//! Catalog of f-divergences together with their weight functions.
//!
//! Every divergence is represented three ways: the convex generator `f`
//! (with its boundary limits `f(0+)` and `lim f(t)/t`), the weight
//! `gamma(pi) = f''((1 - pi)/pi) / pi^3` of its integral representation
//! over generalized variational divergences, and closed-form first and
//! second antiderivatives of `gamma`. Non-smooth generators contribute point
//! atoms to the weight; the only one here is the variational divergence,
//! whose weight is a single atom of mass 4 at `pi = 1/2`.
//!
//! | name             | f(t)                              | gamma(pi)                                   |
//! |------------------|-----------------------------------|---------------------------------------------|
//! | `variational`    | \|t - 1\|                         | 4 delta(pi - 1/2)                           |
//! | `kl`             | t ln t                            | 1 / (pi^2 (1 - pi))                         |
//! | `triangular`     | (t - 1)^2 / (t + 1)               | 8                                           |
//! | `jensen_shannon` | t/2 ln t - (t+1)/2 ln(t+1) + ln 2 | 1 / (2 pi (1 - pi))                         |
//! | `agm_t`          | (t+1)/2 ln((t+1) / (2 sqrt t))    | (2pi^2 - 2pi + 1) / (4 pi^2 (1 - pi)^2)     |
//! | `jeffreys`       | (t - 1) ln t                      | 1 / (pi^2 (1 - pi)^2)                       |
//! | `hellinger`      | (sqrt t - 1)^2                    | 1 / (2 (pi (1 - pi))^(3/2))                 |
//! | `chi2`           | (t - 1)^2                         | 2 / pi^3                                    |
//! | `sym_chi2`       | (t - 1)^2 (t + 1) / t             | 2 / pi^3 + 2 / (1 - pi)^3                   |

use std::fmt;
use std::str::FromStr;

use crate::error::{PinskerError, Result};

const INF: f64 = f64::INFINITY;

type RealFn = fn(f64) -> f64;

/// The divergences known to the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Divergence {
    Variational,
    Kl,
    Triangular,
    JensenShannon,
    AgmT,
    Jeffreys,
    Hellinger,
    Chi2,
    SymChi2,
}

impl Divergence {
    pub const ALL: [Divergence; 9] = [
        Divergence::Variational,
        Divergence::Kl,
        Divergence::Triangular,
        Divergence::JensenShannon,
        Divergence::AgmT,
        Divergence::Jeffreys,
        Divergence::Hellinger,
        Divergence::Chi2,
        Divergence::SymChi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Divergence::Variational => "variational",
            Divergence::Kl => "kl",
            Divergence::Triangular => "triangular",
            Divergence::JensenShannon => "jensen_shannon",
            Divergence::AgmT => "agm_t",
            Divergence::Jeffreys => "jeffreys",
            Divergence::Hellinger => "hellinger",
            Divergence::Chi2 => "chi2",
            Divergence::SymChi2 => "sym_chi2",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL
            .iter()
            .map(|d| d.name())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn spec(self) -> DivergenceSpec {
        use Divergence::*;
        let (f, f_at_zero, f_slope_at_inf, second_derivative): (RealFn, f64, f64, RealFn) =
            match self {
                Variational => (|t| (t - 1.0).abs(), 1.0, 1.0, |_| 0.0),
                Kl => (|t| t * t.ln(), 0.0, INF, |t| 1.0 / t),
                Triangular => (
                    |t| (t - 1.0).powi(2) / (t + 1.0),
                    1.0,
                    1.0,
                    |t| 8.0 / (t + 1.0).powi(3),
                ),
                JensenShannon => (
                    |t| {
                        0.5 * t * t.ln() - 0.5 * (t + 1.0) * (t + 1.0).ln() + std::f64::consts::LN_2
                    },
                    std::f64::consts::LN_2,
                    0.0,
                    |t| 1.0 / (2.0 * t * (t + 1.0)),
                ),
                AgmT => (
                    |t| 0.5 * (t + 1.0) * ((t + 1.0) / (2.0 * t.sqrt())).ln(),
                    INF,
                    INF,
                    |t| (t * t + 1.0) / (4.0 * t * t * (t + 1.0)),
                ),
                Jeffreys => (|t| (t - 1.0) * t.ln(), INF, INF, |t| (t + 1.0) / (t * t)),
                Hellinger => (
                    |t| (t.sqrt() - 1.0).powi(2),
                    1.0,
                    1.0,
                    |t| 0.5 * t.powf(-1.5),
                ),
                Chi2 => (|t| (t - 1.0).powi(2), 1.0, INF, |_| 2.0),
                SymChi2 => (
                    |t| (t - 1.0).powi(2) * (t + 1.0) / t,
                    INF,
                    INF,
                    |t| 2.0 * (t.powi(3) + 1.0) / t.powi(3),
                ),
            };
        let symmetric_gamma = !matches!(self, Kl | Chi2);
        DivergenceSpec {
            divergence: self,
            name: self.name(),
            f,
            f_at_zero,
            f_slope_at_inf,
            second_derivative,
            symmetric_gamma,
            convex_gamma: true,
        }
    }

    pub fn weight(self) -> WeightFunction {
        use Divergence::*;
        // Densities take (pi, 1 - pi) so that both tails keep full precision.
        let density: fn(f64, f64) -> f64 = match self {
            Variational => |_, _| 0.0,
            Kl => |p, r| 1.0 / (p * p * r),
            Triangular => |_, _| 8.0,
            JensenShannon => |p, r| 1.0 / (2.0 * p * r),
            AgmT => |p, r| (p * p + r * r) / (4.0 * p * p * r * r),
            Jeffreys => |p, r| {
                let u = p * r;
                1.0 / (u * u)
            },
            Hellinger => |p, r| 0.5 * (p * r).powf(-1.5),
            Chi2 => |p, _| 2.0 / (p * p * p),
            SymChi2 => |p, r| 2.0 / (p * p * p) + 2.0 / (r * r * r),
        };
        let atoms = match self {
            Variational => vec![Atom {
                location: 0.5,
                mass: VARIATIONAL_ATOM_MASS,
            }],
            _ => Vec::new(),
        };
        WeightFunction {
            divergence: self,
            density,
            atoms,
        }
    }

    pub fn antiderivatives(self) -> AntiderivativePair {
        use Divergence::*;
        // Limits are (Gamma(0+), GammaBar(0+), Gamma(1-), GammaBar(1-)).
        let (gamma, gamma_bar, limits): (RealFn, RealFn, [f64; 4]) = match self {
            Variational => (|_| 0.0, |_| 0.0, [0.0, 0.0, 0.0, 0.0]),
            Kl => (
                |p| (p / (1.0 - p)).ln() - 1.0 / p,
                |p| (1.0 - p) * ((1.0 - p) / p).ln(),
                [-INF, INF, INF, 0.0],
            ),
            Triangular => (|p| 8.0 * p, |p| 4.0 * p * p, [0.0, 0.0, 8.0, 4.0]),
            JensenShannon => (
                |p| 0.5 * (p / (1.0 - p)).ln(),
                |p| 0.5 * (xlogx(p) + xlogx(1.0 - p)),
                [-INF, 0.0, INF, 0.0],
            ),
            AgmT => (
                |p| (2.0 * p - 1.0) / (4.0 * p * (1.0 - p)),
                |p| -0.25 * (p * (1.0 - p)).ln(),
                [-INF, INF, INF, INF],
            ),
            Jeffreys => (
                |p| 1.0 / (1.0 - p) - 1.0 / p + 2.0 * (p / (1.0 - p)).ln(),
                |p| -(p * (1.0 - p)).ln() + 2.0 * (xlogx(p) + xlogx(1.0 - p)),
                [-INF, INF, INF, INF],
            ),
            Hellinger => (
                |p| (2.0 * p - 1.0) / (p * (1.0 - p)).sqrt(),
                |p| -2.0 * (p * (1.0 - p)).sqrt(),
                [-INF, 0.0, INF, 0.0],
            ),
            Chi2 => (|p| -1.0 / (p * p), |p| 1.0 / p, [-INF, INF, -1.0, 1.0]),
            SymChi2 => (
                |p| {
                    let r = 1.0 - p;
                    1.0 / (r * r) - 1.0 / (p * p)
                },
                |p| 1.0 / p + 1.0 / (1.0 - p),
                [-INF, INF, INF, INF],
            ),
        };
        AntiderivativePair {
            gamma,
            gamma_bar,
            limits,
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Divergence {
    type Err = PinskerError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|d| d.name() == s)
            .ok_or_else(|| PinskerError::UnknownDivergence {
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

/// Mass of the variational divergence's atom at `pi = 1/2`. Forced by
/// `V = 4 V_{1/2}`.
pub const VARIATIONAL_ATOM_MASS: f64 = 4.0;

fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Generator `f` of an f-divergence and its structural flags.
#[derive(Debug, Clone, Copy)]
pub struct DivergenceSpec {
    pub divergence: Divergence,
    pub name: &'static str,
    /// Convex generator on `(0, inf)` with `f(1) = 0`.
    pub f: fn(f64) -> f64,
    /// `lim_{t -> 0+} f(t)`.
    pub f_at_zero: f64,
    /// `lim_{t -> inf} f(t) / t`.
    pub f_slope_at_inf: f64,
    /// Classical `f''` wherever it exists.
    pub second_derivative: fn(f64) -> f64,
    pub symmetric_gamma: bool,
    pub convex_gamma: bool,
}

/// A point mass of the weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub mass: f64,
}

/// Weight `gamma` as an absolutely continuous density plus atoms.
#[derive(Debug, Clone)]
pub struct WeightFunction {
    pub divergence: Divergence,
    /// Density as a function of `(pi, 1 - pi)`.
    pub density: fn(f64, f64) -> f64,
    pub atoms: Vec<Atom>,
}

impl WeightFunction {
    pub fn density_at(&self, pi: f64) -> f64 {
        (self.density)(pi, 1.0 - pi)
    }

    /// Density at `pi` given both `pi` and `rest = 1 - pi` exactly.
    pub fn density_split(&self, pi: f64, rest: f64) -> f64 {
        (self.density)(pi, rest)
    }
}

/// Closed-form `Gamma = int gamma` and `GammaBar = int Gamma` of the density
/// part of the weight. Endpoint values are limits and may be infinite.
#[derive(Debug, Clone, Copy)]
pub struct AntiderivativePair {
    gamma: fn(f64) -> f64,
    gamma_bar: fn(f64) -> f64,
    limits: [f64; 4],
}

impl AntiderivativePair {
    pub fn gamma(&self, pi: f64) -> f64 {
        if pi <= 0.0 {
            self.limits[0]
        } else if pi >= 1.0 {
            self.limits[2]
        } else {
            (self.gamma)(pi)
        }
    }

    pub fn gamma_bar(&self, pi: f64) -> f64 {
        if pi <= 0.0 {
            self.limits[1]
        } else if pi >= 1.0 {
            self.limits[3]
        } else {
            (self.gamma_bar)(pi)
        }
    }
}

/// Look up a divergence by its catalog name.
pub fn catalog_lookup(name: &str) -> Result<(DivergenceSpec, WeightFunction, AntiderivativePair)> {
    let d: Divergence = name.parse()?;
    Ok((d.spec(), d.weight(), d.antiderivatives()))
}

/// `gamma(pi) = f''((1 - pi) / pi) / pi^3` evaluated from the generator.
pub fn weight_from_generator(spec: &DivergenceSpec, pi: f64) -> Result<f64> {
    if !(pi > 0.0 && pi < 1.0) {
        return Err(PinskerError::Domain {
            what: "pi",
            value: pi,
            domain: "(0, 1)",
        });
    }
    let weight = spec.divergence.weight();
    if let Some(atom) = weight
        .atoms
        .iter()
        .find(|a| (a.location - pi).abs() < 1e-15)
    {
        return Err(PinskerError::AtomLocation {
            name: spec.name,
            location: atom.location,
        });
    }
    Ok((spec.second_derivative)((1.0 - pi) / pi) / pi.powi(3))
}

/// `(Gamma(pi), GammaBar(pi))` for the named divergence. At `pi = 0` or `1`
/// the limits are returned when the density is integrable there.
pub fn antiderivatives(name: &str, pi: f64) -> Result<(f64, f64)> {
    let d: Divergence = name.parse()?;
    if !(0.0..=1.0).contains(&pi) {
        return Err(PinskerError::Domain {
            what: "pi",
            value: pi,
            domain: "[0, 1]",
        });
    }
    let anti = d.antiderivatives();
    let (g, gb) = (anti.gamma(pi), anti.gamma_bar(pi));
    if !(g.is_finite() && gb.is_finite()) {
        return Err(PinskerError::Domain {
            what: "pi",
            value: pi,
            domain: "the open interval where the weight is integrable",
        });
    }
    Ok((g, gb))
}
