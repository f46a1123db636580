//! Tight lower bounds on f-divergences between discrete distributions from
//! the values of generalized variational divergences `V_pi(P, Q)`.
//!
//! ```
//! use pinsker::{closed_forms, Divergence};
//!
//! let kl = closed_forms::corollary_bound(Divergence::Kl, 1.0).unwrap();
//! assert!(kl > 0.5); // strictly above the classical V^2 / 2
//! ```

pub mod catalog;
pub mod closed_forms;
pub mod distributions;
pub mod error;
pub mod integral_rep;
pub mod optimize;
pub mod oracle;
pub mod quadrature;
pub mod reference;
pub mod solver;

pub use catalog::{catalog_lookup, Divergence, DivergenceSpec, WeightFunction};
pub use distributions::{
    bayes_risk, f_divergence, generalized_variational, variational_divergence, DistributionPair,
    ExtendedReal, FiniteDistribution,
};
pub use error::{PinskerError, Result};
pub use quadrature::QuadConfig;
pub use solver::{minimize_bound, BoundSolution, ConstraintPoint, ConstraintSet};
