//! f-divergences as weighted integrals of the generalized variational curve,
//! `I_f(P, Q) = int_0^1 V_pi(P, Q) gamma_f(pi) dpi`.

use crate::catalog::{Divergence, WeightFunction};
use crate::distributions::{
    f_divergence, generalized_variational_split, DistributionPair, ExtendedReal,
};
use crate::quadrature::{integrate_unit, QuadConfig, Quadrature, OVERFLOW_THRESHOLD};

/// Evaluate the integral representation of `weight` on `pair`.
///
/// `V_pi` is piecewise linear with kinks at the cells' `q / (p + q)` and at
/// `pi = 1/2`; the quadrature is split there. Pieces on which `V_pi` vanishes
/// identically (the tails of full-support pairs) are skipped, and a
/// non-integrable tail makes the result `+inf`.
pub fn divergence_via_representation(
    pair: &DistributionPair,
    weight: &WeightFunction,
    cfg: &QuadConfig,
) -> ExtendedReal {
    let v = |pi: f64| generalized_variational_split(pi, 1.0 - pi, pair);

    let mut points = vec![0.0, 0.5, 1.0];
    points.extend(pair.risk_kinks());
    points.extend(weight.atoms.iter().map(|a| a.location));
    points.retain(|x| (0.0..=1.0).contains(x));
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut total = 0.0;
    for w in points.windows(2) {
        let (l, r) = (w[0], w[1]);
        let mid = 0.5 * (l + r);
        if v(l) == 0.0 && v(r) == 0.0 && v(mid) == 0.0 {
            continue;
        }
        let integrand = |pi: f64, rest: f64| {
            generalized_variational_split(pi, rest, pair) * weight.density_split(pi, rest)
        };
        match integrate_unit(integrand, l, r, cfg) {
            Quadrature::Converged { value, .. } => total += value,
            Quadrature::Divergent => return ExtendedReal::INFINITY,
        }
    }
    for atom in &weight.atoms {
        total += atom.mass * v(atom.location);
    }
    if total > OVERFLOW_THRESHOLD {
        return ExtendedReal::INFINITY;
    }
    ExtendedReal::clamped(total)
}

/// Relative disagreement `|direct - represented| / max(1, direct)` between the
/// direct sum and the integral representation. Both infinite counts as
/// agreement; a finiteness mismatch is `+inf`.
pub fn representation_residual(
    pair: &DistributionPair,
    divergence: Divergence,
    cfg: &QuadConfig,
) -> f64 {
    let direct = f_divergence(pair, &divergence.spec());
    let represented = divergence_via_representation(pair, &divergence.weight(), cfg);
    match (direct.is_finite(), represented.is_finite()) {
        (false, false) => 0.0,
        (true, true) => {
            let d = direct.value();
            (d - represented.value()).abs() / d.max(1.0)
        }
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Atom;

    fn skewed() -> DistributionPair {
        DistributionPair::from_vecs(vec![0.9, 0.1], vec![0.1, 0.9]).unwrap()
    }

    #[test]
    fn identical_pair_is_zero() {
        let pair = DistributionPair::from_vecs(vec![0.2, 0.8], vec![0.2, 0.8]).unwrap();
        for d in Divergence::ALL {
            let r = divergence_via_representation(&pair, &d.weight(), &QuadConfig::default());
            assert_eq!(r.value(), 0.0, "{d}");
        }
        assert_eq!(
            representation_residual(&pair, Divergence::Kl, &QuadConfig::default()),
            0.0
        );
    }

    #[test]
    fn variational_atom() {
        let r = divergence_via_representation(
            &skewed(),
            &Divergence::Variational.weight(),
            &QuadConfig::default(),
        );
        assert!((r.value() - 1.6).abs() < 1e-15);
    }

    #[test]
    fn kl_matches_direct() {
        let r = divergence_via_representation(
            &skewed(),
            &Divergence::Kl.weight(),
            &QuadConfig::default(),
        );
        let direct = 0.8 * 9f64.ln();
        assert!((r.value() - direct).abs() / direct < 1e-6);
    }

    #[test]
    fn disjoint_supports() {
        let pair = DistributionPair::from_vecs(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let cfg = QuadConfig::default();
        assert_eq!(representation_residual(&pair, Divergence::Kl, &cfg), 0.0);
        // Infinite under both routes for chi-squared as well.
        assert_eq!(representation_residual(&pair, Divergence::Chi2, &cfg), 0.0);
        // Finite divergences on disjoint supports still agree.
        assert!(representation_residual(&pair, Divergence::Hellinger, &cfg) < 1e-8);
        assert!(representation_residual(&pair, Divergence::JensenShannon, &cfg) < 1e-8);
        assert!(representation_residual(&pair, Divergence::Triangular, &cfg) < 1e-8);
    }

    #[test]
    fn partial_overlap() {
        let pair = DistributionPair::from_vecs(vec![0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5]).unwrap();
        let cfg = QuadConfig::default();
        for d in Divergence::ALL {
            assert!(representation_residual(&pair, d, &cfg) < 1e-7, "{d}");
        }
    }

    #[test]
    fn wrong_atom_mass_is_visible() {
        let mut weight = Divergence::Variational.weight();
        weight.atoms = vec![Atom {
            location: 0.5,
            mass: 16.0,
        }];
        let r = divergence_via_representation(&skewed(), &weight, &QuadConfig::default());
        assert!((r.value() - 6.4).abs() < 1e-12);
    }
}
