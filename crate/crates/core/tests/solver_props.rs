mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pinsker::closed_forms::corollary_bound;
use pinsker::oracle::{achieving_pair, random_profile};
use pinsker::solver::{
    constraint_lines, gap_segments, objective, objective_checked, psi_from_constraints,
    risk_profile, segment_integral, slope_box,
};
use pinsker::{
    bayes_risk, f_divergence, minimize_bound, ConstraintSet, DistributionPair, Divergence,
    QuadConfig,
};

fn constraints_of(pair: &DistributionPair, priors: &[f64]) -> ConstraintSet {
    ConstraintSet::from_pair(pair, priors).unwrap()
}

fn slopes_in_box(c: &ConstraintSet, fractions: &[f64]) -> Vec<f64> {
    let bx = slope_box(c).unwrap();
    (0..bx.dim())
        .map(|i| bx.lower[i] + (bx.upper[i] - bx.lower[i]) * fractions[i])
        .collect()
}

fn feasible() -> impl Strategy<Value = (ConstraintSet, Vec<f64>)> {
    (
        common::pair(),
        common::priors(3),
        proptest::collection::vec(0.0f64..=1.0, 3),
    )
        .prop_map(|(pair, pis, u)| {
            let c = constraints_of(&pair, &pis);
            let a = slopes_in_box(&c, &u);
            (c, a)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gap_segments_match_pointwise_definition((c, a) in feasible()) {
        let gap = gap_segments(&c, &a).unwrap();
        let psi = psi_from_constraints(&c);
        for k in 0..1000 {
            let pi = k as f64 / 999.0;
            let lines = c.points().iter().zip(&a).zip(&psi[1..]).map(|((p, &ai), &yi)| ai * pi + yi - ai * p.pi);
            let env = lines.chain([pi, 1.0 - pi]).fold(f64::INFINITY, f64::min);
            let want = (pi.min(1.0 - pi) - env).max(0.0);
            prop_assert!((gap.eval(pi) - want).abs() <= 1e-12, "pi = {pi}: {} vs {want}", gap.eval(pi));
        }
    }

    #[test]
    fn risk_profile_interpolates_constraints((c, a) in feasible()) {
        let risk = risk_profile(&c, &a).unwrap();
        for p in c.points() {
            let want = p.pi.min(1.0 - p.pi) - p.v;
            prop_assert!((risk.eval(p.pi) - want).abs() <= 1e-12);
        }
        prop_assert_eq!(constraint_lines(&c, &a).len(), c.len());
    }

    #[test]
    fn objective_paths_agree((c, a) in feasible()) {
        let gap = gap_segments(&c, &a).unwrap();
        let cfg = QuadConfig::default();
        for d in Divergence::ALL {
            prop_assert!(objective_checked(&gap, d, &cfg).is_ok(), "{d}: {:?}", objective_checked(&gap, d, &cfg));
        }
    }

    #[test]
    fn achieving_pair_replays_profile(seed in any::<u64>(), pair in common::pair(), pis in common::priors(3)) {
        let c = constraints_of(&pair, &pis);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let profile = random_profile(&c, &mut rng).unwrap();
        let witness = achieving_pair(&profile).unwrap();
        for k in 0..500 {
            let pi = k as f64 / 499.0;
            let l = bayes_risk(pi, &witness).unwrap();
            prop_assert!((l - profile.eval(pi)).abs() <= 1e-12, "pi = {pi}: {l} vs {}", profile.eval(pi));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bound_never_exceeds_inducing_pair(pair in common::pair(), pis in common::priors(3)) {
        let c = constraints_of(&pair, &pis);
        for d in Divergence::ALL {
            let bound = minimize_bound(&c, d).unwrap().bound.value();
            let actual = f_divergence(&pair, &d.spec()).value();
            prop_assert!(bound <= actual + 1e-9, "{d}: bound {bound} > {actual}");
        }
    }

    #[test]
    fn bound_grows_with_constraints(pair in common::pair(), pis in common::priors(3)) {
        let full = constraints_of(&pair, &pis);
        for drop in 0..pis.len() {
            let mut fewer = pis.clone();
            fewer.remove(drop);
            if fewer.is_empty() {
                continue;
            }
            let sub = constraints_of(&pair, &fewer);
            for d in [Divergence::Kl, Divergence::Hellinger, Divergence::Chi2, Divergence::Triangular] {
                let small = minimize_bound(&sub, d).unwrap().bound.value();
                let big = minimize_bound(&full, d).unwrap().bound.value();
                prop_assert!(small <= big + 1e-9 * big.max(1.0), "{d}: {small} > {big}");
            }
        }
    }
}

#[test]
fn single_central_constraint_reduces_to_closed_forms() {
    for k in 0..50 {
        let v = 1.9 * k as f64 / 49.0;
        let c = ConstraintSet::from_variational(v).unwrap();
        for d in Divergence::ALL {
            let solver = minimize_bound(&c, d).unwrap().bound.value();
            let closed = corollary_bound(d, v).unwrap();
            assert!(
                (solver - closed).abs() <= 1e-6,
                "{d} at V = {v}: {solver} vs {closed}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn segment_integral_matches_quadrature(l in 0.01f64..0.98, width in 0.0f64..1.0, alpha in -2.0f64..2.0, beta in -1.0f64..1.0) {
        let r = l + (0.99 - l) * width;
        let cfg = QuadConfig::default();
        for d in Divergence::ALL {
            let weight = d.weight();
            let anti = d.antiderivatives();
            let closed = segment_integral(alpha, beta, l, r, &anti).unwrap();
            let quad = pinsker::quadrature::integrate(|x| (alpha * x + beta) * weight.density_at(x), l, r, &cfg)
                .value_or_inf();
            prop_assert!(
                (closed - quad).abs() <= 1e-8 * closed.abs().max(quad.abs()).max(1.0),
                "{d} on [{l}, {r}]: {closed} vs {quad}"
            );
        }
    }
}

#[test]
fn objective_of_zero_gap_is_zero() {
    let c = ConstraintSet::from_variational(0.0).unwrap();
    let gap = gap_segments(&c, &[0.0]).unwrap();
    for d in Divergence::ALL {
        assert_eq!(objective(&gap, d).value(), 0.0);
    }
}
