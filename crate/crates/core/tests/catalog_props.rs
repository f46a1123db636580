mod common;

use proptest::prelude::*;

use pinsker::catalog::{antiderivatives, weight_from_generator};
use pinsker::{catalog_lookup, Divergence};

fn interior(n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |k| k as f64 / (n + 1) as f64)
}

#[test]
fn generators_vanish_at_one_and_are_convex() {
    for d in Divergence::ALL {
        let f = d.spec().f;
        assert!(f(1.0).abs() <= 1e-12, "{d}");
        let xs: Vec<f64> = (0..400)
            .map(|k| 10f64.powf(-4.0 + 8.0 * k as f64 / 399.0))
            .collect();
        for w in xs.windows(3) {
            // Second divided difference on a non-uniform grid.
            let (a, b, c) = (w[0], w[1], w[2]);
            let dd = (f(c) - f(b)) / (c - b) - (f(b) - f(a)) / (b - a);
            assert!(dd >= -1e-9 * f(c).abs().max(1.0), "{d} at {b}: {dd}");
        }
    }
}

#[test]
fn stored_density_matches_generator() {
    for d in Divergence::ALL
        .into_iter()
        .filter(|&d| d != Divergence::Variational)
    {
        let weight = d.weight();
        for pi in interior(1000) {
            let stored = weight.density_at(pi);
            let derived = weight_from_generator(&d.spec(), pi).unwrap();
            assert!(
                common::rel_close(stored, derived, 1e-9),
                "{d} at {pi}: {stored} vs {derived}"
            );
        }
    }
}

#[test]
fn variational_weight_is_a_single_atom() {
    let (_, weight, _) = catalog_lookup("variational").unwrap();
    assert_eq!(weight.atoms.len(), 1);
    assert_eq!(weight.atoms[0].location, 0.5);
    assert_eq!(weight.atoms[0].mass, 4.0);
    assert!(weight_from_generator(&Divergence::Variational.spec(), 0.5).is_err());
}

#[test]
fn symmetry_flags_are_truthful() {
    for d in Divergence::ALL {
        let weight = d.weight();
        let symmetric = interior(999).all(|pi| {
            let (a, b) = (weight.density_at(pi), weight.density_at(1.0 - pi));
            (a - b).abs() <= 1e-12 * a.abs().max(1.0)
        });
        assert_eq!(symmetric, d.spec().symmetric_gamma, "{d}");

        let xs: Vec<f64> = interior(999).collect();
        let convex = xs.windows(3).all(|w| {
            let (a, b, c) = (
                weight.density_at(w[0]),
                weight.density_at(w[1]),
                weight.density_at(w[2]),
            );
            a - 2.0 * b + c >= -1e-9 * b.abs().max(1.0)
        });
        assert_eq!(convex, d.spec().convex_gamma, "{d}");
    }
}

#[test]
fn densities_are_nonnegative() {
    for d in Divergence::ALL {
        let weight = d.weight();
        assert!(interior(999).all(|pi| weight.density_at(pi) >= 0.0), "{d}");
        assert!(weight
            .atoms
            .iter()
            .all(|a| a.mass >= 0.0 && a.location > 0.0 && a.location < 1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn antiderivative_chain(pi in 0.02f64..0.98) {
        let h = 1e-5;
        for d in Divergence::ALL {
            let (g, _) = antiderivatives(d.name(), pi).unwrap();
            let (g_hi, gb_hi) = antiderivatives(d.name(), pi + h).unwrap();
            let (g_lo, gb_lo) = antiderivatives(d.name(), pi - h).unwrap();
            let density = d.weight().density_at(pi);
            let dg = (g_hi - g_lo) / (2.0 * h);
            let dgb = (gb_hi - gb_lo) / (2.0 * h);
            prop_assert!(common::rel_close(dg, density, 1e-6), "{d}: Gamma' {dg} vs {density}");
            prop_assert!(common::rel_close(dgb, g, 1e-6), "{d}: GammaBar' {dgb} vs {g}");
        }
    }
}
