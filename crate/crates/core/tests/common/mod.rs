#![allow(dead_code)]

use proptest::prelude::*;

use pinsker::{DistributionPair, FiniteDistribution};

/// Unnormalized weights with occasional exact zeros.
fn weights(k: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(prop_oneof![1 => Just(0.0), 6 => 0.01f64..1.0], k)
        .prop_filter("some mass", |w| w.iter().any(|&x| x > 0.0))
}

fn full_weights(k: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.01f64..1.0, k)
}

fn make_pair(p: Vec<f64>, q: Vec<f64>) -> DistributionPair {
    DistributionPair::new(
        FiniteDistribution::normalized(p).unwrap(),
        FiniteDistribution::normalized(q).unwrap(),
    )
    .unwrap()
}

/// Pairs on alphabets of size 2 to 6, possibly with disjoint cells.
pub fn pair() -> impl Strategy<Value = DistributionPair> {
    (2usize..=6)
        .prop_flat_map(|k| (weights(k), weights(k)))
        .prop_map(|(p, q)| make_pair(p, q))
}

/// Pairs with every cell charged by both distributions.
pub fn full_pair() -> impl Strategy<Value = DistributionPair> {
    (2usize..=6)
        .prop_flat_map(|k| (full_weights(k), full_weights(k)))
        .prop_map(|(p, q)| make_pair(p, q))
}

/// Three distributions on a common alphabet.
pub fn triple() -> impl Strategy<Value = [FiniteDistribution; 3]> {
    (2usize..=6)
        .prop_flat_map(|k| (weights(k), weights(k), weights(k)))
        .prop_map(|(a, b, c)| [a, b, c].map(|w| FiniteDistribution::normalized(w).unwrap()))
}

/// `1..=n` strictly increasing priors in `(0.02, 0.98)`.
pub fn priors(max: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::btree_set(1u32..49, 1..=max)
        .prop_map(|s| s.into_iter().map(|k| k as f64 / 50.0).collect())
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
