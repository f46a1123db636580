use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pinsker::closed_forms::corollary_bound;
use pinsker::integral_rep::representation_residual;
use pinsker::oracle::{achieving_pair, distribution_search, slope_grid_bound};
use pinsker::reference::{classical_pinsker, polynomial_bound, vajda_bound, PolynomialVariant};
use pinsker::{
    f_divergence, minimize_bound, ConstraintSet, DistributionPair, Divergence, FiniteDistribution,
    QuadConfig,
};

use crate::cli::{Suite, VerifyArgs};
use crate::output::{quad_config, Failure};

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, pass: bool, name: &str, detail: String) {
        if !pass {
            self.failures += 1;
        }
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

fn random_pair(rng: &mut ChaCha8Rng, atoms: usize) -> DistributionPair {
    let mut draw = || {
        let w: Vec<f64> = (0..atoms)
            .map(|_| -rng.gen::<f64>().max(1e-300).ln())
            .collect();
        FiniteDistribution::normalized(w).expect("positive weights normalize")
    };
    let p = draw();
    DistributionPair::new(p, draw()).expect("equal alphabets")
}

fn random_priors(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = rng.gen_range(1..=3);
    let mut pis: Vec<f64> = (0..n).map(|_| rng.gen_range(0.02..0.98)).collect();
    pis.sort_by(f64::total_cmp);
    pis.dedup();
    pis
}

fn representation(args: &VerifyArgs, cfg: &QuadConfig, out: &mut Report) {
    let trials = args.trials.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let pairs: Vec<DistributionPair> = (0..trials)
        .map(|_| random_pair(&mut rng, args.atoms))
        .collect();
    for d in Divergence::ALL {
        let worst = pairs
            .iter()
            .map(|p| representation_residual(p, d, cfg))
            .fold(0.0, f64::max);
        out.line(
            worst < 1e-6,
            &format!("representation {d}"),
            format!("max residual {worst:.3e} over {trials} pairs"),
        );
    }
}

fn tightness(args: &VerifyArgs, out: &mut Report) -> Result<(), Failure> {
    for d in Divergence::ALL {
        let mut worst: f64 = 0.0;
        for v in [0.4, 1.0, 1.6] {
            let sol = minimize_bound(&ConstraintSet::from_variational(v)?, d)?;
            let witness = achieving_pair(&sol.risk)?;
            let achieved = f_divergence(&witness, &d.spec()).value();
            worst = worst.max((achieved - corollary_bound(d, v)?).abs());
        }
        out.line(
            worst <= 1e-6,
            &format!("tightness {d}"),
            format!("max |I_f(witness) - bound| = {worst:.3e} at V in {{0.4, 1, 1.6}}"),
        );
    }

    let trials = args.trials.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let sets: Vec<ConstraintSet> = (0..10)
        .map(|_| {
            let pair = random_pair(&mut rng, args.atoms);
            ConstraintSet::from_pair(&pair, &random_priors(&mut rng))
        })
        .collect::<Result<_, _>>()?;
    for d in Divergence::ALL {
        let mut min_gap = f64::INFINITY;
        for (k, c) in sets.iter().enumerate() {
            let outcome = distribution_search(c, d, trials, args.seed.wrapping_add(k as u64))?;
            if !outcome.exhausted() {
                min_gap = min_gap.min(outcome.gap);
            }
        }
        out.line(
            min_gap >= -1e-9,
            &format!("soundness {d}"),
            format!(
                "min gap {min_gap:.3e} over {} constraint sets x {trials} trials",
                sets.len()
            ),
        );
    }
    Ok(())
}

fn oracle(args: &VerifyArgs, cfg: &QuadConfig, out: &mut Report) -> Result<(), Failure> {
    let trials = args.trials.unwrap_or(3);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for d in [
        Divergence::Kl,
        Divergence::Hellinger,
        Divergence::Triangular,
    ] {
        let mut worst: f64 = 0.0;
        for _ in 0..trials {
            let pair = random_pair(&mut rng, args.atoms);
            let pis = [rng.gen_range(0.05..0.5), rng.gen_range(0.5..0.95)];
            let c = ConstraintSet::from_pair(&pair, &pis)?;
            let solver = minimize_bound(&c, d)?.bound.value();
            let grid = slope_grid_bound(&c, d, 400, cfg)?.value();
            let diff = if solver.is_infinite() && grid.is_infinite() {
                0.0
            } else {
                (solver - grid).abs()
            };
            worst = worst.max(diff);
        }
        out.line(
            worst <= 1e-4,
            &format!("oracle {d}"),
            format!(
                "max |solver - 400^2 slope grid| = {worst:.3e} over {trials} two-constraint sets"
            ),
        );
    }
    Ok(())
}

fn ladder(out: &mut Report) -> Result<(), Failure> {
    let grid: Vec<f64> = (1..=100).map(|k| 2.0 * k as f64 / 101.0).collect();
    type Rung = (
        &'static str,
        fn(f64) -> pinsker::Result<f64>,
        fn(f64) -> pinsker::Result<f64>,
    );
    let rungs: [Rung; 5] = [
        ("classical <= kullback", classical_pinsker, |v| {
            polynomial_bound(PolynomialVariant::Kullback, v)
        }),
        (
            "kullback <= topsoe",
            |v| polynomial_bound(PolynomialVariant::Kullback, v),
            |v| polynomial_bound(PolynomialVariant::Topsoe, v),
        ),
        (
            "topsoe <= explicit",
            |v| polynomial_bound(PolynomialVariant::Topsoe, v),
            |v| corollary_bound(Divergence::Kl, v),
        ),
        ("vajda <= explicit", vajda_bound, |v| {
            corollary_bound(Divergence::Kl, v)
        }),
        (
            "toussaint <= explicit",
            |v| polynomial_bound(PolynomialVariant::Toussaint, v),
            |v| corollary_bound(Divergence::Kl, v),
        ),
    ];
    for (name, lower, upper) in rungs {
        let mut excess = f64::NEG_INFINITY;
        let mut bad = Vec::new();
        for &v in &grid {
            let e = lower(v)? - upper(v)?;
            excess = excess.max(e);
            if e > 1e-9 {
                bad.push(v);
            }
        }
        let detail = match (bad.first(), bad.last()) {
            (Some(a), Some(b)) => format!(
                "violated at {} points for V in [{a:.4}, {b:.4}], max excess {excess:.3e}",
                bad.len()
            ),
            _ => format!(
                "max (lower - upper) = {excess:.3e} on {} points",
                grid.len()
            ),
        };
        out.line(bad.is_empty(), &format!("ladder {name}"), detail);
    }
    Ok(())
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    if args.atoms < 2 {
        return Err(Failure::Malformed("--atoms must be at least 2".into()));
    }
    let mut out = Report { failures: 0 };
    match args.suite {
        Suite::Representation => representation(args, &quad_config()?, &mut out),
        Suite::Tightness => tightness(args, &mut out)?,
        Suite::Oracle => oracle(args, &quad_config()?, &mut out)?,
        Suite::Ladder => ladder(&mut out)?,
    }
    if out.failures == 0 {
        Ok(())
    } else {
        println!("{} checks failed", out.failures);
        Err(Failure::Verification)
    }
}
