//! Derivative-free minimizers used by the bound solvers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Returns `(x, f(x))` for the best point seen, including both endpoints.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut best = (lo, f(lo));
    let consider = |x: f64, fx: f64, best: &mut (f64, f64)| {
        if fx < best.1 {
            *best = (x, fx);
        }
    };
    let fhi = f(hi);
    consider(hi, fhi, &mut best);

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            consider(x1, f1, &mut best);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            consider(x2, f2, &mut best);
        }
    }
    best
}

/// Uniform scan of `points` nodes on `[a, b]` followed by golden-section
/// refinement inside the bracket around the best node.
pub fn scan_then_golden<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: usize,
    tol: f64,
) -> (f64, f64) {
    let points = points.max(3);
    if b <= a {
        return (a, f(a));
    }
    let h = (b - a) / (points - 1) as f64;
    let node = |k: usize| if k == points - 1 { b } else { a + h * k as f64 };
    let (mut k_best, mut f_best) = (0, f(a));
    for k in 1..points {
        let fx = f(node(k));
        if fx < f_best {
            k_best = k;
            f_best = fx;
        }
    }
    let lo = node(k_best.saturating_sub(1));
    let hi = node((k_best + 1).min(points - 1));
    let (x, fx) = golden_section(&f, lo, hi, tol);
    if fx <= f_best {
        (x, fx)
    } else {
        (node(k_best), f_best)
    }
}

/// Coordinate pattern search on a box.
///
/// Each sweep tries `x_i +- h_i` along every axis and keeps any improvement;
/// after a sweep without improvement all steps are halved. Stops once every
/// step is below `tol`.
pub fn coordinate_search<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    lower: &[f64],
    upper: &[f64],
    initial_steps: &[f64],
    tol: f64,
) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    let mut fx = f(&x);
    let mut steps = initial_steps.to_vec();
    let mut sweeps = 0;
    while steps.iter().any(|&h| h > tol) && sweeps < 100_000 {
        sweeps += 1;
        let mut improved = false;
        for i in 0..x.len() {
            if steps[i] <= 0.0 {
                continue;
            }
            for dir in [1.0, -1.0] {
                let mut cand = x.clone();
                cand[i] = (x[i] + dir * steps[i]).clamp(lower[i], upper[i]);
                if cand[i] == x[i] {
                    continue;
                }
                let fc = f(&cand);
                if fc < fx {
                    x = cand;
                    fx = fc;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            for h in &mut steps {
                *h *= 0.5;
            }
        }
    }
    (x, fx)
}
