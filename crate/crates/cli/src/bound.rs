use std::fs;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use pinsker::closed_forms::{asymmetric_n1, corollary_bound, kl_argmin_slope};
use pinsker::solver::ConstraintPoint;
use pinsker::{minimize_bound, ConstraintSet, Divergence, PinskerError};

use crate::cli::{BoundArgs, BoundMethod};
use crate::output::{json_num, Failure};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintFile {
    constraints: Vec<PointEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    pi: f64,
    v: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    divergence: &'a str,
    bound: Box<RawValue>,
    method: &'a str,
    argmin: Vec<Box<RawValue>>,
}

#[derive(Serialize)]
struct ErrorBody {
    error: &'static str,
    message: String,
}

pub fn parse_divergence(name: &str) -> Result<Divergence, Failure> {
    name.parse::<Divergence>().map_err(Failure::from)
}

fn read_constraints(args: &BoundArgs) -> Result<ConstraintSet, Failure> {
    if let Some(v) = args.v {
        return Ok(ConstraintSet::from_variational(v)?);
    }
    let path = args
        .constraints
        .as_ref()
        .expect("clap requires --v or --constraints");
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    let file: ConstraintFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    let points = file
        .constraints
        .into_iter()
        .map(|p| ConstraintPoint { pi: p.pi, v: p.v })
        .collect();
    Ok(ConstraintSet::new(points)?)
}

fn closed(divergence: Divergence, c: &ConstraintSet) -> Result<(f64, f64), Failure> {
    let point = c.points()[0];
    if c.len() != 1 || point.pi != 0.5 {
        return Err(Failure::Malformed(
            "--method closed needs a single constraint at pi = 0.5".into(),
        ));
    }
    let v = 4.0 * point.v;
    let bound = match corollary_bound(divergence, v) {
        Ok(b) => b,
        // Only reachable at V = 2, where these bounds diverge.
        Err(PinskerError::Domain { .. }) => f64::INFINITY,
        Err(e) => return Err(e.into()),
    };
    let slope = if v >= 2.0 {
        0.0
    } else if divergence == Divergence::Kl {
        kl_argmin_slope(v)?
    } else {
        asymmetric_n1(divergence, v)?.0
    };
    Ok((bound, slope))
}

fn run_inner(args: &BoundArgs) -> Result<String, Failure> {
    let divergence = parse_divergence(&args.divergence)?;
    let c = read_constraints(args)?;
    let central = c.len() == 1 && c.points()[0].pi == 0.5;
    let method = args.method.unwrap_or(if central {
        BoundMethod::Closed
    } else {
        BoundMethod::Solver
    });
    let (bound, argmin, method_name) = match method {
        BoundMethod::Closed => {
            let (b, a) = closed(divergence, &c)?;
            (b, vec![a], "closed")
        }
        BoundMethod::Solver => {
            let sol = minimize_bound(&c, divergence)?;
            (sol.bound.value(), sol.argmin, "solver")
        }
    };
    let report = Report {
        divergence: divergence.name(),
        bound: json_num(bound),
        method: method_name,
        argmin: argmin.into_iter().map(json_num).collect(),
    };
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

pub fn run(args: &BoundArgs) -> Result<(), Failure> {
    match run_inner(args) {
        Ok(line) => {
            println!("{line}");
            Ok(())
        }
        Err(Failure::Infeasible(message)) => {
            let body = ErrorBody {
                error: "infeasible",
                message: message.clone(),
            };
            println!(
                "{}",
                serde_json::to_string(&body).expect("error body serializes")
            );
            Err(Failure::Infeasible(message))
        }
        Err(e) => Err(e),
    }
}
