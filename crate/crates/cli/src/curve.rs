use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use pinsker::closed_forms::corollary_bound;
use pinsker::reference::{
    classical_pinsker, fedotov_bound, polynomial_bound, vajda_bound, PolynomialVariant,
};
use pinsker::Divergence;

use crate::bound::parse_divergence;
use crate::cli::{CurveArgs, CurveMethod, Format};
use crate::output::{fmt_num, json_num, Failure};

fn evaluate(method: CurveMethod, divergence: Divergence, v: f64) -> Result<f64, Failure> {
    let value = match method {
        CurveMethod::Explicit => corollary_bound(divergence, v)?,
        CurveMethod::Classical => classical_pinsker(v)?,
        CurveMethod::Kullback => polynomial_bound(PolynomialVariant::Kullback, v)?,
        CurveMethod::Topsoe => polynomial_bound(PolynomialVariant::Topsoe, v)?,
        CurveMethod::Toussaint => polynomial_bound(PolynomialVariant::Toussaint, v)?,
        CurveMethod::Vajda => vajda_bound(v)?,
        CurveMethod::Fedotov => fedotov_bound(v)?,
    };
    Ok(value)
}

fn grid(args: &CurveArgs) -> Result<Vec<f64>, Failure> {
    let (a, b) = (args.v_min, args.v_max);
    if !(0.0..2.0).contains(&a) || !(0.0..2.0).contains(&b) || a > b {
        return Err(Failure::Malformed(format!(
            "need 0 <= v-min <= v-max < 2, got v-min = {a}, v-max = {b}"
        )));
    }
    match args.steps {
        0 => Err(Failure::Malformed("--steps must be at least 1".into())),
        1 => Ok(vec![a]),
        n => Ok((0..n)
            .map(|k| {
                if k + 1 == n {
                    b
                } else {
                    a + (b - a) * k as f64 / (n - 1) as f64
                }
            })
            .collect()),
    }
}

struct Row<'a> {
    methods: &'a [CurveMethod],
    v: f64,
    values: &'a [f64],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.values.len() + 1))?;
        map.serialize_entry("v", &json_num(self.v))?;
        for (m, &x) in self.methods.iter().zip(self.values) {
            map.serialize_entry(m.name(), &json_num(x))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct CurveReport<'a> {
    divergence: &'a str,
    rows: Vec<Row<'a>>,
}

pub fn run(args: &CurveArgs) -> Result<(), Failure> {
    let divergence = parse_divergence(&args.divergence)?;
    if divergence != Divergence::Kl {
        if let Some(m) = args.method.iter().find(|&&m| m != CurveMethod::Explicit) {
            return Err(Failure::Malformed(format!(
                "method `{}` is a KL bound; use --divergence kl or --method explicit",
                m.name()
            )));
        }
    }
    let vs = grid(args)?;
    let table: Vec<Vec<f64>> = vs
        .par_iter()
        .map(|&v| {
            args.method
                .iter()
                .map(|&m| evaluate(m, divergence, v))
                .collect()
        })
        .collect::<Result<_, _>>()?;

    match args.format {
        Format::Csv => {
            let mut out = String::from("v");
            for m in &args.method {
                out.push(',');
                out.push_str(m.name());
            }
            out.push('\n');
            for (v, row) in vs.iter().zip(&table) {
                out.push_str(&fmt_num(*v));
                for x in row {
                    out.push(',');
                    out.push_str(&fmt_num(*x));
                }
                out.push('\n');
            }
            print!("{out}");
        }
        Format::Json => {
            let report = CurveReport {
                divergence: divergence.name(),
                rows: vs
                    .iter()
                    .zip(&table)
                    .map(|(&v, values)| Row {
                        methods: &args.method,
                        v,
                        values,
                    })
                    .collect(),
            };
            println!(
                "{}",
                serde_json::to_string(&report).expect("curve serializes")
            );
        }
    }
    Ok(())
}
