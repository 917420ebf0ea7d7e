use std::path::Path;

use braidshuffle::braid::ybe_check;
use braidshuffle::exterior::{validate_exterior, Convention, ExteriorSpec, OverlapRule};
use braidshuffle::lyndon::{build_basis_slice, LyndonError, SliceTower};
use braidshuffle::products::{check_twisted_bialgebra, check_twisted_commutative, quantum_shuffle, quasi_shuffle};
use braidshuffle::report::{Counterexample, Verdict};
use braidshuffle::specfile::SpecFile;
use braidshuffle::{AlgebraSpec, Element};
use serde_json::{json, Value};

use crate::output::{usage, Numeric, Report, UsageError};
use crate::{ConventionArg, Degree, ExteriorAction, Op, OverlapArg};

type Outcome = Result<Report, UsageError>;

const DEGREE_CAP: usize = 6;

fn checked_degree(d: &Degree) -> Result<usize, UsageError> {
    if d.max_degree == 0 {
        return Err(usage("degree must be at least 1"));
    }
    if d.max_degree > DEGREE_CAP && !d.unsafe_degree {
        return Err(usage(format!(
            "degree {} exceeds {DEGREE_CAP}; pass --unsafe-degree to run anyway",
            d.max_degree
        )));
    }
    Ok(d.max_degree)
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Loads the spec, recording a braid-relation failure in `report` instead of
/// returning an algebra.
fn load(path: &Path, report: &mut Report) -> Result<Option<AlgebraSpec>, UsageError> {
    let file = SpecFile::load(path)?;
    let braiding = file.braiding()?;
    let verdict = report.timed("ybe", || ybe_check(&braiding));
    if let Verdict::Fail(v) = verdict {
        report.counterexamples.push(v.into());
        return Ok(None);
    }
    Ok(Some(report.timed("load", || file.to_algebra())?))
}

fn spec_input(path: &Path) -> Value {
    json!({ "spec": path.display().to_string() })
}

pub fn check_yb(path: &Path) -> Outcome {
    let mut report = Report::new("check-yb", spec_input(path));
    let Some(a) = load(path, &mut report)? else {
        report.line("FAIL braid relation");
        report.result = json!({ "ybe": false, "yb_algebra": false });
        return Ok(report);
    };
    report.line("PASS braid relation");
    report.line(format!("{} Yang-Baxter algebra axioms", pass_fail(a.is_yb())));
    report.counterexamples.extend(a.yb_violations().iter().cloned());
    report.result = json!({ "ybe": true, "yb_algebra": a.is_yb() });
    Ok(report)
}

pub fn prod(path: &Path, op: Op, lhs: &str, rhs: &str, numeric: &Numeric) -> Outcome {
    let op_name = match op {
        Op::Shuffle => "shuffle",
        Op::Quasi => "quasi",
        Op::Concat => "concat",
    };
    let mut report = Report::new(
        "prod",
        json!({ "spec": path.display().to_string(), "op": op_name, "lhs": lhs, "rhs": rhs }),
    );
    let Some(a) = load(path, &mut report)? else {
        report.line("FAIL braid relation");
        return Ok(report);
    };
    let x = Element::parse(lhs, a.dim())?;
    let y = Element::parse(rhs, a.dim())?;
    let z = report.timed("product", || match op {
        Op::Shuffle => quantum_shuffle(a.braiding(), &x, &y).map_err(UsageError::from),
        Op::Quasi => quasi_shuffle(&a, &x, &y).map_err(UsageError::from),
        Op::Concat => x.concatenate(&y).map_err(UsageError::from),
    })?;
    let text = numeric.element(&z)?;
    report.line(text.clone());
    report.result = json!({ "element": text });
    Ok(report)
}

pub fn verify(path: &Path, degree: &Degree) -> Outcome {
    let max = checked_degree(degree)?;
    let mut report = Report::new(
        "verify",
        json!({ "spec": path.display().to_string(), "max_degree": max }),
    );
    let Some(a) = load(path, &mut report)? else {
        report.line("FAIL YBE");
        report.result = json!([{ "suite": "YBE", "passed": false }]);
        return Ok(report);
    };
    let mut suites = vec![json!({ "suite": "YBE", "passed": true })];
    report.line("PASS YBE");
    report.line(format!("{} YB-algebra", pass_fail(a.is_yb())));
    suites.push(json!({ "suite": "YB-algebra", "passed": a.is_yb() }));
    report.counterexamples.extend(a.yb_violations().iter().cloned());

    let bialgebra = report.timed("bialgebra", || check_twisted_bialgebra(&a, max));
    for s in &bialgebra.suites {
        report.line(format!("{} {} ({} instances)", pass_fail(s.passed()), s.name, s.instances));
        suites.push(json!({ "suite": s.name, "passed": s.passed(), "instances": s.instances }));
    }
    report.counterexamples.extend(bialgebra.counterexamples().cloned());
    report.result = Value::Array(suites);
    Ok(report)
}

fn lyndon_failure(e: LyndonError) -> Result<Counterexample, UsageError> {
    let (input, lhs, rhs) = match &e {
        LyndonError::PredictionMismatch { word, predicted, actual } => {
            (word.to_string(), actual.to_string(), predicted.to_string())
        }
        LyndonError::NonTriangular { word, offending } => (word.to_string(), offending.to_string(), "0".into()),
        LyndonError::ZeroDiagonal(word) => (word.to_string(), "0".into(), "nonzero".into()),
        _ => return Err(usage(e.to_string())),
    };
    Ok(Counterexample {
        identity: e.to_string(),
        input,
        lhs,
        rhs,
    })
}

pub fn basis(path: &Path, degree: &Degree, numeric: &Numeric) -> Outcome {
    let n = checked_degree(degree)?;
    let mut report = Report::new("basis", json!({ "spec": path.display().to_string(), "degree": n }));
    let Some(a) = load(path, &mut report)? else {
        return Ok(report);
    };
    let slice = match report.timed("slice", || build_basis_slice(&a, n)) {
        Ok(s) => s,
        Err(e) => {
            report.counterexamples.push(lyndon_failure(e)?);
            return Ok(report);
        }
    };
    let mut rows = Vec::new();
    let mut diagonal = Vec::new();
    for ((f, product), predicted) in slice.rows.iter().zip(&slice.predictions) {
        let d = numeric.scalar(&product.coeff(&f.word()))?;
        let product = numeric.element(&Element::from_terms(a.dim(), product.clone())?)?;
        report.line(format!("{}  {}  diagonal {}", f.word(), f, d));
        rows.push(json!({
            "word": f.word().to_string(),
            "factors": f.factors().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "diagonal": d,
            "predicted": numeric.scalar(predicted)?,
            "product": product,
        }));
        diagonal.push(d);
    }
    let matrix = slice
        .matrix
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|c| numeric.scalar(c)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let predictions = slice.predictions.iter().map(|p| numeric.scalar(p)).collect::<Result<Vec<_>, _>>()?;
    report.result = json!({
        "degree": n,
        "columns": slice.columns.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "diagonal": diagonal,
        "predictions": predictions,
        "matrix": matrix,
        "rows": rows,
    });
    Ok(report)
}

pub fn express(path: &Path, element: &str, numeric: &Numeric) -> Outcome {
    let mut report = Report::new(
        "express",
        json!({ "spec": path.display().to_string(), "element": element }),
    );
    let Some(a) = load(path, &mut report)? else {
        return Ok(report);
    };
    let x = Element::parse(element, a.dim())?;
    let degree = x.degree().unwrap_or(0).max(1);
    checked_degree(&Degree {
        max_degree: degree,
        unsafe_degree: false,
    })?;
    let tower = match report.timed("tower", || SliceTower::build(&a, degree)) {
        Ok(t) => t,
        Err(e) => {
            report.counterexamples.push(lyndon_failure(e)?);
            return Ok(report);
        }
    };
    let coeffs = tower.express_in_basis(&x)?;
    let back = tower.reconstruct(a.dim(), &coeffs)?;
    if back != x {
        report.counterexamples.push(Counterexample {
            identity: "reconstruct(express(x)) = x".into(),
            input: x.to_string(),
            lhs: back.to_string(),
            rhs: x.to_string(),
        });
    }
    let mut terms = Vec::new();
    for (f, c) in &coeffs {
        let c = numeric.scalar(c)?;
        report.line(format!("({c}) * {f}"));
        terms.push(json!({ "factors": f.to_string(), "coefficient": c }));
    }
    if terms.is_empty() {
        report.line("0");
    }
    report.result = json!({ "coefficients": terms });
    Ok(report)
}

pub fn exterior(
    action: ExteriorAction,
    n: usize,
    convention: ConventionArg,
    overlap: OverlapArg,
    unital: bool,
    output: Option<&Path>,
    degree: &Degree,
) -> Outcome {
    if n == 0 || n > 8 {
        return Err(usage("--n must be between 1 and 8"));
    }
    let spec = ExteriorSpec::new(n)
        .with_convention(match convention {
            ConventionArg::Lt => Convention::LessThan,
            ConventionArg::Gt => Convention::GreaterThan,
        })
        .with_overlap(match overlap {
            OverlapArg::Additive => OverlapRule::Additive,
            OverlapArg::Printed => OverlapRule::Printed,
        })
        .unital(unital);
    let inputs = json!({
        "n": n,
        "convention": spec.convention.to_string(),
        "overlap": format!("{:?}", spec.overlap).to_lowercase(),
        "unital": unital,
    });
    match action {
        ExteriorAction::EmitSpec => {
            let mut report = Report::new("exterior emit-spec", inputs);
            let file = SpecFile::from_algebra(&spec.to_algebra_spec());
            let text = file.to_json();
            match output {
                Some(p) => {
                    std::fs::write(p, &text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
                    report.line(format!("wrote {}", p.display()));
                }
                None => report.line(text),
            }
            report.result = serde_json::to_value(&file)?;
            Ok(report)
        }
        ExteriorAction::Validate => {
            let max = checked_degree(degree)?;
            let mut report = Report::new("exterior", inputs);
            let r = report.timed("validate", || validate_exterior(&spec, max));
            let mut claims = serde_json::Map::new();
            for (name, ok) in r.lines() {
                report.line(format!("{} {name}", pass_fail(ok)));
                claims.insert(name, Value::Bool(ok));
            }
            report.counterexamples.extend(r.wedge_invariant_witness.iter().cloned());
            report.counterexamples.extend(r.yb_algebra_violations.iter().cloned());
            report.counterexamples.extend(r.twisted_commutativity.witness.iter().cloned());
            report.result = Value::Object(claims);
            Ok(report)
        }
    }
}

pub fn twist(path: &Path, degree: &Degree) -> Outcome {
    let max = checked_degree(degree)?;
    let mut report = Report::new(
        "twist",
        json!({ "spec": path.display().to_string(), "max_degree": max }),
    );
    let Some(a) = load(path, &mut report)? else {
        return Ok(report);
    };
    let tc = report.timed("twist", || check_twisted_commutative(&a, max));
    report.line(format!("m∘σ = m: {}", tc.m_sigma_eq_m));
    report.line(format!("σ² = id: {}", tc.sigma_squared_id));
    report.line(format!("⋈∘β = ⋈: {}", tc.join_commutes));
    report.line(format!("consistent with the criterion: {}", tc.consistent_with_theorem15));
    report.counterexamples.extend(tc.witness.iter().cloned());
    report.result = json!({
        "m_sigma_eq_m": tc.m_sigma_eq_m,
        "sigma_squared_id": tc.sigma_squared_id,
        "join_commutes": tc.join_commutes,
        "consistent": tc.consistent_with_theorem15,
    });
    Ok(report)
}
