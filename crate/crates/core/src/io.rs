//! JSON schemas for forms, matrices, and subspaces, report types for the
//! CLI, and trajectory export (CSV, JSON, gnuplot).
//!
//! Rational entries serialize as `"p/q"` strings. On input, plain JSON
//! numbers are also accepted: integers and decimal literals are
//! rationalized exactly.

use crate::ap::BlockConditions;
use crate::batch::evaluate_along;
use crate::exact::{
    parse_rational, rational_from_f64, rational_to_string, Matrix, Rational, Vector,
};
use crate::mechanics::{Metric, Trajectory};
use crate::observables::{IdentityReport, QuadraticObservable};
use serde_json::{json, Value};
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

fn parse_value_rational(v: &Value) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => {
            parse_rational(s).map_err(|e| IoError::Parse(e.to_string()))
        }
        Value::Number(n) => {
            // The shortest-roundtrip rendering recovers integer and decimal
            // literals, which then rationalize exactly; anything exotic
            // falls back to the exact binary expansion of the f64.
            let rendered = n.to_string();
            parse_rational(&rendered).or_else(|_| {
                n.as_f64()
                    .and_then(rational_from_f64)
                    .ok_or_else(|| IoError::Parse(format!("unrepresentable number {n}")))
            })
        }
        other => Err(IoError::Parse(format!("expected rational, got {other}"))),
    }
}

/// Reads `{"dim": n, "matrix": [[...], ...]}` into an exact matrix.
pub fn matrix_from_json(value: &Value) -> Result<Matrix, IoError> {
    let dim = value
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Parse("missing or invalid `dim`".into()))? as usize;
    let rows = value
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Parse("missing `matrix` array".into()))?;
    if rows.len() != dim {
        return Err(IoError::Parse(format!(
            "expected {dim} rows, found {}",
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(dim);
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| IoError::Parse("matrix rows must be arrays".into()))?;
        if entries.len() != dim {
            return Err(IoError::Parse(format!(
                "expected {dim} columns, found {}",
                entries.len()
            )));
        }
        out.push(
            entries
                .iter()
                .map(parse_value_rational)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(Matrix::from_rows(out))
}

pub fn matrix_from_json_str(s: &str) -> Result<Matrix, IoError> {
    let value: Value = serde_json::from_str(s).map_err(|e| IoError::Parse(e.to_string()))?;
    matrix_from_json(&value)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    assert!(m.is_square());
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| Value::String(rational_to_string(&m[(i, j)])))
                    .collect(),
            )
        })
        .collect();
    json!({ "dim": m.rows(), "matrix": rows })
}

/// Reads `{"ambient_dim": n, "vectors": [[...], ...]}` into raw spanning
/// vectors; subspace validation happens at construction.
pub fn vectors_from_json_str(s: &str) -> Result<(usize, Vec<Vector>), IoError> {
    let value: Value = serde_json::from_str(s).map_err(|e| IoError::Parse(e.to_string()))?;
    let ambient = value
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Parse("missing or invalid `ambient_dim`".into()))?
        as usize;
    let rows = value
        .get("vectors")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Parse("missing `vectors` array".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| IoError::Parse("vectors must be arrays".into()))?;
        out.push(Vector::new(
            entries
                .iter()
                .map(parse_value_rational)
                .collect::<Result<Vec<_>, _>>()?,
        ));
    }
    Ok((ambient, out))
}

pub fn vectors_to_json(ambient_dim: usize, vectors: &[Vector]) -> Value {
    let rows: Vec<Value> = vectors
        .iter()
        .map(|v| {
            Value::Array(
                v.iter()
                    .map(|e| Value::String(rational_to_string(e)))
                    .collect(),
            )
        })
        .collect();
    json!({ "ambient_dim": ambient_dim, "vectors": rows })
}

/// Membership report for one candidate Ap(n) matrix.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckApReport {
    pub n: usize,
    pub member: bool,
    pub conditions: BlockConditions,
    pub det: String,
    pub det_squared_is_one: bool,
}

impl CheckApReport {
    pub fn new(n: usize, member: bool, conditions: BlockConditions, det: &Rational) -> Self {
        let det_squared = det * det;
        CheckApReport {
            n,
            member,
            conditions,
            det: rational_to_string(det),
            det_squared_is_one: det_squared == crate::exact::rat(1),
        }
    }
}

/// Output of subspace classification: the complement's basis plus label.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ClassifyReport {
    pub classification: String,
    pub subspace_dim: usize,
    pub complement_dim: usize,
    pub complement: Value,
}

/// Structure constants, Killing form, classification, and identity check
/// for one bracket triple.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BracketsReport {
    pub metric: String,
    pub triple: Vec<String>,
    pub closed: bool,
    /// `constants[k][i][j]` is the coefficient of `e_k` in `{e_i, e_j}`.
    pub constants: Vec<Vec<Vec<String>>>,
    pub killing: Vec<Vec<String>>,
    pub classification: String,
    pub identity: IdentityReport,
}

/// Per-invariant drift summary along a trajectory.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InvariantDrift {
    pub name: String,
    pub initial: f64,
    pub max_abs_drift: f64,
    pub max_rel_drift: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ConservationReport {
    pub integrator: String,
    pub metric: String,
    pub samples: usize,
    pub tolerance: f64,
    pub invariants: Vec<InvariantDrift>,
    pub within_tolerance: bool,
}

/// Evaluates the observables along the trajectory and summarizes their
/// drift relative to the initial sample.
pub fn conservation_report(
    trajectory: &Trajectory,
    observables: &[QuadraticObservable],
    names: &[&str],
    integrator: &str,
    tolerance: f64,
) -> ConservationReport {
    assert_eq!(observables.len(), names.len());
    let values = evaluate_along(trajectory, observables);
    let mut invariants = Vec::with_capacity(observables.len());
    for (col, name) in names.iter().enumerate() {
        let initial = values.first().map_or(0.0, |row| row[col]);
        let scale = initial.abs().max(1.0);
        let mut max_abs: f64 = 0.0;
        for row in &values {
            max_abs = max_abs.max((row[col] - initial).abs());
        }
        invariants.push(InvariantDrift {
            name: name.to_string(),
            initial,
            max_abs_drift: max_abs,
            max_rel_drift: max_abs / scale,
        });
    }
    let within = invariants.iter().all(|i| i.max_rel_drift <= tolerance);
    ConservationReport {
        integrator: integrator.to_string(),
        metric: trajectory.metric().kind().to_string(),
        samples: trajectory.samples().len(),
        tolerance,
        invariants,
        within_tolerance: within,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryFormat {
    Csv,
    Json,
    Gnuplot,
}

impl std::str::FromStr for TrajectoryFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TrajectoryFormat::Csv),
            "json" => Ok(TrajectoryFormat::Json),
            "gnuplot" => Ok(TrajectoryFormat::Gnuplot),
            other => Err(format!("unknown format `{other}` (csv|json|gnuplot)")),
        }
    }
}

/// Writes the trajectory. CSV carries the header `t,x1,x2,p1,p2`; when
/// observables are supplied their per-sample values are appended as extra
/// columns. The gnuplot variant is whitespace-delimited with a comment
/// header.
pub fn write_trajectory(
    out: &mut dyn Write,
    trajectory: &Trajectory,
    format: TrajectoryFormat,
    observables: Option<(&[QuadraticObservable], &[&str])>,
) -> Result<(), IoError> {
    let values = observables.map(|(obs, names)| {
        assert_eq!(obs.len(), names.len());
        (evaluate_along(trajectory, obs), names)
    });
    match format {
        TrajectoryFormat::Csv | TrajectoryFormat::Gnuplot => {
            let (lead, sep) = match format {
                TrajectoryFormat::Csv => ("", ","),
                _ => ("# ", " "),
            };
            let mut header = format!("{lead}t{sep}x1{sep}x2{sep}p1{sep}p2");
            if let Some((_, names)) = &values {
                for name in *names {
                    header.push_str(sep);
                    header.push_str(name);
                }
            }
            writeln!(out, "{header}")?;
            for (k, sample) in trajectory.samples().iter().enumerate() {
                let mut line = format!(
                    "{}{sep}{}{sep}{}{sep}{}{sep}{}",
                    sample.t, sample.x[0], sample.x[1], sample.p[0], sample.p[1]
                );
                if let Some((rows, _)) = &values {
                    for v in &rows[k] {
                        line.push_str(sep);
                        line.push_str(&v.to_string());
                    }
                }
                writeln!(out, "{line}")?;
            }
        }
        TrajectoryFormat::Json => {
            let samples: Vec<Value> = trajectory
                .samples()
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    let mut obj = json!({ "t": s.t, "x": s.x, "p": s.p });
                    if let Some((rows, names)) = &values {
                        let map = obj.as_object_mut().unwrap();
                        for (name, v) in names.iter().zip(&rows[k]) {
                            map.insert((*name).to_string(), json!(v));
                        }
                    }
                    obj
                })
                .collect();
            let doc = json!({
                "params": {
                    "mass": trajectory.params().mass(),
                    "omega": trajectory.params().omega(),
                },
                "metric": metric_to_json(trajectory.metric()),
                "samples": samples,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
    }
    Ok(())
}

pub fn metric_to_json(metric: &Metric) -> Value {
    json!({
        "kind": metric.kind().to_string(),
        "matrix": matrix_to_json(metric.matrix())["matrix"],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::mechanics::{simulate, Integrator, OscillatorParams, PhasePoint};
    use crate::observables::jhf_components;

    #[test]
    fn matrix_json_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![rat(0), ratio(1, 2)],
            vec![ratio(1, 2), rat(-3)],
        ]);
        let v = matrix_to_json(&m);
        let back = matrix_from_json(&v).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_json_accepts_numbers_and_decimal_strings() {
        let s = r#"{"dim": 2, "matrix": [[0, 1], ["0.5", "-2/3"]]}"#;
        let m = matrix_from_json_str(s).unwrap();
        assert_eq!(m[(1, 0)], ratio(1, 2));
        assert_eq!(m[(1, 1)], ratio(-2, 3));
        // Decimal JSON numbers rationalize exactly as written.
        let s = r#"{"dim": 1, "matrix": [[0.1]]}"#;
        let m = matrix_from_json_str(s).unwrap();
        assert_eq!(m[(0, 0)], ratio(1, 10));
    }

    #[test]
    fn matrix_json_rejects_bad_shapes() {
        assert!(matrix_from_json_str(r#"{"dim": 2, "matrix": [[1, 0]]}"#).is_err());
        assert!(matrix_from_json_str(r#"{"dim": 2, "matrix": [[1], [0]]}"#).is_err());
        assert!(matrix_from_json_str(r#"{"matrix": [[1]]}"#).is_err());
        assert!(matrix_from_json_str(r#"{"dim": 1, "matrix": [["1/0"]]}"#).is_err());
        assert!(matrix_from_json_str("not json").is_err());
    }

    #[test]
    fn vectors_round_trip() {
        let vs = vec![Vector::from_i64(&[1, 0]), Vector::new(vec![ratio(1, 3), rat(2)])];
        let v = vectors_to_json(2, &vs);
        let (ambient, back) = vectors_from_json_str(&v.to_string()).unwrap();
        assert_eq!(ambient, 2);
        assert_eq!(back, vs);
    }

    #[test]
    fn csv_export_shape() {
        let params = OscillatorParams::new(1.0, 1.0).unwrap();
        let metric = Metric::euclidean();
        let start = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        let traj = simulate(&params, &metric, &start, 1.0, 0.5, Integrator::Exact).unwrap();

        let mut buf = Vec::new();
        write_trajectory(&mut buf, &traj, TrajectoryFormat::Csv, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,x1,x2,p1,p2");
        assert_eq!(lines.count(), traj.samples().len());

        let obs = jhf_components(&params);
        let names = ["h0", "h1", "h2", "h3"];
        let mut buf = Vec::new();
        write_trajectory(
            &mut buf,
            &traj,
            TrajectoryFormat::Csv,
            Some((&obs, &names)),
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,x1,x2,p1,p2,h0,h1,h2,h3\n"));
    }

    #[test]
    fn gnuplot_export_has_comment_header() {
        let params = OscillatorParams::new(1.0, 1.0).unwrap();
        let traj = simulate(
            &params,
            &Metric::s_form(),
            &PhasePoint::new([1.0, 0.0], [0.0, 0.0]),
            0.2,
            0.1,
            Integrator::Verlet,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_trajectory(&mut buf, &traj, TrajectoryFormat::Gnuplot, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# t x1 x2 p1 p2\n"));
        assert!(!text.contains(','));
    }

    #[test]
    fn json_export_parses_back() {
        let params = OscillatorParams::new(2.0, 0.5).unwrap();
        let traj = simulate(
            &params,
            &Metric::hyperbolic(),
            &PhasePoint::new([0.5, 0.5], [0.1, -0.1]),
            1.0,
            0.25,
            Integrator::Exact,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_trajectory(&mut buf, &traj, TrajectoryFormat::Json, None).unwrap();
        let doc: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc["params"]["mass"], json!(2.0));
        assert_eq!(doc["metric"]["kind"], json!("hyperbolic"));
        assert_eq!(
            doc["samples"].as_array().unwrap().len(),
            traj.samples().len()
        );
    }

    #[test]
    fn conservation_report_flags_drift() {
        let params = OscillatorParams::new(1.0, 1.0).unwrap();
        let metric = Metric::euclidean();
        let start = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        let traj = simulate(&params, &metric, &start, 5.0, 0.01, Integrator::Exact).unwrap();
        let obs = jhf_components(&params);
        let names = ["h0", "h1", "h2", "h3"];
        let report = conservation_report(&traj, &obs, &names, "exact", 1e-10);
        assert!(report.within_tolerance);
        assert_eq!(report.invariants.len(), 4);
        assert_eq!(report.invariants[0].name, "h0");
        assert!((report.invariants[0].initial - 1.0).abs() < 1e-14);
    }
}
