//! Command-line front end: group membership checks, subspace
//! classification, oscillator simulation, and bracket-algebra reports.
//!
//! Exit codes: 0 = success/positive verdict, 1 = checked and negative
//! (non-member, unclosed triple), 2 = input or validation error,
//! 3 = I/O failure. All reports are JSON on stdout.

use clap::{Parser, Subcommand, ValueEnum};
use splectic::exact::{rational_to_string, Matrix};
use splectic::io::{
    self, matrix_from_json_str, vectors_from_json_str, BracketsReport, CheckApReport,
    ClassifyReport, TrajectoryFormat,
};
use splectic::mechanics::{simulate, Integrator, Metric, MetricKind, OscillatorParams, PhasePoint};
use splectic::observables::{
    check_identity, classify_algebra, geometry_triple, jhf_components, structure_constants,
    ObservablesError, QuadraticObservable,
};
use splectic::sform::{classify_subspace, orthogonal_complement, BilinearForm, Subspace};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "splectic",
    version,
    about = "s-form geometry, the s-plectic group Ap(n), and D=2 oscillator mechanics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    Euclidean,
    Hyperbolic,
    S,
    Custom,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IntegratorArg {
    Exact,
    Verlet,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Gnuplot,
}

#[derive(Subcommand)]
enum Command {
    /// Check a matrix against the Ap(n) group condition.
    CheckAp {
        /// JSON matrix file: {"dim": 2n, "matrix": [["p/q", ...], ...]}.
        file: PathBuf,
        /// Half-dimension n; defaults to dim/2 from the file.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Classify a subspace against its s-orthogonal complement.
    Classify {
        /// JSON form file (symmetric, even-dimensional, nondegenerate).
        form: PathBuf,
        /// JSON subspace file: {"ambient_dim": n, "vectors": [[...], ...]}.
        subspace: PathBuf,
    },
    /// Integrate the D=2 isotropic oscillator and report invariant drift.
    Simulate {
        #[arg(long, value_enum, default_value = "euclidean")]
        metric: MetricArg,
        /// 2x2 metric JSON file (implies --metric custom).
        #[arg(long)]
        metric_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Initial dualized coordinates "x1,x2".
        #[arg(long, default_value = "1,0", value_parser = parse_pair)]
        x0: [f64; 2],
        /// Initial momenta "p1,p2".
        #[arg(long, default_value = "0,0", value_parser = parse_pair)]
        p0: [f64; 2],
        /// Duration; defaults to one period 2*pi/omega.
        #[arg(long)]
        t_end: Option<f64>,
        /// Step size; defaults to 1e-3 of a period.
        #[arg(long)]
        step: Option<f64>,
        #[arg(long, value_enum, default_value = "exact")]
        integrator: IntegratorArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Trajectory destination; stdout when omitted (the conservation
        /// report then moves to stderr).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Append per-sample values of the four invariants to the export.
        #[arg(long)]
        observables: bool,
        /// Relative drift threshold for the conservation report.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Structure constants, Killing form, and algebra classification for
    /// an integral triple.
    Brackets {
        /// euclidean | hyperbolic | s, or a comma list like "h0,h1,h2".
        #[arg(long, default_value = "euclidean")]
        triple: String,
        /// Bracket metric; defaults to the geometry of a named triple.
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
        /// 2x2 metric JSON file (implies --metric custom).
        #[arg(long)]
        metric_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
    },
}

enum Failure {
    /// Bad input: parse errors, shape errors, invalid values. Exit 2.
    Input(String),
    /// Filesystem problems. Exit 3.
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Io(m) => m,
        }
    }
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"a,b\", got `{s}`"));
    }
    let a = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok([a, b])
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn resolve_metric(
    metric: MetricArg,
    metric_file: &Option<PathBuf>,
) -> Result<Metric, Failure> {
    match (metric, metric_file) {
        (MetricArg::Euclidean, None) => Ok(Metric::euclidean()),
        (MetricArg::Hyperbolic, None) => Ok(Metric::hyperbolic()),
        (MetricArg::S, None) => Ok(Metric::s_form()),
        (MetricArg::Custom, None) => Err(Failure::Input(
            "--metric custom requires --metric-file".into(),
        )),
        (_, Some(path)) => {
            let text = read_file(path)?;
            let matrix =
                matrix_from_json_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
            Metric::custom(matrix).map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn cmd_check_ap(file: &Path, n: Option<usize>) -> Result<u8, Failure> {
    let text = read_file(file)?;
    let matrix = matrix_from_json_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let dim = matrix.rows();
    let n = match n {
        Some(n) => n,
        None if dim % 2 == 0 && dim > 0 => dim / 2,
        None => {
            return Err(Failure::Input(format!(
                "matrix dimension {dim} is not even; pass --n explicitly"
            )))
        }
    };
    let conditions = splectic::ap::check_block_conditions(&matrix, n)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let member = conditions.all_hold();
    let report = CheckApReport::new(n, member, conditions, &matrix.det());
    print_json(&report);
    Ok(if member { 0 } else { 1 })
}

fn cmd_classify(form_path: &Path, subspace_path: &Path) -> Result<u8, Failure> {
    let form_text = read_file(form_path)?;
    let form_matrix =
        matrix_from_json_str(&form_text).map_err(|e| Failure::Input(e.to_string()))?;
    let form = BilinearForm::new(form_matrix).map_err(|e| Failure::Input(e.to_string()))?;

    let sub_text = read_file(subspace_path)?;
    let (ambient, vectors) =
        vectors_from_json_str(&sub_text).map_err(|e| Failure::Input(e.to_string()))?;
    if ambient != form.dim() {
        return Err(Failure::Input(format!(
            "subspace ambient dimension {ambient} does not match form dimension {}",
            form.dim()
        )));
    }
    let subspace =
        Subspace::new(ambient, vectors).map_err(|e| Failure::Input(e.to_string()))?;

    let complement = orthogonal_complement(&form, &subspace);
    let classification = classify_subspace(&form, &subspace);
    let report = ClassifyReport {
        classification: classification.label().to_string(),
        subspace_dim: subspace.dim(),
        complement_dim: complement.dim(),
        complement: io::vectors_to_json(complement.ambient_dim(), complement.basis()),
    };
    print_json(&report);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    metric: MetricArg,
    metric_file: &Option<PathBuf>,
    mass: f64,
    omega: f64,
    x0: [f64; 2],
    p0: [f64; 2],
    t_end: Option<f64>,
    step: Option<f64>,
    integrator: IntegratorArg,
    format: FormatArg,
    output: &Option<PathBuf>,
    observables: bool,
    tolerance: f64,
) -> Result<u8, Failure> {
    let metric = resolve_metric(metric, metric_file)?;
    let params =
        OscillatorParams::new(mass, omega).map_err(|e| Failure::Input(e.to_string()))?;
    let t_end = t_end.unwrap_or_else(|| params.period());
    let step = step.unwrap_or_else(|| 1e-3 * params.period());
    let integrator = match integrator {
        IntegratorArg::Exact => Integrator::Exact,
        IntegratorArg::Verlet => Integrator::Verlet,
    };
    let start = PhasePoint::new(x0, p0);
    let trajectory = simulate(&params, &metric, &start, t_end, step, integrator)
        .map_err(|e| Failure::Input(e.to_string()))?;

    let format = match format {
        FormatArg::Csv => TrajectoryFormat::Csv,
        FormatArg::Json => TrajectoryFormat::Json,
        FormatArg::Gnuplot => TrajectoryFormat::Gnuplot,
    };
    let invariants = jhf_components(&params);
    let names = ["h0", "h1", "h2", "h3"];
    let with_observables = observables.then_some((&invariants[..], &names[..]));

    match output {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let mut writer = std::io::BufWriter::new(file);
            io::write_trajectory(&mut writer, &trajectory, format, with_observables)
                .map_err(|e| Failure::Io(e.to_string()))?;
            writer
                .flush()
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            io::write_trajectory(&mut lock, &trajectory, format, with_observables)
                .map_err(|e| Failure::Io(e.to_string()))?;
        }
    }

    let report = io::conservation_report(
        &trajectory,
        &invariants,
        &names,
        &integrator.to_string(),
        tolerance,
    );
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    if output.is_some() {
        println!("{rendered}");
    } else {
        eprintln!("{rendered}");
    }
    Ok(0)
}

fn named_triple(
    params: &OscillatorParams,
    kind: MetricKind,
) -> ([QuadraticObservable; 3], Vec<String>) {
    let triple = geometry_triple(kind, params).expect("named geometry");
    let names = triple
        .iter()
        .map(|o| o.label().unwrap_or("?").to_lowercase())
        .collect();
    (triple, names)
}

fn cmd_brackets(
    triple: &str,
    metric: Option<MetricArg>,
    metric_file: &Option<PathBuf>,
    mass: f64,
    omega: f64,
) -> Result<u8, Failure> {
    let params =
        OscillatorParams::new(mass, omega).map_err(|e| Failure::Input(e.to_string()))?;

    let (basis, names, default_metric) = match triple {
        "euclidean" => {
            let (b, n) = named_triple(&params, MetricKind::Euclidean);
            (b, n, Some(MetricArg::Euclidean))
        }
        "hyperbolic" => {
            let (b, n) = named_triple(&params, MetricKind::Hyperbolic);
            (b, n, Some(MetricArg::Hyperbolic))
        }
        "s" => {
            let (b, n) = named_triple(&params, MetricKind::SForm);
            (b, n, Some(MetricArg::S))
        }
        list => {
            let all = jhf_components(&params);
            let mut picked = Vec::new();
            let mut names = Vec::new();
            for part in list.split(',') {
                let idx = match part.trim().to_lowercase().as_str() {
                    "h0" => 0,
                    "h1" => 1,
                    "h2" => 2,
                    "h3" => 3,
                    other => {
                        return Err(Failure::Input(format!(
                            "unknown observable `{other}` (h0|h1|h2|h3)"
                        )))
                    }
                };
                picked.push(all[idx].clone());
                names.push(format!("h{idx}"));
            }
            if picked.len() != 3 {
                return Err(Failure::Input(format!(
                    "a bracket triple needs exactly 3 observables, got {}",
                    picked.len()
                )));
            }
            let basis: [QuadraticObservable; 3] =
                [picked[0].clone(), picked[1].clone(), picked[2].clone()];
            (basis, names, None)
        }
    };

    let metric = match (metric, metric_file, default_metric) {
        (Some(arg), file, _) => resolve_metric(arg, file)?,
        (None, file @ Some(_), _) => resolve_metric(MetricArg::Custom, file)?,
        (None, None, Some(arg)) => resolve_metric(arg, &None)?,
        (None, None, None) => Metric::euclidean(),
    };

    let identity = check_identity(&params);
    match structure_constants(&basis, &metric) {
        Ok(structure) => {
            let classification = classify_algebra(&structure);
            let constants: Vec<Vec<Vec<String>>> = (0..3)
                .map(|k| {
                    (0..3)
                        .map(|i| {
                            (0..3)
                                .map(|j| rational_to_string(structure.constant(k, i, j)))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let killing: Vec<Vec<String>> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| rational_to_string(&structure.killing()[(i, j)]))
                        .collect()
                })
                .collect();
            let report = BracketsReport {
                metric: metric.kind().to_string(),
                triple: names,
                closed: true,
                constants,
                killing,
                classification: classification.to_string(),
                identity,
            };
            print_json(&report);
            Ok(0)
        }
        Err(err @ ObservablesError::NotClosed { .. }) => {
            let detail = match &err {
                ObservablesError::NotClosed { i, j, residual } => serde_json::json!({
                    "error": "not closed",
                    "bracket": [names[*i], names[*j]],
                    "residual_gram": residual_gram_json(residual),
                }),
                _ => unreachable!(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&detail).expect("serializable")
            );
            Ok(1)
        }
        Err(other) => Err(Failure::Input(other.to_string())),
    }
}

fn residual_gram_json(residual: &QuadraticObservable) -> serde_json::Value {
    let gram: &Matrix = residual.gram();
    io::matrix_to_json(gram)["matrix"].clone()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::CheckAp { file, n } => cmd_check_ap(file, *n),
        Command::Classify { form, subspace } => cmd_classify(form, subspace),
        Command::Simulate {
            metric,
            metric_file,
            mass,
            omega,
            x0,
            p0,
            t_end,
            step,
            integrator,
            format,
            output,
            observables,
            tolerance,
        } => cmd_simulate(
            *metric,
            metric_file,
            *mass,
            *omega,
            *x0,
            *p0,
            *t_end,
            *step,
            *integrator,
            *format,
            output,
            *observables,
            *tolerance,
        ),
        Command::Brackets {
            triple,
            metric,
            metric_file,
            mass,
            omega,
        } => cmd_brackets(triple, *metric, metric_file, *mass, *omega),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
