use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sinhgordon::checks::{run_suite, CheckOutcome};
use sinhgordon::degree::{
    degree_formula_routed, degree_numeric, kw_degree_formula, kw_degree_numeric, select_radius_with_set, Agreement,
    DegreeReport, DEFAULT_STARTS,
};
use sinhgordon::instances::{self, kw_table_rows};
use sinhgordon::io::{parse_graph, parse_problem, Input, ParsedProblem};
use sinhgordon::solver::{brute_force_2v, enumerate_solutions, newton_solve, Enumeration, Solution};
use sinhgordon::sweep::{c_grid, estimate_threshold, rows_to_csv, sweep_c, validate_range, SweepRow, SweepSettings, ThresholdEstimate};
use sinhgordon::{Error, Graph, Problem, SolverConfig, VertexFunction};

use crate::output::{
    csv_preamble, emit, read, to_json, CliError, ManifestBuilder, RunManifest, EXIT_MISMATCH, EXIT_OK,
};
use crate::{Format, GlobalOpts};

const BRUTE_RADIUS: f64 = 8.0;
const BRUTE_GRID: usize = 400;

fn config(g: &GlobalOpts, file: Option<SolverConfig>) -> Result<SolverConfig, CliError> {
    let mut cfg = file.unwrap_or_default();
    if let Some(tol) = g.tol {
        cfg.tol = tol;
    }
    if let Some(n) = g.max_iter {
        cfg.max_iter = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn settings(g: &GlobalOpts) -> SweepSettings {
    let d = SweepSettings::default();
    SweepSettings {
        radius: g.radius.unwrap_or(d.radius),
        starts: g.starts.unwrap_or(d.starts),
        seed: g.seed,
    }
}

fn load(input: &Path) -> Result<ParsedProblem, CliError> {
    Ok(parse_problem(&read(input)?)?)
}

fn json_only(g: &GlobalOpts, command: &str) -> Result<(), CliError> {
    match g.format {
        Some(Format::Csv) => Err(CliError::Usage(format!("`{command}` has no CSV output"))),
        _ => Ok(()),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StartFile {
    Values(Vec<f64>),
    ByVertex(BTreeMap<String, f64>),
}

fn read_start(path: &Path, graph: &Graph) -> Result<VertexFunction, CliError> {
    let parsed: StartFile = serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    let values = match parsed {
        StartFile::Values(v) => {
            if v.len() != graph.vertex_count() {
                return Err(Error::DimensionMismatch {
                    expected: graph.vertex_count(),
                    found: v.len(),
                }
                .into());
            }
            v
        }
        StartFile::ByVertex(m) => {
            if let Some(k) = m.keys().find(|k| graph.index_of(k).is_none()) {
                return Err(Error::UnknownVertex(k.clone()).into());
            }
            graph
                .labels()
                .iter()
                .map(|l| {
                    m.get(l).copied().ok_or_else(|| Error::MissingValue {
                        field: "start".into(),
                        vertex: l.clone(),
                    })
                })
                .collect::<Result<_, _>>()?
        }
    };
    Ok(VertexFunction::new(values)?)
}

#[derive(Serialize)]
struct SolveReport<'a> {
    manifest: RunManifest,
    vertices: &'a [String],
    solution: Solution,
}

pub fn solve(g: &GlobalOpts, input: &Path, start: Option<&Path>) -> Result<u8, CliError> {
    json_only(g, "solve")?;
    let parsed = load(input)?;
    let cfg = config(g, parsed.solver)?;
    let m = ManifestBuilder::new("solve", Some(input), cfg, g.seed);
    let p = parsed.input.problem();
    let u0 = match start {
        Some(path) => read_start(path, &p.graph)?,
        None => VertexFunction::zeros(p.vertex_count()),
    };
    let solution = newton_solve(&p, &u0, &cfg)?;
    let report = SolveReport {
        manifest: m.finish(),
        vertices: p.graph.labels(),
        solution,
    };
    emit(g.out.as_deref(), &to_json(&report))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct EnumerateReport<'a> {
    manifest: RunManifest,
    vertices: &'a [String],
    enumeration: Enumeration,
}

fn enumeration_csv(labels: &[String], e: &Enumeration) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["det_sign".to_string(), "residual_inf_norm".into(), "error_estimate".into()];
    header.extend(labels.iter().map(|l| format!("u_{l}")));
    w.write_record(&header).expect("writing to memory");
    for s in &e.solutions {
        let mut row = vec![s.det_sign.to_string(), s.residual_inf_norm.to_string(), s.error_estimate.to_string()];
        row.extend(s.u.iter().map(f64::to_string));
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV output is UTF-8")
}

pub fn enumerate(g: &GlobalOpts, input: &Path) -> Result<u8, CliError> {
    let parsed = load(input)?;
    let cfg = config(g, parsed.solver)?;
    let s = settings(g);
    let m = ManifestBuilder::new("enumerate", Some(input), cfg, g.seed);
    let p = parsed.input.problem();
    let e = enumerate_solutions(&p, s.radius, s.starts, &cfg, s.seed)?;
    let manifest = m.finish();
    let text = match g.format {
        Some(Format::Csv) => csv_preamble(&manifest, &[]) + &enumeration_csv(p.graph.labels(), &e),
        _ => to_json(&EnumerateReport {
            manifest,
            vertices: p.graph.labels(),
            enumeration: e,
        }),
    };
    emit(g.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DegreeOutput {
    manifest: RunManifest,
    report: DegreeReport,
}

pub fn degree(g: &GlobalOpts, input: &Path, formula_only: bool) -> Result<u8, CliError> {
    json_only(g, "degree")?;
    let parsed = load(input)?;
    let cfg = config(g, parsed.solver)?;
    let starts = g.starts.unwrap_or(DEFAULT_STARTS);
    let m = ManifestBuilder::new("degree", Some(input), cfg, g.seed);
    let report = match (&parsed.input, formula_only) {
        (Input::KazdanWarner(k), true) => {
            DegreeReport::formula_only(kw_degree_formula(k)?, vec!["Kazdan-Warner table".into()])
        }
        (Input::KazdanWarner(k), false) => kw_degree_numeric(k, &cfg, starts, g.seed)?,
        (Input::SinhGordon(p), true) => {
            let (d, route) = degree_formula_routed(p)?;
            DegreeReport::formula_only(d, vec![format!("formula route: {}", route.describe())])
        }
        (Input::SinhGordon(p), false) => degree_numeric(p, &cfg, starts, g.seed)?,
    };
    let code = if report.agreement == Agreement::Mismatch {
        eprintln!(
            "degree mismatch: formula {:?}, numeric {:?}",
            report.formula_degree, report.numeric_degree
        );
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    let out = DegreeOutput {
        manifest: m.finish(),
        report,
    };
    emit(g.out.as_deref(), &to_json(&out))?;
    Ok(code)
}

#[derive(Serialize)]
struct SweepOutput {
    manifest: RunManifest,
    rows: Vec<SweepRow>,
    threshold: Option<ThresholdEstimate>,
}

pub fn sweep(g: &GlobalOpts, input: &Path, from: f64, to: f64, steps: usize) -> Result<u8, CliError> {
    validate_range(from, to)?;
    let parsed = load(input)?;
    let cfg = config(g, parsed.solver)?;
    let s = settings(g);
    let m = ManifestBuilder::new("sweep", Some(input), cfg, g.seed);
    let p = parsed.input.problem();
    let rows = sweep_c(&p, &c_grid(from, to, steps), &cfg, &s)?;
    let threshold = estimate_threshold(&p, &rows, &cfg, &s)?;
    let manifest = m.finish();
    let text = match g.format {
        Some(Format::Json) => to_json(&SweepOutput {
            manifest,
            rows,
            threshold,
        }),
        _ => {
            let c_star = threshold.map_or_else(|| "none".into(), |t| {
                format!("{} (no zeros at {}, zeros at {})", t.c_star, t.unsolvable, t.solvable)
            });
            csv_preamble(&manifest, &[("c_star", c_star)]) + &rows_to_csv(&rows)
        }
    };
    emit(g.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct ExampleCheck {
    check: String,
    expected: String,
    observed: String,
    passed: bool,
}

impl ExampleCheck {
    fn new(check: impl Into<String>, expected: impl ToString, observed: impl ToString, passed: bool) -> Self {
        Self {
            check: check.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            passed,
        }
    }
}

#[derive(Serialize)]
struct ExamplesOutput {
    manifest: RunManifest,
    example: String,
    c: Option<f64>,
    checks: Vec<ExampleCheck>,
    passed: bool,
}

fn fmt_degree(d: Option<i32>) -> String {
    d.map_or_else(|| "indeterminate".into(), |d| d.to_string())
}

/// Newton from 0 against a closed-form zero.
fn closed_form_check(p: &Problem, exact: &VertexFunction, cfg: &SolverConfig) -> ExampleCheck {
    match newton_solve(p, &VertexFunction::zeros(2), cfg) {
        Ok(s) => {
            let err = s.u.dist_inf(exact);
            ExampleCheck::new(
                "Newton from 0 matches the closed form",
                format!("{:?} within 1e-8", exact.values()),
                format!("{:?}, error {err:.1e}", s.u.values()),
                err <= 1e-8,
            )
        }
        Err(e) => ExampleCheck::new("Newton from 0 matches the closed form", format!("{:?}", exact.values()), e, false),
    }
}

/// Multistart count against the grid oracle, both inside the oracle square.
fn count_checks(p: &Problem, expected: Option<usize>, cfg: &SolverConfig, seed: u64) -> Result<Vec<ExampleCheck>, CliError> {
    let (radius, stable, set) = select_radius_with_set(p, cfg, DEFAULT_STARTS, seed)?;
    let grid = brute_force_2v(p, BRUTE_RADIUS, BRUTE_GRID)?;
    let inner: Vec<&VertexFunction> = set.solutions.iter().map(|s| &s.u).filter(|u| u.inf_norm() < BRUTE_RADIUS).collect();
    let agree = inner.len() == grid.len() && inner.iter().all(|u| grid.iter().any(|v| u.dist_inf(v) <= 1e-6));
    let mut out = vec![ExampleCheck::new(
        "multistart zeros agree with the grid oracle",
        format!("{} grid zeros", grid.len()),
        format!("{} multistart zeros in the square", inner.len()),
        agree,
    )];
    if let Some(n) = expected {
        out.push(ExampleCheck::new(
            "number of zeros",
            n,
            format!("{} (radius {radius}, {})", set.solutions.len(), if stable { "stable" } else { "unstable" }),
            stable && set.solutions.len() == n,
        ));
    }
    Ok(out)
}

fn degree_checks(r: &DegreeReport, expected: i32) -> Vec<ExampleCheck> {
    vec![
        ExampleCheck::new("formula degree", expected, fmt_degree(r.formula_degree), r.formula_degree == Some(expected)),
        ExampleCheck::new("numeric degree", expected, fmt_degree(r.numeric_degree), r.numeric_degree == Some(expected)),
    ]
}

fn two_vertex_example(name: &str, c: f64, cfg: &SolverConfig, seed: u64) -> Result<Vec<ExampleCheck>, CliError> {
    let p = instances::two_vertex_case(name, c).expect("name checked by the caller");
    let mut checks = Vec::new();
    let (expected_count, expected_degree) = match name {
        "case1" => {
            checks.push(closed_form_check(&p, &instances::case1_solution(c), cfg));
            (Some(1), -1)
        }
        "case2" => (Some(0), 0),
        // the closed form only rules out zeros at c = 0
        "case3" => ((c == 0.0).then_some(0), 0),
        _ => {
            checks.push(closed_form_check(&p, &instances::case4_solution(c), cfg));
            (Some(1), 1)
        }
    };
    checks.extend(count_checks(&p, expected_count, cfg, seed)?);
    checks.extend(degree_checks(&degree_numeric(&p, cfg, DEFAULT_STARTS, seed)?, expected_degree));
    Ok(checks)
}

fn kw_example(cfg: &SolverConfig, seed: u64) -> Result<Vec<ExampleCheck>, CliError> {
    let mut checks = Vec::new();
    for row in kw_table_rows() {
        let r = kw_degree_numeric(&row.problem, cfg, DEFAULT_STARTS, seed)?;
        let label = format!("{} (h = {:?}, c = {})", row.condition, row.problem.h.values(), row.problem.c);
        checks.push(ExampleCheck::new(
            label,
            row.degree,
            format!("formula {}, numeric {}", fmt_degree(r.formula_degree), fmt_degree(r.numeric_degree)),
            r.formula_degree == Some(row.degree) && r.numeric_degree == Some(row.degree),
        ));
    }
    Ok(checks)
}

fn table(name: &str, checks: &[ExampleCheck]) -> String {
    let w = checks.iter().map(|c| c.check.chars().count()).max().unwrap_or(0);
    let mut s = format!("{name}\n");
    for c in checks {
        s.push_str(&format!(
            "  [{}] {:<w$}  expected {}, got {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.check,
            c.expected,
            c.observed
        ));
    }
    s
}

pub fn examples(g: &GlobalOpts, name: &str, c: f64) -> Result<u8, CliError> {
    let cfg = config(g, None)?;
    let m = ManifestBuilder::new("examples", None, cfg, g.seed);
    let (checks, c) = match name {
        "case1" | "case2" | "case3" | "case4" => (two_vertex_example(name, c, &cfg, g.seed)?, Some(c)),
        "kw-appendix" => (kw_example(&cfg, g.seed)?, None),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown example {name:?}; expected case1, case2, case3, case4 or kw-appendix"
            )))
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    let title = match c {
        Some(c) => format!("{name} at c = {c}"),
        None => name.to_string(),
    };
    let out = ExamplesOutput {
        manifest: m.finish(),
        example: name.into(),
        c,
        checks,
        passed,
    };
    match (&g.out, g.format) {
        (Some(path), _) => {
            emit(Some(path), &to_json(&out))?;
            print!("{}", table(&title, &out.checks));
        }
        (None, Some(Format::Json)) => emit(None, &to_json(&out))?,
        (None, _) => print!("{}", table(&title, &out.checks)),
    }
    Ok(if passed { EXIT_OK } else { EXIT_MISMATCH })
}

#[derive(Serialize)]
struct VerifyOutput {
    manifest: RunManifest,
    trials: usize,
    outcomes: Vec<CheckOutcome>,
}

pub fn verify(g: &GlobalOpts, input: Option<&Path>, trials: usize) -> Result<u8, CliError> {
    json_only(g, "verify")?;
    let graph = input.map(|p| read(p).and_then(|t| Ok(parse_graph(&t)?))).transpose()?;
    let cfg = config(g, None)?;
    let m = ManifestBuilder::new("verify", input, cfg, g.seed);
    let outcomes = run_suite(graph.as_ref(), trials, g.seed);
    let passed = outcomes.iter().all(|o| o.passed);
    for o in outcomes.iter().filter(|o| !o.passed) {
        eprintln!("check {} failed: {:?}", o.name, o.witness);
    }
    let out = VerifyOutput {
        manifest: m.finish(),
        trials,
        outcomes,
    };
    emit(g.out.as_deref(), &to_json(&out))?;
    Ok(if passed { EXIT_OK } else { EXIT_MISMATCH })
}
