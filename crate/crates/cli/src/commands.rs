use std::collections::BTreeMap;
use std::path::Path;

use lcwalk::injection::{phi_forward, render_trace_svg, verify_injection_with, InjectionInstance, InstanceSpec, PathPair};
use lcwalk::mc::{compare_empirical, simulate_capped, SimulationResult, DEFAULT_MAX_STEPS};
use lcwalk::paths::{ballot, binomial, count_paths_through, delannoy, CountMode};
use lcwalk::scalar::format_rational;
use lcwalk::walker::{
    exact_exit_distribution, log_concavity_check, log_concavity_check_map, truncated_strip_distribution,
    ModelSpec, StripModel, TransitionModel, DEFAULT_START_HEIGHT,
};
use lcwalk::lattice::RegionSpec;
use lcwalk::{BigRational, BigUint, Error, ExactModel, LatticePoint, Region, Scalar};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::output::{Outcome, Table};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Lib(e) => (e.kind(), e.to_string()),
            CliError::Io(m) => ("Io", m.clone()),
            CliError::Input(m) => ("InvalidInput", m.clone()),
        };
        json!({ "error": kind, "message": message }).to_string()
    }
}

pub type CmdResult = Result<Outcome, CliError>;

pub fn parse_point(s: &str) -> Result<(i64, i64), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(x)?, p(y)?))
}

pub fn parse_mode(s: &str) -> Result<CountMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Lib(Error::Parse(format!("{}: {e}", path.display()))))
}

fn load_region(path: &Path) -> Result<Region, CliError> {
    let spec: RegionSpec = read_json(path)?;
    Ok(Region::try_from(spec)?)
}

fn read_model(path: &Path) -> Result<ExactModel, CliError> {
    let spec: ModelSpec = read_json(path)?;
    Ok(spec.to_model()?)
}

fn load_model(path: Option<&Path>, region: &Region) -> Result<ExactModel, CliError> {
    match path {
        Some(p) => read_model(p),
        None => Ok(TransitionModel::uniform(region.m())),
    }
}

fn point(p: (i64, i64)) -> LatticePoint {
    LatticePoint::new(p.0, p.1)
}

fn ratio_str(q: &BigRational) -> String {
    format_rational(q)
}

pub fn region_validate(path: &Path) -> CmdResult {
    let region = load_region(path)?;
    let mut table = Table::new(vec!["x", "lo", "hi"]);
    for (x, (lo, hi)) in region.columns().iter().enumerate() {
        table.push(vec![x.to_string(), lo.to_string(), hi.to_string()]);
    }
    let data = json!({
        "valid": true,
        "m": region.m(),
        "step_set": region.step_set(),
        "points": region.num_points(),
        "columns": region.columns(),
    });
    Ok(Outcome::new(&data, table, true))
}

#[derive(Serialize)]
struct Row {
    k: i64,
    p: String,
    p_float: f64,
}

#[derive(Serialize)]
struct ViolationRow {
    k: i64,
    square: String,
    neighbours: String,
}

pub fn exact_solve(region: &Path, model: Option<&Path>, start: (i64, i64)) -> CmdResult {
    let region = load_region(region)?;
    let model = load_model(model, &region)?;
    let d = exact_exit_distribution(&region, &model, point(start))?;
    let rep = log_concavity_check_map(&d.probabilities, region.step_set().vertical_unit());
    let rows: Vec<Row> = d
        .probabilities
        .iter()
        .map(|(k, p)| Row { k: *k, p: ratio_str(p), p_float: p.to_f64_lossy() })
        .collect();
    let mut table = Table::new(vec!["k", "p", "p_float"]);
    for r in &rows {
        table.push(vec![r.k.to_string(), r.p.clone(), r.p_float.to_string()]);
    }
    let violations: Vec<ViolationRow> = rep
        .violations
        .iter()
        .map(|v| ViolationRow { k: v.k, square: ratio_str(&v.square), neighbours: ratio_str(&v.neighbours) })
        .collect();
    let data = json!({
        "start": d.start,
        "probabilities": rows,
        "total_mass": ratio_str(&d.total_mass),
        "kill": ratio_str(&d.kill),
        "log_concave": rep.passed,
        "violations": violations,
    });
    Ok(Outcome::new(&data, table, rep.passed))
}

#[derive(Serialize)]
struct AuditViolation {
    fixture: usize,
    rational_model: bool,
    region: Region,
    start: LatticePoint,
    k: i64,
    square: String,
    neighbours: String,
}

pub fn exact_audit(uniform: usize, rational: usize, seed: u64) -> CmdResult {
    let mut fixtures: Vec<(bool, lcwalk::fixtures::WalkFixture)> =
        lcwalk::fixtures::walk_fixtures(seed, uniform, true).into_iter().map(|f| (false, f)).collect();
    fixtures.extend(lcwalk::fixtures::walk_fixtures(seed.wrapping_add(1), rational, false).into_iter().map(|f| (true, f)));
    let results: Vec<Result<(usize, Vec<AuditViolation>), Error>> = fixtures
        .par_iter()
        .enumerate()
        .map(|(i, (rat, f))| {
            let d = exact_exit_distribution(&f.region, &f.model, f.start)?;
            let rep = log_concavity_check_map(&d.probabilities, 1);
            let v = rep
                .violations
                .iter()
                .map(|v| AuditViolation {
                    fixture: i,
                    rational_model: *rat,
                    region: f.region.clone(),
                    start: f.start,
                    k: v.k,
                    square: ratio_str(&v.square),
                    neighbours: ratio_str(&v.neighbours),
                })
                .collect();
            Ok((rep.checked, v))
        })
        .collect();
    let mut checked = 0;
    let mut violations = Vec::new();
    for r in results {
        let (c, v) = r?;
        checked += c;
        violations.extend(v);
    }
    let mut table = Table::new(vec!["fixture", "rational_model", "k", "square", "neighbours"]);
    for v in &violations {
        table.push(vec![v.fixture.to_string(), v.rational_model.to_string(), v.k.to_string(), v.square.clone(), v.neighbours.clone()]);
    }
    let passed = violations.is_empty();
    let data = json!({
        "seed": seed,
        "uniform_fixtures": uniform,
        "rational_fixtures": rational,
        "checked": checked,
        "violations": violations,
        "passed": passed,
    });
    Ok(Outcome::new(&data, table, passed))
}

pub fn strip_solve(
    ladder: bool,
    model: Option<&Path>,
    start_y: i64,
    floor: Option<i64>,
    ceiling: Option<i64>,
    tol: &str,
    max_height: i64,
) -> CmdResult {
    let tol: f64 = tol.parse().map_err(|e| CliError::Input(format!("tolerance {tol:?}: {e}")))?;
    if !(tol > 0.0) {
        return Err(CliError::Input("tolerance must be positive".into()));
    }
    let strip = if ladder {
        StripModel::ladder()
    } else {
        let path = model.ok_or_else(|| CliError::Input("--model or --ladder is required".into()))?;
        StripModel { model: read_model(path)?, start_y, floor, ceiling }
    };
    let d = truncated_strip_distribution(&strip, DEFAULT_START_HEIGHT, max_height, tol)?;
    let mut table = Table::new(vec!["k", "p", "bound"]);
    for (k, p) in &d.probabilities {
        table.push(vec![k.to_string(), p.to_string(), d.bound.to_string()]);
    }
    let rows: Vec<_> = d.probabilities.iter().map(|(k, p)| json!({ "k": k, "p": p })).collect();
    let data = json!({
        "probabilities": rows,
        "total_mass": d.total_mass,
        "bound": d.bound,
        "height": d.height,
    });
    Ok(Outcome::new(&data, table, true))
}

fn load_instance(region: &Path, instance: &Path) -> Result<InjectionInstance, CliError> {
    let region = load_region(region)?;
    let spec: InstanceSpec = read_json(instance)?;
    Ok(InjectionInstance::new(region, spec)?)
}

pub fn inject_verify(region: &Path, instance: &Path, bound: usize, check_inverse: bool) -> CmdResult {
    let inst = load_instance(region, instance)?;
    let rep = verify_injection_with(&inst, bound, check_inverse)?;
    let mut table = Table::new(vec!["field", "value"]);
    let fields = [
        ("bound", rep.bound),
        ("domain_size", rep.domain_size),
        ("image_size", rep.image_size),
        ("codomain_size", rep.codomain_size),
        ("duplicates", rep.duplicates),
        ("codomain_violations", rep.codomain_violations),
        ("profile_violations", rep.profile_violations),
        ("census_violations", rep.census_violations),
        ("length_violations", rep.length_violations),
        ("containment_violations", rep.containment_violations),
        ("construction_failures", rep.construction_failures),
        ("fallback_count", rep.fallback_count),
        ("inverse_failures", rep.inverse_failures),
        ("mid_edge_crossings", rep.mid_edge_crossings),
        ("profile_count_violations", rep.profile_count_violations),
    ];
    for (k, v) in fields {
        table.push(vec![k.to_string(), v.to_string()]);
    }
    table.push(vec!["passed".into(), rep.passed.to_string()]);
    Ok(Outcome::new(&rep, table, rep.passed))
}

pub fn inject_trace(region: &Path, instance: &Path, pair: &Path, svg: Option<&Path>) -> CmdResult {
    let inst = load_instance(region, instance)?;
    let pair: PathPair = read_json(pair)?;
    let (image, trace) = phi_forward(&inst, &pair)?;
    if let Some(path) = svg {
        std::fs::write(path, render_trace_svg(&inst, &pair, &image, &trace))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let mut table = Table::new(vec!["object", "value"]);
    table.push(vec!["input".into(), format!("{} ; {}", pair.first.steps_string(), pair.second.steps_string())]);
    table.push(vec!["output".into(), format!("{} ; {}", image.first.steps_string(), image.second.steps_string())]);
    table.push(vec!["E".into(), trace.e.to_string()]);
    table.push(vec!["F".into(), trace.f.to_string()]);
    table.push(vec!["G".into(), trace.g.to_string()]);
    table.push(vec!["fallback_used".into(), trace.fallback_used.to_string()]);
    let data = json!({ "input": pair, "output": image, "trace": trace });
    Ok(Outcome::new(&data, table, true))
}

fn lc_flags(values: &[BigUint]) -> Vec<bool> {
    (0..values.len())
        .map(|i| {
            if i == 0 || i + 1 == values.len() {
                return true;
            }
            &values[i] * &values[i] >= &values[i - 1] * &values[i + 1]
        })
        .collect()
}

fn sequence_outcome(ks: Vec<i64>, values: Vec<BigUint>) -> CmdResult {
    let flags = lc_flags(&values);
    let mut table = Table::new(vec!["k", "value", "lc_ok"]);
    let mut rows = Vec::new();
    for ((k, v), ok) in ks.iter().zip(&values).zip(&flags) {
        table.push(vec![k.to_string(), v.to_string(), ok.to_string()]);
        rows.push(json!({ "k": k, "value": v.to_string(), "lc_ok": ok }));
    }
    let passed = flags.iter().all(|f| *f) && log_concavity_check(&values, 1).passed;
    Ok(Outcome::new(&json!({ "rows": rows, "passed": passed }), table, passed))
}

pub fn famous_delannoy(n: u64) -> CmdResult {
    sequence_outcome((0..=n as i64).collect(), (0..=n).map(|k| delannoy(k, n - k)).collect())
}

pub fn famous_binomial(n: u64) -> CmdResult {
    sequence_outcome((0..=n as i64).collect(), (0..=n).map(|k| binomial(n, k)).collect())
}

pub fn famous_ballot(n: u64) -> CmdResult {
    let ks: Vec<u64> = (n.div_ceil(2)..=n).collect();
    let values = ks.iter().map(|&k| ballot(n, k)).collect::<Result<Vec<_>, _>>()?;
    sequence_outcome(ks.into_iter().map(|k| k as i64).collect(), values)
}

pub fn count(mode: CountMode, region: &Path, column: i64, from: Option<(i64, i64)>, to: Option<(i64, i64)>) -> CmdResult {
    let region = load_region(region)?;
    let a = point(from.unwrap_or((0, 0)));
    let b = point(to.unwrap_or((region.width(), 0)));
    let table_counts = count_paths_through(&region, mode, a, b, column)?;
    let stride = if mode == CountMode::Monotone { 1 } else { 2 };
    // Stride-2 tables live on one parity class; the other class is identically zero.
    let class: BTreeMap<i64, BigUint> = table_counts
        .iter()
        .filter(|(&k, _)| stride == 1 || (column + k - a.x - a.y).rem_euclid(2) == 0)
        .map(|(k, v)| (*k, v.clone()))
        .collect();
    let rep = log_concavity_check_map(&class, stride);
    let bad: Vec<i64> = rep.violations.iter().map(|v| v.k).collect();
    let mut table = Table::new(vec!["k", "value", "lc_ok"]);
    let mut rows = Vec::new();
    for (k, v) in &table_counts {
        let ok = !bad.contains(k);
        table.push(vec![k.to_string(), v.to_string(), ok.to_string()]);
        rows.push(json!({ "k": k, "value": v.to_string(), "lc_ok": ok }));
    }
    let data = json!({ "mode": mode, "column": column, "from": a, "to": b, "rows": rows, "passed": rep.passed });
    Ok(Outcome::new(&data, table, rep.passed))
}

fn sim_table(res: &SimulationResult) -> Table {
    let mut table = Table::new(vec!["k", "count", "frequency"]);
    for (k, c) in &res.counts {
        table.push(vec![k.to_string(), c.to_string(), res.frequency(*k).to_string()]);
    }
    table
}

pub fn mc_run(region: &Path, model: Option<&Path>, start: (i64, i64), n: u64, seed: u64, max_steps: u64) -> CmdResult {
    let region = load_region(region)?;
    let model = load_model(model, &region)?;
    let res = simulate_capped(&region, &model, point(start), n, seed, max_steps)?;
    Ok(Outcome::new(&res, sim_table(&res), true))
}

pub fn mc_compare(region: &Path, model: Option<&Path>, start: (i64, i64), sim: Option<&Path>, n: u64, seed: u64) -> CmdResult {
    let region = load_region(region)?;
    let model = load_model(model, &region)?;
    let exact = exact_exit_distribution(&region, &model, point(start))?;
    let res = match sim {
        Some(p) => read_json(p)?,
        None => simulate_capped(&region, &model, point(start), n, seed, DEFAULT_MAX_STEPS)?,
    };
    let cmp = compare_empirical(&exact, &res);
    let mut table = Table::new(vec!["k", "expected", "observed", "count", "z", "flagged"]);
    for r in &cmp.rows {
        table.push(vec![
            r.k.to_string(),
            r.expected.to_string(),
            r.observed.to_string(),
            r.count.to_string(),
            r.z.map_or_else(String::new, |z| z.to_string()),
            r.flagged.to_string(),
        ]);
    }
    Ok(Outcome::new(&cmp, table, cmp.passed))
}
