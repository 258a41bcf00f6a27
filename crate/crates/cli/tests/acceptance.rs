//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use lcwalk::fixtures::{count_fixtures, monotone_fixtures, walk_fixtures};
use lcwalk::mc::{compare_empirical, simulate};
use lcwalk::paths::{
    ballot, ballot_region, count_monotone_paths, count_paths_through, delannoy, first_exit_mass_lower_bound, CountMode,
};
use lcwalk::walker::{
    exact_exit_distribution, log_concavity_check, log_concavity_check_map, monotone_crossing_distribution,
    value_iteration, TransitionModel,
};
use lcwalk::{BigRational, BigUint, ExactModel, LatticePoint, Region, Scalar, Step};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::Value;

type Verdict = Result<String, String>;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn lcwalk(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lcwalk")).args(args).output().expect("binary runs");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ladder() -> Verdict {
    let (code, text) = lcwalk(&["--format", "csv", "strip", "solve", "--ladder", "--tol", "1e-10"]);
    if code != Some(0) {
        return Err(format!("exit {code:?}"));
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut p = BTreeMap::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        p.insert(f[0].parse::<i64>().unwrap(), f[1].parse::<f64>().unwrap());
    }
    let mut worst: f64 = 0.0;
    for k in 0..=5 {
        let want = phi.powi(-2 * k as i32) / 5f64.sqrt();
        worst = worst.max((p[&k] - want).abs()).max((p[&-k] - want).abs());
    }
    let mass_err = (p.values().sum::<f64>() - 1.0).abs();
    if worst < 1e-8 && mass_err < 1e-8 {
        Ok(format!("max |p(k) - phi^-2k/sqrt5| = {worst:.2e}, |mass - 1| = {mass_err:.2e}"))
    } else {
        Err(format!("max error {worst:.2e}, mass error {mass_err:.2e}"))
    }
}

fn theorem_audit() -> Verdict {
    let (code, text) = lcwalk(&["exact", "audit", "--fixtures", "200", "--rational", "100", "--seed", "7"]);
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("{e}: {text}"))?;
    let n = v["violations"].as_array().map_or(usize::MAX, Vec::len);
    if code == Some(0) && n == 0 {
        Ok(format!("300 fixtures, {} exact comparisons, 0 violations", v["checked"]))
    } else {
        Err(format!("exit {code:?}, {n} violations"))
    }
}

fn injection() -> Verdict {
    let mut notes = Vec::new();
    for (r, i) in [("box3.json", "box3_instance.json"), ("staircase.json", "staircase_instance.json"), ("micro.json", "micro_instance.json")] {
        let (code, text) = lcwalk(&["inject", "verify", "--region", &fixture(r), "--instance", &fixture(i), "--bound", "8"]);
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("{r}: {e}: {text}"))?;
        let zero = |f: &str| v[f] == 0;
        let clean = ["duplicates", "codomain_violations", "profile_violations", "length_violations", "inverse_failures", "construction_failures"]
            .into_iter()
            .all(zero);
        if code != Some(0) || !clean {
            return Err(format!("{r}: exit {code:?}: {text}"));
        }
        notes.push(format!("{} {} pairs, fallback {}", r.trim_end_matches(".json"), v["domain_size"], v["fallback_count"]));
    }
    Ok(notes.join("; "))
}

fn oracles() -> Verdict {
    let sq = Region::rectangle(1, 0, 1).unwrap();
    let lb = first_exit_mass_lower_bound(&sq, &TransitionModel::<BigRational>::uniform(1), LatticePoint::new(0, 0), 14)
        .map_err(|e| e.to_string())?;
    let exact = [(0, q(4, 15)), (1, q(1, 15))];
    for (k, p) in &exact {
        let got = &lb[k];
        if got > p || (p - got) * BigRational::from_integer(100.into()) > *p {
            return Err(format!("bound-14 mass at {k} is {got}, exact {p}"));
        }
    }
    let mut worst: f64 = 0.0;
    for f in walk_fixtures(2024, 50, false) {
        let d = exact_exit_distribution(&f.region, &f.model, f.start).map_err(|e| e.to_string())?;
        let (vi, _) = value_iteration(&f.region, &f.model.to_f64(), f.start, 1e-15, 10_000_000).map_err(|e| e.to_string())?;
        for (k, p) in &d.probabilities {
            worst = worst.max((vi.get(*k) - p.to_f64_lossy()).abs());
        }
    }
    if worst <= 1e-12 {
        Ok(format!("bound-14 mass ({}, {}); value iteration max diff {worst:.1e} on 50 fixtures", lb[&0], lb[&1]))
    } else {
        Err(format!("value iteration max diff {worst:.2e}"))
    }
}

fn counting() -> Verdict {
    let bad: Vec<String> = count_fixtures(4242, 100, 10)
        .par_iter()
        .filter_map(|f| {
            let t = count_paths_through(&f.region, f.mode, f.a, f.b, f.l).ok()?;
            let on: BTreeMap<i64, BigUint> = t.into_iter().filter(|(k, _)| (k - f.l).rem_euclid(2) == 0).collect();
            (!log_concavity_check_map(&on, 2).passed).then(|| format!("{:?}", f.region))
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("{} Dyck/Schröder tables not log-concave: {}", bad.len(), bad[0]));
    }
    let mut table = vec![vec![BigUint::one(); 17]; 17];
    for p in 1..17 {
        for r in 1..17 {
            table[p][r] = &table[p - 1][r] + &table[p][r - 1] + &table[p - 1][r - 1];
        }
    }
    for n in 0..=16usize {
        let row: Vec<BigUint> = (0..=n).map(|k| delannoy(k as u64, (n - k) as u64)).collect();
        if row.iter().enumerate().any(|(k, d)| *d != table[k][n - k]) {
            return Err(format!("Delannoy mismatch at n = {n}"));
        }
        if !log_concavity_check(&row, 1).passed {
            return Err(format!("Delannoy anti-diagonal {n} not log-concave"));
        }
    }
    for n in 0..=14u64 {
        let region = ballot_region(n);
        for k in n.div_ceil(2)..=n {
            let dp = count_monotone_paths(&region, CountMode::Dyck, LatticePoint::new(0, 0), LatticePoint::new(n as i64, 2 * k as i64 - n as i64));
            if ballot(n, k).map_err(|e| e.to_string())? != dp {
                return Err(format!("ballot({n},{k}) differs from DP {dp}"));
            }
        }
    }
    Ok("100 Dyck/Schröder tables, Delannoy n <= 16, ballot n <= 14".into())
}

fn weighted_crossings(region: &Region, model: &ExactModel, a: LatticePoint, b: LatticePoint, l: i64) -> BTreeMap<i64, BigRational> {
    let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
    let mut stack = vec![(a, BigRational::one(), None::<i64>)];
    while let Some((p, w, cross)) = stack.pop() {
        if p == b {
            *out.entry(cross.expect("every path crosses column l")).or_insert_with(BigRational::zero) += w;
            continue;
        }
        let c = model.column(p.x as usize);
        for (s, wt) in [(Step::R, &c.right), (Step::U, &c.up)] {
            let t = p.step(s);
            if wt.is_zero() || !region.contains(t) || t.x > b.x || t.y > b.y {
                continue;
            }
            let cross = if s == Step::R && t.x == l { Some(p.y) } else { cross };
            stack.push((t, &w * wt, cross));
        }
    }
    let total: BigRational = out.values().sum();
    out.into_iter().map(|(k, v)| (k, v / &total)).collect()
}

fn monotone() -> Verdict {
    for (i, f) in monotone_fixtures(606, 100).iter().enumerate() {
        let got = monotone_crossing_distribution(&f.region, &f.model, f.a, f.b, f.l).map_err(|e| format!("fixture {i}: {e}"))?;
        let nonzero: BTreeMap<i64, BigRational> = got.q.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
        if nonzero != weighted_crossings(&f.region, &f.model, f.a, f.b, f.l as i64) {
            return Err(format!("fixture {i}: factorized q differs from enumeration"));
        }
        if !log_concavity_check_map(&got.q, 1).passed {
            return Err(format!("fixture {i}: q not log-concave"));
        }
    }
    Ok("100 fixtures, exact equality and log-concave".into())
}

fn monte_carlo() -> Verdict {
    let mut notes = Vec::new();
    for (name, region) in [("single cell", Region::rectangle(1, 0, 0).unwrap()), ("2x2", Region::rectangle(1, 0, 1).unwrap())] {
        let model = TransitionModel::<BigRational>::uniform(1);
        let start = LatticePoint::new(0, 0);
        let exact = exact_exit_distribution(&region, &model, start).map_err(|e| e.to_string())?;
        let a = simulate(&region, &model, start, 1_000_000, 42).map_err(|e| e.to_string())?;
        let b = simulate(&region, &model, start, 1_000_000, 42).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{name}: rerun differs"));
        }
        let cmp = compare_empirical(&exact, &a);
        let zmax = cmp.rows.iter().filter_map(|r| r.z).fold(0.0f64, |m, z| m.max(z.abs()));
        if !cmp.passed {
            return Err(format!("{name}: {} flagged, max |z| {zmax:.2}", cmp.flagged));
        }
        notes.push(format!("{name} max |z| {zmax:.2}"));
    }
    Ok(format!("{}; reruns identical", notes.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("1 golden-ratio ladder", ladder),
        ("2 exit-law log-concavity audit", theorem_audit),
        ("3 injection harness", injection),
        ("4 oracle equivalence", oracles),
        ("5 Dyck/Schröder/Delannoy/ballot", counting),
        ("6 monotone factorization", monotone),
        ("7 Monte Carlo cross-check", monte_carlo),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let verdict = run();
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("PASS  {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.1}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
