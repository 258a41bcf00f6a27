//! Seeded Monte Carlo runs of the absorbed walk.
//!
//! Trajectory `i` draws from ChaCha8 seeded with `seed` on stream `i`, so results do not depend on
//! how trajectories are spread over threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Region, Step};
use crate::scalar::Scalar;
use crate::walker::{ExitDistribution, StripModel, TransitionModel};

/// Steps after which a trajectory is stopped and counted as killed.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

/// `|z|` above which a height is flagged.
pub const Z_LIMIT: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub counts: BTreeMap<i64, u64>,
    /// Includes the capped trajectories.
    pub kills: u64,
    pub trajectories: u64,
    pub seed: u64,
    pub capped: u64,
    pub max_steps: u64,
}

impl SimulationResult {
    pub fn hits(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn frequency(&self, k: i64) -> f64 {
        self.counts.get(&k).copied().unwrap_or(0) as f64 / self.trajectories as f64
    }
}

enum Fate {
    Exit(i64),
    Killed,
    Capped,
}

/// Per-column cumulative thresholds; draws past the last one kill the walk.
struct Sampler {
    columns: Vec<Vec<(f64, Step)>>,
}

impl Sampler {
    fn new<T: Scalar>(model: &TransitionModel<T>) -> Self {
        let columns = (0..model.width())
            .map(|x| {
                let mut acc = 0.0;
                model
                    .moves(x)
                    .map(|(s, w)| {
                        acc += w.to_f64_lossy();
                        (acc, s)
                    })
                    .collect()
            })
            .collect();
        Self { columns }
    }

    fn draw(&self, x: usize, rng: &mut ChaCha8Rng) -> Option<Step> {
        let u: f64 = rng.gen();
        self.columns[x].iter().find(|(t, _)| u < *t).map(|(_, s)| *s)
    }
}

fn walk(
    sampler: &Sampler,
    inside: &(impl Fn(LatticePoint) -> bool + Sync),
    m: i64,
    start: LatticePoint,
    rng: &mut ChaCha8Rng,
    max_steps: u64,
) -> Fate {
    let mut p = start;
    for _ in 0..max_steps {
        let Some(step) = sampler.draw(p.x as usize, rng) else {
            return Fate::Killed;
        };
        let q = p.step(step);
        if step == Step::RR && !inside(LatticePoint::new(p.x + 1, p.y)) {
            return Fate::Killed;
        }
        if !inside(q) {
            return Fate::Killed;
        }
        if q.x == m {
            return Fate::Exit(q.y);
        }
        p = q;
    }
    Fate::Capped
}

fn run(
    sampler: &Sampler,
    inside: impl Fn(LatticePoint) -> bool + Sync,
    m: i64,
    start: LatticePoint,
    n: u64,
    seed: u64,
    max_steps: u64,
) -> SimulationResult {
    let empty = || (BTreeMap::new(), 0u64, 0u64);
    let (counts, kills, capped) = (0..n)
        .into_par_iter()
        .fold(empty, |mut acc, i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            match walk(sampler, &inside, m, start, &mut rng, max_steps) {
                Fate::Exit(k) => *acc.0.entry(k).or_insert(0u64) += 1,
                Fate::Killed => acc.1 += 1,
                Fate::Capped => {
                    acc.1 += 1;
                    acc.2 += 1;
                }
            }
            acc
        })
        .reduce(empty, |mut a, b| {
            for (k, c) in b.0 {
                *a.0.entry(k).or_insert(0) += c;
            }
            (a.0, a.1 + b.1, a.2 + b.2)
        });
    SimulationResult { counts, kills, trajectories: n, seed, capped, max_steps }
}

fn check_n(n: u64, max_steps: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidModel("at least one trajectory is required".into()));
    }
    if max_steps == 0 {
        return Err(Error::InvalidModel("max_steps must be positive".into()));
    }
    Ok(())
}

/// `n` trajectories from `start` in `region`.
pub fn simulate<T: Scalar>(
    region: &Region,
    model: &TransitionModel<T>,
    start: LatticePoint,
    n: u64,
    seed: u64,
) -> Result<SimulationResult> {
    simulate_capped(region, model, start, n, seed, DEFAULT_MAX_STEPS)
}

pub fn simulate_capped<T: Scalar>(
    region: &Region,
    model: &TransitionModel<T>,
    start: LatticePoint,
    n: u64,
    seed: u64,
    max_steps: u64,
) -> Result<SimulationResult> {
    crate::walker::check_inputs(region, model, start)?;
    check_n(n, max_steps)?;
    let sampler = Sampler::new(model);
    if region.m() == 0 {
        return Ok(SimulationResult {
            counts: BTreeMap::from([(start.y, n)]),
            kills: 0,
            trajectories: n,
            seed,
            capped: 0,
            max_steps,
        });
    }
    Ok(run(&sampler, |p| region.contains(p), region.width(), start, n, seed, max_steps))
}

/// `n` trajectories in an untruncated strip; walks that wander off for `max_steps` are capped.
pub fn simulate_strip(strip: &StripModel, n: u64, seed: u64, max_steps: u64) -> Result<SimulationResult> {
    check_n(n, max_steps)?;
    let m = strip.model.width() as i64;
    let (floor, ceiling) = (strip.floor, strip.ceiling);
    let inside = move |p: LatticePoint| {
        (0..=m).contains(&p.x) && floor.is_none_or(|f| p.y >= f) && ceiling.is_none_or(|c| p.y <= c)
    };
    let start = LatticePoint::new(0, strip.start_y);
    if !inside(start) {
        return Err(Error::InvalidStart((0, strip.start_y)));
    }
    Ok(run(&Sampler::new(&strip.model), inside, m, start, n, seed, max_steps))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZScore {
    pub k: i64,
    pub expected: f64,
    pub observed: f64,
    pub count: u64,
    /// Undefined when the exact law puts no mass (or all of it) on `k` but the sample disagrees.
    pub z: Option<f64>,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub trajectories: u64,
    pub rows: Vec<ZScore>,
    /// Heights hit by the sample outside the exact support.
    pub extra: Vec<i64>,
    /// Heights in the exact support the sample never hit.
    pub missing: Vec<i64>,
    /// Pearson statistic over the exact support plus the kill cell.
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub flagged: usize,
    pub passed: bool,
}

/// Per-height z-scores `(p_hat - p) / sqrt(p (1 - p) / n)` and a chi-square statistic.
pub fn compare_empirical<T: Scalar>(exact: &ExitDistribution<T>, result: &SimulationResult) -> Comparison {
    let n = result.trajectories as f64;
    let mut keys: Vec<i64> = exact.probabilities.keys().chain(result.counts.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mut rows = Vec::new();
    let (mut extra, mut missing) = (Vec::new(), Vec::new());
    let mut chi_square = 0.0;
    let mut cells = 0;
    for k in keys {
        let p = exact.get(k).to_f64_lossy();
        let count = result.counts.get(&k).copied().unwrap_or(0);
        if p == 0.0 && count == 0 {
            continue;
        }
        let observed = count as f64 / n;
        let var = p * (1.0 - p) / n;
        let z = if var > 0.0 {
            Some((observed - p) / var.sqrt())
        } else if observed == p {
            Some(0.0)
        } else {
            None
        };
        if p == 0.0 {
            extra.push(k);
        } else {
            cells += 1;
            chi_square += (count as f64 - n * p).powi(2) / (n * p);
            if count == 0 {
                missing.push(k);
            }
        }
        let flagged = z.is_none_or(|z| z.abs() > Z_LIMIT);
        rows.push(ZScore { k, expected: p, observed, count, z, flagged });
    }
    let kill = exact.kill.to_f64_lossy() + exact.never_absorbed().to_f64_lossy();
    if kill > 0.0 {
        cells += 1;
        chi_square += (result.kills as f64 - n * kill).powi(2) / (n * kill);
    }
    let flagged = rows.iter().filter(|r| r.flagged).count();
    Comparison {
        trajectories: result.trajectories,
        rows,
        extra,
        missing,
        chi_square,
        degrees_of_freedom: cells.max(1) - 1,
        flagged,
        passed: flagged == 0,
    }
}
