//! Seeded random fixtures: regions, y-invariant rational models, counting and monotone instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lattice::{LatticePoint, Region, StepSet};
use crate::paths::{count_monotone_paths, CountMode};
use crate::walker::{ColumnWeights, TransitionModel};
use crate::{BigRational, ExactModel};

pub const MAX_WIDTH: usize = 8;
pub const MAX_HEIGHT: i64 = 8;
pub const MAX_DENOMINATOR: i64 = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkFixture {
    pub region: Region,
    pub model: ExactModel,
    pub start: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountFixture {
    pub region: Region,
    pub mode: CountMode,
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub l: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotoneFixture {
    pub region: Region,
    pub model: ExactModel,
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub l: usize,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected square-lattice region with `m` in `1..=max_width` and columns of at most `max_height` points.
pub fn random_region<R: Rng>(rng: &mut R, max_width: usize, max_height: i64) -> Region {
    let m = rng.gen_range(1..=max_width.max(1));
    let h = rng.gen_range(1..=max_height);
    let lo = rng.gen_range(-3..=3);
    let mut cols = vec![(lo, lo + h - 1)];
    for _ in 0..m {
        let &(plo, phi) = cols.last().expect("nonempty");
        let h = rng.gen_range(1..=max_height);
        let lo = rng.gen_range(plo - h + 1..=phi);
        cols.push((lo, lo + h - 1));
    }
    Region::new(cols, StepSet::Square).expect("overlapping columns")
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Column weights `(right, left, up, down)` with a common denominator of at most 12 and `right > 0`.
pub fn random_column<R: Rng>(rng: &mut R) -> ColumnWeights<BigRational> {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    let right = rng.gen_range(1..=den);
    let mut cuts = [rng.gen_range(0..=den - right), rng.gen_range(0..=den - right)];
    cuts.sort_unstable();
    let (left, up, down) = (cuts[0], cuts[1] - cuts[0], den - right - cuts[1]);
    ColumnWeights::square(ratio(right, den), ratio(left, den), ratio(up, den), ratio(down, den))
}

pub fn random_model<R: Rng>(rng: &mut R, width: usize) -> ExactModel {
    TransitionModel::stochastic((0..width).map(|_| random_column(rng)).collect()).expect("columns sum to one")
}

/// Random regions, each with a random start on the left column; uniform `1/4` model or random rational.
pub fn walk_fixtures(seed: u64, count: usize, uniform: bool) -> Vec<WalkFixture> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let region = random_region(&mut rng, MAX_WIDTH, MAX_HEIGHT);
            let (lo, hi) = region.columns()[0];
            let start = LatticePoint::new(0, rng.gen_range(lo..=hi));
            let model = if uniform { TransitionModel::uniform(region.m()) } else { random_model(&mut rng, region.m()) };
            WalkFixture { region, model, start }
        })
        .collect()
}

/// Heights of a random path `(0,0) -> (2n,0)` with steps `+-1` (and `0` when `flat`) that stays at
/// or above zero.
fn random_envelope<R: Rng>(rng: &mut R, n: usize, flat: bool) -> Vec<i64> {
    let w = 2 * n as i64;
    let mut ys = vec![0i64];
    for x in 1..=w {
        let y = *ys.last().expect("nonempty");
        let left = w - x;
        let mut options: Vec<i64> = vec![y + 1, y - 1];
        if flat {
            options.push(y);
        }
        options.retain(|&t| t >= 0 && t <= left);
        ys.push(*options.choose(rng).expect("returning to zero is always possible"));
    }
    ys
}

/// Region between two random Dyck (or Schröder) envelopes, `A = (0,0)`, `B = (2n,0)`, `n` in `1..=max_n`.
pub fn count_fixtures(seed: u64, count: usize, max_n: usize) -> Vec<CountFixture> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let mode = if i % 2 == 0 { CountMode::Dyck } else { CountMode::Schroder };
            let step_set = if mode == CountMode::Dyck { StepSet::Dyck } else { StepSet::Schroder };
            let n = rng.gen_range(1..=max_n);
            let flat = mode == CountMode::Schroder;
            let upper = random_envelope(&mut rng, n, flat);
            let lower = random_envelope(&mut rng, n, flat);
            let cols = upper.iter().zip(&lower).map(|(&u, &d)| (-d, u)).collect();
            let region = Region::new(cols, step_set).expect("both envelopes pass through zero");
            let l = rng.gen_range(0..=2 * n as i64);
            CountFixture { region, mode, a: LatticePoint::new(0, 0), b: LatticePoint::new(2 * n as i64, 0), l }
        })
        .collect()
}

/// Square regions with `m` in `2..=6`, positive random right/up weights, and `B` reachable from `A`.
pub fn monotone_fixtures(seed: u64, count: usize) -> Vec<MonotoneFixture> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(2..=6);
        let region = loop {
            let r = random_region(&mut rng, 6, 6);
            if r.m() == m {
                break r;
            }
        };
        let (lo, hi) = region.columns()[0];
        let a = LatticePoint::new(0, rng.gen_range(lo..=hi));
        let (blo, bhi) = region.columns()[m];
        let reachable: Vec<LatticePoint> = (blo..=bhi)
            .map(|y| LatticePoint::new(m as i64, y))
            .filter(|&b| count_monotone_paths(&region, CountMode::Monotone, a, b) > 0u32.into())
            .collect();
        let Some(&b) = reachable.choose(&mut rng) else { continue };
        let zero = ratio(0, 1);
        let cols = (0..=m)
            .map(|_| {
                let den = rng.gen_range(2..=MAX_DENOMINATOR);
                let right = rng.gen_range(1..den);
                ColumnWeights::square(ratio(right, den), zero.clone(), ratio(den - right, den), zero.clone())
            })
            .collect();
        let model = TransitionModel::stochastic(cols).expect("right + up = 1");
        let l = rng.gen_range(1..m);
        out.push(MonotoneFixture { region, model, a, b, l });
    }
    out
}
