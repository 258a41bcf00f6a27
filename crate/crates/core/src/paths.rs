//! Enumeration oracles and exact path counters.
//!
//! Free paths may wander in any direction allowed by the step set and revisit
//! vertices; they feed the injection harness and cross-check the walker. The
//! monotone counters (`R/U`, Dyck, Schröder) work column by column with big
//! integers, and the classical sequences are evaluated from their recurrences or
//! closed forms.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePath, LatticePoint, Region, Step};
use crate::scalar::Scalar;
use crate::walker::TransitionModel;

/// Largest number of search nodes an enumeration may visit.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Legal moves out of `p` inside `region`, in the step set's order.
pub fn region_moves(region: &Region, p: LatticePoint) -> impl Iterator<Item = (Step, LatticePoint)> + '_ {
    region.step_set().steps().iter().filter_map(move |&s| {
        let q = p.step(s);
        let mid_ok = s != Step::RR || region.contains(LatticePoint::new(p.x + 1, p.y));
        (mid_ok && region.contains(q)).then_some((s, q))
    })
}

/// Fewest steps from each point of the region to `to` (absent when unreachable).
fn distances_to(region: &Region, to: LatticePoint) -> HashMap<LatticePoint, usize> {
    let mut preds: HashMap<LatticePoint, Vec<LatticePoint>> = HashMap::new();
    for p in region.points() {
        for (_, q) in region_moves(region, p) {
            preds.entry(q).or_default().push(p);
        }
    }
    let mut dist = HashMap::new();
    if !region.contains(to) {
        return dist;
    }
    dist.insert(to, 0);
    let mut queue = VecDeque::from([to]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for &u in preds.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            dist.entry(u).or_insert_with(|| {
                queue.push_back(u);
                d + 1
            });
        }
    }
    dist
}

/// Number of search nodes [`enumerate_free_paths`] would visit (saturating).
pub fn enumeration_size(region: &Region, from: LatticePoint, to: LatticePoint, bound: usize) -> u128 {
    let dist = distances_to(region, to);
    let viable = |p: &LatticePoint, t: usize| dist.get(p).is_some_and(|d| t + d <= bound);
    if !viable(&from, 0) {
        return 0;
    }
    let mut layer: HashMap<LatticePoint, u128> = HashMap::from([(from, 1)]);
    let mut total: u128 = 1;
    for t in 1..=bound {
        let mut next: HashMap<LatticePoint, u128> = HashMap::new();
        for (&p, &c) in &layer {
            for (_, q) in region_moves(region, p) {
                if viable(&q, t) {
                    let e = next.entry(q).or_insert(0);
                    *e = e.saturating_add(c);
                }
            }
        }
        total = next.values().fold(total, |a, &c| a.saturating_add(c));
        layer = next;
    }
    total
}

/// All paths `from -> to` inside the region with at most `bound` steps, in lexicographic step order.
pub fn enumerate_free_paths(
    region: &Region,
    from: LatticePoint,
    to: LatticePoint,
    bound: usize,
) -> Result<Vec<LatticePath>> {
    let estimate = enumeration_size(region, from, to, bound);
    if estimate > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { estimate, limit: ENUMERATION_LIMIT });
    }
    let dist = distances_to(region, to);
    let mut out = Vec::new();
    if !dist.get(&from).is_some_and(|&d| d <= bound) {
        return Ok(out);
    }
    let mut steps = Vec::new();
    dfs(region, &dist, from, to, bound, &mut steps, &mut out, from);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    region: &Region,
    dist: &HashMap<LatticePoint, usize>,
    at: LatticePoint,
    to: LatticePoint,
    bound: usize,
    steps: &mut Vec<Step>,
    out: &mut Vec<LatticePath>,
    start: LatticePoint,
) {
    if at == to {
        out.push(LatticePath::new(start, steps.clone()));
    }
    for (s, q) in region_moves(region, at) {
        if dist.get(&q).is_some_and(|&d| steps.len() + 1 + d <= bound) {
            steps.push(s);
            dfs(region, dist, q, to, bound, steps, out, start);
            steps.pop();
        }
    }
}

/// `counts[s]` = number of paths `from -> to` in the region with exactly `s` steps, `s = 0..=bound`.
pub fn count_free_paths_by_length(region: &Region, from: LatticePoint, to: LatticePoint, bound: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); bound + 1];
    if !region.contains(from) {
        return counts;
    }
    let mut layer: HashMap<LatticePoint, BigUint> = HashMap::from([(from, BigUint::one())]);
    for (s, slot) in counts.iter_mut().enumerate() {
        if let Some(c) = layer.get(&to) {
            *slot = c.clone();
        }
        if s == bound {
            break;
        }
        let mut next: HashMap<LatticePoint, BigUint> = HashMap::new();
        for (p, c) in &layer {
            for (_, q) in region_moves(region, *p) {
                *next.entry(q).or_insert_with(BigUint::zero) += c;
            }
        }
        layer = next;
    }
    counts
}

/// Probability mass of trajectories of at most `bound` steps that first touch column `m` at `(m, k)`.
///
/// A lower bound on the exit law that increases with `bound`.
pub fn first_exit_mass_lower_bound<T: Scalar>(
    region: &Region,
    model: &TransitionModel<T>,
    start: LatticePoint,
    bound: usize,
) -> Result<BTreeMap<i64, T>> {
    if model.width() != region.m() {
        return Err(Error::DimensionMismatch(format!(
            "model has {} columns, region needs {}",
            model.width(),
            region.m()
        )));
    }
    model.check_step_set(region.step_set())?;
    if start.x != 0 || !region.contains(start) {
        return Err(Error::InvalidStart((start.x, start.y)));
    }
    let work = (region.num_points() as u128).saturating_mul(bound as u128);
    if work > ENUMERATION_LIMIT * 100 {
        return Err(Error::EnumerationTooLarge { estimate: work, limit: ENUMERATION_LIMIT * 100 });
    }
    let m = region.width();
    let (lo, hi) = region.column(m).expect("column m exists");
    let mut exit: BTreeMap<i64, T> = (lo..=hi).map(|k| (k, T::zero())).collect();
    if m == 0 {
        exit.insert(start.y, T::one());
        return Ok(exit);
    }
    let mut layer: HashMap<LatticePoint, T> = HashMap::from([(start, T::one())]);
    for _ in 0..bound {
        let mut next: HashMap<LatticePoint, T> = HashMap::new();
        for (p, mass) in &layer {
            for (s, w) in model.moves(p.x as usize) {
                let q = p.step(s);
                if !region.contains(q) {
                    continue;
                }
                let add = mass.clone() * w;
                if q.x == m {
                    let e = exit.get_mut(&q.y).expect("height on beta");
                    *e = e.clone() + add;
                } else {
                    let e = next.entry(q).or_insert_with(T::zero);
                    *e = e.clone() + add;
                }
            }
        }
        layer = next;
    }
    Ok(exit)
}

/// Monotone step families for [`count_paths_through`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Right and up steps.
    Monotone,
    /// `(1, 1)` and `(1, -1)`.
    Dyck,
    /// Dyck steps plus the flat `(2, 0)`.
    Schroder,
}

impl CountMode {
    pub fn steps(self) -> &'static [Step] {
        match self {
            CountMode::Monotone => &[Step::R, Step::U],
            CountMode::Dyck => &[Step::NE, Step::SE],
            CountMode::Schroder => &[Step::NE, Step::SE, Step::RR],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CountMode::Monotone => "monotone",
            CountMode::Dyck => "dyck",
            CountMode::Schroder => "schroder",
        }
    }
}

impl std::str::FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" => Ok(CountMode::Monotone),
            "dyck" => Ok(CountMode::Dyck),
            "schroder" | "schröder" => Ok(CountMode::Schroder),
            _ => Err(Error::Parse(format!("unknown count mode {s:?}"))),
        }
    }
}

/// Count table `k -> N(k)`.
pub type CountTable = BTreeMap<i64, BigUint>;

fn mode_moves(region: &Region, mode: CountMode, p: LatticePoint) -> impl Iterator<Item = LatticePoint> + '_ {
    mode.steps().iter().filter_map(move |&s| {
        let q = p.step(s);
        let mid_ok = s != Step::RR || region.contains(LatticePoint::new(p.x + 1, p.y));
        (mid_ok && region.contains(q)).then_some(q)
    })
}

/// Number of monotone paths from `from` to every point of the region.
pub fn monotone_counts(region: &Region, mode: CountMode, from: LatticePoint) -> HashMap<LatticePoint, BigUint> {
    let mut counts: HashMap<LatticePoint, BigUint> = HashMap::new();
    if !region.contains(from) {
        return counts;
    }
    counts.insert(from, BigUint::one());
    // Points in (x, y) order are a topological order for every mode.
    for p in region.points().filter(|p| p.x >= from.x) {
        let Some(c) = counts.get(&p).cloned() else { continue };
        for q in mode_moves(region, mode, p) {
            *counts.entry(q).or_insert_with(BigUint::zero) += &c;
        }
    }
    counts
}

fn reverse_counts(region: &Region, mode: CountMode, to: LatticePoint) -> HashMap<LatticePoint, BigUint> {
    let mut counts: HashMap<LatticePoint, BigUint> = HashMap::new();
    if !region.contains(to) {
        return counts;
    }
    counts.insert(to, BigUint::one());
    let pts: Vec<LatticePoint> = region.points().filter(|p| p.x <= to.x).collect();
    for &p in pts.iter().rev() {
        if p == to {
            continue;
        }
        let mut total = BigUint::zero();
        for q in mode_moves(region, mode, p) {
            if let Some(c) = counts.get(&q) {
                total += c;
            }
        }
        if !total.is_zero() {
            counts.insert(p, total);
        }
    }
    counts
}

/// `N(k) = #(A -> (l, k)) * #((l, k) -> B)` for every height `k` of column `l`.
///
/// For Dyck and Schröder modes `A` and `B` must lie on the same parity class of `x + y`.
pub fn count_paths_through(
    region: &Region,
    mode: CountMode,
    a: LatticePoint,
    b: LatticePoint,
    l: i64,
) -> Result<CountTable> {
    if !region.contains(a) || !region.contains(b) {
        return Err(Error::InvalidInstance(format!("{a} or {b} lies outside the region")));
    }
    if l < a.x || l > b.x {
        return Err(Error::InvalidInstance(format!("column {l} is not between {a} and {b}")));
    }
    if mode != CountMode::Monotone && (a.x + a.y - b.x - b.y).is_odd() {
        return Err(Error::ParityMismatch(format!("{a} and {b} lie on different sublattices")));
    }
    let fwd = monotone_counts(region, mode, a);
    let bwd = reverse_counts(region, mode, b);
    let (lo, hi) = region.column(l).expect("column in range");
    Ok((lo..=hi)
        .map(|k| {
            let p = LatticePoint::new(l, k);
            let n = match (fwd.get(&p), bwd.get(&p)) {
                (Some(f), Some(g)) => f * g,
                _ => BigUint::zero(),
            };
            (k, n)
        })
        .collect())
}

/// Total number of monotone paths `a -> b`.
pub fn count_monotone_paths(region: &Region, mode: CountMode, a: LatticePoint, b: LatticePoint) -> BigUint {
    monotone_counts(region, mode, a).remove(&b).unwrap_or_default()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::one(); (i.min(k) + 1) as usize];
        for j in 1..next.len() {
            let above = row.get(j).cloned().unwrap_or_default();
            next[j] = &row[j - 1] + above;
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Delannoy number by its three-term recurrence.
pub fn delannoy(p: u64, q: u64) -> BigUint {
    let (p, q) = (p as usize, q as usize);
    let mut prev = vec![BigUint::one(); q + 1];
    for _ in 1..=p {
        let mut cur = vec![BigUint::one(); q + 1];
        for j in 1..=q {
            cur[j] = &prev[j] + &cur[j - 1] + &prev[j - 1];
        }
        prev = cur;
    }
    prev[q].clone()
}

/// Ballot number `B(k, n-k) = (2k - n + 1) / (k + 1) * C(n, k)` for `n/2 <= k <= n`.
pub fn ballot(n: u64, k: u64) -> Result<BigUint> {
    if 2 * k < n || k > n {
        return Err(Error::InvalidInstance(format!("ballot needs n/2 <= k <= n, got n = {n}, k = {k}")));
    }
    let num = binomial(n, k) * BigUint::from(2 * k - n + 1);
    let den = BigUint::from(k + 1);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegerResult);
    }
    Ok(q)
}

/// Region between the highest and lowest Dyck-type paths `(0,0) -> (2n,0)`.
pub fn dyck_diamond(n: u64, step_set: crate::lattice::StepSet) -> Region {
    let n = n as i64;
    let cols = (0..=2 * n).map(|x| {
        let h = x.min(2 * n - x);
        (-h, h)
    });
    Region::new(cols.collect(), step_set).expect("diamond is connected")
}

/// Region of Dyck-type paths of length `n` from the origin that never go below height `0`.
pub fn ballot_region(n: u64) -> Region {
    Region::new((0..=n as i64).map(|x| (0, x)).collect(), crate::lattice::StepSet::Dyck).expect("triangle is connected")
}
