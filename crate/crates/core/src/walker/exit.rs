//! Exit distribution of the absorbed walk.
//!
//! The walk starts on `alpha`, moves with the column's step weights, is killed by
//! any move that leaves the region and stops the first time it reaches column `m`.
//! For every interior state `v` and exit height `k`
//!
//! ```text
//! h_k(v) = sum_steps w(step) * h_k(v + step),   h_k = [y == k] on column m,  h_k = 0 off the region,
//! ```
//!
//! which is solved for all `k` at once (plus the kill probability) with one factorisation.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Region};
use crate::linalg::LinearSystem;
use crate::scalar::Scalar;
use crate::walker::TransitionModel;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExitDistribution<T> {
    /// `p(k)` for every height `k` of `beta`, zeros included.
    pub probabilities: BTreeMap<i64, T>,
    /// `sum_k p(k)`.
    pub total_mass: T,
    /// Probability of being killed before reaching `beta`.
    pub kill: T,
    pub start: LatticePoint,
}

impl<T: Scalar> ExitDistribution<T> {
    pub fn get(&self, k: i64) -> T {
        self.probabilities.get(&k).cloned().unwrap_or_else(T::zero)
    }

    /// Heights with positive probability.
    pub fn support(&self) -> Vec<i64> {
        self.probabilities.iter().filter(|(_, p)| p.is_positive()).map(|(k, _)| *k).collect()
    }

    /// Probability that the walk is neither killed nor ever reaches `beta`.
    pub fn never_absorbed(&self) -> T {
        T::one() - self.total_mass.clone() - self.kill.clone()
    }

    pub fn to_f64(&self) -> ExitDistribution<f64> {
        ExitDistribution {
            probabilities: self.probabilities.iter().map(|(k, p)| (*k, p.to_f64_lossy())).collect(),
            total_mass: self.total_mass.to_f64_lossy(),
            kill: self.kill.to_f64_lossy(),
            start: self.start,
        }
    }
}

/// Where a move from an interior state lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Landing {
    Interior(LatticePoint),
    Exit(i64),
    Killed,
}

pub(crate) fn landing(region: &Region, q: LatticePoint) -> Landing {
    if !region.contains(q) {
        Landing::Killed
    } else if q.x == region.width() {
        Landing::Exit(q.y)
    } else {
        Landing::Interior(q)
    }
}

pub(crate) fn check_inputs<T: Scalar>(region: &Region, model: &TransitionModel<T>, start: LatticePoint) -> Result<()> {
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
    Ok(())
}

/// Interior states that can be absorbed (exit or kill) with positive probability.
///
/// The rest form closed classes the walk never leaves; their absorption probabilities are all zero
/// and dropping them keeps the linear system nonsingular.
pub(crate) fn transient_states<T: Scalar>(region: &Region, model: &TransitionModel<T>) -> Vec<LatticePoint> {
    let interior: Vec<LatticePoint> = region.points().filter(|p| p.x < region.width()).collect();
    let index: HashMap<LatticePoint, usize> = interior.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); interior.len()];
    let mut good = vec![false; interior.len()];
    let mut queue = Vec::new();
    for (i, &p) in interior.iter().enumerate() {
        for (step, _) in model.moves(p.x as usize) {
            match landing(region, p.step(step)) {
                Landing::Interior(q) => preds[index[&q]].push(i),
                Landing::Exit(_) | Landing::Killed => {
                    if !good[i] {
                        good[i] = true;
                        queue.push(i);
                    }
                }
            }
        }
    }
    while let Some(j) = queue.pop() {
        for &i in &preds[j] {
            if !good[i] {
                good[i] = true;
                queue.push(i);
            }
        }
    }
    interior.into_iter().zip(good).filter(|(_, g)| *g).map(|(p, _)| p).collect()
}

/// Order states to keep the bandwidth small: column-major for short columns, row-major for tall strips.
fn band_order(region: &Region, states: &mut [LatticePoint]) {
    let tallest = region.columns().iter().map(|(lo, hi)| hi - lo + 1).max().unwrap_or(1);
    if tallest > region.width() + 1 {
        states.sort_by_key(|p| (p.y, p.x));
    } else {
        states.sort_by_key(|p| (p.x, p.y));
    }
}

/// Solve the absorbing system for every exit height and the kill probability.
pub fn exit_distribution<T: Scalar>(
    region: &Region,
    model: &TransitionModel<T>,
    start: LatticePoint,
) -> Result<ExitDistribution<T>> {
    check_inputs(region, model, start)?;
    let m = region.width();
    let (beta_lo, beta_hi) = region.column(m).expect("column m exists");
    let mut probabilities: BTreeMap<i64, T> = (beta_lo..=beta_hi).map(|k| (k, T::zero())).collect();

    if m == 0 {
        probabilities.insert(start.y, T::one());
        return Ok(ExitDistribution { probabilities, total_mass: T::one(), kill: T::zero(), start });
    }

    let mut states = transient_states(region, model);
    band_order(region, &mut states);
    let index: HashMap<LatticePoint, usize> = states.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let Some(&s0) = index.get(&start) else {
        return Ok(ExitDistribution { probabilities, total_mass: T::zero(), kill: T::zero(), start });
    };

    let heights = (beta_hi - beta_lo + 1) as usize;
    let kill_col = heights;
    let mut sys = LinearSystem::<T>::new(states.len(), heights + 1);
    for (i, &p) in states.iter().enumerate() {
        sys.add(i, i, T::one());
        for (step, w) in model.moves(p.x as usize) {
            match landing(region, p.step(step)) {
                Landing::Interior(q) => {
                    if let Some(&j) = index.get(&q) {
                        sys.add(i, j, -w);
                    }
                }
                Landing::Exit(k) => sys.add_rhs(i, (k - beta_lo) as usize, w),
                Landing::Killed => sys.add_rhs(i, kill_col, w),
            }
        }
    }
    let x = sys.solve()?;
    let row = &x[s0];
    for (r, k) in (beta_lo..=beta_hi).enumerate() {
        probabilities.insert(k, row[r].clone());
    }
    let total_mass = row[..heights].iter().fold(T::zero(), |a, b| a + b.clone());
    let kill = row[kill_col].clone();
    Ok(ExitDistribution { probabilities, total_mass, kill, start })
}

/// [`exit_distribution`] over exact rationals.
pub fn exact_exit_distribution(
    region: &Region,
    model: &TransitionModel<BigRational>,
    start: LatticePoint,
) -> Result<ExitDistribution<BigRational>> {
    exit_distribution(region, model, start)
}

/// Gauss-Seidel value iteration for the same quantities, in floating point.
///
/// Sweeps until the largest update falls below `tol`; returns the distribution and the sweep count.
pub fn value_iteration(
    region: &Region,
    model: &TransitionModel<f64>,
    start: LatticePoint,
    tol: f64,
    max_sweeps: usize,
) -> Result<(ExitDistribution<f64>, usize)> {
    check_inputs(region, model, start)?;
    let m = region.width();
    let (beta_lo, beta_hi) = region.column(m).expect("column m exists");
    if m == 0 {
        return exit_distribution(region, model, start).map(|d| (d, 0));
    }
    let heights = (beta_hi - beta_lo + 1) as usize;
    let states: Vec<LatticePoint> = region.points().filter(|p| p.x < m).collect();
    let index: HashMap<LatticePoint, usize> = states.iter().enumerate().map(|(i, p)| (*p, i)).collect();

    enum Edge {
        To(usize, f64),
        Exit(usize, f64),
        Kill(f64),
    }
    let edges: Vec<Vec<Edge>> = states
        .iter()
        .map(|&p| {
            model
                .moves(p.x as usize)
                .map(|(step, w)| match landing(region, p.step(step)) {
                    Landing::Interior(q) => Edge::To(index[&q], w),
                    Landing::Exit(k) => Edge::Exit((k - beta_lo) as usize, w),
                    Landing::Killed => Edge::Kill(w),
                })
                .collect()
        })
        .collect();

    // values[i][r], r = heights is the kill column
    let mut values = vec![vec![0.0; heights + 1]; states.len()];
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut delta: f64 = 0.0;
        for i in 0..states.len() {
            let mut next = vec![0.0; heights + 1];
            for e in &edges[i] {
                match *e {
                    Edge::To(j, w) => next.iter_mut().zip(&values[j]).for_each(|(n, v)| *n += w * v),
                    Edge::Exit(r, w) => next[r] += w,
                    Edge::Kill(w) => next[heights] += w,
                }
            }
            for (old, new) in values[i].iter().zip(&next) {
                delta = delta.max((old - new).abs());
            }
            values[i] = next;
        }
        if delta <= tol {
            break;
        }
        if sweeps >= max_sweeps {
            return Err(Error::NoConvergence(sweeps as i64));
        }
    }
    let row = &values[index[&start]];
    let probabilities: BTreeMap<i64, f64> = (beta_lo..=beta_hi).zip(row.iter().copied()).collect();
    let total_mass = row[..heights].iter().sum();
    Ok((ExitDistribution { probabilities, total_mass, kill: row[heights], start }, sweeps))
}
