//! Crossing law of monotone walks conditioned to reach a target.
//!
//! A walk with only right and up moves runs from `A` on `alpha` to `B` on `beta`.
//! Every such path crosses the strip `[l-1, l]` through exactly one edge
//! `(l-1, k) -> (l, k)`; `q(k)` is the weighted share of paths that cross at `k`.
//! It factors as `p1(k) * p2(k)`, where `p1` is the exit law of the walk from `A`
//! in columns `0..=l` and `p2` is the exit law of the reversed walk from `B` in
//! columns `l-1..=m`, seen after a half-turn.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Region, StepSet};
use crate::walker::{exact_exit_distribution, ColumnWeights, TransitionModel};

#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneCrossing {
    /// Normalised crossing law, keyed by the original height `k`.
    pub q: BTreeMap<i64, BigRational>,
    /// Exit law at column `l` of the walk from `A`.
    pub p1: BTreeMap<i64, BigRational>,
    /// Exit law at column `l-1` of the reversed walk from `B`, keyed by the original height `k`.
    pub p2: BTreeMap<i64, BigRational>,
}

/// `model` must carry one column per abscissa `0..=m`: the up weight of column `m` is used by paths
/// climbing `beta` towards `B`.
pub fn monotone_crossing_distribution(
    region: &Region,
    model: &TransitionModel<BigRational>,
    a: LatticePoint,
    b: LatticePoint,
    l: usize,
) -> Result<MonotoneCrossing> {
    let m = region.m();
    if region.step_set() != StepSet::Square {
        return Err(Error::InvalidInstance("monotone walks need the square step set".into()));
    }
    if model.width() != m + 1 {
        return Err(Error::DimensionMismatch(format!(
            "monotone model has {} columns, region needs {}",
            model.width(),
            m + 1
        )));
    }
    if !model.is_monotone() {
        return Err(Error::InvalidModel("left and down weights must vanish".into()));
    }
    if a.x != 0 || !region.contains(a) {
        return Err(Error::InvalidInstance(format!("A = {a} is not on alpha")));
    }
    if b.x != m as i64 || !region.contains(b) {
        return Err(Error::InvalidInstance(format!("B = {b} is not on beta")));
    }
    if l == 0 || l >= m {
        return Err(Error::InvalidInstance(format!("crossing column {l} must lie in 1..{m}")));
    }

    let left = region.sub_columns(0, l)?;
    let d1 = exact_exit_distribution(&left, &model.sub_columns(0, l), a)?;

    // Half-turn of columns l-1..=m: x' = m - x, y' = -y.
    let right = region.sub_columns(l - 1, m)?.rotated();
    let w = m - l + 1;
    let zero = BigRational::zero();
    let cols = (0..w)
        .map(|xr| {
            let r = model.column(m - xr - 1).right.clone();
            let u = model.column(m - xr).up.clone();
            ColumnWeights::square(r, zero.clone(), u, zero.clone())
        })
        .collect();
    let reversed = TransitionModel::weights(cols)?;
    let d2 = exact_exit_distribution(&right, &reversed, LatticePoint::new(0, -b.y))?;

    let p1 = d1.probabilities;
    let p2: BTreeMap<i64, BigRational> = d2.probabilities.into_iter().map(|(k, p)| (-k, p)).collect();
    let raw: BTreeMap<i64, BigRational> = p1
        .iter()
        .filter_map(|(k, p)| p2.get(k).map(|r| (*k, p.clone() * r.clone())))
        .collect();
    let total = raw.values().fold(BigRational::zero(), |s, v| s + v.clone());
    if total.is_zero() {
        return Err(Error::UnreachableB);
    }
    let q = raw.into_iter().map(|(k, v)| (k, v / total.clone())).collect();
    Ok(MonotoneCrossing { q, p1, p2 })
}

/// Uniform monotone model: right and up each `1/2` on every column `0..=m`.
pub fn uniform_monotone(m: usize) -> TransitionModel<BigRational> {
    let h = BigRational::new(1.into(), 2.into());
    let z = BigRational::zero();
    TransitionModel::stochastic(vec![ColumnWeights::square(h.clone(), z.clone(), h, z); m + 1])
        .expect("columns sum to one")
}
