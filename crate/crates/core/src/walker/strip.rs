//! Walks in infinite strips, approximated by finite truncations.
//!
//! A strip is a region whose columns are unbounded above, below or both. The
//! truncation at half-height `H` cuts every open end at `start_y +- H`; the exit
//! probabilities of the truncated region increase with `H` and converge to the
//! strip's. [`truncated_strip_distribution`] doubles `H` until consecutive
//! truncations agree to within the requested tolerance.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Region, StepSet};
use crate::walker::{exit_distribution, ColumnWeights, TransitionModel};

/// A strip of width `m = model.width()` with optional finite floor and ceiling.
#[derive(Clone, Debug)]
pub struct StripModel {
    pub model: TransitionModel<BigRational>,
    pub start_y: i64,
    pub floor: Option<i64>,
    pub ceiling: Option<i64>,
}

impl StripModel {
    /// Width-one strip with up, down and right each `1/3` on the left column.
    ///
    /// Its exit law is `p(k) = phi^(-2|k|) / sqrt(5)`.
    pub fn ladder() -> Self {
        let third = BigRational::new(1.into(), 3.into());
        let col = ColumnWeights::square(third.clone(), BigRational::new(0.into(), 1.into()), third.clone(), third);
        Self {
            model: TransitionModel::stochastic(vec![col]).expect("ladder column sums to one"),
            start_y: 0,
            floor: None,
            ceiling: None,
        }
    }

    /// The finite region obtained by cutting the open ends at `start_y +- h`.
    pub fn truncate(&self, h: i64) -> Result<Region> {
        let lo = self.floor.unwrap_or(self.start_y - h);
        let hi = self.ceiling.unwrap_or(self.start_y + h);
        if lo > self.start_y || hi < self.start_y {
            return Err(Error::InvalidStart((0, self.start_y)));
        }
        Region::new(vec![(lo, hi); self.model.width() + 1], StepSet::Square)
    }

    /// Exit probabilities of the truncation at `h`, in floating point from an exact solve.
    pub fn solve_truncated(&self, h: i64) -> Result<BTreeMap<i64, f64>> {
        let region = self.truncate(h)?;
        let d = exit_distribution(&region, &self.model, LatticePoint::new(0, self.start_y))?;
        Ok(d.to_f64().probabilities)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StripDistribution {
    pub probabilities: BTreeMap<i64, f64>,
    pub total_mass: f64,
    /// Largest change of any `p(k)` in the last doubling.
    pub bound: f64,
    /// Half-height of the final truncation.
    pub height: i64,
}

pub const DEFAULT_START_HEIGHT: i64 = 8;
pub const DEFAULT_MAX_HEIGHT: i64 = 1 << 10;

/// Double the truncation height from `start_height` until `max_k |p_2H(k) - p_H(k)| < tol`.
pub fn truncated_strip_distribution(
    strip: &StripModel,
    start_height: i64,
    max_height: i64,
    tol: f64,
) -> Result<StripDistribution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidModel(format!("tolerance must be positive, got {tol}")));
    }
    let mut h = start_height.max(1);
    let mut prev = strip.solve_truncated(h)?;
    loop {
        let next_h = h * 2;
        if next_h > max_height {
            return Err(Error::NoConvergence(max_height));
        }
        let next = strip.solve_truncated(next_h)?;
        let bound = next
            .iter()
            .map(|(k, p)| (p - prev.get(k).copied().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max);
        if bound < tol {
            let total_mass = next.values().sum();
            return Ok(StripDistribution { probabilities: next, total_mass, bound, height: next_h });
        }
        prev = next;
        h = next_h;
    }
}

/// `1 / (phi^(2|k|) sqrt 5)`.
pub fn ladder_limit(k: i64) -> f64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    1.0 / (phi.powi(2 * k.abs() as i32) * 5f64.sqrt())
}
