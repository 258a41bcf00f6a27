//! The map `(xi_AC, xi_BD) -> (xi_AC', xi_BD')` and its inverse.
//!
//! With `s = l - b`:
//!
//! 1. `chi_hat` is the lower boundary walk `B -> alpha -> eta_- -> beta -> D` raised by `s`;
//!    `E` is the first vertex of `xi_AC` after its last visit strictly below `chi_hat`.
//! 2. `zeta` is `xi_BD` raised by `s`, running `B' -> C'`; `F` is its first vertex after its last
//!    visit strictly above the upper boundary walk `A -> alpha -> eta_+ -> beta -> C`.
//! 3. `G` is the key intersection of `xi_AC` after `E` and `zeta` after `F`, restricted to the
//!    component `Lambda` of the band between `eta_+` and `chi_hat` that holds `[C', C]`.
//! 4. `xi_AC'` is `xi_AC` up to `G` followed by `zeta` after `G`.
//! 5. `xi_BD'` is `xi_BD` up to `G' = G - s` followed by the rest of `xi_AC` lowered by `s`.
//!
//! `E` lies on `chi_hat` and `F` on the upper walk, but they need not be the last such vertices.
//! Taking the last ones is not stable under the swap: the piece of `zeta` moved onto `xi_AC'`
//! may touch `chi_hat` again, and distinct pairs then share an image.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::injection::{key_intersection, swap_at, InjectionInstance, PathPair};
use crate::lattice::{boundary_paths, LatticePath, LatticePoint, PointSet, Region, Step};

/// Every intermediate object of one application of the map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub eta_plus_hat: Vec<LatticePoint>,
    pub eta_minus_hat: Vec<LatticePoint>,
    pub chi: Vec<LatticePoint>,
    pub chi_hat: Vec<LatticePoint>,
    pub zeta: LatticePath,
    /// Vertex indices of `xi_AC` lying on `chi_hat`, in path order.
    pub e_candidates: Vec<usize>,
    pub e_index: usize,
    pub e: LatticePoint,
    pub f_index: usize,
    pub f: LatticePoint,
    pub lambda: Vec<LatticePoint>,
    /// Cut index on `xi_AC` and on `zeta` (equivalently on `xi_BD`).
    pub g_indices: (usize, usize),
    pub g: LatticePoint,
    pub g_prime: LatticePoint,
    /// `E` is not the last vertex of `xi_AC` on `chi_hat`.
    pub fallback_used: bool,
}

/// Points of column `x` visited by a path of the given step set starting on parity class `class`.
fn on_class(region: &Region, class: i64, p: LatticePoint) -> bool {
    region.step_set().has_vertical_steps() || (p.x + p.y - class).rem_euclid(2) == 0
}

/// `A -> alpha up -> eta_+ -> beta down -> C`.
pub fn upper_hat(inst: &InjectionInstance) -> Vec<LatticePoint> {
    let region = inst.region();
    let (a, c) = (inst.a(), inst.c());
    let unit = region.step_set().vertical_unit();
    let mut out: Vec<LatticePoint> = (0..).map(|i| a.shifted(i * unit)).take_while(|p| p.y <= region.hi(0)).collect();
    out.extend(boundary_curve(region, a.y, true));
    let m = region.width();
    let top = out.last().map_or(region.hi(m), |p| p.y);
    out.extend((0..).map(|i| LatticePoint::new(m, top - i * unit)).skip(1).take_while(|p| p.y >= c.y));
    out.dedup();
    out
}

/// `B -> alpha down -> eta_- -> beta up -> D`.
pub fn lower_hat(inst: &InjectionInstance) -> Vec<LatticePoint> {
    let region = inst.region();
    let (b, d) = (inst.b(), inst.d());
    let unit = region.step_set().vertical_unit();
    let mut out: Vec<LatticePoint> = (0..).map(|i| b.shifted(-i * unit)).take_while(|p| p.y >= region.lo(0)).collect();
    out.extend(boundary_curve(region, b.y, false));
    let m = region.width();
    let bottom = out.last().map_or(region.lo(m), |p| p.y);
    out.extend((0..).map(|i| LatticePoint::new(m, bottom + i * unit)).skip(1).take_while(|p| p.y <= d.y));
    out.dedup();
    out
}

/// `eta_+` (or `eta_-`) as lattice points; for Dyck-type step sets, the extreme points of each column
/// on the parity class of `(0, class)`.
fn boundary_curve(region: &Region, class: i64, upper: bool) -> Vec<LatticePoint> {
    if region.step_set().has_vertical_steps() {
        let b = boundary_paths(region);
        return if upper { b.eta_plus } else { b.eta_minus };
    }
    (0..=region.width())
        .map(|x| {
            let (lo, hi) = region.column(x).expect("column in range");
            let p = LatticePoint::new(x, if upper { hi } else { lo });
            if on_class(region, class, p) {
                p
            } else {
                p.shifted(if upper { -1 } else { 1 })
            }
        })
        .collect()
}

/// The component of `{lo(x) + s <= y <= hi(x)}` that contains the segment `[C', C]`.
pub fn lambda(inst: &InjectionInstance) -> PointSet {
    let region = inst.region();
    let s = inst.shift();
    let inside = |p: LatticePoint| region.contains(p) && p.y >= region.lo(p.x) + s;
    let moves: Vec<(i64, i64)> =
        region.step_set().steps().iter().flat_map(|st| {
            let (dx, dy) = st.delta();
            [(dx, dy), (-dx, -dy)]
        })
        .collect();
    let mut seen: HashSet<LatticePoint> = HashSet::new();
    let mut queue = VecDeque::new();
    let (cp, c) = (inst.c_prime(), inst.c());
    for y in cp.y..=c.y {
        let p = LatticePoint::new(c.x, y);
        if inside(p) && seen.insert(p) {
            queue.push_back(p);
        }
    }
    while let Some(p) = queue.pop_front() {
        for &(dx, dy) in &moves {
            let q = LatticePoint::new(p.x + dx, p.y + dy);
            if inside(q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// First index `k` such that the path from vertex `k` on, including the midpoints of `RR` steps,
/// avoids every point where `outside` holds.
fn settle_index(path: &LatticePath, outside: impl Fn(LatticePoint) -> bool) -> usize {
    let verts = path.vertices();
    let mut cut = 0;
    for (k, v) in verts.iter().enumerate() {
        if outside(*v) {
            cut = k + 1;
        }
        if path.steps.get(k) == Some(&Step::RR) && outside(LatticePoint::new(v.x + 1, v.y)) {
            cut = k + 1;
        }
    }
    cut
}

struct Cut {
    e_index: usize,
    f_index: usize,
    g1: usize,
    g2: usize,
}

/// Cut points shared by the forward map and its inverse: `lower` runs inside the region, `upper`
/// inside the region raised by `s`.
fn locate(inst: &InjectionInstance, lower: &LatticePath, upper: &LatticePath, lam: &PointSet) -> Result<Cut> {
    let region = inst.region();
    let s = inst.shift();
    let e_index = settle_index(lower, |p| p.y < region.lo(p.x) + s);
    let f_index = settle_index(upper, |p| p.y > region.hi(p.x));
    let (i, j) = key_intersection(&lower.suffix(e_index), &upper.suffix(f_index), Some(lam)).map_err(|_| {
        Error::ConstructionFailure { step: 3, reason: "the tails after E and F do not meet in Lambda".into() }
    })?;
    Ok(Cut { e_index, f_index, g1: e_index + i, g2: f_index + j })
}

/// Apply the map to a domain pair.
pub fn phi_forward(inst: &InjectionInstance, pair: &PathPair) -> Result<(PathPair, ConstructionTrace)> {
    inst.check_domain(pair)?;
    let s = inst.shift();
    let xi = &pair.first;
    let xi_v = xi.vertices();

    let eta_plus_hat = upper_hat(inst);
    let eta_minus_hat = lower_hat(inst);
    let chi: Vec<LatticePoint> =
        boundary_curve(inst.region(), inst.b().y, false).into_iter().map(|p| p.shifted(s)).collect();
    let chi_hat: Vec<LatticePoint> = eta_minus_hat.iter().map(|p| p.shifted(s)).collect();

    let chi_set: PointSet = chi_hat.iter().copied().collect();
    let e_candidates: Vec<usize> = (0..xi_v.len()).filter(|&i| chi_set.contains(xi_v[i])).collect();
    let zeta = pair.second.shifted(s);
    let zeta_v = zeta.vertices();

    let lam = lambda(inst);
    let cut = locate(inst, xi, &zeta, &lam)?;

    let (first, raised) = swap_at(xi, cut.g1, &zeta, cut.g2);
    let second = raised.shifted(-s);
    let g = xi_v[cut.g1];
    let trace = ConstructionTrace {
        eta_plus_hat,
        eta_minus_hat,
        chi,
        chi_hat,
        fallback_used: e_candidates.last() != Some(&cut.e_index),
        e_candidates,
        e_index: cut.e_index,
        e: xi_v[cut.e_index],
        f_index: cut.f_index,
        f: zeta_v[cut.f_index],
        zeta,
        lambda: lam.sorted(),
        g_indices: (cut.g1, cut.g2),
        g,
        g_prime: g.shifted(-s),
    };
    Ok((PathPair::new(first, second), trace))
}

/// Recover the domain pair mapped to `image`, or `None` when `image` is not in the range.
///
/// The same cut search is run on `(xi_AC', xi_BD' + s)`; the swap leaves `E`, `F` and `G` where
/// they were, so undoing it at the same place gives the preimage.
pub fn phi_inverse(inst: &InjectionInstance, image: &PathPair) -> Result<Option<PathPair>> {
    inst.check_codomain(image)?;
    let s = inst.shift();
    let raised = image.second.shifted(s);
    let Ok(cut) = locate(inst, &image.first, &raised, &lambda(inst)) else {
        return Ok(None);
    };
    let (first, back) = swap_at(&image.first, cut.g1, &raised, cut.g2);
    let candidate = PathPair::new(first, back.shifted(-s));
    if inst.check_domain(&candidate).is_err() {
        return Ok(None);
    }
    match phi_forward(inst, &candidate) {
        Ok((out, _)) if &out == image => Ok(Some(candidate)),
        _ => Ok(None),
    }
}
