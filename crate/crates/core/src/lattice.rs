//! Regions, lattice paths and the geometric predicates every other module uses.
//!
//! A [`Region`] is stored column by column: for each abscissa `x` in `0..=m` an
//! inclusive interval `lo(x)..=hi(x)`. The left side `alpha` is column `0`, the
//! right side `beta` is column `m`, and the upper/lower boundary paths are derived
//! from the intervals by a fixed canonical rule (see [`boundary_paths`]).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn shifted(self, dy: i64) -> Self {
        Self::new(self.x, self.y + dy)
    }

    pub fn step(self, step: Step) -> Self {
        let (dx, dy) = step.delta();
        Self::new(self.x + dx, self.y + dy)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self::new(x, y)
    }
}

impl From<LatticePoint> for (i64, i64) {
    fn from(p: LatticePoint) -> Self {
        (p.x, p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl FromStr for LatticePoint {
    type Err = Error;

    /// Parses `"x,y"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `x,y`, got {s:?}"));
        let (x, y) = s.split_once(',').ok_or_else(bad)?;
        Ok(Self::new(
            x.trim().parse().map_err(|_| bad())?,
            y.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// A single lattice step. The declaration order is the lexicographic order used by enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    R,
    L,
    U,
    D,
    NE,
    SW,
    SE,
    /// The flat Schröder step `(2,0)`.
    RR,
}

impl Step {
    pub const fn delta(self) -> (i64, i64) {
        match self {
            Step::R => (1, 0),
            Step::L => (-1, 0),
            Step::U => (0, 1),
            Step::D => (0, -1),
            Step::NE => (1, 1),
            Step::SW => (-1, -1),
            Step::SE => (1, -1),
            Step::RR => (2, 0),
        }
    }

    pub const fn is_vertical(self) -> bool {
        matches!(self, Step::U | Step::D)
    }

    pub const fn name(self) -> &'static str {
        match self {
            Step::R => "R",
            Step::L => "L",
            Step::U => "U",
            Step::D => "D",
            Step::NE => "NE",
            Step::SW => "SW",
            Step::SE => "SE",
            Step::RR => "RR",
        }
    }

    fn from_delta(dx: i64, dy: i64) -> Option<Self> {
        [Step::R, Step::L, Step::U, Step::D, Step::NE, Step::SW, Step::SE, Step::RR]
            .into_iter()
            .find(|s| s.delta() == (dx, dy))
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "R" => Step::R,
            "L" => Step::L,
            "U" => Step::U,
            "D" => Step::D,
            "NE" => Step::NE,
            "SW" => Step::SW,
            "SE" => Step::SE,
            "RR" => Step::RR,
            _ => return Err(Error::Parse(format!("unknown step {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepSet {
    Square,
    SquareDiag,
    Dyck,
    Schroder,
}

impl StepSet {
    pub fn steps(self) -> &'static [Step] {
        match self {
            StepSet::Square => &[Step::R, Step::L, Step::U, Step::D],
            StepSet::SquareDiag => &[Step::R, Step::L, Step::U, Step::D, Step::NE, Step::SW],
            StepSet::Dyck => &[Step::NE, Step::SE],
            StepSet::Schroder => &[Step::NE, Step::SE, Step::RR],
        }
    }

    /// Smallest vertical translation preserving the sublattice the paths live on.
    pub fn vertical_unit(self) -> i64 {
        match self {
            StepSet::Square | StepSet::SquareDiag => 1,
            StepSet::Dyck | StepSet::Schroder => 2,
        }
    }

    pub fn allows(self, step: Step) -> bool {
        self.steps().contains(&step)
    }

    pub fn has_vertical_steps(self) -> bool {
        matches!(self, StepSet::Square | StepSet::SquareDiag)
    }

    pub fn name(self) -> &'static str {
        match self {
            StepSet::Square => "square",
            StepSet::SquareDiag => "square_diag",
            StepSet::Dyck => "dyck",
            StepSet::Schroder => "schroder",
        }
    }
}

impl FromStr for StepSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "square" => StepSet::Square,
            "square_diag" => StepSet::SquareDiag,
            "dyck" => StepSet::Dyck,
            "schroder" => StepSet::Schroder,
            _ => return Err(Error::Parse(format!("unknown step set {s:?}"))),
        })
    }
}

/// JSON form of a region: `{"m": 2, "columns": [[0,2],[0,2],[0,2]], "step_set": "square"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub m: usize,
    pub columns: Vec<(i64, i64)>,
    pub step_set: StepSet,
}

/// A validated x-monotone region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RegionSpec", into = "RegionSpec")]
pub struct Region {
    columns: Vec<(i64, i64)>,
    step_set: StepSet,
}

impl TryFrom<RegionSpec> for Region {
    type Error = Error;

    fn try_from(spec: RegionSpec) -> Result<Self> {
        if spec.columns.len() != spec.m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "m = {} but {} columns given",
                spec.m,
                spec.columns.len()
            )));
        }
        validate_region(spec.columns, spec.step_set)
    }
}

impl From<Region> for RegionSpec {
    fn from(r: Region) -> Self {
        RegionSpec { m: r.m(), columns: r.columns, step_set: r.step_set }
    }
}

/// Check the column invariants and build a [`Region`].
///
/// Adjacent square-lattice columns must share a height. For Dyck and Schröder
/// step sets the columns only need to be within one unit of each other, since
/// a diagonal step joins them.
pub fn validate_region(columns: Vec<(i64, i64)>, step_set: StepSet) -> Result<Region> {
    if columns.is_empty() {
        return Err(Error::NoColumns);
    }
    for (x, &(lo, hi)) in columns.iter().enumerate() {
        if lo > hi {
            return Err(Error::EmptyColumn(x));
        }
    }
    let slack = if step_set.has_vertical_steps() { 0 } else { 1 };
    for (x, w) in columns.windows(2).enumerate() {
        let (lo0, hi0) = w[0];
        let (lo1, hi1) = w[1];
        if lo0.max(lo1) > hi0.min(hi1) + slack {
            return Err(Error::DisconnectedColumns(x));
        }
    }
    Ok(Region { columns, step_set })
}

impl Region {
    pub fn new(columns: Vec<(i64, i64)>, step_set: StepSet) -> Result<Self> {
        validate_region(columns, step_set)
    }

    /// `(m+1)` copies of `lo..=hi` on the square lattice.
    pub fn rectangle(m: usize, lo: i64, hi: i64) -> Result<Self> {
        validate_region(vec![(lo, hi); m + 1], StepSet::Square)
    }

    pub fn m(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn width(&self) -> i64 {
        self.m() as i64
    }

    pub fn step_set(&self) -> StepSet {
        self.step_set
    }

    pub fn columns(&self) -> &[(i64, i64)] {
        &self.columns
    }

    pub fn column(&self, x: i64) -> Option<(i64, i64)> {
        usize::try_from(x).ok().and_then(|i| self.columns.get(i).copied())
    }

    pub fn lo(&self, x: i64) -> i64 {
        self.columns[x as usize].0
    }

    pub fn hi(&self, x: i64) -> i64 {
        self.columns[x as usize].1
    }

    pub fn with_step_set(&self, step_set: StepSet) -> Result<Self> {
        validate_region(self.columns.clone(), step_set)
    }

    /// Sub-region made of columns `from..=to`, re-indexed so `from` becomes column 0.
    pub fn sub_columns(&self, from: usize, to: usize) -> Result<Self> {
        if from > to || to > self.m() {
            return Err(Error::DimensionMismatch(format!("columns {from}..={to} of 0..={}", self.m())));
        }
        validate_region(self.columns[from..=to].to_vec(), self.step_set)
    }

    /// The region rotated by 180 degrees: `(x, y) -> (m - x, -y)`.
    pub fn rotated(&self) -> Self {
        let columns = self.columns.iter().rev().map(|&(lo, hi)| (-hi, -lo)).collect();
        Region { columns, step_set: self.step_set }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        contains(self, p)
    }

    /// All lattice points, column by column, bottom to top.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(x, &(lo, hi))| (lo..=hi).map(move |y| LatticePoint::new(x as i64, y)))
    }

    pub fn num_points(&self) -> usize {
        self.columns.iter().map(|&(lo, hi)| (hi - lo + 1) as usize).sum()
    }

    /// Steps of `path` that the region's step set does not allow.
    pub fn check_steps(&self, path: &LatticePath) -> Result<()> {
        match path.steps.iter().find(|s| !self.step_set.allows(**s)) {
            Some(s) => Err(Error::StepNotAllowed {
                step: s.name().to_string(),
                step_set: self.step_set.name().to_string(),
            }),
            None => Ok(()),
        }
    }
}

pub fn contains(region: &Region, p: LatticePoint) -> bool {
    match region.column(p.x) {
        Some((lo, hi)) => lo <= p.y && p.y <= hi,
        None => false,
    }
}

/// A start point and a step sequence; self-intersections and backtracking are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    pub start: LatticePoint,
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: LatticePoint, steps: Vec<Step>) -> Self {
        Self { start, steps }
    }

    pub fn empty(start: LatticePoint) -> Self {
        Self { start, steps: Vec::new() }
    }

    /// Build a path through consecutive vertices; fails when two neighbours are not one step apart.
    pub fn from_vertices(vertices: &[LatticePoint]) -> Result<Self> {
        let start = *vertices.first().ok_or_else(|| Error::Parse("empty vertex list".into()))?;
        let steps = vertices
            .windows(2)
            .map(|w| {
                Step::from_delta(w[1].x - w[0].x, w[1].y - w[0].y)
                    .ok_or_else(|| Error::Parse(format!("{} -> {} is not a step", w[0], w[1])))
            })
            .collect::<Result<_>>()?;
        Ok(Self { start, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut p = self.start;
        out.push(p);
        for &s in &self.steps {
            p = p.step(s);
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> LatticePoint {
        self.steps.iter().fold(self.start, |p, &s| p.step(s))
    }

    /// Vertex at position `i` (0 = start).
    pub fn vertex(&self, i: usize) -> LatticePoint {
        self.steps[..i].iter().fold(self.start, |p, &s| p.step(s))
    }

    pub fn shifted(&self, dy: i64) -> Self {
        Self { start: self.start.shifted(dy), steps: self.steps.clone() }
    }

    /// The sub-path starting at vertex `i`.
    pub fn suffix(&self, i: usize) -> Self {
        Self { start: self.vertex(i), steps: self.steps[i..].to_vec() }
    }

    /// The sub-path ending at vertex `i`.
    pub fn prefix(&self, i: usize) -> Self {
        Self { start: self.start, steps: self.steps[..i].to_vec() }
    }

    /// `self` followed by `tail`; `tail` must start where `self` ends.
    pub fn concat(&self, tail: &LatticePath) -> Self {
        debug_assert_eq!(self.end(), tail.start);
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&tail.steps);
        Self { start: self.start, steps }
    }

    pub fn steps_string(&self) -> String {
        self.steps.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.start, self.steps_string())
    }
}

/// Translate `path` vertically, refusing shifts that leave the step set's sublattice.
pub fn shift_path(path: &LatticePath, dy: i64, step_set: StepSet) -> Result<LatticePath> {
    let unit = step_set.vertical_unit();
    if dy % unit != 0 {
        return Err(Error::BadShiftUnit { dy, unit });
    }
    Ok(path.shifted(dy))
}

/// Every vertex lies in the region; a flat `(2,0)` step also needs its midpoint inside.
pub fn path_in_region(region: &Region, path: &LatticePath) -> bool {
    let mut p = path.start;
    if !region.contains(p) {
        return false;
    }
    for &s in &path.steps {
        if s == Step::RR && !region.contains(LatticePoint::new(p.x + 1, p.y)) {
            return false;
        }
        p = p.step(s);
        if !region.contains(p) {
            return false;
        }
    }
    true
}

/// Edge counts projected onto the x-axis.
///
/// `h[i]` counts edges whose x-extent covers `[i, i+1]`; `v[j]` counts vertical edges at `x = j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectionProfile {
    pub h: Vec<u64>,
    pub v: Vec<u64>,
}

impl ProjectionProfile {
    pub fn zeros(m: usize) -> Self {
        Self { h: vec![0; m], v: vec![0; m + 1] }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            h: self.h.iter().zip(&other.h).map(|(a, b)| a + b).collect(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.h.iter().sum::<u64>() + self.v.iter().sum::<u64>()
    }
}

/// Projection profile of `path` for a region of width `m`. Edges outside `0..=m` are ignored.
pub fn projection_profile(path: &LatticePath, m: usize) -> ProjectionProfile {
    let mut prof = ProjectionProfile::zeros(m);
    let mut p = path.start;
    for &s in &path.steps {
        let q = p.step(s);
        if s.is_vertical() {
            if let Some(c) = usize::try_from(p.x).ok().and_then(|j| prof.v.get_mut(j)) {
                *c += 1;
            }
        } else {
            for i in p.x.min(q.x)..p.x.max(q.x) {
                if let Some(c) = usize::try_from(i).ok().and_then(|i| prof.h.get_mut(i)) {
                    *c += 1;
                }
            }
        }
        p = q;
    }
    prof
}

/// Directed step counts keyed by the abscissa the step leaves from.
///
/// Under column-dependent step probabilities the weight of a path is a function of this census.
pub fn step_census(path: &LatticePath) -> BTreeMap<(i64, Step), u32> {
    let mut out = BTreeMap::new();
    let mut p = path.start;
    for &s in &path.steps {
        *out.entry((p.x, s)).or_insert(0) += 1;
        p = p.step(s);
    }
    out
}

pub fn vertex_intersections(a: &LatticePath, b: &LatticePath) -> BTreeSet<LatticePoint> {
    let va: BTreeSet<_> = a.vertices().into_iter().collect();
    b.vertices().into_iter().filter(|p| va.contains(p)).collect()
}

/// Number of edge pairs (one from each path) that meet at a point which is not a common lattice vertex.
///
/// Diagnostic only: on the supported step sets the constructions never need such crossings.
pub fn mid_edge_crossings(a: &LatticePath, b: &LatticePath) -> usize {
    let ea: Vec<_> = a.vertices().windows(2).map(|w| (w[0], w[1])).collect();
    let eb: Vec<_> = b.vertices().windows(2).map(|w| (w[0], w[1])).collect();
    let mut count = 0;
    for &(p, q) in &ea {
        for &(r, s) in &eb {
            if segments_cross_off_lattice(p, q, r, s) {
                count += 1;
            }
        }
    }
    count
}

fn segments_cross_off_lattice(p: LatticePoint, q: LatticePoint, r: LatticePoint, s: LatticePoint) -> bool {
    let cross = |o: LatticePoint, a: LatticePoint, b: LatticePoint| {
        (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
    };
    let d1 = cross(r, s, p);
    let d2 = cross(r, s, q);
    let d3 = cross(p, q, r);
    let d4 = cross(p, q, s);
    // Proper crossing only: collinear overlaps share lattice points on these steps.
    if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 {
        return false;
    }
    if (d1 > 0) == (d2 > 0) || (d3 > 0) == (d4 > 0) {
        return false;
    }
    // Intersection point: p + t (q - p), t = d3 / (d3 - d4). Lattice iff the coordinates are integral.
    let den = d3 - d4;
    let nx = p.x * den + d3 * (q.x - p.x);
    let ny = p.y * den + d3 * (q.y - p.y);
    !(nx % den == 0 && ny % den == 0)
}

/// Canonical boundary of a region.
///
/// `eta_plus`/`eta_minus` are x-monotone vertex sequences through `(x, hi(x))` / `(x, lo(x))`.
/// On the square lattice a column change takes its horizontal step at the overlap height
/// nearest the boundary (`min(hi)` resp. `max(lo)`) with vertical runs on either side.
/// For Dyck and Schröder regions the vertices are just `(x, hi(x))` / `(x, lo(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPaths {
    pub eta_plus: Vec<LatticePoint>,
    pub eta_minus: Vec<LatticePoint>,
    /// `(lo(0), hi(0))` on `x = 0`.
    pub alpha: (i64, i64),
    /// `(lo(m), hi(m))` on `x = m`.
    pub beta: (i64, i64),
}

pub fn boundary_paths(region: &Region) -> BoundaryPaths {
    let cols = region.columns();
    let (eta_plus, eta_minus) = if region.step_set().has_vertical_steps() {
        (
            square_envelope(cols, |c| c.1, |a, b| a.min(b)),
            square_envelope(cols, |c| c.0, |a, b| a.max(b)),
        )
    } else {
        let pts = |f: fn(&(i64, i64)) -> i64| {
            cols.iter().enumerate().map(|(x, c)| LatticePoint::new(x as i64, f(c))).collect()
        };
        (pts(|c| c.1), pts(|c| c.0))
    };
    BoundaryPaths { eta_plus, eta_minus, alpha: cols[0], beta: cols[cols.len() - 1] }
}

fn square_envelope(
    cols: &[(i64, i64)],
    level: impl Fn(&(i64, i64)) -> i64,
    cross_at: impl Fn(i64, i64) -> i64,
) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let mut y = level(&cols[0]);
    out.push(LatticePoint::new(0, y));
    for x in 0..cols.len() - 1 {
        let next = level(&cols[x + 1]);
        let t = cross_at(y, next);
        let xi = x as i64;
        while y != t {
            y += (t - y).signum();
            out.push(LatticePoint::new(xi, y));
        }
        out.push(LatticePoint::new(xi + 1, y));
        while y != next {
            y += (next - y).signum();
            out.push(LatticePoint::new(xi + 1, y));
        }
    }
    out
}

/// A set of lattice points with fast membership, used for boundary curves and their shifts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSet {
    points: HashSet<LatticePoint>,
}

impl PointSet {
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.points.contains(&p)
    }

    pub fn insert(&mut self, p: LatticePoint) {
        self.points.insert(p);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sorted(&self) -> Vec<LatticePoint> {
        let mut v: Vec<_> = self.points.iter().copied().collect();
        v.sort();
        v
    }
}

impl FromIterator<LatticePoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = LatticePoint>>(iter: I) -> Self {
        Self { points: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn box3() -> Region {
        Region::rectangle(2, 0, 2).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_region(vec![(0, 2); 3], StepSet::Square).is_ok());
        assert_eq!(
            validate_region(vec![(0, 1), (3, 4)], StepSet::Square),
            Err(Error::DisconnectedColumns(0))
        );
        let single = validate_region(vec![(0, 0)], StepSet::Square).unwrap();
        assert_eq!(single.m(), 0);
        assert_eq!(validate_region(vec![(0, 1), (2, 1)], StepSet::Square), Err(Error::EmptyColumn(1)));
        assert_eq!(validate_region(vec![], StepSet::Square), Err(Error::NoColumns));
        // ballot-shaped Dyck columns only touch diagonally
        assert!(validate_region(vec![(0, 0), (1, 1), (0, 2)], StepSet::Dyck).is_ok());
        assert!(validate_region(vec![(0, 0), (1, 1)], StepSet::Square).is_err());
    }

    #[test]
    fn region_json_round_trip_and_mismatch() {
        let json = r#"{"m":2,"columns":[[0,2],[0,2],[0,2]],"step_set":"square"}"#;
        let r: Region = serde_json::from_str(json).unwrap();
        assert_eq!(r, box3());
        assert_eq!(serde_json::to_string(&r).unwrap(), json);
        let bad = r#"{"m":1,"columns":[[0,1],[3,4]],"step_set":"square"}"#;
        let err = serde_json::from_str::<Region>(bad).unwrap_err().to_string();
        assert!(err.contains("do not overlap"), "{err}");
    }

    #[test]
    fn contains_examples() {
        let r = box3();
        assert!(r.contains(p(1, 1)));
        assert!(!r.contains(p(3, 0)));
        assert!(r.contains(p(2, 2)));
        assert!(!r.contains(p(-1, 0)));
    }

    #[test]
    fn boundary_examples() {
        let b = boundary_paths(&box3());
        assert_eq!(b.eta_plus, vec![p(0, 2), p(1, 2), p(2, 2)]);
        assert_eq!(b.eta_minus, vec![p(0, 0), p(1, 0), p(2, 0)]);

        let r = Region::new(vec![(0, 1), (1, 2)], StepSet::Square).unwrap();
        let b = boundary_paths(&r);
        assert_eq!(b.eta_plus, vec![p(0, 1), p(1, 1), p(1, 2)]);
        assert_eq!(b.eta_minus, vec![p(0, 0), p(0, 1), p(1, 1)]);

        let r = Region::new(vec![(-1, 3)], StepSet::Square).unwrap();
        let b = boundary_paths(&r);
        assert_eq!(b.eta_plus, vec![p(0, 3)]);
        assert_eq!(b.eta_minus, vec![p(0, -1)]);
        assert_eq!(b.alpha, b.beta);
    }

    #[test]
    fn boundary_with_spike_goes_up_and_back() {
        let r = Region::new(vec![(0, 0), (0, 2), (0, 0)], StepSet::Square).unwrap();
        let b = boundary_paths(&r);
        assert_eq!(b.eta_plus, vec![p(0, 0), p(1, 0), p(1, 1), p(1, 2), p(1, 1), p(1, 0), p(2, 0)]);
    }

    #[test]
    fn shift_examples() {
        let path = LatticePath::new(p(0, 0), vec![Step::R, Step::U]);
        assert_eq!(shift_path(&path, 1, StepSet::Square).unwrap(), LatticePath::new(p(0, 1), vec![Step::R, Step::U]));
        assert_eq!(shift_path(&path, 0, StepSet::Square).unwrap(), path);
        let dyck = LatticePath::new(p(0, 0), vec![Step::NE, Step::SE]);
        assert_eq!(shift_path(&dyck, 1, StepSet::Dyck), Err(Error::BadShiftUnit { dy: 1, unit: 2 }));
    }

    #[test]
    fn path_in_region_examples() {
        let r = box3();
        assert!(path_in_region(&r, &LatticePath::new(p(0, 0), vec![Step::U, Step::R])));
        assert!(!path_in_region(&r, &LatticePath::new(p(0, 0), vec![Step::D])));
        assert!(path_in_region(&r, &LatticePath::empty(p(1, 1))));
        let sch = Region::new(vec![(0, 0), (1, 1), (0, 0)], StepSet::Schroder).unwrap();
        assert!(!path_in_region(&sch, &LatticePath::new(p(0, 0), vec![Step::RR])));
    }

    #[test]
    fn profile_examples() {
        let path = LatticePath::new(p(0, 0), vec![Step::R, Step::U, Step::R]);
        let prof = projection_profile(&path, 2);
        assert_eq!(prof.h, vec![1, 1]);
        assert_eq!(prof.v, vec![0, 1, 0]);

        let back = LatticePath::new(p(1, 0), vec![Step::L, Step::R]);
        let prof = projection_profile(&back, 1);
        assert_eq!(prof.h, vec![2]);
        assert_eq!(prof.v, vec![0, 0]);

        assert_eq!(projection_profile(&LatticePath::empty(p(0, 0)), 3), ProjectionProfile::zeros(3));

        let flat = LatticePath::new(p(0, 0), vec![Step::RR, Step::NE]);
        assert_eq!(projection_profile(&flat, 3).h, vec![1, 1, 1]);
    }

    #[test]
    fn intersection_examples() {
        let a = LatticePath::new(p(0, 0), vec![Step::R]);
        let b = LatticePath::new(p(1, 0), vec![Step::U]);
        assert_eq!(vertex_intersections(&a, &b), BTreeSet::from([p(1, 0)]));
        let c = LatticePath::new(p(5, 5), vec![Step::U]);
        assert!(vertex_intersections(&a, &c).is_empty());
        let all: BTreeSet<_> = b.vertices().into_iter().collect();
        assert_eq!(vertex_intersections(&b, &b), all);
    }

    #[test]
    fn mid_edge_crossing_detection() {
        let up = LatticePath::new(p(0, 0), vec![Step::NE]);
        let down = LatticePath::new(p(0, 1), vec![Step::SE]);
        assert_eq!(mid_edge_crossings(&up, &down), 1);
        let flat = LatticePath::new(p(0, 0), vec![Step::RR]);
        let through = LatticePath::new(p(1, -1), vec![Step::U, Step::U]);
        // meets the flat step at its lattice midpoint: not an off-lattice crossing
        assert_eq!(mid_edge_crossings(&flat, &through), 0);
        let parallel = LatticePath::new(p(0, 1), vec![Step::NE]);
        assert_eq!(mid_edge_crossings(&up, &parallel), 0);
    }

    fn arb_region() -> impl Strategy<Value = Region> {
        (1usize..6, -3i64..3)
            .prop_flat_map(|(m, y0)| {
                prop::collection::vec((-2i64..=2, -2i64..=2, 0i64..4), m + 1).prop_map(move |deltas| {
                    let mut cols: Vec<(i64, i64)> = Vec::new();
                    for (dl, dh, extra) in deltas {
                        let col = match cols.last() {
                            None => (y0, y0 + extra),
                            Some(&(plo, phi)) => {
                                let lo = (plo + dl).min(phi);
                                (lo, (phi + dh).max(plo).max(lo))
                            }
                        };
                        cols.push(col);
                    }
                    Region::new(cols, StepSet::Square).unwrap()
                })
            })
    }

    fn arb_path() -> impl Strategy<Value = LatticePath> {
        (-3i64..3, -3i64..3, prop::collection::vec(0usize..4, 0..12)).prop_map(|(x, y, s)| {
            let steps = s.into_iter().map(|i| StepSet::Square.steps()[i]).collect();
            LatticePath::new(p(x, y), steps)
        })
    }

    proptest! {
        #[test]
        fn shift_round_trip(path in arb_path(), d in -5i64..5) {
            let there = shift_path(&path, d, StepSet::Square).unwrap();
            prop_assert_eq!(shift_path(&there, -d, StepSet::Square).unwrap(), path);
        }

        #[test]
        fn profile_is_shift_invariant_and_counts_every_step(path in arb_path(), d in -5i64..5) {
            let m = 30;
            let moved = path.shifted(d);
            prop_assert_eq!(projection_profile(&path, m), projection_profile(&moved, m));
            let inside = LatticePath::new(LatticePoint::new(path.start.x + 15, path.start.y), path.steps.clone());
            prop_assert_eq!(projection_profile(&inside, m).total(), inside.len() as u64);
        }

        #[test]
        fn boundary_paths_are_monotone_and_inside(region in arb_region()) {
            let b = boundary_paths(&region);
            for eta in [&b.eta_plus, &b.eta_minus] {
                let path = LatticePath::from_vertices(eta).unwrap();
                prop_assert!(path_in_region(&region, &path));
                prop_assert!(path.steps.iter().all(|s| *s != Step::L));
                prop_assert_eq!(path.start.x, 0);
                prop_assert_eq!(path.end().x, region.width());
            }
            for x in 0..=region.width() {
                prop_assert!(b.eta_plus.contains(&p(x, region.hi(x))));
                prop_assert!(b.eta_minus.contains(&p(x, region.lo(x))));
            }
        }
    }
}
