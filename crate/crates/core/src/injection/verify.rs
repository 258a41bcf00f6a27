//! Exhaustive check of the injection on all domain pairs up to a total length.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::injection::{phi_forward, phi_inverse, InjectionInstance, PathPair};
use crate::lattice::{mid_edge_crossings, path_in_region, projection_profile, step_census, LatticePoint, ProjectionProfile, Region};
use crate::paths::{count_free_paths_by_length, enumerate_free_paths, ENUMERATION_LIMIT};

/// How many offending pairs of each kind are kept in the report.
const EXAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub pair: PathPair,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Duplicate {
    pub image: PathPair,
    pub first: PathPair,
    pub second: PathPair,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InjectionReport {
    pub bound: usize,
    pub domain_size: usize,
    pub image_size: usize,
    pub codomain_size: usize,
    pub duplicates: usize,
    pub duplicate_examples: Vec<Duplicate>,
    /// Images that do not run `A -> C'`, `B -> D'` inside the region.
    pub codomain_violations: usize,
    /// Pairs whose summed projection profile changed.
    pub profile_violations: usize,
    /// Pairs whose multiset of (column, step) moves changed.
    pub census_violations: usize,
    pub length_violations: usize,
    /// Pairs where the raised `xi_BD` leaves the band `lo + s ..= hi + s`.
    pub containment_violations: usize,
    pub construction_failures: usize,
    pub failure_examples: Vec<Failure>,
    pub fallback_count: usize,
    pub inverse_failures: usize,
    pub inverse_failure_examples: Vec<PathPair>,
    /// Off-lattice crossings between the two tails searched for `G` (diagonal steps only).
    pub mid_edge_crossings: usize,
    /// Profiles `P` with more domain pairs than codomain pairs.
    pub profile_count_violations: usize,
    pub passed: bool,
}

fn pair_profile(pair: &PathPair, m: usize) -> ProjectionProfile {
    projection_profile(&pair.first, m).add(&projection_profile(&pair.second, m))
}

fn pair_census(pair: &PathPair) -> BTreeMap<(i64, crate::lattice::Step), u32> {
    let mut c = step_census(&pair.first);
    for (k, v) in step_census(&pair.second) {
        *c.entry(k).or_insert(0) += v;
    }
    c
}

/// All pairs `(from1 -> to1, from2 -> to2)` inside the region with total length at most `bound`.
pub fn enumerate_pairs(
    region: &Region,
    ends1: (LatticePoint, LatticePoint),
    ends2: (LatticePoint, LatticePoint),
    bound: usize,
) -> Result<Vec<PathPair>> {
    let p1 = enumerate_free_paths(region, ends1.0, ends1.1, bound)?;
    let p2 = enumerate_free_paths(region, ends2.0, ends2.1, bound)?;
    let mut by_len = vec![0u128; bound + 1];
    for p in &p2 {
        by_len[p.len()] += 1;
    }
    let mut cum = by_len.clone();
    for i in 1..cum.len() {
        cum[i] += cum[i - 1];
    }
    let estimate: u128 = p1.iter().map(|p| cum[bound - p.len()]).sum();
    if estimate > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { estimate, limit: ENUMERATION_LIMIT });
    }
    let mut out = Vec::with_capacity(estimate as usize);
    for a in &p1 {
        for b in p2.iter().filter(|b| a.len() + b.len() <= bound) {
            out.push(PathPair::new(a.clone(), b.clone()));
        }
    }
    Ok(out)
}

struct Outcome {
    image: Option<PathPair>,
    failure: Option<String>,
    fallback: bool,
    codomain_bad: bool,
    profile_bad: bool,
    census_bad: bool,
    length_bad: bool,
    containment_bad: bool,
    inverse_bad: bool,
    mid_edge: usize,
}

fn examine(inst: &InjectionInstance, pair: &PathPair, check_inverse: bool) -> Outcome {
    let region = inst.region();
    let m = region.m();
    let s = inst.shift();
    let raised = pair.second.shifted(s);
    let containment_bad = raised
        .vertices()
        .iter()
        .any(|v| v.y < region.lo(v.x) + s || v.y > region.hi(v.x) + s);
    let mut out = Outcome {
        image: None,
        failure: None,
        fallback: false,
        codomain_bad: false,
        profile_bad: false,
        census_bad: false,
        length_bad: false,
        containment_bad,
        inverse_bad: false,
        mid_edge: 0,
    };
    match phi_forward(inst, pair) {
        Err(e) => out.failure = Some(e.to_string()),
        Ok((image, trace)) => {
            out.fallback = trace.fallback_used;
            out.codomain_bad = inst.check_codomain(&image).is_err()
                || !path_in_region(region, &image.first)
                || !path_in_region(region, &image.second);
            out.profile_bad = pair_profile(pair, m) != pair_profile(&image, m);
            out.census_bad = pair_census(pair) != pair_census(&image);
            out.length_bad = pair.total_len() != image.total_len();
            out.mid_edge = mid_edge_crossings(&pair.first.suffix(trace.e_index), &trace.zeta.suffix(trace.f_index));
            if check_inverse && !out.codomain_bad {
                out.inverse_bad = !matches!(phi_inverse(inst, &image), Ok(Some(ref back)) if back == pair);
            }
            out.image = Some(image);
        }
    }
    out
}

/// Run the map on every domain pair of total length at most `bound` and audit the results.
pub fn verify_injection(inst: &InjectionInstance, bound: usize) -> Result<InjectionReport> {
    verify_injection_with(inst, bound, true)
}

/// As [`verify_injection`]; `check_inverse = false` skips the (quadratic) inverse round trip.
pub fn verify_injection_with(inst: &InjectionInstance, bound: usize, check_inverse: bool) -> Result<InjectionReport> {
    let region = inst.region();
    let m = region.m();
    let domain = enumerate_pairs(region, (inst.a(), inst.c()), (inst.b(), inst.d()), bound)?;
    let codomain = enumerate_pairs(region, (inst.a(), inst.c_prime()), (inst.b(), inst.d_prime()), bound)?;

    let outcomes: Vec<Outcome> = domain.par_iter().map(|p| examine(inst, p, check_inverse)).collect();

    let mut report = InjectionReport { bound, domain_size: domain.len(), codomain_size: codomain.len(), ..Default::default() };
    let mut seen: HashMap<&PathPair, usize> = HashMap::new();
    for (i, (pair, o)) in domain.iter().zip(&outcomes).enumerate() {
        if let Some(msg) = &o.failure {
            report.construction_failures += 1;
            if report.failure_examples.len() < EXAMPLES {
                report.failure_examples.push(Failure { pair: pair.clone(), error: msg.clone() });
            }
            continue;
        }
        let image = o.image.as_ref().expect("image present without failure");
        if let Some(&j) = seen.get(image) {
            report.duplicates += 1;
            if report.duplicate_examples.len() < EXAMPLES {
                report.duplicate_examples.push(Duplicate {
                    image: image.clone(),
                    first: domain[j].clone(),
                    second: pair.clone(),
                });
            }
        } else {
            seen.insert(image, i);
        }
        report.fallback_count += o.fallback as usize;
        report.codomain_violations += o.codomain_bad as usize;
        report.profile_violations += o.profile_bad as usize;
        report.census_violations += o.census_bad as usize;
        report.length_violations += o.length_bad as usize;
        report.mid_edge_crossings += o.mid_edge;
        if o.inverse_bad {
            report.inverse_failures += 1;
            if report.inverse_failure_examples.len() < EXAMPLES {
                report.inverse_failure_examples.push(pair.clone());
            }
        }
    }
    report.containment_violations = outcomes.iter().filter(|o| o.containment_bad).count();
    report.image_size = seen.len();

    let mut counts: HashMap<ProjectionProfile, (usize, usize)> = HashMap::new();
    for p in &domain {
        counts.entry(pair_profile(p, m)).or_default().0 += 1;
    }
    for p in &codomain {
        counts.entry(pair_profile(p, m)).or_default().1 += 1;
    }
    report.profile_count_violations = counts.values().filter(|(d, c)| d > c).count();

    report.passed = report.duplicates == 0
        && report.codomain_violations == 0
        && report.profile_violations == 0
        && report.census_violations == 0
        && report.length_violations == 0
        && report.containment_violations == 0
        && report.construction_failures == 0
        && report.inverse_failures == 0
        && report.profile_count_violations == 0;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub total: usize,
    /// `sum_{s1 + s2 = total} N_{k+1}(s1) N_{k-1}(s2)`
    #[serde(serialize_with = "crate::scalar::serialize_display")]
    pub lhs: BigUint,
    /// `sum_{s1 + s2 = total} N_k(s1) N_k(s2)`
    #[serde(serialize_with = "crate::scalar::serialize_display")]
    pub rhs: BigUint,
    pub ok: bool,
}

/// Pair counts by total length behind `p(k)^2 >= p(k+1) p(k-1)`, where `N_j(s)` counts paths
/// `(0, origin) -> (m, j)` of `s` steps.
pub fn theorem_count_check(region: &Region, origin: i64, k: i64, bound: usize) -> Vec<CountRow> {
    let m = region.width();
    let unit = region.step_set().vertical_unit();
    let o = LatticePoint::new(0, origin);
    let n = |j: i64| count_free_paths_by_length(region, o, LatticePoint::new(m, j), bound);
    let (up, mid, down) = (n(k + unit), n(k), n(k - unit));
    (0..=bound)
        .map(|total| {
            let mut lhs = BigUint::zero();
            let mut rhs = BigUint::zero();
            for s1 in 0..=total {
                lhs += &up[s1] * &down[total - s1];
                rhs += &mid[s1] * &mid[total - s1];
            }
            let ok = lhs <= rhs;
            CountRow { total, lhs, rhs, ok }
        })
        .collect()
}
