//! Chronological loop erasure and the key intersection of two paths.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{LatticePath, LatticePoint, PointSet};

/// Vertex indices of `path` that survive loop erasure, in order.
///
/// Walking the path, each vertex is pushed; revisiting a vertex still on the stack pops the
/// loop above it. The index kept for a surviving vertex is the visit whose incoming edge survives.
pub fn loop_erase_indices(path: &LatticePath) -> Vec<usize> {
    let verts = path.vertices();
    let mut stack: Vec<usize> = Vec::new();
    let mut pos: HashMap<LatticePoint, usize> = HashMap::new();
    for (i, v) in verts.iter().enumerate() {
        if let Some(&depth) = pos.get(v) {
            for j in stack.drain(depth + 1..) {
                pos.remove(&verts[j]);
            }
        } else {
            pos.insert(*v, stack.len());
            stack.push(i);
        }
    }
    stack
}

/// The self-avoiding path left after erasing loops in the order they close.
pub fn loop_erase(path: &LatticePath) -> LatticePath {
    let verts = path.vertices();
    let kept: Vec<LatticePoint> = loop_erase_indices(path).into_iter().map(|i| verts[i]).collect();
    LatticePath::from_vertices(&kept).expect("consecutive surviving vertices are adjacent")
}

/// Occurrence indices `(i1, i2)` of the key intersection of `gamma1` and `gamma2`.
///
/// The vertex is the first one along `LE(gamma1)` that `gamma2` visits (and that lies in `mask`,
/// when given). On `gamma1` the surviving visit is used, on `gamma2` the first visit.
pub fn key_intersection(
    gamma1: &LatticePath,
    gamma2: &LatticePath,
    mask: Option<&PointSet>,
) -> Result<(usize, usize)> {
    let v1 = gamma1.vertices();
    let mut first2: HashMap<LatticePoint, usize> = HashMap::new();
    for (i, v) in gamma2.vertices().into_iter().enumerate() {
        first2.entry(v).or_insert(i);
    }
    loop_erase_indices(gamma1)
        .into_iter()
        .find_map(|i| {
            let x = v1[i];
            if mask.is_some_and(|m| !m.contains(x)) {
                return None;
            }
            first2.get(&x).map(|&j| (i, j))
        })
        .ok_or(Error::NoIntersection)
}

/// Exchange the futures of the two paths after their key intersection.
pub fn fomin_swap(
    gamma1: &LatticePath,
    gamma2: &LatticePath,
    mask: Option<&PointSet>,
) -> Result<(LatticePath, LatticePath)> {
    let (i, j) = key_intersection(gamma1, gamma2, mask)?;
    Ok(swap_at(gamma1, i, gamma2, j))
}

/// `gamma1[..i] + gamma2[j..]` and `gamma2[..j] + gamma1[i..]`; the two cut vertices must coincide.
pub fn swap_at(gamma1: &LatticePath, i: usize, gamma2: &LatticePath, j: usize) -> (LatticePath, LatticePath) {
    let mut s1 = gamma1.steps[..i].to_vec();
    s1.extend_from_slice(&gamma2.steps[j..]);
    let mut s2 = gamma2.steps[..j].to_vec();
    s2.extend_from_slice(&gamma1.steps[i..]);
    (LatticePath::new(gamma1.start, s1), LatticePath::new(gamma2.start, s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Step::{D, L, R, U};
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn path(v: &[(i64, i64)]) -> LatticePath {
        LatticePath::from_vertices(&v.iter().map(|&(x, y)| p(x, y)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn erasure_examples() {
        let simple = path(&[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(loop_erase(&simple), simple);
        let back = path(&[(0, 0), (0, 1), (0, 0), (0, 1), (0, 2)]);
        assert_eq!(loop_erase(&back), path(&[(0, 0), (0, 1), (0, 2)]));
        let square = path(&[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (1, 0)]);
        assert_eq!(loop_erase(&square), path(&[(0, 0), (1, 0)]));
        assert_eq!(loop_erase(&LatticePath::empty(p(3, 3))), LatticePath::empty(p(3, 3)));
    }

    #[test]
    fn key_intersection_examples() {
        let g1 = path(&[(0, 0), (1, 0)]);
        let g2 = path(&[(1, 1), (1, 0), (2, 0)]);
        assert_eq!(key_intersection(&g1, &g2, None).unwrap(), (1, 1));
        let (a, b) = fomin_swap(&g1, &g2, None).unwrap();
        assert_eq!(a, path(&[(0, 0), (1, 0), (2, 0)]));
        assert_eq!(b, path(&[(1, 1), (1, 0)]));
        let far = path(&[(5, 5), (5, 6)]);
        assert_eq!(key_intersection(&g1, &far, None).unwrap_err(), Error::NoIntersection);
        let mask: PointSet = [p(0, 0)].into_iter().collect();
        assert_eq!(key_intersection(&g1, &g2, Some(&mask)).unwrap_err(), Error::NoIntersection);
    }

    #[test]
    fn surviving_visit_can_be_the_second() {
        // X = (1,0) is first visited inside the loop W=(0,0) -> X -> (1,1) -> (0,1) -> W,
        // which erasure removes; the later visit W -> X survives.
        let g1 = LatticePath::new(p(0, 0), vec![R, U, L, D, R, R]);
        assert_eq!(loop_erase_indices(&g1), vec![0, 5, 6]);
        let g2 = path(&[(1, -1), (1, 0)]);
        assert_eq!(key_intersection(&g1, &g2, None).unwrap(), (5, 1));
    }

    fn arb_walk() -> impl Strategy<Value = LatticePath> {
        prop::collection::vec(prop::sample::select(vec![R, L, U, D]), 0..20).prop_map(|s| LatticePath::new(p(0, 0), s))
    }

    proptest! {
        #[test]
        fn erasure_is_idempotent_and_keeps_endpoints(w in arb_walk()) {
            let le = loop_erase(&w);
            prop_assert_eq!(loop_erase(&le), le.clone());
            prop_assert_eq!(le.start, w.start);
            prop_assert_eq!(le.end(), w.end());
            let verts = le.vertices();
            let uniq: std::collections::HashSet<_> = verts.iter().collect();
            prop_assert_eq!(uniq.len(), verts.len());
            // subsequence of the input's vertices
            let mut it = w.vertices().into_iter();
            prop_assert!(verts.iter().all(|v| it.any(|u| u == *v)));
        }

        #[test]
        fn swap_preserves_total_length(a in arb_walk(), b in arb_walk()) {
            if let Ok((x, y)) = fomin_swap(&a, &b, None) {
                prop_assert_eq!(x.len() + y.len(), a.len() + b.len());
                prop_assert_eq!(x.end(), b.end());
                prop_assert_eq!(y.end(), a.end());
            }
        }
    }
}
