use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{path_in_region, LatticePath, LatticePoint, Region};

/// JSON form of the six boundary heights: `{"a": 1, "b": 1, "c": 2, "d": 0, "r": 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub r: i64,
}

/// A region with `A = (0,a)`, `B = (0,b)` on `alpha` and `C = (m,c)`, `C' = (m,c-r)`,
/// `D' = (m,d+r)`, `D = (m,d)` on `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionInstance {
    region: Region,
    spec: InstanceSpec,
}

impl InjectionInstance {
    pub fn new(region: Region, spec: InstanceSpec) -> Result<Self> {
        let InstanceSpec { a, b, c, d, r } = spec;
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if region.m() == 0 {
            return bad("region must have width at least 1".into());
        }
        if r <= 0 {
            return bad(format!("r = {r} must be positive"));
        }
        let unit = region.step_set().vertical_unit();
        for (name, v) in [("a - b", a - b), ("c - d", c - d), ("r", r)] {
            if v % unit != 0 {
                return bad(format!("{name} = {v} is not a multiple of {unit}"));
            }
        }
        if a - b > c - d - r {
            return bad(format!("need a - b <= c - d - r, got {} > {}", a - b, c - d - r));
        }
        if c - d - r < 0 {
            return bad(format!("shift c - d - r = {} must be nonnegative", c - d - r));
        }
        let inst = Self { region, spec };
        for (name, p) in [("A", inst.a()), ("B", inst.b()), ("C", inst.c()), ("C'", inst.c_prime()), ("D", inst.d()), ("D'", inst.d_prime())] {
            if !inst.region.contains(p) {
                return bad(format!("{name} = {p} lies outside the region"));
            }
        }
        Ok(inst)
    }

    /// The instance behind a single log-concavity comparison: `A = B = (0, o)`, `C = (m, k+1)`, `D = (m, k-1)`.
    pub fn theorem(region: Region, origin: i64, k: i64) -> Result<Self> {
        let unit = region.step_set().vertical_unit();
        Self::new(region, InstanceSpec { a: origin, b: origin, c: k + unit, d: k - unit, r: unit })
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn spec(&self) -> InstanceSpec {
        self.spec
    }

    fn m(&self) -> i64 {
        self.region.width()
    }

    pub fn a(&self) -> LatticePoint {
        LatticePoint::new(0, self.spec.a)
    }

    pub fn b(&self) -> LatticePoint {
        LatticePoint::new(0, self.spec.b)
    }

    pub fn c(&self) -> LatticePoint {
        LatticePoint::new(self.m(), self.spec.c)
    }

    pub fn c_prime(&self) -> LatticePoint {
        LatticePoint::new(self.m(), self.spec.c - self.spec.r)
    }

    pub fn d(&self) -> LatticePoint {
        LatticePoint::new(self.m(), self.spec.d)
    }

    pub fn d_prime(&self) -> LatticePoint {
        LatticePoint::new(self.m(), self.spec.d + self.spec.r)
    }

    /// `l = b + c - d - r`.
    pub fn ell(&self) -> i64 {
        self.spec.b + self.shift()
    }

    pub fn b_prime(&self) -> LatticePoint {
        LatticePoint::new(0, self.ell())
    }

    /// Vertical distance `l - b` between the two paths' frames.
    pub fn shift(&self) -> i64 {
        self.spec.c - self.spec.d - self.spec.r
    }

    /// Check that `pair` is a domain pair `(A -> C, B -> D)` inside the region.
    pub fn check_domain(&self, pair: &PathPair) -> Result<()> {
        self.check_pair(pair, self.c(), self.d())
    }

    /// Check that `pair` is a codomain pair `(A -> C', B -> D')` inside the region.
    pub fn check_codomain(&self, pair: &PathPair) -> Result<()> {
        self.check_pair(pair, self.c_prime(), self.d_prime())
    }

    fn check_pair(&self, pair: &PathPair, c: LatticePoint, d: LatticePoint) -> Result<()> {
        for (name, path, from, to) in [("first", &pair.first, self.a(), c), ("second", &pair.second, self.b(), d)] {
            self.region.check_steps(path)?;
            if path.start != from || path.end() != to {
                return Err(Error::InvalidInstance(format!(
                    "{name} path runs {} -> {}, expected {from} -> {to}",
                    path.start,
                    path.end()
                )));
            }
            if !path_in_region(&self.region, path) {
                return Err(Error::InvalidInstance(format!("{name} path leaves the region")));
            }
        }
        Ok(())
    }
}

/// `(xi_AC, xi_BD)` in the domain or `(xi_AC', xi_BD')` in the codomain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathPair {
    pub first: LatticePath,
    pub second: LatticePath,
}

impl PathPair {
    pub fn new(first: LatticePath, second: LatticePath) -> Self {
        Self { first, second }
    }

    pub fn total_len(&self) -> usize {
        self.first.len() + self.second.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::StepSet;

    #[test]
    fn derived_points() {
        let r = Region::rectangle(2, 0, 3).unwrap();
        let i = InjectionInstance::new(r, InstanceSpec { a: 1, b: 1, c: 3, d: 0, r: 1 }).unwrap();
        assert_eq!(i.ell(), 3);
        assert_eq!(i.shift(), 2);
        assert_eq!(i.c_prime(), LatticePoint::new(2, 2));
        assert_eq!(i.d_prime(), LatticePoint::new(2, 1));
    }

    #[test]
    fn rejects_bad_instances() {
        let r = Region::rectangle(2, 0, 2).unwrap();
        let mk = |a, b, c, d, rr| InjectionInstance::new(r.clone(), InstanceSpec { a, b, c, d, r: rr });
        assert!(mk(0, 0, 2, 0, 0).is_err());
        assert!(mk(2, 0, 2, 0, 1).is_err());
        assert!(mk(0, 0, 3, 0, 1).is_err());
        assert!(mk(0, 0, 1, 1, 1).is_err());
        let dyck = Region::new(vec![(-1, 1), (-2, 2), (-1, 1)], StepSet::Dyck).unwrap();
        assert!(InjectionInstance::new(dyck, InstanceSpec { a: 0, b: 0, c: 1, d: -1, r: 1 }).is_err());
    }
}
