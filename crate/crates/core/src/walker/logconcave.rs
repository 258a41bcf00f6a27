use std::collections::BTreeMap;
use std::ops::Mul;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation<T> {
    pub k: i64,
    /// `v(k)^2`
    pub square: T,
    /// `v(k + stride) * v(k - stride)`
    pub neighbours: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogConcavityReport<T> {
    pub stride: i64,
    pub violations: Vec<Violation<T>>,
    /// Number of interior positions compared.
    pub checked: usize,
    pub passed: bool,
}

impl<T> LogConcavityReport<T> {
    pub fn map<U>(self, f: impl Fn(T) -> U) -> LogConcavityReport<U> {
        LogConcavityReport {
            stride: self.stride,
            violations: self
                .violations
                .into_iter()
                .map(|v| Violation { k: v.k, square: f(v.square), neighbours: f(v.neighbours) })
                .collect(),
            checked: self.checked,
            passed: self.passed,
        }
    }
}

/// Compare `v[i]^2` with `v[i-1] * v[i+1]` for consecutive entries.
///
/// Entries are taken to sit at `k = i * stride`; the comparison is exact for exact types.
pub fn log_concavity_check<T>(values: &[T], stride: i64) -> LogConcavityReport<T>
where
    T: Clone + PartialOrd + Mul<Output = T>,
{
    let mut violations = Vec::new();
    let mut checked = 0;
    for (i, w) in values.windows(3).enumerate() {
        checked += 1;
        let square = w[1].clone() * w[1].clone();
        let neighbours = w[0].clone() * w[2].clone();
        if square < neighbours {
            violations.push(Violation { k: (i as i64 + 1) * stride, square, neighbours });
        }
    }
    let passed = violations.is_empty();
    LogConcavityReport { stride, violations, checked, passed }
}

/// The same check on a keyed table: every `k` with both `k +- stride` present is compared.
pub fn log_concavity_check_map<T>(values: &BTreeMap<i64, T>, stride: i64) -> LogConcavityReport<T>
where
    T: Clone + PartialOrd + Mul<Output = T>,
{
    let mut violations = Vec::new();
    let mut checked = 0;
    for (&k, v) in values {
        let (Some(lo), Some(hi)) = (values.get(&(k - stride)), values.get(&(k + stride))) else {
            continue;
        };
        checked += 1;
        let square = v.clone() * v.clone();
        let neighbours = lo.clone() * hi.clone();
        if square < neighbours {
            violations.push(Violation { k, square, neighbours });
        }
    }
    let passed = violations.is_empty();
    LogConcavityReport { stride, violations, checked, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sequences() {
        assert!(log_concavity_check(&[1, 3, 5, 3, 1], 1).passed);
        let r = log_concavity_check(&[1, 2, 5], 1);
        assert_eq!(r.violations, vec![Violation { k: 1, square: 4, neighbours: 5 }]);
        let r = log_concavity_check(&[1, 0, 1], 1);
        assert!(!r.passed);
        assert!(log_concavity_check(&[0, 0, 0], 1).passed);
        assert_eq!(log_concavity_check::<i32>(&[], 1).checked, 0);
    }

    #[test]
    fn keyed_table_with_stride_two() {
        let t: BTreeMap<i64, u32> = [(-2, 1), (0, 4), (2, 1)].into_iter().collect();
        let r = log_concavity_check_map(&t, 2);
        assert!(r.passed);
        assert_eq!(r.checked, 1);
        let t: BTreeMap<i64, u32> = [(-2, 3), (0, 1), (2, 1)].into_iter().collect();
        assert_eq!(log_concavity_check_map(&t, 2).violations[0].k, 0);
    }
}
