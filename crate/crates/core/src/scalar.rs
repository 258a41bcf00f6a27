//! Scalar abstraction shared by the solvers.
//!
//! Everything numeric in the walker is written against [`Scalar`], so the same
//! code runs over exact rationals (for audits) and over `f64`/`f32` (for value
//! iteration, truncated strips and Monte Carlo comparisons).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Field-like scalar used by the exit solvers.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Rescale a row of a linear system in place without changing its solution set.
    ///
    /// Exact scalars clear denominators and divide out the row content so the
    /// elimination stays fraction free; floats equilibrate by the largest magnitude.
    fn normalize_row(row: &mut [Self]);

    /// Lossy conversion used for reporting.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Build `num/den` exactly where possible.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits") / Self::from_i64(den).expect("integer fits")
    }

    /// Convert an exact rational (rounding for floats).
    fn from_rational(q: &BigRational) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn normalize_row(row: &mut [Self]) {
        let scale = row.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if scale > 0.0 && scale.is_finite() {
            row.iter_mut().for_each(|x| *x /= scale);
        }
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }

    fn normalize_row(row: &mut [Self]) {
        let scale = row.iter().fold(0.0_f32, |m, x| m.max(x.abs()));
        if scale > 0.0 && scale.is_finite() {
            row.iter_mut().for_each(|x| *x /= scale);
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn normalize_row(row: &mut [Self]) {
        let mut lcm = BigInt::one();
        for x in row.iter().filter(|x| !x.is_zero()) {
            lcm = lcm.lcm(x.denom());
        }
        let mut content = BigInt::zero();
        for x in row.iter_mut() {
            if x.is_zero() {
                continue;
            }
            let scaled = x.numer() * (&lcm / x.denom());
            content = content.gcd(&scaled);
            *x = BigRational::from_integer(scaled);
        }
        if !content.is_zero() && !content.is_one() {
            for x in row.iter_mut().filter(|x| !x.is_zero()) {
                *x = BigRational::from_integer(x.numer() / &content);
            }
        }
    }
}

/// Exact rational in canonical `num/den` form (`"4/15"`, `"1"`, `"0"`).
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Parse `"num/den"`, `"num"` or a finite decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| bad())
}

/// Serialize any `Display` value (big integers, rationals) as a JSON string.
pub fn serialize_display<T: Display, S: serde::Serializer>(v: &T, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(v)
}
