//! Scalar fields used by the symbolic layer.
//!
//! Everything algebraic is written against [`Field`], which is implemented
//! for exact rationals ([`Q`]), for `f64` (the numeric-only layer used by
//! non-crystallographic dihedral systems) and for `Complex64`.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Exact rational numbers.
pub type Q = BigRational;

/// Absolute tolerance below which floating-point coefficients are dropped.
pub const FLOAT_ZERO: f64 = 1e-12;

/// Rounding quantum used to hash floating-point values.
const KEY_SCALE: f64 = 1e8;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Hashable identity of a value (exact for rationals, rounded for floats).
    type Key: Hash + Eq + Clone + Debug + Send + Sync;

    /// True when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    fn from_ratio(p: i64, q: i64) -> Self;

    fn from_rational(x: &Q) -> Self;

    /// Converts a float; exact fields refuse.
    fn from_f64(x: f64) -> Option<Self>;

    fn to_c64(&self) -> Complex64;

    /// Exact zero for exact fields, `|x| < FLOAT_ZERO` otherwise.
    fn negligible(&self) -> bool;

    fn key(&self) -> Self::Key;

    /// Size used for pivot selection.
    fn magnitude(&self) -> f64;

    fn conj(&self) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    /// The exact rational value, when the field is exact.
    fn to_rational(&self) -> Option<Q> {
        None
    }

    /// Exact-or-tolerant equality.
    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).negligible()
    }
}

/// Fields with an order, needed where signs matter (spin-cover rays, pivots).
pub trait OrderedField: Field + PartialOrd {
    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn to_float(&self) -> f64;
}

impl Field for Q {
    type Key = Q;
    const EXACT: bool = true;

    fn from_rational(x: &Q) -> Self {
        x.clone()
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Q::new(BigInt::from(p), BigInt::from(q))
    }

    fn from_f64(_x: f64) -> Option<Self> {
        None
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(ToPrimitive::to_f64(self).unwrap_or(f64::NAN), 0.0)
    }

    fn negligible(&self) -> bool {
        self.is_zero()
    }

    fn key(&self) -> Q {
        self.clone()
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&Signed::abs(self)).unwrap_or(f64::INFINITY)
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
}

impl OrderedField for Q {
    fn to_float(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Field for f64 {
    type Key = i64;
    const EXACT: bool = false;

    fn from_rational(x: &Q) -> Self {
        ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        Some(x)
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn negligible(&self) -> bool {
        f64::abs(*self) < FLOAT_ZERO
    }

    fn key(&self) -> i64 {
        (self * KEY_SCALE).round() as i64
    }

    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }

    fn conj(&self) -> Self {
        *self
    }
}

impl OrderedField for f64 {
    fn to_float(&self) -> f64 {
        *self
    }
}

impl Field for Complex64 {
    type Key = (i64, i64);
    const EXACT: bool = false;

    fn from_rational(x: &Q) -> Self {
        Complex64::new(ToPrimitive::to_f64(x).unwrap_or(f64::NAN), 0.0)
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Complex64::new(p as f64 / q as f64, 0.0)
    }

    fn from_f64(x: f64) -> Option<Self> {
        Some(Complex64::new(x, 0.0))
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn negligible(&self) -> bool {
        self.norm() < FLOAT_ZERO
    }

    fn key(&self) -> (i64, i64) {
        (
            (self.re * KEY_SCALE).round() as i64,
            (self.im * KEY_SCALE).round() as i64,
        )
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

/// Shorthand for building a rational.
pub fn q(p: i64, d: i64) -> Q {
    Q::from_ratio(p, d)
}

/// Serializes a rational as `"p/q"` (or `"p"` for integers).
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"0.5"` into a rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut n: BigInt = digits.parse().ok()?;
        if neg {
            n = -n;
        }
        let d = num::pow(BigInt::from(10), frac.len());
        return Some(Q::new(n, d));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// Float value of any field element (real part).
pub fn to_f64<F: Field>(x: &F) -> f64 {
    x.to_c64().re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip_strings() {
        assert_eq!(q_to_string(&q(3, 6)), "1/2");
        assert_eq!(q_to_string(&q(-4, 2)), "-2");
        assert_eq!(parse_q("-3/9"), Some(q(-1, 3)));
        assert_eq!(parse_q("0.25"), Some(q(1, 4)));
        assert_eq!(parse_q("-1.5"), Some(q(-3, 2)));
        assert_eq!(parse_q("7"), Some(q(7, 1)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn float_keys_absorb_noise() {
        assert_eq!((0.5f64).key(), (0.5 + 1e-13f64).key());
        assert!(1e-13f64.negligible());
        assert!(!q(1, 1_000_000_000).negligible());
    }
}
