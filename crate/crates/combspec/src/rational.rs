//! Minimal exact rational arithmetic for frequency bookkeeping.
//!
//! Periods, coset keys, and kernel membership of rational frequency vectors
//! must be decided exactly over the integers, never by comparing floats to
//! zero. Magnitudes stay desk-scale (continued-fraction convergents, small
//! harmonics), so i64 with overflow panics in debug is adequate.

use serde::{Deserialize, Serialize};
use std::fmt;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b)).abs() * b.abs()
    }
}

/// Reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let sign = if den < 0 { -1 } else { 1 };
        if g == 0 {
            return Rational { num: 0, den: 1 };
        }
        Rational { num: sign * num / g, den: sign * den / g }
    }

    pub fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn add(&self, other: &Rational) -> Rational {
        let l = lcm(self.den, other.den);
        Rational::new(self.num * (l / self.den) + other.num * (l / other.den), l)
    }

    pub fn mul_int(&self, k: i64) -> Rational {
        Rational::new(self.num * k, self.den)
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        Rational::new(self.num * other.num, self.den * other.den)
    }

    pub fn recip(&self) -> Rational {
        assert!(self.num != 0, "reciprocal of zero");
        Rational::new(self.den, self.num)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        let r = Rational::new(4, -6);
        assert_eq!((r.num(), r.den()), (-2, 3));
        assert_eq!(Rational::new(0, -5), Rational::integer(0));
    }

    #[test]
    fn arithmetic() {
        let a = Rational::new(3, 2);
        let b = Rational::new(5, 3);
        assert_eq!(a.add(&b), Rational::new(19, 6));
        assert_eq!(a.mul(&b), Rational::new(5, 2));
        assert_eq!(a.recip(), Rational::new(2, 3));
    }
}
