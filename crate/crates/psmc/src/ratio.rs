//! Exact nonnegative rationals.
//!
//! Densities, covering ratios and greedy tie-breaks are all compared by
//! cross-multiplication in 128 bits, so no selection ever depends on
//! floating-point rounding.

use std::cmp::Ordering;
use std::fmt;

/// A reduced nonnegative fraction `num/den` with `den >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den != 0, "ratio denominator must be nonzero");
        if num == 0 {
            return Ratio::ZERO;
        }
        let g = gcd(num, den);
        Ratio { num: num / g, den: den / g }
    }

    fn from_u128(num: u128, den: u128) -> Ratio {
        assert!(den != 0, "ratio denominator must be nonzero");
        if num == 0 {
            return Ratio::ZERO;
        }
        let mut a = num;
        let mut b = den;
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        let (num, den) = (num / a, den / a);
        assert!(
            num <= u64::MAX as u128 && den <= u64::MAX as u128,
            "ratio overflow: {num}/{den}"
        );
        Ratio { num: num as u64, den: den as u64 }
    }

    pub fn from_int(v: u64) -> Ratio {
        Ratio { num: v, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self - other`, or `None` if the result would be negative.
    pub fn checked_sub(self, other: Ratio) -> Option<Ratio> {
        let left = self.num as u128 * other.den as u128;
        let right = other.num as u128 * self.den as u128;
        if left < right {
            return None;
        }
        Some(Ratio::from_u128(left - right, self.den as u128 * other.den as u128))
    }

    /// `self - other` clamped at zero.
    pub fn saturating_sub(self, other: Ratio) -> Ratio {
        self.checked_sub(other).unwrap_or(Ratio::ZERO)
    }

    pub fn mul_int(self, k: u64) -> Ratio {
        Ratio::from_u128(self.num as u128 * k as u128, self.den as u128)
    }

    /// `ceil(self * k)`.
    pub fn ceil_mul(self, k: u64) -> u64 {
        let num = self.num as u128 * k as u128;
        let den = self.den as u128;
        num.div_ceil(den) as u64
    }
}

impl std::ops::Add for Ratio {
    type Output = Ratio;

    fn add(self, other: Ratio) -> Ratio {
        let num = self.num as u128 * other.den as u128 + other.num as u128 * self.den as u128;
        Ratio::from_u128(num, self.den as u128 * other.den as u128)
    }
}

impl std::ops::Mul for Ratio {
    type Output = Ratio;

    fn mul(self, other: Ratio) -> Ratio {
        Ratio::from_u128(
            self.num as u128 * other.num as u128,
            self.den as u128 * other.den as u128,
        )
    }
}

/// Panics when dividing by zero.
impl std::ops::Div for Ratio {
    type Output = Ratio;

    fn div(self, other: Ratio) -> Ratio {
        assert!(!other.is_zero(), "division by zero ratio");
        Ratio::from_u128(
            self.num as u128 * other.den as u128,
            self.den as u128 * other.num as u128,
        )
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        let left = self.num as u128 * other.den as u128;
        let right = other.num as u128 * self.den as u128;
        left.cmp(&right)
    }
}

impl fmt::Display for Ratio {
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
    fn reduces_on_construction() {
        let r = Ratio::new(102, 2);
        assert_eq!((r.num(), r.den()), (51, 1));
        assert_eq!(Ratio::new(0, 7), Ratio::ZERO);
    }

    #[test]
    fn ordering_matches_cross_multiplication() {
        assert!(Ratio::new(1, 3) < Ratio::new(1, 2));
        assert!(Ratio::new(2, 7) < Ratio::new(1, 3));
        assert_eq!(Ratio::new(2, 4), Ratio::new(1, 2));
        assert!(Ratio::ZERO < Ratio::new(1, 1000));
    }

    #[test]
    fn ceil_mul_takes_the_tightest_integer() {
        assert_eq!(Ratio::new(1, 2).ceil_mul(10), 5);
        assert_eq!(Ratio::new(2, 3).ceil_mul(3), 2);
        assert_eq!(Ratio::new(3, 4).ceil_mul(8), 6);
        // (1 - 1/4) * (3/4) * 8 = 4.5 rounds up to 5
        let relaxed = Ratio::ONE.checked_sub(Ratio::new(1, 4)).unwrap() * Ratio::new(3, 4);
        assert_eq!(relaxed.ceil_mul(8), 5);
    }

    #[test]
    fn saturating_sub_clamps() {
        assert_eq!(Ratio::new(1, 2).saturating_sub(Ratio::new(3, 4)), Ratio::ZERO);
        assert_eq!(
            Ratio::new(3, 4).saturating_sub(Ratio::new(1, 2)),
            Ratio::new(1, 4)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(Ratio::new(51, 1).to_string(), "51");
        assert_eq!(Ratio::new(2, 3).to_string(), "2/3");
    }
}
