//! Exact rational thresholds in `[0, 1]`.

use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Always stored in lowest terms, so structural equality is value equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Threshold {
    num: u64,
    den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("threshold {num}/{den} is greater than 1")]
    AboveOne { num: u64, den: u64 },
    #[error("cannot parse threshold {0:?}; expected \"a/b\" or an integer 0 or 1")]
    Syntax(String),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Threshold {
    pub const ZERO: Threshold = Threshold { num: 0, den: 1 };
    pub const HALF: Threshold = Threshold { num: 1, den: 2 };
    pub const ONE: Threshold = Threshold { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, ThresholdError> {
        if den == 0 {
            return Err(ThresholdError::ZeroDenominator);
        }
        if num > den {
            return Err(ThresholdError::AboveOne { num, den });
        }
        let g = gcd(num, den).max(1);
        Ok(Threshold {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    fn scaled(self, count: usize, size: usize) -> (u128, u128) {
        (
            count as u128 * self.den as u128,
            size as u128 * self.num as u128,
        )
    }

    /// `count > self · size`
    pub fn count_gt(self, count: usize, size: usize) -> bool {
        let (l, r) = self.scaled(count, size);
        l > r
    }

    /// `count ≥ self · size`
    pub fn count_ge(self, count: usize, size: usize) -> bool {
        let (l, r) = self.scaled(count, size);
        l >= r
    }

    /// `count < self · size`
    pub fn count_lt(self, count: usize, size: usize) -> bool {
        let (l, r) = self.scaled(count, size);
        l < r
    }

    /// `count ≤ self · size`
    pub fn count_le(self, count: usize, size: usize) -> bool {
        let (l, r) = self.scaled(count, size);
        l <= r
    }

    /// `count = self · size`
    pub fn count_eq(self, count: usize, size: usize) -> bool {
        let (l, r) = self.scaled(count, size);
        l == r
    }

    pub fn cmp_half(self) -> std::cmp::Ordering {
        (2 * self.num).cmp(&self.den)
    }
}

impl PartialOrd for Threshold {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Threshold {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Threshold {
    type Err = ThresholdError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || ThresholdError::Syntax(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a = a.trim().parse().map_err(|_| syntax())?;
                let b = b.trim().parse().map_err(|_| syntax())?;
                Threshold::new(a, b)
            }
            None => Threshold::new(s.parse().map_err(|_| syntax())?, 1),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(Threshold::new(2, 4).unwrap(), Threshold::HALF);
        assert_eq!(Threshold::new(0, 5).unwrap(), Threshold::ZERO);
        assert_eq!(Threshold::new(3, 3).unwrap(), Threshold::ONE);
    }

    #[test]
    fn rejects_bad_values() {
        assert_eq!(Threshold::new(1, 0), Err(ThresholdError::ZeroDenominator));
        assert!(matches!(
            Threshold::new(3, 2),
            Err(ThresholdError::AboveOne { .. })
        ));
        assert!("x/2".parse::<Threshold>().is_err());
        assert!("2".parse::<Threshold>().is_err());
    }

    #[test]
    fn parse_and_display() {
        let t: Threshold = " 2/5 ".parse().unwrap();
        assert_eq!(t.to_string(), "2/5");
        assert_eq!("1".parse::<Threshold>().unwrap(), Threshold::ONE);
    }

    #[test]
    fn comparisons_are_exact() {
        let q = Threshold::new(2, 5).unwrap();
        // 2 > 0.4 * 4 but 2 is not < 0.4 * 5
        assert!(q.count_gt(2, 4));
        assert!(!q.count_lt(2, 5));
        assert!(q.count_eq(2, 5));
        assert!(q.count_le(2, 5));
        assert!(Threshold::HALF.count_ge(2, 4));
        assert!(!Threshold::HALF.count_gt(2, 4));
    }

    #[test]
    fn ordering() {
        let a = Threshold::new(1, 3).unwrap();
        let b = Threshold::new(2, 5).unwrap();
        assert!(a < b && b < Threshold::HALF);
        assert_eq!(b.cmp_half(), std::cmp::Ordering::Less);
    }
}
