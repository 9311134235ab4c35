//! Exact elements of `Q/Z`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::linalg::{gcd, modn};

/// A reduced fraction `a/b` with `0 ≤ a < b`, read modulo 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZ {
    num: i64,
    den: i64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> QZ {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let a = modn(num, den);
        let g = gcd(a, den).max(1);
        QZ { num: a / g, den: den / g }
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

    /// `k·self`.
    pub fn times(self, k: i64) -> QZ {
        QZ::new(modn(k, self.den) * self.num, self.den)
    }
}

impl Default for QZ {
    fn default() -> Self {
        QZ::ZERO
    }
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, o: QZ) -> QZ {
        let l = self.den / gcd(self.den, o.den) * o.den;
        QZ::new(self.num * (l / self.den) + o.num * (l / o.den), l)
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        QZ::new(-self.num, self.den)
    }
}

impl Sub for QZ {
    type Output = QZ;
    fn sub(self, o: QZ) -> QZ {
        self + (-o)
    }
}

impl Mul<i64> for QZ {
    type Output = QZ;
    fn mul(self, k: i64) -> QZ {
        self.times(k)
    }
}

impl std::iter::Sum for QZ {
    fn sum<I: Iterator<Item = QZ>>(iter: I) -> QZ {
        iter.fold(QZ::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}: expected \"a/b\" with b > 0")]
pub struct ParseQZError(pub String);

impl FromStr for QZ {
    type Err = ParseQZError;
    fn from_str(s: &str) -> Result<QZ, ParseQZError> {
        let err = || ParseQZError(s.to_string());
        let t = s.trim();
        let (a, b) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let a: i64 = a.parse().map_err(|_| err())?;
        let b: i64 = b.parse().map_err(|_| err())?;
        if b <= 0 || b > (1 << 40) || a.unsigned_abs() > (1 << 40) {
            return Err(err());
        }
        Ok(QZ::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_one() {
        let h = QZ::new(1, 2);
        assert_eq!(h + h, QZ::ZERO);
        assert_eq!(QZ::new(1, 3) + QZ::new(1, 6), h);
        assert_eq!(QZ::new(-1, 4), QZ::new(3, 4));
        assert_eq!(QZ::new(5, 4).times(2), h);
        assert_eq!("2/4".parse::<QZ>().unwrap(), h);
        assert_eq!("0".parse::<QZ>().unwrap(), QZ::ZERO);
        assert!("1/0".parse::<QZ>().is_err());
        assert!("x".parse::<QZ>().is_err());
    }
}
