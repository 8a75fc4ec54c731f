//! The prime field with three elements.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// An element of GF(3), stored as its canonical residue in `{0, 1, 2}`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct Gf3(u8);

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    pub const TWO: Gf3 = Gf3(2);

    /// Reduces an arbitrary integer modulo 3.
    pub const fn new(value: i64) -> Gf3 {
        Gf3(value.rem_euclid(3) as u8)
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; `None` for zero. Both units are involutions.
    #[inline]
    pub const fn inverse(self) -> Option<Gf3> {
        match self.0 {
            0 => None,
            v => Some(Gf3(v)),
        }
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub const fn sign(odd: bool) -> Gf3 {
        if odd {
            Gf3::TWO
        } else {
            Gf3::ONE
        }
    }
}

impl From<Gf3> for u8 {
    fn from(x: Gf3) -> u8 {
        x.0
    }
}

impl TryFrom<u8> for Gf3 {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        if v < 3 {
            Ok(Gf3(v))
        } else {
            Err(format!("{v} is not a residue mod 3"))
        }
    }
}

impl fmt::Debug for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    #[inline]
    fn add(self, rhs: Gf3) -> Gf3 {
        let s = self.0 + rhs.0;
        Gf3(if s >= 3 { s - 3 } else { s })
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    #[inline]
    fn sub(self, rhs: Gf3) -> Gf3 {
        self + (-rhs)
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    #[inline]
    fn neg(self) -> Gf3 {
        Gf3(if self.0 == 0 { 0 } else { 3 - self.0 })
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    #[inline]
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl AddAssign for Gf3 {
    fn add_assign(&mut self, rhs: Gf3) {
        *self = *self + rhs;
    }
}

impl SubAssign for Gf3 {
    fn sub_assign(&mut self, rhs: Gf3) {
        *self = *self - rhs;
    }
}

impl MulAssign for Gf3 {
    fn mul_assign(&mut self, rhs: Gf3) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_tables() {
        let all = [Gf3::ZERO, Gf3::ONE, Gf3::TWO];
        for a in all {
            for b in all {
                assert_eq!((a + b).value() as i64, (a.value() as i64 + b.value() as i64) % 3);
                assert_eq!((a * b).value() as i64, (a.value() as i64 * b.value() as i64) % 3);
                assert_eq!(a - b + b, a);
            }
            if let Some(inv) = a.inverse() {
                assert_eq!(a * inv, Gf3::ONE);
            }
        }
        assert_eq!(Gf3::ZERO.inverse(), None);
        assert_eq!(Gf3::new(-1), Gf3::TWO);
        assert_eq!(Gf3::new(7), Gf3::ONE);
    }
}
