//! Arithmetic in the prime field `Z_p`.
//!
//! Coefficients are stored as plain residues `0..p`; a [`Prime`] carries the
//! modulus and performs the field operations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A residue class modulo the surrounding [`Prime`].
pub type Coefficient = u32;

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Self> {
        if p < 2
            || (2..p)
                .take_while(|d| d * d <= p)
                .any(|d| p.is_multiple_of(d))
        {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> Coefficient {
        x.rem_euclid(self.0 as i64) as Coefficient
    }

    #[inline]
    pub fn add(self, a: Coefficient, b: Coefficient) -> Coefficient {
        ((a as u64 + b as u64) % self.0 as u64) as Coefficient
    }

    #[inline]
    pub fn sub(self, a: Coefficient, b: Coefficient) -> Coefficient {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: Coefficient) -> Coefficient {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: Coefficient, b: Coefficient) -> Coefficient {
        ((a as u64 * b as u64) % self.0 as u64) as Coefficient
    }

    pub fn pow(self, mut base: Coefficient, mut exp: u64) -> Coefficient {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Coefficient) -> Option<Coefficient> {
        let a = a % self.0;
        (a != 0).then(|| self.pow(a, (self.0 - 2) as u64))
    }

    /// `(-1)^e` as a residue.
    #[inline]
    pub fn sign(self, odd: bool) -> Coefficient {
        if odd {
            self.neg(1 % self.0)
        } else {
            1 % self.0
        }
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new(0), Err(Error::NotPrime(0)));
    }

    #[test]
    fn minus_one_is_p_minus_one() {
        let p = Prime::new(7).unwrap();
        assert_eq!(p.reduce(-1), 6);
        assert_eq!(p.sign(true), 6);
        assert_eq!(p.sign(false), 1);
        assert_eq!(Prime::TWO.sign(true), 1);
    }

    #[test]
    fn inverses() {
        let p = Prime::new(11).unwrap();
        for a in 1..11 {
            assert_eq!(p.mul(a, p.inv(a).unwrap()), 1);
        }
        assert_eq!(p.inv(0), None);
    }
}
