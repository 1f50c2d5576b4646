//! Sign exponents as multilinear polynomials over GF(2) in the interval
//! lengths `|1|, |2|, …`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest usable interval index.
pub const MAX_SLOT: usize = 63;

/// A sum of monomials; each monomial is a bitmask of interval indices and
/// the empty mask is the constant `1`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SignExpr {
    monomials: BTreeSet<u64>,
}

impl SignExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        SignExpr {
            monomials: [0].into(),
        }
    }

    /// The length `|j|` of interval `j` (1-based).
    pub fn var(j: usize) -> Self {
        assert!(
            (1..=MAX_SLOT).contains(&j),
            "interval index {j} out of range"
        );
        SignExpr {
            monomials: [1u64 << j].into(),
        }
    }

    pub fn sum_vars(js: impl IntoIterator<Item = usize>) -> Self {
        js.into_iter()
            .fold(Self::zero(), |acc, j| acc + Self::var(j))
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    fn toggle(&mut self, m: u64) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn mul(&self, other: &SignExpr) -> SignExpr {
        let mut out = SignExpr::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.toggle(a | b);
            }
        }
        out
    }

    /// Simultaneous substitution of variables; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<usize, SignExpr>) -> SignExpr {
        let mut out = SignExpr::zero();
        for &m in &self.monomials {
            let mut t = SignExpr::one();
            for j in bits(m) {
                t = t.mul(map.get(&j).unwrap_or(&SignExpr::var(j)));
            }
            out = out + t;
        }
        out
    }

    /// Parity of the exponent, given the bitmask of odd-length intervals.
    #[inline]
    pub fn eval(&self, odd: u64) -> bool {
        self.monomials.iter().filter(|&&m| m & !odd == 0).count() % 2 == 1
    }

    /// Variables occurring in the expression.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.monomials.iter().flat_map(|&m| bits(m)).collect()
    }

    fn ordered(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.monomials.iter().map(|&m| bits(m).collect()).collect();
        v.sort_by(|a, b| (a.is_empty(), a.len(), a).cmp(&(b.is_empty(), b.len(), b)));
        v
    }
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| m >> b & 1 == 1)
}

impl std::ops::Add for SignExpr {
    type Output = SignExpr;
    fn add(mut self, rhs: SignExpr) -> SignExpr {
        for m in rhs.monomials {
            self.toggle(m);
        }
        self
    }
}

impl From<Vec<Vec<usize>>> for SignExpr {
    fn from(v: Vec<Vec<usize>>) -> Self {
        v.into_iter().fold(SignExpr::zero(), |acc, mono| {
            acc + mono
                .into_iter()
                .fold(SignExpr::one(), |t, j| t.mul(&SignExpr::var(j)))
        })
    }
}

impl From<SignExpr> for Vec<Vec<usize>> {
    fn from(s: SignExpr) -> Self {
        s.ordered()
    }
}

impl fmt::Display for SignExpr {
    /// Canonical text such as `|1| + |2||3| + 1`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, mono) in self.ordered().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "1")?;
            }
            for j in mono {
                write!(f, "|{j}|")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SignExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(j: usize) -> SignExpr {
        SignExpr::var(j)
    }

    #[test]
    fn display_is_canonical() {
        let e = v(3).mul(&v(2)) + SignExpr::one() + v(1);
        assert_eq!(e.to_string(), "|1| + |2||3| + 1");
        assert_eq!(SignExpr::zero().to_string(), "0");
        assert!((v(1) + v(1)).is_zero());
        assert_eq!(v(2).mul(&v(2)), v(2));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let e = v(1).mul(&v(2));
        let map = BTreeMap::from([(1, v(2)), (2, v(1) + SignExpr::one())]);
        assert_eq!(e.substitute(&map), v(1).mul(&v(2)) + v(2));
    }

    #[test]
    fn serde_round_trip() {
        let e = v(3).mul(&v(5)) + v(1) + SignExpr::one();
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, "[[1],[3,5],[]]");
        assert_eq!(serde_json::from_str::<SignExpr>(&text).unwrap(), e);
    }

    fn arb_expr() -> impl Strategy<Value = SignExpr> {
        prop::collection::vec(prop::collection::vec(1usize..8, 0..3), 0..5).prop_map(SignExpr::from)
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(a in arb_expr(), b in arb_expr(), lens in prop::collection::vec(0u32..4, 8)) {
            let odd = lens.iter().enumerate().filter(|(_, l)| *l % 2 == 1).fold(0u64, |m, (j, _)| m | 1 << j);
            prop_assert_eq!((a.clone() + b.clone()).eval(odd), a.eval(odd) ^ b.eval(odd));
            prop_assert_eq!(a.mul(&b).eval(odd), a.eval(odd) & b.eval(odd));
        }
    }
}
