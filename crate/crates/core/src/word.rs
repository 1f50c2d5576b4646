//! Words in face and degeneracy operators, and their normal form.
//!
//! Words are written as compositions: the rightmost symbol acts first. The
//! normal form is `s_{j_t}…s_{j_1} ∂_{i_1}…∂_{i_s}` with `j_t > … > j_1` and
//! `i_1 < … < i_s`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::Simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    Face(usize),
    Degeneracy(usize),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Face(i) => write!(f, "∂_{i}"),
            Symbol::Degeneracy(j) => write!(f, "s_{j}"),
        }
    }
}

/// An arbitrary word, stored left to right as written.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RawWord(pub Vec<Symbol>);

/// A word in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorWord {
    /// `j_t, …, j_1` as written, strictly decreasing.
    degeneracies: Vec<usize>,
    /// `i_1, …, i_s` as written, strictly increasing.
    faces: Vec<usize>,
}

/// Result of normalizing a raw word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub word: OperatorWord,
    /// Number of `∂_j s_j = ∂_{j+1} s_j = 1` cancellations performed.
    pub cancellations: usize,
}

impl RawWord {
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions `k` where the pair `(w[k], w[k+1])` can be rewritten.
    pub fn redexes(&self) -> Vec<usize> {
        (0..self.0.len().saturating_sub(1))
            .filter(|&k| rewrite_pair(self.0[k], self.0[k + 1]).is_some())
            .collect()
    }

    /// Rewrites the pair at `k`; `None` if that pair is already in order.
    /// The flag reports a cancellation.
    pub fn rewrite_at(&self, k: usize) -> Option<(RawWord, bool)> {
        let (a, b) = (*self.0.get(k)?, *self.0.get(k + 1)?);
        let replacement = rewrite_pair(a, b)?;
        let cancelled = replacement.is_empty();
        let mut out = Vec::with_capacity(self.0.len());
        out.extend_from_slice(&self.0[..k]);
        out.extend(replacement);
        out.extend_from_slice(&self.0[k + 2..]);
        Some((RawWord(out), cancelled))
    }

    /// Normalizes by always rewriting the leftmost redex.
    pub fn normalize(&self) -> Normalization {
        self.normalize_by(|redexes| redexes[0])
    }

    /// Normalizes with a caller-chosen redex at each step. `pick` receives the
    /// current redex positions and returns one of them.
    pub fn normalize_by(&self, mut pick: impl FnMut(&[usize]) -> usize) -> Normalization {
        let mut word = self.clone();
        let mut cancellations = 0;
        loop {
            let redexes = word.redexes();
            if redexes.is_empty() {
                break;
            }
            let k = pick(&redexes);
            let (next, cancelled) = word.rewrite_at(k).expect("picked a redex");
            cancellations += cancelled as usize;
            word = next;
        }
        let mut degeneracies = Vec::new();
        let mut faces = Vec::new();
        for s in word.0 {
            match s {
                Symbol::Degeneracy(j) => degeneracies.push(j),
                Symbol::Face(i) => faces.push(i),
            }
        }
        Normalization {
            word: OperatorWord {
                degeneracies,
                faces,
            },
            cancellations,
        }
    }

    /// Applies the word, rightmost symbol first.
    pub fn apply(&self, x: &Simplex) -> Result<Simplex> {
        self.0.iter().rev().try_fold(x.clone(), |y, s| match *s {
            Symbol::Face(i) => y.face(i),
            Symbol::Degeneracy(j) => y.degeneracy(j),
        })
    }
}

fn rewrite_pair(a: Symbol, b: Symbol) -> Option<Vec<Symbol>> {
    use Symbol::{Degeneracy as S, Face as D};
    match (a, b) {
        (D(i), D(j)) if i >= j => Some(vec![D(j), D(i + 1)]),
        (S(i), S(j)) if i <= j => Some(vec![S(j + 1), S(i)]),
        (D(i), S(j)) if i < j => Some(vec![S(j - 1), D(i)]),
        (D(i), S(j)) if i == j || i == j + 1 => Some(vec![]),
        (D(i), S(j)) => Some(vec![S(j), D(i - 1)]),
        _ => None,
    }
}

/// Shorthand for [`RawWord::normalize`].
pub fn normalize_word(raw: &RawWord) -> OperatorWord {
    raw.normalize().word
}

impl OperatorWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    pub fn faces(&self) -> &[usize] {
        &self.faces
    }

    pub fn is_identity(&self) -> bool {
        self.degeneracies.is_empty() && self.faces.is_empty()
    }

    pub fn to_raw(&self) -> RawWord {
        RawWord(
            self.degeneracies
                .iter()
                .map(|&j| Symbol::Degeneracy(j))
                .chain(self.faces.iter().map(|&i| Symbol::Face(i)))
                .collect(),
        )
    }

    pub fn apply(&self, x: &Simplex) -> Result<Simplex> {
        self.to_raw().apply(x)
    }
}

impl FromStr for RawWord {
    type Err = Error;

    /// Accepts symbols such as `∂_2`, `d2`, `s_{10}`, `s0`, optionally separated
    /// by whitespace, commas or `·`.
    fn from_str(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            let face = match c {
                c if c.is_whitespace() || c == ',' || c == '·' => continue,
                '∂' | 'd' => true,
                's' => false,
                other => return Err(Error::MalformedSymbol(other.to_string())),
            };
            let mut token = c.to_string();
            if chars.peek() == Some(&'_') {
                token.push(chars.next().unwrap());
            }
            let braced = chars.peek() == Some(&'{');
            if braced {
                token.push(chars.next().unwrap());
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                digits.push(d);
                chars.next();
            }
            token.push_str(&digits);
            if braced {
                match chars.next() {
                    Some('}') => token.push('}'),
                    _ => return Err(Error::MalformedSymbol(token)),
                }
            }
            let index: usize = digits.parse().map_err(|_| Error::MalformedSymbol(token))?;
            out.push(if face {
                Symbol::Face(index)
            } else {
                Symbol::Degeneracy(index)
            });
        }
        Ok(RawWord(out))
    }
}

impl fmt::Display for RawWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_raw().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> RawWord {
        s.parse().unwrap()
    }

    fn simplex(dim: usize) -> Simplex {
        Simplex::new((0..=dim as u32).collect()).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normalize_word(&w("∂_2∂_1")).to_raw(), w("∂_1∂_3"));
        assert!(normalize_word(&w("∂_0 s_0")).is_identity());
        assert!(normalize_word(&w("∂_1 s_0")).is_identity());
        assert_eq!(normalize_word(&w("s_0s_0")).to_raw(), w("s_1s_0"));
        assert_eq!(normalize_word(&w("d0 s1")).to_raw(), w("s0 d0"));
    }

    #[test]
    fn application() {
        let x = Simplex::new(vec![0, 1, 2]).unwrap();
        assert_eq!(w("∂_1").apply(&x).unwrap().vertices(), &[0, 2]);
        let e = Simplex::new(vec![0, 1]).unwrap();
        assert_eq!(w("s_0").apply(&e).unwrap().vertices(), &[0, 0, 1]);
        let n = normalize_word(&w("∂_0 s_1"));
        assert_eq!(n.apply(&e).unwrap().vertices(), &[1, 1]);
        assert!(w("∂_3").apply(&x).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(
            w("s_{12}∂_3").0,
            vec![Symbol::Degeneracy(12), Symbol::Face(3)]
        );
        assert_eq!(w("").0, vec![]);
        assert!("x1".parse::<RawWord>().is_err());
        assert!("s_".parse::<RawWord>().is_err());
        assert!("s_{1".parse::<RawWord>().is_err());
        assert_eq!(w(&w("d3 s0 s2").to_string()), w("d3 s0 s2"));
    }

    #[test]
    fn simplicial_identities() {
        for dim in 1..=6usize {
            let x = simplex(dim);
            let eq = |a: &str, b: &str| {
                assert_eq!(
                    w(a).apply(&x).unwrap(),
                    w(b).apply(&x).unwrap(),
                    "{a} vs {b}"
                );
            };
            for j in 0..=dim {
                for i in (0..j).filter(|_| dim >= 2) {
                    eq(&format!("d{i} d{j}"), &format!("d{} d{i}", j - 1));
                }
                for i in 0..=j {
                    eq(&format!("s{i} s{j}"), &format!("s{} s{i}", j + 1));
                }
                for i in 0..j {
                    eq(&format!("d{i} s{j}"), &format!("s{} d{i}", j - 1));
                }
                eq(&format!("d{j} s{j}"), "");
                eq(&format!("d{} s{j}", j + 1), "");
                for i in j + 2..=dim + 1 {
                    eq(&format!("d{i} s{j}"), &format!("s{j} d{}", i - 1));
                }
            }
        }
    }

    /// A random word that is applicable to a simplex of dimension `dim`.
    fn applicable_word(dim: usize, choices: &[(bool, usize)]) -> RawWord {
        let mut cur = dim;
        let mut rev = Vec::new();
        for &(face, idx) in choices {
            if face && cur > 0 {
                rev.push(Symbol::Face(idx % (cur + 1)));
                cur -= 1;
            } else {
                rev.push(Symbol::Degeneracy(idx % (cur + 1)));
                cur += 1;
            }
        }
        rev.reverse();
        RawWord(rev)
    }

    proptest! {
        #[test]
        fn normal_form_agrees_and_is_unique(
            dim in 0usize..=6,
            choices in prop::collection::vec((any::<bool>(), 0usize..16), 0..=8),
            seeds in prop::collection::vec(any::<usize>(), 64),
        ) {
            let raw = applicable_word(dim, &choices);
            let x = simplex(dim);
            let lhs = raw.apply(&x).unwrap();
            let norm = raw.normalize();
            prop_assert_eq!(norm.word.apply(&x).unwrap(), lhs);
            prop_assert_eq!(norm.word.to_raw().normalize().word, norm.word.clone());

            let mut it = seeds.iter().cycle();
            let other = raw.normalize_by(|r| r[*it.next().unwrap() % r.len()]);
            prop_assert_eq!(&other.word, &norm.word);

            let s_count = raw.0.iter().filter(|s| matches!(s, Symbol::Degeneracy(_))).count();
            prop_assert_eq!(norm.word.degeneracies().len(), s_count - norm.cancellations);
            prop_assert!(norm.word.degeneracies().windows(2).all(|p| p[0] > p[1]));
            prop_assert!(norm.word.faces().windows(2).all(|p| p[0] < p[1]));
        }
    }
}
