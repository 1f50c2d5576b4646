use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::sign::SignExpr;
use crate::error::{Error, Result};

/// One tensor factor of a term: coordinate `source` (0-based) of the input
/// tuple, preceded by the composite of the face-intervals in `slots`
/// (1-based, increasing).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub source: usize,
    pub slots: Vec<usize>,
}

/// A `(k, ℓ)` pair: the twist `t^k` applied after `ESA_(n,ℓ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub k: usize,
    pub level: usize,
}

/// A face-only summand family: a signed tensor of face-interval composites,
/// summed over all partitions of `[0, m+1)` into `slots` intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalTerm {
    pub n: usize,
    /// Number of intervals, `n + r`.
    pub slots: usize,
    /// Factors in tensor order.
    pub factors: Vec<Factor>,
    pub sign: SignExpr,
    /// Steps that produced the term, in application order.
    #[serde(default)]
    pub origin: Vec<Step>,
}

impl IntervalTerm {
    pub fn degree(&self) -> usize {
        self.slots - self.n
    }

    /// Tensor position of each source coordinate.
    pub(crate) fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, f) in self.factors.iter().enumerate() {
            pos[f.source] = i;
        }
        pos
    }

    /// Checks that sources form a permutation, every interval is used once,
    /// and composed intervals within a factor are not adjacent.
    pub fn check_integrity(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(msg));
        if self.factors.len() != self.n {
            return bad(format!("{} factors for n = {}", self.factors.len(), self.n));
        }
        let sources: BTreeSet<usize> = self.factors.iter().map(|f| f.source).collect();
        if sources != (0..self.n).collect() {
            return bad(format!("sources {sources:?} are not a permutation"));
        }
        let mut used: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| f.slots.iter().copied())
            .collect();
        used.sort_unstable();
        if used != (1..=self.slots).collect::<Vec<_>>() {
            return bad(format!(
                "intervals {used:?} do not cover 1..={}",
                self.slots
            ));
        }
        for f in &self.factors {
            if f.slots.windows(2).any(|w| w[1] <= w[0] + 1) {
                return bad(format!(
                    "factor x_{{{}}} composes adjacent intervals {:?}",
                    f.source + 1,
                    f.slots
                ));
            }
        }
        Ok(())
    }

    /// Ordering key: sources by position, then slots by position.
    pub(crate) fn canonical_key(&self) -> (Vec<usize>, Vec<Vec<usize>>, String) {
        (
            self.factors.iter().map(|f| f.source).collect(),
            self.factors.iter().map(|f| f.slots.clone()).collect(),
            self.sign.to_string(),
        )
    }
}

impl fmt::Display for IntervalTerm {
    /// `(-1)^{…} ∂[a]∂[b]x_{k} ⊗ …` with 1-based sources.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-1)^{{{}}} ", self.sign)?;
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            for s in &fac.slots {
                write!(f, "∂[{s}]")?;
            }
            write!(f, "x_{{{}}}", fac.source + 1)?;
        }
        Ok(())
    }
}

/// A sum of interval terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalFormula {
    pub n: usize,
    pub r: usize,
    /// Whether the input is duplicated by the diagonal before evaluation.
    pub diagonal: bool,
    pub terms: Vec<IntervalTerm>,
}

impl IntervalFormula {
    pub fn empty(n: usize, r: usize) -> Self {
        IntervalFormula {
            n,
            r,
            diagonal: false,
            terms: Vec::new(),
        }
    }

    pub fn sort_canonical(&mut self) {
        self.terms.sort_by_cached_key(IntervalTerm::canonical_key);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("formula serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for IntervalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# n={} r={} intervals={} diagonal={} terms={}",
            self.n,
            self.r,
            self.n + self.r,
            self.diagonal,
            self.terms.len()
        )?;
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}
