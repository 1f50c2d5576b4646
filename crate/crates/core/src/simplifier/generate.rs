//! Symbolic composition of an interval term with `t^k` and `ESA_(n,ℓ)`, and
//! generation of face-only formulas for the higher diagonals.
//!
//! Coordinates are 0-based here: coordinate `c` is `x_{c+1}`. For level `ℓ`
//! the split coordinates are `x_{n+1-u}` for `u = 1..=ℓ` (index `n - u`) and
//! the pivot coordinate is `x_{n-ℓ}` (index `n - ℓ - 1`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sign::{SignExpr, MAX_SLOT};
use super::term::{Factor, IntervalFormula, IntervalTerm, Step};
use crate::error::{Error, Result};

/// `AW_(n)` as a single term: factor `j` is `∂[j] x_j`.
pub fn seed_awn(n: usize) -> IntervalTerm {
    IntervalTerm {
        n,
        slots: n,
        factors: (0..n)
            .map(|c| Factor {
                source: c,
                slots: vec![c + 1],
            })
            .collect(),
        sign: SignExpr::zero(),
        origin: Vec::new(),
    }
}

/// `h · t^k`.
pub fn twist(h: &IntervalTerm, k: usize) -> IntervalTerm {
    let mut out = h.clone();
    for f in &mut out.factors {
        f.source = (f.source + k) % h.n;
    }
    out
}

/// Why every summand of `h · ESA_(n,ℓ)` is degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegeneracyReason {
    /// A coordinate is preceded by no interval.
    MissingInterval { coordinate: usize },
    /// A split coordinate is preceded by more than one interval.
    SplitComposite { coordinate: usize },
    /// The pivot coordinate holds the largest interval among the kept ones.
    PivotHoldsLast,
    /// Two intervals of one coordinate become adjacent once the split
    /// intervals between them are removed.
    AdjacentAfterSplit {
        coordinate: usize,
        lower: usize,
        upper: usize,
    },
}

impl fmt::Display for DegeneracyReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingInterval { coordinate } => {
                write!(f, "x_{{{}}} has no face-interval", coordinate + 1)
            }
            Self::SplitComposite { coordinate } => {
                write!(
                    f,
                    "split factor x_{{{}}} has several face-intervals",
                    coordinate + 1
                )
            }
            Self::PivotHoldsLast => write!(f, "pivot factor holds the last kept face-interval"),
            Self::AdjacentAfterSplit {
                coordinate,
                lower,
                upper,
            } => write!(
                f,
                "∂[{lower}]∂[{upper}] of x_{{{}}} become adjacent",
                coordinate + 1
            ),
        }
    }
}

fn check_level(h: &IntervalTerm, level: usize) -> Result<()> {
    if h.n < 2 || level > h.n - 2 {
        return Err(Error::LevelOutOfRange {
            level,
            factors: h.n,
        });
    }
    Ok(())
}

/// The first condition forcing all summands of `h · ESA_(n,ℓ)` to be
/// degenerate, if any.
pub fn degeneracy_reason(h: &IntervalTerm, level: usize) -> Result<Option<DegeneracyReason>> {
    check_level(h, level)?;
    let n = h.n;
    let pos = h.positions();
    let slots = |c: usize| &h.factors[pos[c]].slots;
    if let Some(c) = (0..n).find(|&c| slots(c).is_empty()) {
        return Ok(Some(DegeneracyReason::MissingInterval { coordinate: c }));
    }
    let split: Vec<usize> = (1..=level).map(|u| n - u).collect();
    if let Some(&c) = split.iter().find(|&&c| slots(c).len() > 1) {
        return Ok(Some(DegeneracyReason::SplitComposite { coordinate: c }));
    }
    let pivot = n - level - 1;
    let kept_max = (0..=pivot).flat_map(|c| slots(c).iter().copied()).max();
    if slots(pivot).last().copied() == kept_max {
        return Ok(Some(DegeneracyReason::PivotHoldsLast));
    }
    let split_slots: BTreeSet<usize> = split.iter().map(|&c| slots(c)[0]).collect();
    for c in 0..n {
        for w in slots(c).windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a > 1 && (a + 1..b).all(|s| split_slots.contains(&s)) {
                return Ok(Some(DegeneracyReason::AdjacentAfterSplit {
                    coordinate: c,
                    lower: a,
                    upper: b,
                }));
            }
        }
    }
    Ok(None)
}

/// Whether all summands of `h · ESA_(n,ℓ)` are degenerate.
pub fn is_all_degenerate(h: &IntervalTerm, level: usize) -> Result<bool> {
    degeneracy_reason(h, level).map(|r| r.is_some())
}

/// The face-only term equal to `h · ESA_(n,ℓ)`.
///
/// Intervals of the kept coordinates are renumbered consecutively; the pivot
/// coordinate gains interval `N - ℓ + 1` and split coordinate `x_{n+1-u}`
/// becomes `∂[N + 2 - u]`, where `N` is the current number of intervals.
///
/// The sign is rewritten by substituting the old lengths in terms of the new
/// ones. The pivot's old last interval `v` absorbs the new interval, so
/// `|v| ↦ |v| + |N-ℓ+1| + 1`. Each split interval moves past the intervals
/// that followed it, contributing `|N+2-u|·(Σ lengths after it)`. The shuffle
/// and Shih signs contribute `(|1| + ⋯ + |v|) + (|v+1| + ⋯ + |N-ℓ|)|N-ℓ+1|`.
pub fn simplify_step(h: &IntervalTerm, level: usize) -> Result<IntervalTerm> {
    if let Some(reason) = degeneracy_reason(h, level)? {
        return Err(Error::DegenerateInput {
            level,
            reason: reason.to_string(),
        });
    }
    let (n, big_n) = (h.n, h.slots);
    if big_n + 1 > MAX_SLOT {
        return Err(Error::InvalidRequest(format!(
            "more than {MAX_SLOT} face-intervals are not supported"
        )));
    }
    let pos = h.positions();
    let pivot = n - level - 1;
    let split_old: Vec<usize> = (1..=level)
        .map(|u| h.factors[pos[n - u]].slots[0])
        .collect();

    let mut kept: Vec<usize> = (0..=pivot)
        .flat_map(|c| h.factors[pos[c]].slots.iter().copied())
        .collect();
    kept.sort_unstable();
    let renumber: BTreeMap<usize, usize> =
        kept.iter().enumerate().map(|(i, &s)| (s, i + 1)).collect();
    let pivot_last_old = *h.factors[pos[pivot]].slots.last().expect("nonempty");
    let v = renumber[&pivot_last_old];
    let absorbed = big_n - level + 1;

    let mut out = h.clone();
    for &c in &pos[..=pivot] {
        let f = &mut out.factors[c];
        f.slots = f.slots.iter().map(|s| renumber[s]).collect();
    }
    out.factors[pos[pivot]].slots.push(absorbed);
    for u in 1..=level {
        out.factors[pos[n - u]].slots = vec![big_n + 2 - u];
    }

    let mut subst: BTreeMap<usize, SignExpr> = renumber
        .iter()
        .map(|(&old, &new)| (old, SignExpr::var(new)))
        .collect();
    subst.insert(
        pivot_last_old,
        SignExpr::var(v) + SignExpr::var(absorbed) + SignExpr::one(),
    );
    for (u, &j) in (1..).zip(&split_old) {
        subst.insert(j, SignExpr::var(big_n + 2 - u));
    }
    let mut sign = h.sign.substitute(&subst);
    let mut removed = BTreeSet::new();
    for (u, &j) in (1..).zip(&split_old) {
        removed.insert(j);
        let after = (j + 1..=big_n)
            .filter(|s| !removed.contains(s))
            .fold(SignExpr::zero(), |acc, s| acc + subst[&s].clone());
        sign = sign + SignExpr::var(big_n + 2 - u).mul(&after);
    }
    sign = sign
        + SignExpr::sum_vars(1..=v)
        + SignExpr::sum_vars(v + 1..=big_n - level).mul(&SignExpr::var(absorbed));

    out.slots = big_n + 1;
    out.sign = sign;
    Ok(out)
}

/// Twists available after the `i`-th Shih operator (1-based from the right):
/// `γ_i = t` for odd `i` and `t + ⋯ + t^{n-1}` for even `i`.
pub fn gamma_twists(n: usize, i: usize) -> Vec<usize> {
    if i % 2 == 1 {
        vec![1]
    } else {
        (1..n).collect()
    }
}

/// Sequences `(k_i, ℓ_i)`, `i = 1..=r`, in lexicographic order, restricted to
/// `k_i + ℓ_i < n`.
pub fn admissible_sequences(n: usize, r: usize) -> Vec<Vec<Step>> {
    let mut out = vec![Vec::new()];
    for i in 1..=r {
        let mut next = Vec::new();
        for prefix in &out {
            for k in gamma_twists(n, i) {
                for level in 0..=n - 2 {
                    if k + level < n {
                        let mut s = prefix.clone();
                        s.push(Step { k, level });
                        next.push(s);
                    }
                }
            }
        }
        out = next;
    }
    out
}

/// `AW_(n) t^{k_r} ESA_(n,ℓ_r) ⋯ t^{k_1} ESA_(n,ℓ_1)` as a single term, or
/// `None` when all its summands are degenerate.
pub fn compose_sequence(n: usize, steps: &[Step]) -> Result<Option<IntervalTerm>> {
    let mut h = seed_awn(n);
    for step in steps.iter().rev() {
        h = twist(&h, step.k);
        if is_all_degenerate(&h, step.level)? {
            return Ok(None);
        }
        h = simplify_step(&h, step.level)?;
    }
    h.origin = steps.to_vec();
    Ok(Some(h))
}

/// Face-only formula for `D^n_r = AW_(n) γ_r SHI_(n) ⋯ γ_1 SHI_(n) Δ`.
pub fn generate_dnr(n: usize, r: usize) -> Result<IntervalFormula> {
    if n < 2 {
        return Err(Error::InvalidRequest(format!(
            "higher diagonals need n ≥ 2, got {n}"
        )));
    }
    if n + r > MAX_SLOT {
        return Err(Error::InvalidRequest(format!(
            "n + r = {} exceeds the supported {MAX_SLOT} face-intervals",
            n + r
        )));
    }
    let terms: Vec<IntervalTerm> = admissible_sequences(n, r)
        .par_iter()
        .map(|steps| compose_sequence(n, steps))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut formula = IntervalFormula {
        n,
        r,
        diagonal: true,
        terms,
    };
    formula.sort_canonical();
    Ok(formula)
}
