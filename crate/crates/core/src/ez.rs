//! Chain-level Eilenberg–Zilber operators and their n-fold composites.
//!
//! Everything here works by brute-force expansion and serves as the reference
//! against which the symbolic formulas are tested.
//!
//! The stage operators act on a mixed basis [`Hybrid`]: a simplex of a
//! cartesian power followed by a tensor tail of single simplices. Stage `s`
//! of the n-fold contraction splits the last tuple coordinate off onto the
//! front of the tail (projection), merges it back (inclusion), or applies the
//! Shih homotopy to the tuple with its last coordinate playing the role of
//! the second factor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{common_repeat, Basis, Differential, FormalSum, ProductSimplex, Tensor};
use crate::contraction::Contraction;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::simplex::Simplex;

/// A `(p, q)`-shuffle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shuffle {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub signature: usize,
}

/// All `(p, q)`-shuffles, with `alpha` in lexicographic order.
pub fn enumerate_shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let mut out = Vec::new();
    let mut alpha = Vec::with_capacity(p);
    fn rec(start: usize, p: usize, q: usize, alpha: &mut Vec<usize>, out: &mut Vec<Shuffle>) {
        if alpha.len() == p {
            let beta: Vec<usize> = (0..p + q).filter(|i| !alpha.contains(i)).collect();
            let signature = alpha.iter().enumerate().map(|(i, a)| a - i).sum();
            out.push(Shuffle {
                alpha: alpha.clone(),
                beta,
                signature,
            });
            return;
        }
        for a in start..p + q {
            if p - alpha.len() > p + q - a {
                break;
            }
            alpha.push(a);
            rec(a + 1, p, q, alpha, out);
            alpha.pop();
        }
    }
    rec(0, p, q, &mut alpha, &mut out);
    out
}

/// A simplex of `K^{×k}` tensored with a tail of simplices of `K`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hybrid {
    pub tuple: Vec<Simplex>,
    pub tail: Vec<Simplex>,
}

impl Hybrid {
    pub fn from_product(t: &ProductSimplex) -> Self {
        Hybrid {
            tuple: t.0.clone(),
            tail: Vec::new(),
        }
    }

    pub fn from_tensor(t: &Tensor) -> Self {
        Hybrid {
            tuple: t.0[..1].to_vec(),
            tail: t.0[1..].to_vec(),
        }
    }

    pub fn into_product(self) -> ProductSimplex {
        debug_assert!(self.tail.is_empty());
        ProductSimplex(self.tuple)
    }

    pub fn into_tensor(self) -> Tensor {
        debug_assert_eq!(self.tuple.len(), 1);
        let mut f = self.tuple;
        f.extend(self.tail);
        Tensor(f)
    }

    fn tuple_dim(&self) -> usize {
        self.tuple[0].dim()
    }
}

impl fmt::Debug for Hybrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", ProductSimplex(self.tuple.clone()))?;
        for z in &self.tail {
            write!(f, " ⊗ {z}")?;
        }
        Ok(())
    }
}

impl Basis for Hybrid {
    fn degree(&self) -> usize {
        self.tuple_dim() + self.tail.iter().map(Simplex::dim).sum::<usize>()
    }
    fn is_degenerate(&self) -> bool {
        common_repeat(&self.tuple) || self.tail.iter().any(Simplex::is_degenerate)
    }
}

impl Differential for Hybrid {
    fn boundary(&self, p: Prime) -> FormalSum<Self> {
        let mut out = FormalSum::zero(p);
        let m = self.tuple_dim();
        if m > 0 {
            for i in 0..=m {
                let tuple = self.tuple.iter().map(|x| x.face_unchecked(i)).collect();
                out.add_term(
                    Hybrid {
                        tuple,
                        tail: self.tail.clone(),
                    },
                    p.sign(i % 2 == 1),
                );
            }
        }
        let mut before = m;
        for (k, z) in self.tail.iter().enumerate() {
            for (face, c) in z.boundary(p).iter() {
                let mut tail = self.tail.clone();
                tail[k] = face.clone();
                out.add_term(
                    Hybrid {
                        tuple: self.tuple.clone(),
                        tail,
                    },
                    p.mul(c, p.sign(before % 2 == 1)),
                );
            }
            before += z.dim();
        }
        out
    }
}

fn truncate_all(xs: &[Simplex], lo: usize, hi: usize) -> Vec<Simplex> {
    xs.iter().map(|x| x.range(lo, hi)).collect()
}

/// Projection of one stage: Alexander–Whitney on (first coordinates, last).
pub fn aw_stage(h: &Hybrid, p: Prime) -> FormalSum<Hybrid> {
    let mut out = FormalSum::zero(p);
    let k = h.tuple.len();
    let m = h.tuple_dim();
    let (front, last) = h.tuple.split_at(k - 1);
    for i in 0..=m {
        let mut tail = Vec::with_capacity(h.tail.len() + 1);
        tail.push(last[0].range(i, m));
        tail.extend(h.tail.iter().cloned());
        out.add_term(
            Hybrid {
                tuple: truncate_all(front, 0, i),
                tail,
            },
            1,
        );
    }
    out
}

/// Inclusion of one stage: Eilenberg–Mac Lane on (tuple, head of tail).
pub fn eml_stage(h: &Hybrid, p: Prime) -> FormalSum<Hybrid> {
    let mut out = FormalSum::zero(p);
    let z = &h.tail[0];
    for sh in enumerate_shuffles(h.tuple_dim(), z.dim()) {
        let mut tuple: Vec<Simplex> = h.tuple.iter().map(|x| x.degenerate_at(&sh.beta)).collect();
        tuple.push(z.degenerate_at(&sh.alpha));
        out.add_term(
            Hybrid {
                tuple,
                tail: h.tail[1..].to_vec(),
            },
            p.sign(sh.signature % 2 == 1),
        );
    }
    out
}

/// The displayed Shih operator on (first coordinates, last coordinate), with
/// sign `(-1)^{m̄ - 1 + sig}`.
pub fn shi_stage(h: &Hybrid, p: Prime) -> FormalSum<Hybrid> {
    let mut out = FormalSum::zero(p);
    let k = h.tuple.len();
    let m = h.tuple_dim();
    let (front, last) = h.tuple.split_at(k - 1);
    let y = last[0].vertices();
    for q in 0..m {
        for pp in 0..m - q {
            let mbar = m - pp - q;
            let truncated = truncate_all(front, 0, m - q);
            let mut yy: Vec<u32> = y[..mbar].to_vec();
            yy.extend_from_slice(&y[m - q..]);
            let yy = Simplex::from_vec(yy);
            for sh in enumerate_shuffles(pp + 1, q) {
                let gx: Vec<usize> = std::iter::once(mbar - 1)
                    .chain(sh.beta.iter().map(|b| b + mbar))
                    .collect();
                let gy: Vec<usize> = sh.alpha.iter().map(|a| a + mbar).collect();
                let mut tuple: Vec<Simplex> =
                    truncated.iter().map(|x| x.degenerate_at(&gx)).collect();
                tuple.push(yy.degenerate_at(&gy));
                out.add_term(
                    Hybrid {
                        tuple,
                        tail: h.tail.clone(),
                    },
                    p.sign((mbar - 1 + sh.signature) % 2 == 1),
                );
            }
        }
    }
    out
}

fn lift(c: &FormalSum<ProductSimplex>) -> FormalSum<Hybrid> {
    c.map_basis(|t| (Hybrid::from_product(t), false))
}

fn lower(c: &FormalSum<Hybrid>) -> FormalSum<ProductSimplex> {
    c.map_basis(|h| (h.clone().into_product(), false))
}

fn stages(
    c: FormalSum<Hybrid>,
    times: usize,
    op: fn(&Hybrid, Prime) -> FormalSum<Hybrid>,
) -> FormalSum<Hybrid> {
    let p = c.prime();
    (0..times).fold(c, |acc, _| acc.map_linear(|h| op(h, p)))
}

fn check_arity(c: &FormalSum<ProductSimplex>, n: usize) -> Result<()> {
    match c.iter().find(|(t, _)| t.0.len() != n) {
        Some((t, _)) => Err(Error::DimensionMismatch {
            expected: n,
            found: t.0.len(),
        }),
        None => Ok(()),
    }
}

/// `AW_(n) = AW_(n,n-1) ⋯ AW_(n,1)`, applied to `n`-tuples.
pub fn aw_n(c: &FormalSum<ProductSimplex>) -> FormalSum<Tensor> {
    let n = c.iter().next().map_or(1, |(t, _)| t.0.len());
    stages(lift(c), n - 1, aw_stage).map_basis(|h| (h.clone().into_tensor(), false))
}

/// `EML_(n) = EML_(n,1) ⋯ EML_(n,n-1)`.
pub fn eml_n(c: &FormalSum<Tensor>) -> FormalSum<ProductSimplex> {
    let n = c.iter().next().map_or(1, |(t, _)| t.0.len());
    let h = c.map_basis(|t| (Hybrid::from_tensor(t), false));
    lower(&stages(h, n - 1, eml_stage))
}

/// `ESA_(n,ℓ) = EML_(n,1)⋯EML_(n,ℓ) SHI_(n,ℓ+1) AW_(n,ℓ)⋯AW_(n,1)`.
pub fn esa(
    n: usize,
    level: usize,
    c: &FormalSum<ProductSimplex>,
) -> Result<FormalSum<ProductSimplex>> {
    if n < 2 || level > n - 2 {
        return Err(Error::LevelOutOfRange { level, factors: n });
    }
    check_arity(c, n)?;
    let p = c.prime();
    let h = stages(lift(c), level, aw_stage).map_linear(|h| shi_stage(h, p));
    Ok(lower(&stages(h, level, eml_stage)))
}

/// `SHI_(n) = Σ_ℓ ESA_(n,ℓ)`.
pub fn shi_n(n: usize, c: &FormalSum<ProductSimplex>) -> Result<FormalSum<ProductSimplex>> {
    let mut out = FormalSum::zero(c.prime());
    for level in 0..=n.saturating_sub(2) {
        out += &esa(n, level, c)?;
    }
    Ok(out)
}

/// Alexander–Whitney on pairs.
pub fn aw(c: &FormalSum<ProductSimplex>) -> Result<FormalSum<Tensor>> {
    check_arity(c, 2)?;
    Ok(aw_n(c))
}

/// Eilenberg–Mac Lane on two-factor tensors.
pub fn eml(c: &FormalSum<Tensor>) -> FormalSum<ProductSimplex> {
    eml_n(c)
}

/// The displayed Shih operator on pairs.
pub fn shi(c: &FormalSum<ProductSimplex>) -> Result<FormalSum<ProductSimplex>> {
    esa(2, 0, c)
}

/// Sign given to the homotopy of a constructed contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopySign {
    /// The Shih operator exactly as displayed; satisfies `dφ + φd = gf - 1`.
    Displayed,
    /// Its negative, satisfying `dφ + φd = 1 - gf`.
    Negated,
}

impl HomotopySign {
    fn apply(self, c: FormalSum<Hybrid>) -> FormalSum<Hybrid> {
        match self {
            HomotopySign::Displayed => c,
            HomotopySign::Negated => -c,
        }
    }
}

/// Stage `s` of the n-fold contraction, on hybrids with `n - s + 1` tuple
/// coordinates.
pub fn stage_contraction(p: Prime, sign: HomotopySign) -> Contraction<Hybrid, Hybrid> {
    Contraction::new(
        p,
        move |h: &Hybrid| aw_stage(h, p),
        move |h: &Hybrid| eml_stage(h, p),
        move |h: &Hybrid| sign.apply(shi_stage(h, p)),
    )
}

/// The n-fold contraction `C(K^{×n}) ⇒ C(K)^{⊗n}` as a composite of stages,
/// in hybrid coordinates.
pub fn ez_n_contraction(n: usize, p: Prime, sign: HomotopySign) -> Contraction<Hybrid, Hybrid> {
    let first = stage_contraction(p, sign);
    (2..n).fold(first, |acc, _| acc.compose(&stage_contraction(p, sign)))
}

/// `(AW, EML, ±SHI)` between `C(K × L)` and `C(K) ⊗ C(L)`.
pub fn ez_contraction(p: Prime, sign: HomotopySign) -> Contraction<ProductSimplex, Tensor> {
    Contraction::new(
        p,
        move |t: &ProductSimplex| aw_n(&FormalSum::basis(p, t.clone())),
        move |t: &Tensor| eml_n(&FormalSum::basis(p, t.clone())),
        move |t: &ProductSimplex| {
            let h = shi_stage(&Hybrid::from_product(t), p);
            lower(&sign.apply(h))
        },
    )
}

/// `AW_(n) t^{k_r} ESA_(n,ℓ_r) ⋯ t^{k_1} ESA_(n,ℓ_1) Δ(x)`, with the pairs
/// given in application order `(k_1, ℓ_1), …, (k_r, ℓ_r)`.
pub fn naive_sequence(
    n: usize,
    steps: &[(usize, usize)],
    x: &Simplex,
    p: Prime,
) -> Result<FormalSum<Tensor>> {
    let mut c = FormalSum::basis(p, ProductSimplex::diagonal(x, n));
    for &(k, level) in steps {
        c = crate::chain::cyclic_t(k, &esa(n, level, &c)?);
    }
    Ok(aw_n(&c))
}

/// `D^n_r(x) = AW_(n) γ_r SHI_(n) ⋯ γ_1 SHI_(n) Δ(x)` with `γ_j = t` for odd
/// `j` and `t + ⋯ + t^{n-1}` for even `j`.
pub fn naive_higher_diagonal(
    n: usize,
    r: usize,
    x: &Simplex,
    p: Prime,
) -> Result<FormalSum<Tensor>> {
    if n < 2 {
        return Err(Error::LevelOutOfRange {
            level: 0,
            factors: n,
        });
    }
    let mut c = FormalSum::basis(p, ProductSimplex::diagonal(x, n));
    for j in 1..=r {
        let s = shi_n(n, &c)?;
        c = if j % 2 == 1 {
            crate::chain::cyclic_t(1, &s)
        } else {
            (1..n).fold(FormalSum::zero(p), |acc, k| {
                acc + crate::chain::cyclic_t(k, &s)
            })
        };
    }
    Ok(aw_n(&c))
}
