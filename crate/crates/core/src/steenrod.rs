//! Cup-i products, Steenrod squares and reduced powers at cochain level,
//! evaluated through the face-only higher diagonals.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::{cyclic_tensor, differential, Cochain, Differential, FormalSum, Tensor};
use crate::error::{Error, Result};
use crate::field::{Coefficient, Prime};
use crate::simplex::{Simplex, SimplicialComplex};
use crate::simplifier::{FormulaCache, IntervalFormula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OperationKind {
    /// `Sq^i`, over `Z_2`.
    Square { i: usize },
    /// `P^k`, over `Z_p` with `p` odd.
    Power { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationRequest {
    pub prime: Prime,
    pub kind: OperationKind,
    /// Source degree `q`.
    pub degree: usize,
}

impl OperationRequest {
    pub fn validate(&self) -> Result<()> {
        let (p, q) = (self.prime.get(), self.degree);
        match self.kind {
            OperationKind::Square { i } => {
                if p != 2 {
                    return Err(Error::InvalidRequest(format!(
                        "Sq^{i} needs p = 2, got {p}"
                    )));
                }
                if i > q {
                    return Err(Error::InvalidRequest(format!(
                        "Sq^{i} on degree {q}: need i <= q"
                    )));
                }
            }
            OperationKind::Power { k } => {
                if p == 2 {
                    return Err(Error::InvalidRequest(format!("P^{k} needs an odd prime")));
                }
                if q < 2 * k {
                    return Err(Error::InvalidRequest(format!(
                        "P^{k} on degree {q}: need q >= 2k"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn target_degree(&self) -> usize {
        match self.kind {
            OperationKind::Square { i } => self.degree + i,
            OperationKind::Power { k } => self.degree + 2 * k * (self.prime.get() as usize - 1),
        }
    }
}

/// The constant `R` in front of the cochain-level `P^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationConstant(pub Coefficient);

impl NormalizationConstant {
    /// `R = (−1)^{(p−1)(k + q(q−1)/2)} · ((p−1)/2)!^{2k−q} mod p`, with a
    /// negative exponent read as a power of the inverse.
    pub fn new(p: Prime, k: usize, q: usize) -> Self {
        let pp = p.get() as usize;
        let odd = (pp - 1) * (k + q * q.saturating_sub(1) / 2) % 2 == 1;
        let half = (1..=(pp - 1) / 2).fold(1, |acc, v| p.mul(acc, v as Coefficient));
        let e = 2 * k as i64 - q as i64;
        let base = if e >= 0 {
            half
        } else {
            p.inv(half).expect("(p-1)/2)! is a unit mod p")
        };
        NormalizationConstant(p.mul(p.sign(odd), p.pow(base, e.unsigned_abs())))
    }
}

/// `μ(c_1 ⊗ … ⊗ c_n)` on a tensor chain: the product of the factor values,
/// taken on tensors whose factor dimensions match the cochain degrees.
pub fn evaluate_tensor(cochains: &[&Cochain], t: &FormalSum<Tensor>) -> Coefficient {
    let p = t.prime();
    t.iter()
        .filter(|(b, _)| {
            b.factors().len() == cochains.len()
                && b.factors()
                    .iter()
                    .zip(cochains)
                    .all(|(x, c)| x.dim() == c.degree())
        })
        .fold(0, |acc, (b, v)| {
            let prod = b
                .factors()
                .iter()
                .zip(cochains)
                .fold(v, |m, (x, c)| p.mul(m, c.value(x)));
            p.add(acc, prod)
        })
}

fn check_primes(cs: &[&Cochain]) -> Result<Prime> {
    let p = cs[0].prime();
    match cs.iter().find(|c| c.prime() != p) {
        Some(c) => Err(Error::InvalidRequest(format!(
            "cochains over Z_{p} and Z_{}",
            c.prime()
        ))),
        None => Ok(p),
    }
}

/// `μ(c_1 ⊗ … ⊗ c_n) D^n_r` on every simplex of `k` of the matching degree.
fn evaluate_diagonal(
    k: &SimplicialComplex,
    cochains: &[&Cochain],
    formula: &IntervalFormula,
    degree: usize,
) -> Result<Cochain> {
    let p = check_primes(cochains)?;
    Ok(Cochain::from_values(
        degree,
        p,
        k.simplices(degree).iter().map(|x| {
            (
                x.clone(),
                evaluate_tensor(cochains, &formula.evaluate(x, p)),
            )
        }),
    ))
}

/// `c ⌣_i c' = μ(c ⊗ c') D^2_i`, of degree `a + b − i`.
pub fn cup_i(
    k: &SimplicialComplex,
    c: &Cochain,
    c2: &Cochain,
    i: usize,
    cache: &FormulaCache,
) -> Result<Cochain> {
    let p = check_primes(&[c, c2])?;
    let total = c.degree() + c2.degree();
    if i > total {
        return Err(Error::DegreeMismatch {
            expected: total,
            found: i,
        });
    }
    if i > c.degree().min(c2.degree()) {
        return Ok(Cochain::zero(total - i, p));
    }
    evaluate_diagonal(k, &[c, c2], &*cache.get(2, i)?, total - i)
}

/// The front-face/back-face cup product, computed directly.
pub fn cup_product(k: &SimplicialComplex, c: &Cochain, c2: &Cochain) -> Result<Cochain> {
    let p = check_primes(&[c, c2])?;
    let (a, b) = (c.degree(), c2.degree());
    Ok(Cochain::from_values(
        a + b,
        p,
        k.simplices(a + b).iter().map(|x| {
            let front = x.range(0, a);
            let back = x.range(a, a + b);
            (x.clone(), p.mul(c.value(&front), c2.value(&back)))
        }),
    ))
}

/// Cochain-level `Sq^i c = c ⌣_{q−i} c` over `Z_2`.
pub fn square_cochain(
    k: &SimplicialComplex,
    c: &Cochain,
    i: usize,
    cache: &FormulaCache,
) -> Result<Cochain> {
    OperationRequest {
        prime: c.prime(),
        kind: OperationKind::Square { i },
        degree: c.degree(),
    }
    .validate()?;
    cup_i(k, c, c, c.degree() - i, cache)
}

/// Cochain-level `P^k c = R μ c^{⊗p} D^p_{(q−2k)(p−1)}`.
pub fn power_cochain(
    k: &SimplicialComplex,
    c: &Cochain,
    kk: usize,
    cache: &FormulaCache,
) -> Result<Cochain> {
    let req = OperationRequest {
        prime: c.prime(),
        kind: OperationKind::Power { k: kk },
        degree: c.degree(),
    };
    req.validate()?;
    let p = c.prime();
    let n = p.get() as usize;
    let q = c.degree();
    let r = (q - 2 * kk) * (n - 1);
    let factors = vec![c; n];
    let raw = evaluate_diagonal(k, &factors, &*cache.get(n, r)?, req.target_degree())?;
    Ok(raw.scaled(NormalizationConstant::new(p, kk, q).0))
}

/// `D^n_r` as an operator on chains, together with `D^n_{r−1}` for the
/// recurrence.
#[derive(Clone, Debug)]
pub struct HigherDiagonal {
    pub n: usize,
    pub r: usize,
    formula: Arc<IntervalFormula>,
    previous: Option<Arc<IntervalFormula>>,
}

impl HigherDiagonal {
    pub fn new(n: usize, r: usize, cache: &FormulaCache) -> Result<Self> {
        Ok(HigherDiagonal {
            n,
            r,
            formula: cache.get(n, r)?,
            previous: if r == 0 {
                None
            } else {
                Some(cache.get(n, r - 1)?)
            },
        })
    }

    pub fn formula(&self) -> &IntervalFormula {
        &self.formula
    }

    pub fn evaluate(&self, x: &Simplex, p: Prime) -> FormalSum<Tensor> {
        self.formula.evaluate(x, p)
    }

    pub fn evaluate_chain(&self, c: &FormalSum<Simplex>) -> FormalSum<Tensor> {
        self.formula.evaluate_chain(c)
    }

    /// `α_r`: `T − 1` for odd `r`, `1 + T + … + T^{n−1}` for even `r`.
    pub fn alpha(&self, t: &FormalSum<Tensor>) -> FormalSum<Tensor> {
        alpha(self.n, self.r, t)
    }

    /// `d D_r(x) + (−1)^{r−1} D_r(dx) − α_r D_{r−1}(x)`; for `r = 0` the
    /// chain-map defect `d D_0(x) − D_0(dx)`.
    pub fn recurrence_defect(&self, x: &Simplex, p: Prime) -> FormalSum<Tensor> {
        let d_of = differential(&self.evaluate(x, p));
        let of_d = self.evaluate_chain(&x.boundary(p));
        match &self.previous {
            None => d_of - of_d,
            Some(prev) => {
                let lhs = if self.r % 2 == 1 {
                    d_of + of_d
                } else {
                    d_of - of_d
                };
                lhs - self.alpha(&prev.evaluate(x, p))
            }
        }
    }

    pub fn recurrence_holds(&self, x: &Simplex, p: Prime) -> bool {
        self.recurrence_defect(x, p).is_zero()
    }
}

/// `α_r` on `n`-fold tensors.
pub fn alpha(n: usize, r: usize, t: &FormalSum<Tensor>) -> FormalSum<Tensor> {
    if r % 2 == 1 {
        cyclic_tensor(1, t) - t.clone()
    } else {
        (0..n).fold(FormalSum::zero(t.prime()), |acc, k| {
            acc + cyclic_tensor(k, t)
        })
    }
}
