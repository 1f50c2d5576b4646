//! Normalized chains with `Z_p` coefficients, tensor products and cochains.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Coefficient, Prime};
use crate::simplex::{Simplex, SimplicialComplex};

/// A basis element of a normalized chain complex.
pub trait Basis: Clone + Ord + Hash + Debug + Send + Sync {
    fn degree(&self) -> usize;
    /// Degenerate elements are zero in the normalized complex.
    fn is_degenerate(&self) -> bool;
}

/// Basis types carrying a differential.
pub trait Differential: Basis {
    fn boundary(&self, p: Prime) -> FormalSum<Self>;
}

/// A finite `Z_p`-linear combination of nondegenerate basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSum<B: Basis> {
    prime: Prime,
    terms: BTreeMap<B, Coefficient>,
}

impl<B: Basis> FormalSum<B> {
    pub fn zero(prime: Prime) -> Self {
        FormalSum {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(prime: Prime, b: B) -> Self {
        let mut s = Self::zero(prime);
        s.add_term(b, 1);
        s
    }

    pub fn from_terms(prime: Prime, terms: impl IntoIterator<Item = (B, Coefficient)>) -> Self {
        let mut s = Self::zero(prime);
        for (b, c) in terms {
            s.add_term(b, c);
        }
        s
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    /// Adds `c·b`; degenerate `b` and zero results are dropped.
    pub fn add_term(&mut self, b: B, c: Coefficient) {
        let c = c % self.prime.get();
        if c == 0 || b.is_degenerate() {
            return;
        }
        let p = self.prime;
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = p.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Adds `c·other`.
    pub fn add_scaled(&mut self, other: &FormalSum<B>, c: Coefficient) {
        for (b, v) in &other.terms {
            self.add_term(b.clone(), self.prime.mul(*v, c));
        }
    }

    pub fn scaled(&self, c: Coefficient) -> Self {
        let mut out = Self::zero(self.prime);
        out.add_scaled(self, c);
        out
    }

    pub fn coefficient(&self, b: &B) -> Coefficient {
        self.terms.get(b).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, Coefficient)> {
        self.terms.iter().map(|(b, c)| (b, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Basis::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Extends `f` linearly.
    pub fn map_linear<C: Basis>(&self, f: impl Fn(&B) -> FormalSum<C>) -> FormalSum<C> {
        let mut out = FormalSum::zero(self.prime);
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), *c);
        }
        out
    }

    /// Relabels basis elements; a degenerate image is dropped.
    pub fn map_basis<C: Basis>(&self, f: impl Fn(&B) -> (C, bool)) -> FormalSum<C> {
        let mut out = FormalSum::zero(self.prime);
        for (b, c) in &self.terms {
            let (img, negate) = f(b);
            out.add_term(img, if negate { self.prime.neg(*c) } else { *c });
        }
        out
    }
}

impl<B: Basis> Debug for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{b:?}")?;
        }
        Ok(())
    }
}

impl<B: Basis> AddAssign<&FormalSum<B>> for FormalSum<B> {
    fn add_assign(&mut self, rhs: &FormalSum<B>) {
        self.add_scaled(rhs, 1);
    }
}

impl<B: Basis> Add for FormalSum<B> {
    type Output = FormalSum<B>;
    fn add(mut self, rhs: FormalSum<B>) -> FormalSum<B> {
        self += &rhs;
        self
    }
}

impl<B: Basis> Sub for FormalSum<B> {
    type Output = FormalSum<B>;
    fn sub(mut self, rhs: FormalSum<B>) -> FormalSum<B> {
        let m = self.prime.neg(1);
        self.add_scaled(&rhs, m);
        self
    }
}

impl<B: Basis> Neg for FormalSum<B> {
    type Output = FormalSum<B>;
    fn neg(self) -> FormalSum<B> {
        let m = self.prime.neg(1);
        self.scaled(m)
    }
}

/// `d` extended linearly.
pub fn differential<B: Differential>(c: &FormalSum<B>) -> FormalSum<B> {
    let p = c.prime();
    c.map_linear(|b| b.boundary(p))
}

impl Basis for Simplex {
    fn degree(&self) -> usize {
        self.dim()
    }
    fn is_degenerate(&self) -> bool {
        Simplex::is_degenerate(self)
    }
}

impl Differential for Simplex {
    fn boundary(&self, p: Prime) -> FormalSum<Self> {
        let mut out = FormalSum::zero(p);
        if self.dim() == 0 {
            return out;
        }
        for i in 0..=self.dim() {
            out.add_term(self.face_unchecked(i), p.sign(i % 2 == 1));
        }
        out
    }
}

/// A simplex of a cartesian power: coordinates of equal dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductSimplex(pub Vec<Simplex>);

impl ProductSimplex {
    pub fn new(coords: Vec<Simplex>) -> Result<Self> {
        let d = coords.first().map(Simplex::dim).unwrap_or(0);
        if let Some(bad) = coords.iter().find(|x| x.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        Ok(ProductSimplex(coords))
    }

    /// The diagonal `(x, …, x)`.
    pub fn diagonal(x: &Simplex, n: usize) -> Self {
        ProductSimplex(vec![x.clone(); n])
    }

    pub fn coords(&self) -> &[Simplex] {
        &self.0
    }

    /// `t^k`: coordinate `j` of the result is coordinate `j + k mod n`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.0.len();
        ProductSimplex((0..n).map(|j| self.0[(j + k) % n].clone()).collect())
    }
}

pub(crate) fn common_repeat(coords: &[Simplex]) -> bool {
    let Some(first) = coords.first() else {
        return false;
    };
    first.repeats().any(|i| {
        coords[1..]
            .iter()
            .all(|x| x.vertices()[i] == x.vertices()[i + 1])
    })
}

impl Debug for ProductSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Basis for ProductSimplex {
    fn degree(&self) -> usize {
        self.0.first().map_or(0, Simplex::dim)
    }
    fn is_degenerate(&self) -> bool {
        common_repeat(&self.0)
    }
}

impl Differential for ProductSimplex {
    fn boundary(&self, p: Prime) -> FormalSum<Self> {
        let mut out = FormalSum::zero(p);
        let m = self.degree();
        if m == 0 {
            return out;
        }
        for i in 0..=m {
            let face = ProductSimplex(self.0.iter().map(|x| x.face_unchecked(i)).collect());
            out.add_term(face, p.sign(i % 2 == 1));
        }
        out
    }
}

/// A tensor product of simplices; zero if any factor is degenerate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor(pub Vec<Simplex>);

impl Tensor {
    pub fn factors(&self) -> &[Simplex] {
        &self.0
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.0.iter().map(Simplex::dim).collect()
    }

    /// `T`: moves the first factor to the end, with its Koszul sign.
    pub fn cyclic(&self) -> (Tensor, bool) {
        let mut f = self.0.clone();
        if f.is_empty() {
            return (self.clone(), false);
        }
        let first = f.remove(0);
        let rest: usize = f.iter().map(Simplex::dim).sum();
        let odd = first.dim() * rest % 2 == 1;
        f.push(first);
        (Tensor(f), odd)
    }
}

impl Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Basis for Tensor {
    fn degree(&self) -> usize {
        self.0.iter().map(Simplex::dim).sum()
    }
    fn is_degenerate(&self) -> bool {
        self.0.iter().any(Simplex::is_degenerate)
    }
}

impl Differential for Tensor {
    /// Koszul rule: `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`, iterated.
    fn boundary(&self, p: Prime) -> FormalSum<Self> {
        let mut out = FormalSum::zero(p);
        let mut before = 0;
        for (k, x) in self.0.iter().enumerate() {
            for (face, c) in x.boundary(p).iter() {
                let mut f = self.0.clone();
                f[k] = face.clone();
                out.add_term(Tensor(f), p.mul(c, p.sign(before % 2 == 1)));
            }
            before += x.dim();
        }
        out
    }
}

/// `t^k` on product chains.
pub fn cyclic_t(k: usize, c: &FormalSum<ProductSimplex>) -> FormalSum<ProductSimplex> {
    c.map_basis(|b| (b.rotate(k), false))
}

/// `T^k` on tensor chains.
pub fn cyclic_tensor(k: usize, c: &FormalSum<Tensor>) -> FormalSum<Tensor> {
    c.map_basis(|b| {
        let mut t = b.clone();
        let mut odd = false;
        for _ in 0..k {
            let (next, o) = t.cyclic();
            t = next;
            odd ^= o;
        }
        (t, odd)
    })
}

/// A `q`-cochain: a finitely supported function on nondegenerate
/// `q`-simplices.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    prime: Prime,
    values: BTreeMap<Simplex, Coefficient>,
}

impl Cochain {
    pub fn zero(degree: usize, prime: Prime) -> Self {
        Cochain {
            degree,
            prime,
            values: BTreeMap::new(),
        }
    }

    pub fn indicator(x: &Simplex, prime: Prime) -> Self {
        Self::from_values(x.dim(), prime, [(x.clone(), 1)])
    }

    pub fn from_values(
        degree: usize,
        prime: Prime,
        values: impl IntoIterator<Item = (Simplex, Coefficient)>,
    ) -> Self {
        let mut c = Self::zero(degree, prime);
        for (x, v) in values {
            c.set(x, v);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    fn set(&mut self, x: Simplex, v: Coefficient) {
        debug_assert_eq!(x.dim(), self.degree);
        let v = v % self.prime.get();
        if v == 0 || x.is_degenerate() {
            self.values.remove(&x);
        } else {
            self.values.insert(x, v);
        }
    }

    /// Value on one simplex; degenerate or wrong-dimensional simplices give 0.
    pub fn value(&self, x: &Simplex) -> Coefficient {
        self.values.get(x).copied().unwrap_or(0)
    }

    pub fn evaluate(&self, c: &FormalSum<Simplex>) -> Coefficient {
        c.iter().fold(0, |acc, (x, v)| {
            self.prime.add(acc, self.prime.mul(v, self.value(x)))
        })
    }

    pub fn support(&self) -> impl Iterator<Item = (&Simplex, Coefficient)> {
        self.values.iter().map(|(x, v)| (x, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `(δc)(x) = c(dx)` on every `(q+1)`-simplex of `k`.
    pub fn coboundary(&self, k: &SimplicialComplex) -> Cochain {
        let p = self.prime;
        Cochain::from_values(
            self.degree + 1,
            p,
            k.simplices(self.degree + 1)
                .iter()
                .map(|x| (x.clone(), self.evaluate(&x.boundary(p)))),
        )
    }

    pub fn scaled(&self, c: Coefficient) -> Cochain {
        let p = self.prime;
        Cochain::from_values(
            self.degree,
            p,
            self.values.iter().map(|(x, v)| (x.clone(), p.mul(*v, c))),
        )
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if other.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (x, v) in &other.values {
            let cur = out.value(x);
            out.set(x.clone(), self.prime.add(cur, *v));
        }
        Ok(out)
    }
}

impl Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain<{}>{{", self.degree)?;
        for (i, (x, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}↦{v}")?;
        }
        write!(f, "}}")
    }
}
