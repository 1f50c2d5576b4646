//! Contractions `(f, g, φ)` between chain complexes: composition, tensor
//! products and an exhaustive axiom checker on finite bases.

use std::fmt::{self, Debug};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{differential, Basis, Differential, FormalSum};
use crate::field::Prime;

/// A linear map given on basis elements.
pub type LinearMap<A, B> = Arc<dyn Fn(&A) -> FormalSum<B> + Send + Sync>;

/// Projection `f: A → B`, inclusion `g: B → A` and homotopy `φ: A → A` of
/// degree +1.
pub struct Contraction<A: Basis, B: Basis> {
    prime: Prime,
    f: LinearMap<A, B>,
    g: LinearMap<B, A>,
    phi: LinearMap<A, A>,
}

impl<A: Basis, B: Basis> Clone for Contraction<A, B> {
    fn clone(&self) -> Self {
        Contraction {
            prime: self.prime,
            f: self.f.clone(),
            g: self.g.clone(),
            phi: self.phi.clone(),
        }
    }
}

impl<A: Basis, B: Basis> Debug for Contraction<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Contraction(p = {})", self.prime)
    }
}

impl<A: Basis + 'static, B: Basis + 'static> Contraction<A, B> {
    pub fn new(
        prime: Prime,
        f: impl Fn(&A) -> FormalSum<B> + Send + Sync + 'static,
        g: impl Fn(&B) -> FormalSum<A> + Send + Sync + 'static,
        phi: impl Fn(&A) -> FormalSum<A> + Send + Sync + 'static,
    ) -> Self {
        Contraction {
            prime,
            f: Arc::new(f),
            g: Arc::new(g),
            phi: Arc::new(phi),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn f(&self, c: &FormalSum<A>) -> FormalSum<B> {
        c.map_linear(|a| (self.f)(a))
    }

    pub fn g(&self, c: &FormalSum<B>) -> FormalSum<A> {
        c.map_linear(|b| (self.g)(b))
    }

    pub fn phi(&self, c: &FormalSum<A>) -> FormalSum<A> {
        c.map_linear(|a| (self.phi)(a))
    }

    /// `(f'f, gg', φ + gφ'f)`.
    pub fn compose<C: Basis + 'static>(&self, next: &Contraction<B, C>) -> Contraction<A, C> {
        let (f1, g1, phi1) = (self.f.clone(), self.g.clone(), self.phi.clone());
        let (f2, g2, phi2) = (next.f.clone(), next.g.clone(), next.phi.clone());
        let (f1b, g1b) = (f1.clone(), g1.clone());
        Contraction::new(
            self.prime,
            move |a| f1(a).map_linear(|b| f2(b)),
            move |c| g2(c).map_linear(|b| g1(b)),
            move |a| {
                let mut out = phi1(a);
                out += &f1b(a).map_linear(|b| phi2(b)).map_linear(|b| g1b(b));
                out
            },
        )
    }
}

impl<A: Basis + 'static> Contraction<A, A> {
    pub fn identity(prime: Prime) -> Self {
        Contraction::new(
            prime,
            move |a: &A| FormalSum::basis(prime, a.clone()),
            move |a: &A| FormalSum::basis(prime, a.clone()),
            move |_: &A| FormalSum::zero(prime),
        )
    }
}

/// A basis element of a tensor product of two complexes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair<X, Y>(pub X, pub Y);

impl<X: Debug, Y: Debug> Debug for Pair<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊗ {:?}", self.0, self.1)
    }
}

impl<X: Basis, Y: Basis> Basis for Pair<X, Y> {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }
    fn is_degenerate(&self) -> bool {
        self.0.is_degenerate() || self.1.is_degenerate()
    }
}

impl<X: Differential, Y: Differential> Differential for Pair<X, Y> {
    fn boundary(&self, p: Prime) -> FormalSum<Self> {
        let mut out = tensor_sums(&self.0.boundary(p), &FormalSum::basis(p, self.1.clone()));
        let right = tensor_sums(&FormalSum::basis(p, self.0.clone()), &self.1.boundary(p));
        out.add_scaled(&right, p.sign(self.0.degree() % 2 == 1));
        out
    }
}

/// `a ⊗ b` for formal sums, without sign.
pub fn tensor_sums<X: Basis, Y: Basis>(
    a: &FormalSum<X>,
    b: &FormalSum<Y>,
) -> FormalSum<Pair<X, Y>> {
    let p = a.prime();
    let mut out = FormalSum::zero(p);
    for (x, c) in a.iter() {
        for (y, e) in b.iter() {
            out.add_term(Pair(x.clone(), y.clone()), p.mul(c, e));
        }
    }
    out
}

/// `(f ⊗ f', g ⊗ g', φ ⊗ g'f' + 1 ⊗ φ')` with the Koszul sign on `1 ⊗ φ'`.
pub fn tensor_contractions<A, B, C, D>(
    r: &Contraction<A, B>,
    s: &Contraction<C, D>,
) -> Contraction<Pair<A, C>, Pair<B, D>>
where
    A: Basis + 'static,
    B: Basis + 'static,
    C: Basis + 'static,
    D: Basis + 'static,
{
    let p = r.prime;
    let (f1, g1, phi1) = (r.f.clone(), r.g.clone(), r.phi.clone());
    let (f2, g2, phi2) = (s.f.clone(), s.g.clone(), s.phi.clone());
    let (f2a, g2a) = (f2.clone(), g2.clone());
    Contraction::new(
        p,
        move |Pair(a, c): &Pair<A, C>| tensor_sums(&f1(a), &f2a(c)),
        move |Pair(b, d): &Pair<B, D>| tensor_sums(&g1(b), &g2a(d)),
        move |Pair(a, c): &Pair<A, C>| {
            let gf = f2(c).map_linear(|d| g2(d));
            let mut out = tensor_sums(&phi1(a), &gf);
            let right = tensor_sums(&FormalSum::basis(p, a.clone()), &phi2(c));
            out.add_scaled(&right, p.sign(a.degree() % 2 == 1));
            out
        },
    )
}

/// Failure counts for each contraction identity over a finite test basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checked_large: usize,
    pub checked_small: usize,
    /// `f d = d f`
    pub f_chain_map: usize,
    /// `g d = d g`
    pub g_chain_map: usize,
    /// `dφ + φd = 1 - gf`
    pub homotopy: usize,
    /// `φ g = 0`
    pub phi_g: usize,
    /// `f φ = 0`
    pub f_phi: usize,
    /// `φ φ = 0`
    pub phi_phi: usize,
    /// `f g = 1`
    pub f_g: usize,
    pub first_failure: Option<String>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.failures() == 0
    }

    pub fn failures(&self) -> usize {
        self.f_chain_map
            + self.g_chain_map
            + self.homotopy
            + self.phi_g
            + self.f_phi
            + self.phi_phi
            + self.f_g
    }

    fn merge(mut self, o: AxiomReport) -> AxiomReport {
        self.checked_large += o.checked_large;
        self.checked_small += o.checked_small;
        self.f_chain_map += o.f_chain_map;
        self.g_chain_map += o.g_chain_map;
        self.homotopy += o.homotopy;
        self.phi_g += o.phi_g;
        self.f_phi += o.f_phi;
        self.phi_phi += o.phi_phi;
        self.f_g += o.f_g;
        self.first_failure = self.first_failure.or(o.first_failure);
        self
    }

    fn fail(&mut self, what: &str, at: &dyn Debug) {
        if self.first_failure.is_none() {
            self.first_failure = Some(format!("{what} at {at:?}"));
        }
    }
}

impl<A: Differential + 'static, B: Differential + 'static> Contraction<A, B> {
    /// Checks every identity on the given basis elements of both complexes.
    pub fn check_axioms(&self, large: &[A], small: &[B]) -> AxiomReport {
        let p = self.prime;
        let on_large = large
            .par_iter()
            .map(|a| {
                let mut r = AxiomReport {
                    checked_large: 1,
                    ..Default::default()
                };
                let x = FormalSum::basis(p, a.clone());
                let fx = self.f(&x);
                if self.f(&differential(&x)) != differential(&fx) {
                    r.f_chain_map += 1;
                    r.fail("f d = d f", a);
                }
                let phix = self.phi(&x);
                let lhs = differential(&phix) + self.phi(&differential(&x));
                if lhs != x.clone() - self.g(&fx) {
                    r.homotopy += 1;
                    r.fail("dφ + φd = 1 - gf", a);
                }
                if !self.f(&phix).is_zero() {
                    r.f_phi += 1;
                    r.fail("fφ = 0", a);
                }
                if !self.phi(&phix).is_zero() {
                    r.phi_phi += 1;
                    r.fail("φφ = 0", a);
                }
                r
            })
            .reduce(AxiomReport::default, AxiomReport::merge);
        let on_small = small
            .par_iter()
            .map(|b| {
                let mut r = AxiomReport {
                    checked_small: 1,
                    ..Default::default()
                };
                let y = FormalSum::basis(p, b.clone());
                let gy = self.g(&y);
                if self.g(&differential(&y)) != differential(&gy) {
                    r.g_chain_map += 1;
                    r.fail("g d = d g", b);
                }
                if !self.phi(&gy).is_zero() {
                    r.phi_g += 1;
                    r.fail("φg = 0", b);
                }
                if self.f(&gy) != y {
                    r.f_g += 1;
                    r.fail("fg = 1", b);
                }
                r
            })
            .reduce(AxiomReport::default, AxiomReport::merge);
        on_large.merge(on_small)
    }
}
