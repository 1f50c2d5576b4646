//! Homology over `Z_p` as an explicit contraction `C_*(K) ⇒ H_*(K)`, built
//! from column reductions of the boundary matrices.
//!
//! In each degree the reduction yields a triangular basis of `C_q` made of
//! three kinds of vectors: cycles representing homology classes, boundaries
//! `d w`, and the chains `w` they bound. `f` reads off the class coordinates
//! in that basis, `g` returns the representing cycles, and `φ` sends each
//! boundary `d w` to `w` and everything else to zero.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{Basis, Cochain, Differential, FormalSum};
use crate::contraction::{AxiomReport, Contraction};
use crate::error::{Error, Result};
use crate::field::{Coefficient, Prime};
use crate::linalg::{invert_upper, reduce, Matrix};
use crate::simplex::{Simplex, SimplicialComplex};
use crate::simplifier::FormulaCache;
use crate::steenrod::{self, OperationKind, OperationRequest};

/// `d: C_q → C_{q-1}` in the lexicographic simplex bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMatrix {
    pub degree: usize,
    pub matrix: Matrix,
}

pub fn boundary_matrices(k: &SimplicialComplex, p: Prime) -> Vec<BoundaryMatrix> {
    let top = k.dim().map_or(0, |d| d + 1);
    (0..top)
        .map(|q| {
            let rows = if q == 0 { 0 } else { k.count(q - 1) };
            let mut matrix = Matrix::zeros(rows, k.count(q));
            if q > 0 {
                let index = k.index(q - 1);
                for (j, x) in k.simplices(q).iter().enumerate() {
                    for (face, c) in x.boundary(p).iter() {
                        matrix.set(index[face], j, c);
                    }
                }
            }
            BoundaryMatrix { degree: q, matrix }
        })
        .collect()
}

/// Basis element of `H_*(K; Z_p)`: generator `index` in degree `degree`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    pub degree: usize,
    pub index: usize,
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "γ{}_{}", self.degree, self.index)
    }
}

impl Basis for HomologyClass {
    fn degree(&self) -> usize {
        self.degree
    }
    fn is_degenerate(&self) -> bool {
        false
    }
}

impl Differential for HomologyClass {
    fn boundary(&self, p: Prime) -> FormalSum<Self> {
        FormalSum::zero(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Critical(usize),
    Boundary { partner: usize },
    Chain,
}

#[derive(Debug)]
struct Degree {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    roles: Vec<Role>,
    /// Inverse of the triangular basis matrix.
    inverse: Matrix,
    critical: Vec<usize>,
    generators: Vec<FormalSum<Simplex>>,
    /// Columns of `V_{q+1}`, i.e. chains bounding the boundary basis vectors.
    bounding: Vec<FormalSum<Simplex>>,
}

impl Degree {
    fn coordinates(&self, x: &Simplex) -> Option<&[Coefficient]> {
        self.index.get(x).map(|&i| self.inverse.col(i))
    }
}

/// The reduction contraction of a complex.
#[derive(Debug)]
pub struct HomologyContraction {
    prime: Prime,
    complex: SimplicialComplex,
    degrees: Vec<Degree>,
}

fn column_chain(m: &Matrix, j: usize, basis: &[Simplex], p: Prime) -> FormalSum<Simplex> {
    FormalSum::from_terms(p, basis.iter().cloned().zip(m.col(j).iter().copied()))
}

impl HomologyContraction {
    pub fn compute(k: &SimplicialComplex, p: Prime) -> Self {
        let bms = boundary_matrices(k, p);
        let reductions: Vec<_> = bms.par_iter().map(|b| reduce(&b.matrix, p)).collect();
        let top = bms.len();
        let degrees = (0..top)
            .map(|q| {
                let simplices = k.simplices(q).to_vec();
                let n = simplices.len();
                let red = &reductions[q];
                let mut boundary_of: Vec<Option<usize>> = vec![None; n];
                if let Some(next) = reductions.get(q + 1) {
                    for (j, low) in next.pivots.iter().enumerate() {
                        if let Some(i) = low {
                            boundary_of[*i] = Some(j);
                        }
                    }
                }
                let mut basis = Matrix::zeros(n, n);
                let mut roles = Vec::with_capacity(n);
                let mut critical = Vec::new();
                for (s, bound) in boundary_of.iter().enumerate() {
                    let (role, col) = if red.pivots[s].is_some() {
                        (Role::Chain, red.v.col(s))
                    } else if let Some(j) = *bound {
                        (Role::Boundary { partner: j }, reductions[q + 1].r.col(j))
                    } else {
                        critical.push(s);
                        (Role::Critical(critical.len() - 1), red.v.col(s))
                    };
                    for (i, &v) in col.iter().enumerate() {
                        basis.set(i, s, v);
                    }
                    roles.push(role);
                }
                let inverse = invert_upper(&basis, p);
                let generators = critical
                    .iter()
                    .map(|&s| column_chain(&red.v, s, &simplices, p))
                    .collect();
                let bounding = match reductions.get(q + 1) {
                    Some(next) => (0..next.v.cols)
                        .map(|j| column_chain(&next.v, j, k.simplices(q + 1), p))
                        .collect(),
                    None => Vec::new(),
                };
                Degree {
                    index: k.index(q),
                    simplices,
                    roles,
                    inverse,
                    critical,
                    generators,
                    bounding,
                }
            })
            .collect();
        HomologyContraction {
            prime: p,
            complex: k.clone(),
            degrees,
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Dimension of `H_q` for `q = 0..=dim K`.
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.critical.len()).collect()
    }

    pub fn rank(&self, q: usize) -> usize {
        self.degrees.get(q).map_or(0, |d| d.critical.len())
    }

    pub fn f_simplex(&self, x: &Simplex) -> FormalSum<HomologyClass> {
        let p = self.prime;
        let q = x.dim();
        let mut out = FormalSum::zero(p);
        let Some(d) = self.degrees.get(q) else {
            return out;
        };
        if let Some(coords) = d.coordinates(x) {
            for (k, &s) in d.critical.iter().enumerate() {
                out.add_term(
                    HomologyClass {
                        degree: q,
                        index: k,
                    },
                    coords[s],
                );
            }
        }
        out
    }

    pub fn g_class(&self, c: &HomologyClass) -> FormalSum<Simplex> {
        self.degrees
            .get(c.degree)
            .and_then(|d| d.generators.get(c.index).cloned())
            .unwrap_or_else(|| FormalSum::zero(self.prime))
    }

    pub fn phi_simplex(&self, x: &Simplex) -> FormalSum<Simplex> {
        let p = self.prime;
        let mut out = FormalSum::zero(p);
        let Some(d) = self.degrees.get(x.dim()) else {
            return out;
        };
        if let Some(coords) = d.coordinates(x) {
            for (s, role) in d.roles.iter().enumerate() {
                if let (Role::Boundary { partner }, c) = (role, coords[s]) {
                    if c != 0 {
                        out.add_scaled(&d.bounding[*partner], c);
                    }
                }
            }
        }
        out
    }

    /// Representative cycles `g(γ_j)` of the basis of `H_q`.
    pub fn homology_basis(&self, q: usize) -> Vec<FormalSum<Simplex>> {
        self.degrees
            .get(q)
            .map_or_else(Vec::new, |d| d.generators.clone())
    }

    /// Dual cocycles `α* ∘ f` of the basis of `H_q`.
    pub fn cohomology_basis(&self, q: usize) -> Vec<Cochain> {
        let p = self.prime;
        let Some(d) = self.degrees.get(q) else {
            return Vec::new();
        };
        d.critical
            .iter()
            .map(|&s| {
                Cochain::from_values(
                    q,
                    p,
                    d.simplices
                        .iter()
                        .enumerate()
                        .map(|(i, x)| (x.clone(), d.inverse.get(s, i))),
                )
            })
            .collect()
    }

    /// The contraction as a triple of linear maps.
    pub fn contraction(self: &Arc<Self>) -> Contraction<Simplex, HomologyClass> {
        let (a, b, c) = (self.clone(), self.clone(), self.clone());
        Contraction::new(
            self.prime,
            move |x: &Simplex| a.f_simplex(x),
            move |h: &HomologyClass| b.g_class(h),
            move |x: &Simplex| c.phi_simplex(x),
        )
    }

    /// Checks the contraction identities on every simplex and class.
    pub fn check_axioms(self: &Arc<Self>) -> AxiomReport {
        let large: Vec<Simplex> = self
            .degrees
            .iter()
            .flat_map(|d| d.simplices.clone())
            .collect();
        let small: Vec<HomologyClass> = self
            .degrees
            .iter()
            .enumerate()
            .flat_map(|(q, d)| {
                (0..d.critical.len()).map(move |index| HomologyClass { degree: q, index })
            })
            .collect();
        self.contraction().check_axioms(&large, &small)
    }
}

/// A cohomology operation in the dual bases: entry `(j, i)` is the
/// coefficient of `γ_j*` in the image of `α_i*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationMatrix {
    pub request: OperationRequest,
    pub source_degree: usize,
    pub target_degree: usize,
    pub entries: Vec<Vec<Coefficient>>,
}

impl OperationMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols()
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u32::from(i == j)))
    }
}

/// The matrix of a Steenrod square or reduced power from `H^q` to its target
/// degree.
pub fn operation_matrix(
    req: &OperationRequest,
    hc: &HomologyContraction,
    cache: &FormulaCache,
) -> Result<OperationMatrix> {
    req.validate()?;
    if req.prime != hc.prime {
        return Err(Error::InvalidRequest(format!(
            "request over Z_{} but homology over Z_{}",
            req.prime, hc.prime
        )));
    }
    let q = req.degree;
    let target = req.target_degree();
    let k = hc.complex();
    let sources = hc.cohomology_basis(q);
    let cycles = hc.homology_basis(target);
    let images: Vec<Cochain> = sources
        .par_iter()
        .map(|c| match req.kind {
            OperationKind::Square { i } => steenrod::square_cochain(k, c, i, cache),
            OperationKind::Power { k: kk } => steenrod::power_cochain(k, c, kk, cache),
        })
        .collect::<Result<_>>()?;
    let entries = cycles
        .iter()
        .map(|z| images.iter().map(|img| img.evaluate(z)).collect())
        .collect();
    Ok(OperationMatrix {
        request: req.clone(),
        source_degree: q,
        target_degree: target,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn boundary_matrices_compose_to_zero() {
        for name in fixtures::names() {
            let k = fixtures::by_name(name).unwrap();
            let bms = boundary_matrices(&k, Prime::THREE);
            for w in bms.windows(2) {
                assert!(w[0].matrix.mul(&w[1].matrix, Prime::THREE).is_zero());
            }
        }
    }

    #[test]
    fn ranks_of_fixtures() {
        let cases = [
            ("circle", 2, vec![1, 1]),
            ("circle", 3, vec![1, 1]),
            ("sphere", 2, vec![1, 0, 1]),
            ("sphere3", 5, vec![1, 0, 0, 1]),
            ("torus", 2, vec![1, 2, 1]),
            ("torus", 3, vec![1, 2, 1]),
            ("rp2", 2, vec![1, 1, 1]),
            ("rp2", 3, vec![1, 0, 0]),
        ];
        for (name, p, ranks) in cases {
            let hc = HomologyContraction::compute(
                &fixtures::by_name(name).unwrap(),
                Prime::new(p).unwrap(),
            );
            assert_eq!(hc.ranks(), ranks, "{name} over Z_{p}");
        }
    }

    #[test]
    fn contraction_axioms_on_fixtures() {
        for name in fixtures::names() {
            for p in [2, 3] {
                let hc = Arc::new(HomologyContraction::compute(
                    &fixtures::by_name(name).unwrap(),
                    Prime::new(p).unwrap(),
                ));
                let report = hc.check_axioms();
                assert!(report.holds(), "{name} Z_{p}: {report:?}");
            }
        }
    }

    #[test]
    fn cohomology_bases() {
        let hc = HomologyContraction::compute(&fixtures::torus(), Prime::TWO);
        let h0 = hc.cohomology_basis(0);
        assert_eq!(h0.len(), 1);
        for v in hc.complex().simplices(0) {
            assert_eq!(h0[0].value(v), 1);
        }
        assert_eq!(hc.cohomology_basis(1).len(), 2);
        assert!(hc.cohomology_basis(3).is_empty());
        for q in 0..3 {
            for c in hc.cohomology_basis(q) {
                assert!(c.coboundary(hc.complex()).is_zero());
            }
            let alphas = hc.cohomology_basis(q);
            let gammas = hc.homology_basis(q);
            for (i, a) in alphas.iter().enumerate() {
                for (j, z) in gammas.iter().enumerate() {
                    assert_eq!(a.evaluate(z), u32::from(i == j));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn ranks_do_not_depend_on_order(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            for k in [fixtures::torus(), fixtures::rp2()] {
                let mut perm: Vec<u32> = (0..k.count(0) as u32).collect();
                perm.shuffle(&mut rng);
                let p = Prime::new(p).unwrap();
                let a = HomologyContraction::compute(&k, p).ranks();
                let b = HomologyContraction::compute(&k.relabeled(&perm).unwrap(), p).ranks();
                prop_assert_eq!(a, b);
            }
        }
    }
}
