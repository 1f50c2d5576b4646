//! Instantiation of interval formulas at a concrete dimension.

use rayon::prelude::*;

use super::term::{IntervalFormula, IntervalTerm};
use crate::chain::{FormalSum, ProductSimplex, Tensor};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::simplex::Simplex;

/// Partition points `0 = i_0 ≤ i_1 ≤ … ≤ i_N = m` of `[0, m+1)` into `N`
/// possibly empty intervals, in lexicographic order.
pub struct Partitions {
    points: Vec<usize>,
    m: usize,
    done: bool,
}

impl Partitions {
    pub fn new(m: usize, intervals: usize) -> Self {
        assert!(intervals >= 1);
        let mut points = vec![0; intervals + 1];
        points[intervals] = m;
        Partitions {
            points,
            m,
            done: false,
        }
    }
}

impl Iterator for Partitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.points.clone();
        let last = self.points.len() - 1;
        match (1..last).rev().find(|&i| self.points[i] < self.m) {
            Some(i) => {
                let v = self.points[i] + 1;
                self.points[i..last].iter_mut().for_each(|p| *p = v);
            }
            None => self.done = true,
        }
        Some(current)
    }
}

/// Number of partitions of `[0, m+1)` into `n` intervals: `C(m+n-1, n-1)`.
pub fn partition_count(m: usize, n: usize) -> u128 {
    (0..n as u128 - 1).fold(1, |acc, i| acc * (m as u128 + 1 + i) / (i + 1))
}

fn odd_mask(points: &[usize]) -> u64 {
    (1..points.len())
        .filter(|&s| (points[s] - points[s - 1]) % 2 == 1)
        .fold(0, |m, s| m | 1 << s)
}

impl IntervalTerm {
    /// Adds `c · term(coords)` to `out`. Coordinates may be degenerate; only
    /// the resulting tensor factors are tested for degeneracy.
    pub fn evaluate_into(&self, coords: &[Simplex], c: u32, out: &mut FormalSum<Tensor>) {
        let p = out.prime();
        let m = coords[0].dim();
        let mut factors = Vec::with_capacity(self.n);
        'partition: for points in Partitions::new(m, self.slots) {
            factors.clear();
            for f in &self.factors {
                let x = coords[f.source].vertices();
                let mut verts = Vec::with_capacity(m + 1);
                for &s in &f.slots {
                    let range = &x[points[s - 1]..=points[s]];
                    if verts.last() == range.first() {
                        continue 'partition;
                    }
                    verts.extend_from_slice(range);
                }
                let face = Simplex::from_vec(verts);
                if face.is_degenerate() {
                    continue 'partition;
                }
                factors.push(face);
            }
            let sign = p.sign(self.sign.eval(odd_mask(&points)));
            out.add_term(Tensor(factors.clone()), p.mul(sign, c));
        }
    }

    pub fn evaluate_tuple(&self, tuple: &ProductSimplex, p: Prime) -> FormalSum<Tensor> {
        let mut out = FormalSum::zero(p);
        self.evaluate_into(&tuple.0, 1, &mut out);
        out
    }

    pub fn evaluate_chain(&self, c: &FormalSum<ProductSimplex>) -> FormalSum<Tensor> {
        let mut out = FormalSum::zero(c.prime());
        for (t, v) in c.iter() {
            self.evaluate_into(&t.0, v, &mut out);
        }
        out
    }

    /// Face operators per tensor factor, for one partition.
    pub fn face_counts(&self, points: &[usize]) -> Vec<usize> {
        let m = points[points.len() - 1];
        self.factors
            .iter()
            .map(|f| {
                let mut kept = 0;
                let mut prev_end: Option<usize> = None;
                for &s in &f.slots {
                    let (lo, hi) = (points[s - 1], points[s]);
                    kept += hi - lo + 1 - usize::from(prev_end == Some(lo));
                    prev_end = Some(hi);
                }
                m + 1 - kept
            })
            .collect()
    }
}

impl IntervalFormula {
    /// `F(x, …, x)` for diagonal formulas.
    pub fn evaluate(&self, x: &Simplex, p: Prime) -> FormalSum<Tensor> {
        self.evaluate_tuple(&ProductSimplex::diagonal(x, self.n), p)
            .expect("diagonal tuples have the right arity")
    }

    pub fn evaluate_tuple(&self, tuple: &ProductSimplex, p: Prime) -> Result<FormalSum<Tensor>> {
        if tuple.0.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: tuple.0.len(),
            });
        }
        let m = tuple.0[0].dim();
        if let Some(bad) = tuple.0.iter().find(|x| x.dim() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.dim(),
            });
        }
        let parts: Vec<FormalSum<Tensor>> = self
            .terms
            .par_iter()
            .map(|t| t.evaluate_tuple(tuple, p))
            .collect();
        Ok(parts.into_iter().fold(FormalSum::zero(p), |acc, s| acc + s))
    }

    pub fn evaluate_chain(&self, c: &FormalSum<Simplex>) -> FormalSum<Tensor> {
        let mut out = FormalSum::zero(c.prime());
        for (x, v) in c.iter() {
            out.add_scaled(&self.evaluate(x, c.prime()), v);
        }
        out
    }

    /// Total number of face operators over all instantiated summands at
    /// dimension `m`.
    pub fn count_face_operators(&self, m: usize) -> u128 {
        self.terms
            .par_iter()
            .map(|t| {
                Partitions::new(m, t.slots)
                    .map(|pt| t.face_counts(&pt).iter().sum::<usize>() as u128)
                    .sum::<u128>()
            })
            .sum()
    }

    /// Number of instantiated summands at dimension `m`.
    pub fn count_summands(&self, m: usize) -> u128 {
        self.terms.iter().map(|t| partition_count(m, t.slots)).sum()
    }
}
