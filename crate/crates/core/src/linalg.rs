//! Dense matrices over `Z_p` and column reduction.

use serde::{Deserialize, Serialize};

use crate::field::{Coefficient, Prime};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Column-major entries.
    data: Vec<Coefficient>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Coefficient>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Coefficient {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Coefficient) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[Coefficient] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn to_rows(&self) -> Vec<Vec<Coefficient>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Matrix, p: Prime) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let b = other.get(k, j);
                if b == 0 {
                    continue;
                }
                for i in 0..self.rows {
                    let v = p.add(out.get(i, j), p.mul(self.get(i, k), b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `col_j ← col_j + c · col_k`.
    fn add_col(&mut self, j: usize, k: usize, c: Coefficient, p: Prime) {
        for i in 0..self.rows {
            let v = p.add(self.get(i, j), p.mul(c, self.get(i, k)));
            self.set(i, j, v);
        }
    }

    /// Largest row index with a nonzero entry in column `j`.
    pub fn low(&self, j: usize) -> Option<usize> {
        self.col(j).iter().rposition(|&v| v != 0)
    }

    pub fn rank(&self, p: Prime) -> usize {
        reduce(self, p)
            .pivots
            .iter()
            .filter(|x| x.is_some())
            .count()
    }
}

/// `R = D V` with `V` unit upper triangular and the nonzero columns of `R`
/// having distinct lows.
pub struct Reduction {
    pub r: Matrix,
    pub v: Matrix,
    /// `pivots[j]` is the low of column `j` of `R`, if nonzero.
    pub pivots: Vec<Option<usize>>,
}

/// Left-to-right column reduction; a conflicting low is cleared with the
/// earliest column owning it.
pub fn reduce(d: &Matrix, p: Prime) -> Reduction {
    let mut r = d.clone();
    let mut v = Matrix::identity(d.cols);
    let mut owner: Vec<Option<usize>> = vec![None; d.rows];
    let mut pivots = vec![None; d.cols];
    for (j, pivot) in pivots.iter_mut().enumerate() {
        while let Some(low) = r.low(j) {
            match owner[low] {
                Some(k) => {
                    let c =
                        p.neg(p.mul(r.get(low, j), p.inv(r.get(low, k)).expect("pivot nonzero")));
                    r.add_col(j, k, c, p);
                    v.add_col(j, k, c, p);
                }
                None => {
                    owner[low] = Some(j);
                    *pivot = Some(low);
                    break;
                }
            }
        }
    }
    Reduction { r, v, pivots }
}

/// Inverse of an upper triangular matrix with nonzero diagonal.
pub fn invert_upper(m: &Matrix, p: Prime) -> Matrix {
    let n = m.rows;
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        // Solve m · x = e_j by back substitution.
        for i in (0..n).rev() {
            let mut acc = if i == j { 1 } else { 0 };
            for k in i + 1..n {
                acc = p.sub(acc, p.mul(m.get(i, k), inv.get(k, j)));
            }
            let d = p.inv(m.get(i, i)).expect("invertible diagonal");
            inv.set(i, j, p.mul(acc, d));
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn reduction_invariants(entries in prop::collection::vec(0u32..5, 30)) {
            let p = Prime::new(5).unwrap();
            let d = Matrix::from_rows(&entries.chunks(6).map(<[u32]>::to_vec).collect::<Vec<_>>());
            let red = reduce(&d, p);
            prop_assert_eq!(d.mul(&red.v, p), red.r.clone());
            let lows: Vec<usize> = red.pivots.iter().flatten().copied().collect();
            let mut dedup = lows.clone();
            dedup.sort_unstable();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), lows.len());
            for j in 0..d.cols {
                prop_assert_eq!(red.v.get(j, j), 1);
                for i in j + 1..d.cols {
                    prop_assert_eq!(red.v.get(i, j), 0);
                }
                prop_assert_eq!(red.pivots[j], red.r.low(j));
            }
        }

        #[test]
        fn upper_inverse(entries in prop::collection::vec(0u32..7, 16), diag in prop::collection::vec(1u32..7, 4)) {
            let p = Prime::new(7).unwrap();
            let mut m = Matrix::zeros(4, 4);
            for i in 0..4 {
                m.set(i, i, diag[i]);
                for j in i + 1..4 {
                    m.set(i, j, entries[i * 4 + j]);
                }
            }
            prop_assert_eq!(m.mul(&invert_upper(&m, p), p), Matrix::identity(4));
        }
    }
}
