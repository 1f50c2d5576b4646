//! Simplices as weakly increasing vertex lists and finite ordered simplicial
//! complexes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A simplex of the simplicial set generated by an ordered complex.
///
/// Vertices are weakly increasing; a repeated adjacent vertex marks a
/// degenerate simplex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        if vertices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotWeaklyIncreasing(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Builds a simplex without checking the ordering.
    pub(crate) fn from_vec(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] <= w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }

    /// Positions `i` with `x = s_i y` for some `y`.
    pub fn repeats(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(i, _)| i)
    }

    pub fn face(&self, i: usize) -> Result<Self> {
        if self.dim() == 0 || i > self.dim() {
            return Err(Error::Dimension {
                op: format!("∂_{i}"),
                dim: self.dim(),
            });
        }
        Ok(self.face_unchecked(i))
    }

    pub fn degeneracy(&self, i: usize) -> Result<Self> {
        if i > self.dim() {
            return Err(Error::Dimension {
                op: format!("s_{i}"),
                dim: self.dim(),
            });
        }
        Ok(self.degeneracy_unchecked(i))
    }

    pub(crate) fn face_unchecked(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub(crate) fn degeneracy_unchecked(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.insert(i, v[i]);
        Simplex(v)
    }

    /// `s_γ x` for a strictly increasing index set `γ`: the composite of
    /// degeneracies applied in increasing order, so the result repeats
    /// exactly at the positions in `γ`.
    pub(crate) fn degenerate_at(&self, gamma: &[usize]) -> Self {
        let mut v = self.0.clone();
        for &g in gamma {
            v.insert(g, v[g]);
        }
        Simplex(v)
    }

    /// The sub-simplex on positions `lo..=hi`.
    pub(crate) fn range(&self, lo: usize, hi: usize) -> Self {
        Simplex(self.0[lo..=hi].to_vec())
    }

    /// All faces of every dimension, including the simplex itself.
    pub fn subfaces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let k = self.0.len();
        (1u64..(1u64 << k)).map(move |mask| {
            Simplex(
                (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| self.0[b])
                    .collect(),
            )
        })
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = Error;
    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ComplexFile {
    name: String,
    maximal_simplices: Vec<Vec<Vertex>>,
}

/// A finite ordered simplicial complex, viewed as the simplicial set of its
/// weakly increasing vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexFile", into = "ComplexFile")]
pub struct SimplicialComplex {
    name: String,
    maximal: Vec<Simplex>,
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn new(name: impl Into<String>, maximal: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut max_simplices = Vec::with_capacity(maximal.len());
        for verts in maximal {
            if verts.is_empty() {
                return Err(Error::EmptySimplex);
            }
            if verts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NotStrictlyIncreasing(verts));
            }
            if !seen.insert(verts.clone()) {
                return Err(Error::DuplicateSimplex(verts));
            }
            max_simplices.push(Simplex(verts));
        }
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for s in &max_simplices {
            all.extend(s.subfaces());
        }
        let top = all.iter().map(Simplex::dim).max().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        for s in all {
            by_dim[s.dim()].push(s);
        }
        Ok(SimplicialComplex {
            name: name.into(),
            maximal: max_simplices,
            by_dim,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexFile::from(self.clone())).expect("complex serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Nondegenerate `q`-simplices in lexicographic order.
    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.by_dim.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    /// Index of each `q`-simplex within [`Self::simplices`].
    pub fn index(&self, q: usize) -> HashMap<Simplex, usize> {
        self.simplices(q)
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect()
    }

    /// The complex with vertex `v` renamed to `perm[v]`; each simplex is
    /// re-sorted, so the vertex order (and hence orientation) changes.
    pub fn relabeled(&self, perm: &[Vertex]) -> Result<Self> {
        let maximal = self
            .maximal
            .iter()
            .map(|s| {
                let mut v: Vec<Vertex> = s.0.iter().map(|&x| perm[x as usize]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        SimplicialComplex::new(self.name.clone(), maximal)
    }
}

impl TryFrom<ComplexFile> for SimplicialComplex {
    type Error = Error;
    fn try_from(f: ComplexFile) -> Result<Self> {
        SimplicialComplex::new(f.name, f.maximal_simplices)
    }
}

impl From<SimplicialComplex> for ComplexFile {
    fn from(c: SimplicialComplex) -> Self {
        ComplexFile {
            name: c.name,
            maximal_simplices: c.maximal.into_iter().map(|s| s.0).collect(),
        }
    }
}
