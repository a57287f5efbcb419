//! Curves on a triangulated surface, recorded by their normal coordinates.
//!
//! A multicurve in minimal position with the edges of a [`Triangulation`]
//! is determined up to isotopy by how many times it crosses each edge. The
//! engine traces such weight vectors into connected components, tests
//! disjointness, cuts along multicurves and enumerates every essential simple
//! closed curve up to a weight bound.

mod cut;
mod inventory;
mod trace;
mod triangulation;

use std::fmt;
use std::ops::{Add, Index};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::SurfaceSig;

pub use cut::{cut_pieces, Cut};
pub use inventory::enumerate_curves;
pub use trace::{disjoint, is_peripheral, trace, Component, Multicurve};
pub use triangulation::{Side, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalError {
    #[error("invalid triangulation: {0}")]
    BadTriangulation(String),
    #[error("no model triangulation for the surface {0}")]
    UnsupportedSurface(SurfaceSig),
    #[error("weight vector has {got} entries, the triangulation has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weights fail the triangle inequalities or parity in triangle {triangle}")]
    NotAdmissible { triangle: usize },
    #[error("the curves are not pairwise disjoint")]
    NotDisjoint,
    #[error("the curve is one of the cut curves")]
    IsCutCurve,
    #[error("expected a single simple closed curve")]
    NotACurve,
}

/// Normal coordinates: one non-negative weight per edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<u32>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Total number of edge crossings.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&w| w as u64).sum()
    }

    pub fn max_weight(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn scaled(&self, k: u32) -> Self {
        WeightVector(self.0.iter().map(|w| w * k).collect())
    }
}

impl From<Vec<u32>> for WeightVector {
    fn from(v: Vec<u32>) -> Self {
        WeightVector(v)
    }
}

impl Index<usize> for WeightVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.len(), rhs.len(), "adding weight vectors of different lengths");
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

/// Whether `v` satisfies parity and the triangle inequalities in every
/// triangle. The zero vector is admissible.
pub fn admissible(tri: &Triangulation, v: &WeightVector) -> Result<bool, NormalError> {
    check_len(tri, v)?;
    Ok(first_bad_triangle(tri, v).is_none())
}

pub(crate) fn check_len(tri: &Triangulation, v: &WeightVector) -> Result<(), NormalError> {
    if v.len() != tri.num_edges() {
        return Err(NormalError::LengthMismatch {
            expected: tri.num_edges(),
            got: v.len(),
        });
    }
    Ok(())
}

pub(crate) fn require_admissible(tri: &Triangulation, v: &WeightVector) -> Result<(), NormalError> {
    check_len(tri, v)?;
    match first_bad_triangle(tri, v) {
        Some(triangle) => Err(NormalError::NotAdmissible { triangle }),
        None => Ok(()),
    }
}

fn first_bad_triangle(tri: &Triangulation, v: &WeightVector) -> Option<usize> {
    (0..tri.num_triangles()).find(|&t| !triangle_ok(tri.triangle_weights(t, v)))
}

pub(crate) fn triangle_ok(w: [u32; 3]) -> bool {
    let [a, b, c] = w.map(|x| x as i64);
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
}

/// Number of normal arcs cutting off corner `j` (between sides `j - 1` and `j`).
pub(crate) fn corner_arcs(w: [u32; 3]) -> [u32; 3] {
    let [a, b, c] = w;
    [(c + a - b) / 2, (a + b - c) / 2, (b + c - a) / 2]
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_arcs_sum() {
        let n = corner_arcs([2, 3, 1]);
        assert_eq!(n, [0, 2, 1]);
        // side j is crossed by the arcs at its two end corners
        assert_eq!(n[0] + n[1], 2);
        assert_eq!(n[1] + n[2], 3);
        assert_eq!(n[2] + n[0], 1);
    }

    #[test]
    fn admissibility() {
        let t = Triangulation::generate(SurfaceSig::new(1, 1)).unwrap();
        assert!(admissible(&t, &vec![1, 1, 0].into()).unwrap());
        assert!(!admissible(&t, &vec![1, 0, 0].into()).unwrap());
        assert!(!admissible(&t, &vec![3, 1, 0].into()).unwrap());
        assert!(admissible(&t, &vec![1, 1].into()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(WeightVector(vec![1, 0, 2]).to_string(), "[1,0,2]");
    }
}
