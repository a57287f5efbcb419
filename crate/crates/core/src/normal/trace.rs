use serde::{Deserialize, Serialize};

use super::{corner_arcs, require_admissible, NormalError, Triangulation, UnionFind, WeightVector};

/// One isotopy class of curve inside a multicurve, with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Component {
    pub weights: WeightVector,
    pub mult: u32,
}

/// A multicurve in canonical form: components sorted by weight vector, each
/// class listed once with its multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multicurve {
    pub components: Vec<Component>,
}

impl Multicurve {
    pub fn empty() -> Self {
        Multicurve::default()
    }

    /// Canonicalises an arbitrary list of components.
    pub fn from_components(components: impl IntoIterator<Item = Component>) -> Self {
        let mut items: Vec<Component> = components.into_iter().filter(|c| c.mult > 0).collect();
        items.sort();
        let mut merged: Vec<Component> = Vec::with_capacity(items.len());
        for c in items {
            match merged.last_mut() {
                Some(last) if last.weights == c.weights => last.mult += c.mult,
                _ => merged.push(c),
            }
        }
        Multicurve { components: merged }
    }

    /// Each curve once.
    pub fn from_curves<'a>(curves: impl IntoIterator<Item = &'a WeightVector>) -> Self {
        Multicurve::from_components(curves.into_iter().map(|w| Component {
            weights: w.clone(),
            mult: 1,
        }))
    }

    pub fn union(&self, other: &Multicurve) -> Multicurve {
        Multicurve::from_components(self.components.iter().chain(&other.components).cloned())
    }

    /// Sum of `mult × weights`; `None` for the empty multicurve.
    pub fn total(&self) -> Option<WeightVector> {
        let mut it = self.components.iter();
        let first = it.next()?;
        let mut sum = first.weights.scaled(first.mult);
        for c in it {
            sum = &sum + &c.weights.scaled(c.mult);
        }
        Some(sum)
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of curves counted with multiplicity.
    pub fn num_curves(&self) -> u32 {
        self.components.iter().map(|c| c.mult).sum()
    }

    pub fn curves(&self) -> impl Iterator<Item = &WeightVector> {
        self.components.iter().map(|c| &c.weights)
    }
}

/// Normal arcs of a weight vector and the strands they form.
///
/// Points on edge `e` are numbered `0..w_e` from the tail of the edge.
pub(crate) struct Arrangement {
    offsets: Vec<usize>,
    point_comp: Vec<usize>,
    pub(crate) comps: Vec<WeightVector>,
}

impl Arrangement {
    pub(crate) fn new(tri: &Triangulation, v: &WeightVector) -> Self {
        let mut offsets = Vec::with_capacity(tri.num_edges() + 1);
        let mut acc = 0;
        for e in 0..tri.num_edges() {
            offsets.push(acc);
            acc += v[e] as usize;
        }
        offsets.push(acc);
        let mut uf = UnionFind::new(acc);
        for_each_arc(tri, v, |arc| {
            uf.union(offsets[arc.ends[0].0] + arc.ends[0].1, offsets[arc.ends[1].0] + arc.ends[1].1);
        });
        let mut label = vec![usize::MAX; acc];
        let mut point_comp = vec![0; acc];
        let mut comps: Vec<WeightVector> = Vec::new();
        for e in 0..tri.num_edges() {
            for p in offsets[e]..offsets[e + 1] {
                let r = uf.find(p);
                if label[r] == usize::MAX {
                    label[r] = comps.len();
                    comps.push(WeightVector::zero(tri.num_edges()));
                }
                point_comp[p] = label[r];
                comps[label[r]].0[e] += 1;
            }
        }
        Arrangement {
            offsets,
            point_comp,
            comps,
        }
    }

    pub(crate) fn comp_at(&self, e: usize, q: usize) -> usize {
        self.point_comp[self.offsets[e] + q]
    }

    pub(crate) fn multicurve(&self) -> Multicurve {
        Multicurve::from_components(self.comps.iter().map(|w| Component {
            weights: w.clone(),
            mult: 1,
        }))
    }
}

/// A normal arc in triangle `t` cutting off corner `j`; `r = 0` is the arc
/// closest to the corner. `ends` are `(edge, point)` on sides `j` and `j - 1`.
pub(crate) struct Arc {
    pub(crate) t: usize,
    pub(crate) j: usize,
    pub(crate) r: usize,
    pub(crate) ends: [(usize, usize); 2],
}

/// Converts a counter-clockwise position on a triangle side to a point index
/// along the edge.
pub(crate) fn edge_point(rev: bool, w: u32, p: usize) -> usize {
    if rev {
        w as usize - 1 - p
    } else {
        p
    }
}

pub(crate) fn for_each_arc(tri: &Triangulation, v: &WeightVector, mut f: impl FnMut(Arc)) {
    for (t, sides) in tri.triangles().iter().enumerate() {
        let w = tri.triangle_weights(t, v);
        let n = corner_arcs(w);
        for j in 0..3 {
            let prev = (j + 2) % 3;
            for r in 0..n[j] as usize {
                let a = (sides[j].edge, edge_point(sides[j].is_reversed(), w[j], r));
                let pp = w[prev] as usize - 1 - r;
                let b = (
                    sides[prev].edge,
                    edge_point(sides[prev].is_reversed(), w[prev], pp),
                );
                f(Arc { t, j, r, ends: [a, b] });
            }
        }
    }
}

/// Splits an admissible vector into its connected components.
pub fn trace(tri: &Triangulation, v: &WeightVector) -> Result<Multicurve, NormalError> {
    require_admissible(tri, v)?;
    Ok(Arrangement::new(tri, v).multicurve())
}

/// Whether a single component is the link of a puncture, or of the vertex
/// of a closed-surface model.
pub fn is_peripheral(tri: &Triangulation, c: &WeightVector) -> bool {
    tri.vertex_links().contains(c)
}

/// Whether the two multicurves can be realised disjointly.
///
/// Normal representatives are unique, so the classes are disjoint exactly
/// when the Haken sum of all their curves traces back to the union.
pub fn disjoint(tri: &Triangulation, a: &Multicurve, b: &Multicurve) -> Result<bool, NormalError> {
    let union = a.union(b);
    let Some(sum) = union.total() else {
        return Ok(true);
    };
    Ok(trace(tri, &sum)? == union)
}
