//! Finite induced subgraphs of the `k`-multicurve graph `M^k(Σ)` and of the
//! complexity-`ξ` interpolating graph `I_ξ(Σ)`, built from a bounded curve
//! inventory.
//!
//! Vertices are stored as sorted lists of indices into the inventory of a
//! [`CurveLab`]. Every distance computed here is a distance in an induced
//! subgraph, hence only an upper bound for the distance in the full graph.
//!
//! # The interpolating edge test
//!
//! Two pants decompositions `α ≠ β` are adjacent in `I_ξ` when the pieces of
//! `Σ ∖ (α ∩ β)` that contain a curve of `α ∖ β` or `β ∖ α` have total
//! complexity at most `ξ`. Any compatible subsurface containing all the
//! differing curves contains those pieces, so this is the least one.
//!
//! Each piece `P` of the cut meets `α` in a pants decomposition of `P`, so it
//! holds `ξ(P)` curves of `α ∖ β`. A piece therefore carries a differing curve
//! exactly when `ξ(P) ≥ 1`, and the total is `ξ₀ - |α ∩ β|`. The adjacency
//! test reduces to `|α ∩ β| ≥ ξ₀ - ξ`, which [`CurveLab::is_edge_interpolating`]
//! checks against the cut computation in debug builds.

mod qi;
mod witness;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal::{
    cut_pieces, disjoint, enumerate_curves, Multicurve, NormalError, Triangulation, WeightVector,
};
use crate::surface::SurfaceSig;

pub use qi::{
    c_k, run_qi_suite, EdgeCertificate, PathLift, QiReport, QiSuiteOptions, SuiteCount,
};
pub use witness::WitnessReport;

/// A vertex: sorted indices into the curve inventory.
pub type Vertex = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error("graphs are only built on surfaces with boundary and positive complexity, not {0}")]
    UnsupportedSurface(SurfaceSig),
    #[error("unsupported graph parameters: {0}")]
    UnsupportedKind(String),
    #[error("the inventory has no pants decomposition extending {0:?}")]
    IncompleteInventory(Vertex),
    #[error("not a vertex: {0}")]
    NotAVertex(String),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("{0:?} does not extend {1:?}")]
    NotAnExtension(Vertex, Vertex),
    #[error("path step {0} is not an edge")]
    InvalidPath(usize),
    #[error("invalid piece: {0}")]
    InvalidPiece(String),
    #[error("the two multicurves are not adjacent")]
    NotAnEdge,
}

/// Which graph to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "param", rename_all = "snake_case")]
pub enum GraphKind {
    /// `M^k`: `k`-multicurves.
    Multicurve(usize),
    /// `I_ξ`: pants decompositions.
    Interpolating(usize),
}

/// A triangulated surface together with every essential curve up to a weight
/// bound and their pairwise disjointness.
#[derive(Clone, Debug)]
pub struct CurveLab {
    tri: Triangulation,
    max_weight: u32,
    curves: Vec<WeightVector>,
    index: HashMap<WeightVector, usize>,
    disjoint: Vec<Vec<bool>>,
}

impl CurveLab {
    pub fn new(sig: SurfaceSig, max_weight: u32) -> Result<Self, GraphError> {
        if sig.b == 0 || !sig.is_graph_admissible() {
            return Err(GraphError::UnsupportedSurface(sig));
        }
        let tri = Triangulation::generate(sig)?;
        let curves = enumerate_curves(&tri, max_weight);
        Self::with_curves(tri, max_weight, curves)
    }

    /// A lab over an explicit inventory, which must consist of distinct
    /// curves.
    pub fn with_curves(
        tri: Triangulation,
        max_weight: u32,
        mut curves: Vec<WeightVector>,
    ) -> Result<Self, GraphError> {
        curves.sort();
        curves.dedup();
        let single: Vec<Multicurve> = curves.iter().map(|c| Multicurve::from_curves([c])).collect();
        let n = curves.len();
        let mut dis = vec![vec![false; n]; n];
        for i in 0..n {
            dis[i][i] = true;
            for j in i + 1..n {
                let d = disjoint(&tri, &single[i], &single[j])?;
                dis[i][j] = d;
                dis[j][i] = d;
            }
        }
        let index = curves.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(CurveLab {
            tri,
            max_weight,
            curves,
            index,
            disjoint: dis,
        })
    }

    pub fn surface(&self) -> SurfaceSig {
        self.tri.surface()
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn curves(&self) -> &[WeightVector] {
        &self.curves
    }

    pub fn xi0(&self) -> usize {
        self.surface().complexity() as usize
    }

    pub fn index_of(&self, c: &WeightVector) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Disjointness of two inventory curves; a curve is disjoint from itself.
    pub fn curves_disjoint(&self, i: usize, j: usize) -> bool {
        self.disjoint[i][j]
    }

    pub fn is_multicurve(&self, v: &[usize]) -> bool {
        v.windows(2).all(|p| p[0] < p[1])
            && v.iter().all(|&i| i < self.curves.len())
            && v.iter()
                .enumerate()
                .all(|(a, &i)| v[a + 1..].iter().all(|&j| self.disjoint[i][j]))
    }

    /// Converts a multicurve of distinct inventory curves to a vertex.
    pub fn vertex_of(&self, m: &Multicurve) -> Result<Vertex, GraphError> {
        let mut v = Vec::with_capacity(m.components.len());
        for c in &m.components {
            if c.mult != 1 {
                return Err(GraphError::NotAVertex(format!("{} has multiplicity {}", c.weights, c.mult)));
            }
            v.push(
                self.index_of(&c.weights)
                    .ok_or_else(|| GraphError::NotAVertex(format!("{} is not in the inventory", c.weights)))?,
            );
        }
        v.sort();
        if !self.is_multicurve(&v) {
            return Err(GraphError::NotAVertex("components intersect".into()));
        }
        Ok(v)
    }

    pub fn multicurve(&self, v: &[usize]) -> Multicurve {
        Multicurve::from_curves(v.iter().map(|&i| &self.curves[i]))
    }

    fn check_vertex(&self, v: &[usize], size: usize) -> Result<(), GraphError> {
        if v.len() != size || !self.is_multicurve(v) {
            return Err(GraphError::NotAVertex(format!(
                "{v:?} is not a {size}-multicurve of the inventory"
            )));
        }
        Ok(())
    }

    /// All `k`-multicurves of the inventory, in lexicographic order.
    /// `k = ξ₀` gives the pants decompositions.
    pub fn multicurve_vertices(&self, k: usize) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        let all: Vec<usize> = (0..self.curves.len()).collect();
        self.cliques(k, &all, &mut cur, &mut out);
        out
    }

    fn cliques(&self, k: usize, cands: &[usize], cur: &mut Vertex, out: &mut Vec<Vertex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (a, &i) in cands.iter().enumerate() {
            if cands.len() - a < k - cur.len() {
                break;
            }
            let next: Vec<usize> = cands[a + 1..]
                .iter()
                .copied()
                .filter(|&j| self.disjoint[i][j])
                .collect();
            cur.push(i);
            self.cliques(k, &next, cur, out);
            cur.pop();
        }
    }

    pub fn pants_decompositions(&self) -> Vec<Vertex> {
        self.multicurve_vertices(self.xi0())
    }

    /// Adjacency in `M^k` for `1 <= k <= ξ₀ - 1`.
    pub fn is_edge_multicurve(&self, k: usize, a: &[usize], b: &[usize]) -> Result<bool, GraphError> {
        self.check_multicurve_k(k)?;
        self.check_vertex(a, k)?;
        self.check_vertex(b, k)?;
        Ok(self.edge_multicurve_unchecked(k, a, b))
    }

    fn check_multicurve_k(&self, k: usize) -> Result<(), GraphError> {
        if k == 0 || k >= self.xi0() {
            return Err(GraphError::UnsupportedKind(format!(
                "multicurve graphs need 1 <= k <= {}, got {k}",
                self.xi0().saturating_sub(1)
            )));
        }
        Ok(())
    }

    fn edge_multicurve_unchecked(&self, k: usize, a: &[usize], b: &[usize]) -> bool {
        if shared(a, b) + 1 != k {
            return false;
        }
        let x = a.iter().find(|i| !b.contains(i)).expect("one differing curve");
        let y = b.iter().find(|i| !a.contains(i)).expect("one differing curve");
        self.disjoint[*x][*y]
    }

    /// Adjacency in `I_ξ` between pants decompositions, computed by cutting
    /// along the common curves.
    pub fn is_edge_interpolating(&self, xi: usize, a: &[usize], b: &[usize]) -> Result<bool, GraphError> {
        if xi == 0 {
            return Err(GraphError::UnsupportedKind("interpolating graphs need xi >= 1".into()));
        }
        let xi0 = self.xi0();
        self.check_vertex(a, xi0)?;
        self.check_vertex(b, xi0)?;
        if a == b {
            return Ok(false);
        }
        let support = self.differing_support(a, b)?;
        debug_assert_eq!(support, xi0 - shared(a, b));
        Ok(support <= xi)
    }

    /// Total complexity of the pieces of `Σ ∖ (a ∩ b)` containing a curve of
    /// the symmetric difference.
    pub fn differing_support(&self, a: &[usize], b: &[usize]) -> Result<usize, GraphError> {
        let common: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
        let cut = cut_pieces(&self.tri, &self.multicurve(&common))?;
        let mut hit = vec![false; cut.pieces.len()];
        for &i in a.iter().chain(b).filter(|i| !common.contains(i)) {
            hit[cut.locate(&self.tri, &self.curves[i])?] = true;
        }
        Ok(cut
            .pieces
            .iter()
            .zip(&hit)
            .filter(|(_, &h)| h)
            .map(|(p, _)| p.complexity().max(0) as usize)
            .sum())
    }

    fn edge_interpolating_unchecked(&self, xi: usize, a: &[usize], b: &[usize]) -> bool {
        a != b && shared(a, b) + xi >= self.xi0()
    }

    /// Builds the induced subgraph on all inventory vertices.
    pub fn build_graph(&self, kind: GraphKind) -> Result<GraphInstance, GraphError> {
        let xi0 = self.xi0();
        let vertices = match kind {
            GraphKind::Multicurve(k) => {
                self.check_multicurve_k(k)?;
                self.multicurve_vertices(k)
            }
            GraphKind::Interpolating(xi) => {
                if xi == 0 || xi >= xi0 {
                    return Err(GraphError::UnsupportedKind(format!(
                        "interpolating graphs need 1 <= xi <= {}, got {xi}",
                        xi0.saturating_sub(1)
                    )));
                }
                self.pants_decompositions()
            }
        };
        let mut edges = Vec::new();
        for (i, a) in vertices.iter().enumerate() {
            for (j, b) in vertices.iter().enumerate().skip(i + 1) {
                let adjacent = match kind {
                    GraphKind::Multicurve(k) => self.edge_multicurve_unchecked(k, a, b),
                    GraphKind::Interpolating(xi) => self.edge_interpolating_unchecked(xi, a, b),
                };
                if adjacent {
                    edges.push([i, j]);
                }
            }
        }
        Ok(GraphInstance::new(
            kind,
            self.surface(),
            self.max_weight,
            self.curves.clone(),
            vertices,
            edges,
        ))
    }

    /// The lexicographically least pants decomposition of the inventory
    /// containing `a`.
    pub fn extend_to_pants(&self, a: &[usize]) -> Result<Vertex, GraphError> {
        if !self.is_multicurve(a) {
            return Err(GraphError::NotAVertex(format!("{a:?} is not a multicurve")));
        }
        let need = self.xi0().checked_sub(a.len()).ok_or_else(|| {
            GraphError::NotAVertex(format!("{a:?} has more than {} curves", self.xi0()))
        })?;
        let cands: Vec<usize> = (0..self.curves.len())
            .filter(|i| !a.contains(i) && a.iter().all(|&j| self.disjoint[*i][j]))
            .collect();
        let mut cur = Vec::with_capacity(need);
        if self.first_clique(need, &cands, &mut cur) {
            let mut out: Vertex = a.iter().copied().chain(cur).collect();
            out.sort();
            Ok(out)
        } else {
            Err(GraphError::IncompleteInventory(a.to_vec()))
        }
    }

    fn first_clique(&self, k: usize, cands: &[usize], cur: &mut Vertex) -> bool {
        if cur.len() == k {
            return true;
        }
        for (a, &i) in cands.iter().enumerate() {
            if cands.len() - a < k - cur.len() {
                return false;
            }
            let next: Vec<usize> = cands[a + 1..]
                .iter()
                .copied()
                .filter(|&j| self.disjoint[i][j])
                .collect();
            cur.push(i);
            if self.first_clique(k, &next, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }

    /// Every pants decomposition of the inventory containing `a`.
    pub fn completions(&self, a: &[usize]) -> Vec<Vertex> {
        let cands: Vec<usize> = (0..self.curves.len())
            .filter(|i| !a.contains(i) && a.iter().all(|&j| self.disjoint[*i][j]))
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.cliques(self.xi0().saturating_sub(a.len()), &cands, &mut cur, &mut out);
        out.into_iter()
            .map(|mut v| {
                v.extend_from_slice(a);
                v.sort();
                v
            })
            .collect()
    }

    /// The map `I: M^k → I_{ξ₀-k}`, sending a multicurve to its least
    /// extension.
    pub fn map_i(&self, k: usize, a: &[usize]) -> Result<Vertex, GraphError> {
        self.check_vertex(a, k)?;
        self.extend_to_pants(a)
    }
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|i| b.contains(i)).count()
}

/// A finite induced subgraph with its inventory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInstance {
    pub kind: GraphKind,
    pub surface: SurfaceSig,
    pub max_weight: u32,
    pub curves: Vec<WeightVector>,
    /// Each vertex as indices into `curves`.
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[usize; 2]>,
    #[serde(skip)]
    neighbors: Vec<Vec<usize>>,
}

impl GraphInstance {
    fn new(
        kind: GraphKind,
        surface: SurfaceSig,
        max_weight: u32,
        curves: Vec<WeightVector>,
        vertices: Vec<Vertex>,
        edges: Vec<[usize; 2]>,
    ) -> Self {
        let mut g = GraphInstance {
            kind,
            surface,
            max_weight,
            curves,
            vertices,
            edges,
            neighbors: Vec::new(),
        };
        g.index_neighbors();
        g
    }

    fn index_neighbors(&mut self) {
        let mut nb = vec![Vec::new(); self.vertices.len()];
        for &[a, b] in &self.edges {
            nb[a].push(b);
            nb[b].push(a);
        }
        for l in &mut nb {
            l.sort_unstable();
        }
        self.neighbors = nb;
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let mut g: GraphInstance = serde_json::from_str(s)?;
        let n = g.vertices.len();
        if let Some(&[a, b]) = g.edges.iter().find(|&&[a, b]| a >= n || b >= n || a == b) {
            return Err(serde::de::Error::custom(format!("bad edge [{a},{b}]")));
        }
        g.index_neighbors();
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialises")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors
            .get(u)
            .is_some_and(|l| l.binary_search(&v).is_ok())
    }

    pub fn position(&self, v: &[usize]) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).ok()
    }

    /// Shortest-path length, `None` when `v` is unreachable from `u`.
    pub fn bfs_distance(&self, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
        Ok(self.shortest_path(u, v)?.map(|p| p.len() - 1))
    }

    /// A shortest path from `u` to `v`, preferring lower vertex indices.
    pub fn shortest_path(&self, u: usize, v: usize) -> Result<Option<Vec<usize>>, GraphError> {
        let n = self.vertices.len();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::UnknownVertex(x));
            }
        }
        let mut parent = vec![usize::MAX; n];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = vec![v];
                let mut y = v;
                while y != u {
                    y = parent[y];
                    path.push(y);
                }
                path.reverse();
                return Ok(Some(path));
            }
            for &y in &self.neighbors[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    /// Graphviz rendering with curve indices as vertex labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let label: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "  {i} [label=\"{{{}}}\"];", label.join(","));
        }
        for [a, b] in &self.edges {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(g: u32, b: u32, w: u32) -> CurveLab {
        CurveLab::new(SurfaceSig::new(g, b), w).unwrap()
    }

    #[test]
    fn punctured_torus_curve_graph_has_no_edges() {
        let l = lab(1, 1, 2);
        let err = l.build_graph(GraphKind::Multicurve(1)).unwrap_err();
        assert!(matches!(err, GraphError::UnsupportedKind(_)));
        assert!(l.pants_decompositions().iter().all(|p| p.len() == 1));
        for i in 0..l.curves().len() {
            for j in 0..l.curves().len() {
                assert_eq!(l.curves_disjoint(i, j), i == j);
            }
        }
    }

    #[test]
    fn five_punctured_sphere_graphs() {
        let l = lab(0, 5, 2);
        let m1 = l.build_graph(GraphKind::Multicurve(1)).unwrap();
        assert!(!m1.edges.is_empty());
        let i1 = l.build_graph(GraphKind::Interpolating(1)).unwrap();
        assert!((0..i1.num_vertices()).all(|v| !i1.neighbors(v).is_empty()));
        assert!(l.build_graph(GraphKind::Multicurve(2)).is_err());
        assert!(l.build_graph(GraphKind::Interpolating(2)).is_err());
        assert!(l.build_graph(GraphKind::Interpolating(0)).is_err());
    }

    #[test]
    fn closed_surfaces_are_rejected() {
        assert!(matches!(
            CurveLab::new(SurfaceSig::new(2, 0), 1),
            Err(GraphError::UnsupportedSurface(_))
        ));
    }

    #[test]
    fn edge_predicates() {
        let l = lab(0, 5, 2);
        let pants = l.pants_decompositions();
        let p = &pants[0];
        assert!(!l.is_edge_interpolating(1, p, p).unwrap());
        assert!(!l.is_edge_multicurve(1, &p[..1], &p[..1]).unwrap());
        assert!(l.is_edge_multicurve(1, &p[..1], &p[1..]).unwrap());
        let apart = pants
            .iter()
            .find(|q| shared(p, q) == 0)
            .expect("a pants decomposition sharing nothing with the first");
        assert!(!l.is_edge_interpolating(1, p, apart).unwrap());
        let near = pants
            .iter()
            .find(|q| shared(p, q) == 1)
            .expect("a pants decomposition sharing one curve");
        assert!(l.is_edge_interpolating(1, p, near).unwrap());
        assert!(l.is_edge_multicurve(2, p, near).is_err());
    }

    #[test]
    fn interpolating_test_agrees_with_cut_support() {
        for (g, b, w) in [(0, 5, 3), (1, 2, 3), (0, 6, 1)] {
            let l = lab(g, b, w);
            let pants = l.pants_decompositions();
            for a in pants.iter().take(40) {
                for c in &pants {
                    if a != c {
                        assert_eq!(
                            l.differing_support(a, c).unwrap(),
                            l.xi0() - shared(a, c),
                            "{a:?} {c:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn extension() {
        let l = lab(0, 5, 2);
        let p = &l.pants_decompositions()[3];
        assert_eq!(&l.extend_to_pants(p).unwrap(), p);
        let one = vec![0];
        let e = l.extend_to_pants(&one).unwrap();
        assert!(e.contains(&0) && e.len() == 2);
        assert_eq!(e, l.completions(&one)[0]);
        assert_eq!(l.map_i(1, &one).unwrap(), l.map_i(1, &one).unwrap());

        let bare = CurveLab::with_curves(
            l.triangulation().clone(),
            2,
            vec![l.curves()[0].clone()],
        )
        .unwrap();
        assert_eq!(
            bare.extend_to_pants(&[0]),
            Err(GraphError::IncompleteInventory(vec![0]))
        );
    }

    #[test]
    fn bfs() {
        let l = lab(0, 5, 2);
        let g = l.build_graph(GraphKind::Multicurve(1)).unwrap();
        assert_eq!(g.bfs_distance(0, 0).unwrap(), Some(0));
        let [a, b] = g.edges[0];
        assert_eq!(g.bfs_distance(a, b).unwrap(), Some(1));
        assert!(g.bfs_distance(0, 10_000).is_err());

        let bare = CurveLab::with_curves(
            l.triangulation().clone(),
            2,
            vec![l.curves()[0].clone(), l.curves()[1].clone()],
        )
        .unwrap();
        let g = bare.build_graph(GraphKind::Multicurve(1)).unwrap();
        if g.edges.is_empty() {
            assert_eq!(g.bfs_distance(0, 1).unwrap(), None);
        }
    }

    #[test]
    fn json_and_dot() {
        let l = lab(0, 5, 1);
        let g = l.build_graph(GraphKind::Interpolating(1)).unwrap();
        let json = g.to_json();
        assert!(json.starts_with(r#"{"kind":{"type":"interpolating","param":1},"surface":{"g":0,"b":5}"#));
        let back = GraphInstance::from_json(&json).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.neighbors(0), g.neighbors(0));
        assert!(g.to_dot().starts_with("graph G {"));
    }
}
