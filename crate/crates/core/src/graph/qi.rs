//! Finite checks of the quasi-isometry `I: M^k(Σ) → I_{ξ₀-k}(Σ)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CurveLab, GraphError, GraphKind, Vertex};
use crate::surface::SurfaceSig;

/// `C_k = min(k, ξ₀ - k)`.
pub fn c_k(xi0: usize, k: usize) -> usize {
    k.min(xi0 - k)
}

/// A path of length at most two in `I_{ξ₀-k}` from `I(α)` to `I(β)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCertificate {
    pub path: Vec<Vertex>,
}

impl EdgeCertificate {
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A lift of an interpolating path to `k`-multicurves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathLift {
    pub path: Vec<Vertex>,
    /// `γ_i ⊆ P_{i-1} ∩ P_i` for each step of the path.
    pub gammas: Vec<Vertex>,
    /// Chains of `M^k`-edges joining consecutive lifted multicurves, each
    /// inside one pants decomposition of the path.
    pub segments: Vec<Vec<Vertex>>,
    pub bound: usize,
}

impl PathLift {
    pub fn steps(&self) -> Vec<usize> {
        self.segments.iter().map(|s| s.len() - 1).collect()
    }

    pub fn total(&self) -> usize {
        self.steps().iter().sum()
    }
}

impl CurveLab {
    /// Whether two extensions of `a` are equal or adjacent in `I_{ξ₀-k}`.
    pub fn verify_extension_lemma(
        &self,
        k: usize,
        a: &[usize],
        e1: &[usize],
        e2: &[usize],
    ) -> Result<bool, GraphError> {
        self.check_vertex(a, k)?;
        for e in [e1, e2] {
            self.check_vertex(e, self.xi0())?;
            if !a.iter().all(|i| e.contains(i)) {
                return Err(GraphError::NotAnExtension(e.to_vec(), a.to_vec()));
            }
        }
        Ok(e1 == e2 || self.is_edge_interpolating(self.xi0() - k, e1, e2)?)
    }

    /// Certifies `d(I(α), I(β)) <= 2` for an `M^k`-edge through a pants
    /// decomposition containing `α ∪ β`.
    pub fn verify_edge_upper_bound(
        &self,
        k: usize,
        a: &[usize],
        b: &[usize],
    ) -> Result<EdgeCertificate, GraphError> {
        if !self.is_edge_multicurve(k, a, b)? {
            return Err(GraphError::NotAnEdge);
        }
        let mut union: Vertex = a.iter().chain(b).copied().collect();
        union.sort();
        union.dedup();
        let ia = self.map_i(k, a)?;
        let ib = self.map_i(k, b)?;
        let p = self.extend_to_pants(&union)?;
        let mut path = vec![ia, p, ib];
        path.dedup();
        if path.len() == 3 && path[0] == path[2] {
            path.truncate(1);
        }
        let xi = self.xi0() - k;
        for (i, w) in path.windows(2).enumerate() {
            if !self.is_edge_interpolating(xi, &w[0], &w[1])? {
                return Err(GraphError::InvalidPath(i));
            }
        }
        Ok(EdgeCertificate { path })
    }

    /// Lifts a path `P_0, …, P_n` of `I_{ξ₀-k}`: `γ_i` is the least `k`
    /// curves of `P_{i-1} ∩ P_i`, and `γ_i`, `γ_{i+1}` are joined inside
    /// `P_i` by at most `C_k` curve replacements.
    pub fn lift_path(&self, k: usize, path: &[Vertex]) -> Result<PathLift, GraphError> {
        self.lift(k, path, None)
    }

    /// As [`lift_path`](Self::lift_path) for a path from `I(α)` to `I(β)`,
    /// extended by the replacements `α → γ_1` inside `P_0` and `γ_n → β`
    /// inside `P_n`. The total is at most `(n + 1) C_k`.
    pub fn lift_between(
        &self,
        k: usize,
        a: &[usize],
        b: &[usize],
        path: &[Vertex],
    ) -> Result<PathLift, GraphError> {
        if path.first().map(Vec::as_slice) != Some(self.map_i(k, a)?.as_slice())
            || path.last().map(Vec::as_slice) != Some(self.map_i(k, b)?.as_slice())
        {
            return Err(GraphError::InvalidPath(0));
        }
        self.lift(k, path, Some((a, b)))
    }

    fn lift(
        &self,
        k: usize,
        path: &[Vertex],
        ends: Option<(&[usize], &[usize])>,
    ) -> Result<PathLift, GraphError> {
        self.check_multicurve_k(k)?;
        let xi0 = self.xi0();
        let xi = xi0 - k;
        for p in path {
            self.check_vertex(p, xi0)?;
        }
        let mut gammas = Vec::new();
        for (i, w) in path.windows(2).enumerate() {
            if !self.is_edge_interpolating(xi, &w[0], &w[1])? {
                return Err(GraphError::InvalidPath(i));
            }
            let common: Vertex = w[0].iter().copied().filter(|c| w[1].contains(c)).collect();
            gammas.push(common[..k].to_vec());
        }

        let mut segments = Vec::new();
        for i in 1..gammas.len() {
            segments.push(self.replace(k, &gammas[i - 1], &gammas[i], &path[i])?);
        }
        if let Some((a, b)) = ends {
            let last = path.last().expect("non-empty path");
            match (gammas.first(), gammas.last()) {
                (Some(g1), Some(gn)) => {
                    segments.insert(0, self.replace(k, a, g1, &path[0])?);
                    segments.push(self.replace(k, gn, b, last)?);
                }
                _ => segments.push(self.replace(k, a, b, last)?),
            }
        }
        Ok(PathLift {
            path: path.to_vec(),
            gammas,
            segments,
            bound: c_k(xi0, k),
        })
    }

    /// Swaps the curves of `from` not in `to` for those of `to` not in
    /// `from`, in increasing order. Every intermediate multicurve lies in
    /// `pants`, so consecutive ones are `M^k`-adjacent.
    fn replace(&self, k: usize, from: &[usize], to: &[usize], pants: &[usize]) -> Result<Vec<Vertex>, GraphError> {
        let out: Vec<usize> = from.iter().copied().filter(|c| !to.contains(c)).collect();
        let inn: Vec<usize> = to.iter().copied().filter(|c| !from.contains(c)).collect();
        let mut cur = from.to_vec();
        let mut seq = vec![cur.clone()];
        for (x, y) in out.into_iter().zip(inn) {
            cur.retain(|&c| c != x);
            cur.push(y);
            cur.sort();
            if !cur.iter().all(|c| pants.contains(c)) {
                return Err(GraphError::NotAnExtension(pants.to_vec(), cur));
            }
            if !self.is_edge_multicurve(k, seq.last().unwrap(), &cur)? {
                return Err(GraphError::InvalidPath(seq.len() - 1));
            }
            seq.push(cur.clone());
        }
        Ok(seq)
    }
}

/// Pass and failure counts for one family of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteCount {
    pub checked: usize,
    pub failures: usize,
    /// Cases skipped because the inventory cannot complete them.
    pub incomplete: usize,
}

impl SuiteCount {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QiSuiteOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for QiSuiteOptions {
    fn default() -> Self {
        QiSuiteOptions {
            samples: 200,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QiReport {
    pub surface: SurfaceSig,
    pub k: usize,
    pub max_weight: u32,
    pub seed: u64,
    pub curves: usize,
    pub pants_decompositions: usize,
    pub c_k: usize,
    pub extension_lemma: SuiteCount,
    pub edge_upper_bound: SuiteCount,
    pub path_lifts: SuiteCount,
    /// Largest single lifted step seen.
    pub max_lift_step: usize,
    /// Sampled pairs whose images are in different components of the
    /// induced interpolating graph.
    pub unreachable_pairs: usize,
    pub quasi_density: SuiteCount,
}

impl QiReport {
    pub fn passed(&self) -> bool {
        self.extension_lemma.passed()
            && self.edge_upper_bound.passed()
            && self.path_lifts.passed()
            && self.quasi_density.passed()
    }
}

/// Runs the extension, upper-bound, path-lift and quasi-density checks.
pub fn run_qi_suite(lab: &CurveLab, k: usize, opts: &QiSuiteOptions) -> Result<QiReport, GraphError> {
    lab.check_multicurve_k(k)?;
    let xi0 = lab.xi0();
    let xi = xi0 - k;
    let verts = lab.multicurve_vertices(k);
    let igraph = lab.build_graph(GraphKind::Interpolating(xi))?;
    let images: Vec<Option<Vertex>> = verts.iter().map(|a| lab.map_i(k, a).ok()).collect();

    let mut ext = SuiteCount::default();
    for a in &verts {
        let comps = lab.completions(a);
        if comps.is_empty() {
            ext.incomplete += 1;
        }
        for (i, e1) in comps.iter().enumerate() {
            for e2 in &comps[i..] {
                ext.checked += 1;
                if !lab.verify_extension_lemma(k, a, e1, e2)? {
                    ext.failures += 1;
                }
            }
        }
    }

    let mut upper = SuiteCount::default();
    for (i, a) in verts.iter().enumerate() {
        for b in &verts[i + 1..] {
            if !lab.edge_multicurve_unchecked(k, a, b) {
                continue;
            }
            match lab.verify_edge_upper_bound(k, a, b) {
                Ok(cert) if cert.len() <= 2 => upper.checked += 1,
                Ok(_) => {
                    upper.checked += 1;
                    upper.failures += 1;
                }
                Err(GraphError::IncompleteInventory(_)) => upper.incomplete += 1,
                Err(e) => return Err(e),
            }
        }
    }

    let completable: Vec<usize> = (0..verts.len()).filter(|&i| images[i].is_some()).collect();
    let mut lifts = SuiteCount::default();
    let mut unreachable = 0;
    let mut max_step = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bound = c_k(xi0, k);
    let mut attempts = 0;
    while !completable.is_empty() && lifts.checked < opts.samples && attempts < 20 * opts.samples.max(1) {
        attempts += 1;
        let a = completable[rng.gen_range(0..completable.len())];
        let b = completable[rng.gen_range(0..completable.len())];
        let (ia, ib) = (images[a].as_ref().unwrap(), images[b].as_ref().unwrap());
        let (pa, pb) = (
            igraph.position(ia).expect("image is a vertex"),
            igraph.position(ib).expect("image is a vertex"),
        );
        let Some(route) = igraph.shortest_path(pa, pb)? else {
            unreachable += 1;
            continue;
        };
        let path: Vec<Vertex> = route.iter().map(|&v| igraph.vertices[v].clone()).collect();
        let lift = lab.lift_between(k, &verts[a], &verts[b], &path)?;
        let n = path.len() - 1;
        lifts.checked += 1;
        let steps = lift.steps();
        max_step = max_step.max(steps.iter().copied().max().unwrap_or(0));
        if steps.iter().any(|&s| s > bound) || lift.total() > (n + 1) * bound {
            lifts.failures += 1;
        }
    }

    let mut density = SuiteCount::default();
    let mut image_set: Vec<&Vertex> = images.iter().flatten().collect();
    image_set.sort();
    image_set.dedup();
    for v in 0..igraph.num_vertices() {
        density.checked += 1;
        let near = image_set.iter().any(|img| {
            igraph
                .position(img)
                .is_some_and(|u| u == v || igraph.is_adjacent(u, v))
        });
        if !near {
            density.failures += 1;
        }
    }

    Ok(QiReport {
        surface: lab.surface(),
        k,
        max_weight: lab.max_weight(),
        seed: opts.seed,
        curves: lab.curves().len(),
        pants_decompositions: igraph.num_vertices(),
        c_k: bound,
        extension_lemma: ext,
        edge_upper_bound: upper,
        path_lifts: lifts,
        max_lift_step: max_step,
        unreachable_pairs: unreachable,
        quasi_density: density,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_k_values() {
        assert_eq!(c_k(2, 1), 1);
        assert_eq!(c_k(5, 2), 2);
        assert_eq!(c_k(5, 4), 1);
    }

    #[test]
    fn lifts_on_five_punctured_sphere() {
        let lab = CurveLab::new(SurfaceSig::new(0, 5), 2).unwrap();
        let empty = lab.lift_path(1, &[]).unwrap();
        assert!(empty.gammas.is_empty() && empty.segments.is_empty());
        let g = lab.build_graph(GraphKind::Interpolating(1)).unwrap();
        let route = g.shortest_path(0, g.num_vertices() - 1).unwrap().unwrap();
        let path: Vec<Vertex> = route.iter().map(|&v| g.vertices[v].clone()).collect();
        let lift = lab.lift_path(1, &path).unwrap();
        assert_eq!(lift.gammas.len(), path.len() - 1);
        assert!(lift.steps().iter().all(|&s| s <= 1));
    }

    #[test]
    fn edge_certificate() {
        let lab = CurveLab::new(SurfaceSig::new(0, 5), 2).unwrap();
        let p = &lab.pants_decompositions()[0];
        let cert = lab
            .verify_edge_upper_bound(1, &p[..1], &p[1..])
            .unwrap();
        assert!(cert.len() <= 2);
        assert!(matches!(
            lab.verify_edge_upper_bound(1, &p[..1], &p[..1]),
            Err(GraphError::NotAnEdge)
        ));
    }

    #[test]
    fn suite_is_deterministic() {
        let lab = CurveLab::new(SurfaceSig::new(0, 5), 2).unwrap();
        let opts = QiSuiteOptions { samples: 30, seed: 7 };
        let a = run_qi_suite(&lab, 1, &opts).unwrap();
        let b = run_qi_suite(&lab, 1, &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{a:?}");
    }
}
