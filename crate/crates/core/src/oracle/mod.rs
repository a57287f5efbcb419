//! Brute-force search over abstract surface decompositions.
//!
//! A decomposition of `Σ_{g,b}` along a multicurve is recorded as a
//! [`GluingPattern`]: a connected multigraph whose nodes are the pieces and
//! whose edges are the cut curves. A loop is a curve with both sides on the
//! same piece.
//!
//! # Realizability
//!
//! A multiset of essential pieces `X_1, …, X_m` (with `m >= 2`) is realizable
//! exactly when
//!
//! 1. `Σ χ(X_i) = χ(Σ)`,
//! 2. every `b_i >= 1`,
//! 3. `e = (Σ b_i - b) / 2` is a non-negative integer with `e >= m - 1`,
//! 4. some degree sequence `1 <= d_i <= b_i` has `Σ d_i = 2e`.
//!
//! Necessity is immediate: the gluing multigraph is connected, so it has at
//! least `m - 1` edges and every node has positive degree. For sufficiency,
//! pick `d_i` greedily; a tree on the pieces with degrees `t_i <= d_i`
//! exists because `Σ d_i >= 2(m - 1)`, and the leftover half-edges can be
//! paired arbitrarily (loops and parallel edges allowed). Gluing along the
//! multigraph gives a connected surface with the right Euler characteristic
//! and `b` free boundary circles, hence `Σ_{g,b}`. Since every piece has
//! negative Euler characteristic, no annulus sits between two cut curves, so
//! distinct edges are never isotopic curves and no cut curve is peripheral.
//!
//! Given condition 1, condition 3 is equivalent to `Σ g_i <= g` (the genus
//! identity `g = Σ g_i + e - m + 1`), and condition 4 then holds
//! automatically when `m >= 2`.
//!
//! A single piece other than `Σ` itself is realizable with `e` loops when it
//! is `Σ_{g-e, b+2e}`; this is what cutting along non-separating curves
//! produces.
//!
//! # Conditions (A) and (B)
//!
//! Any pair of disjoint connected essential subsurfaces `Y`, `Z` extends to
//! a two-piece decomposition by absorbing each complementary component into
//! a neighbour, and absorbing only increases complexity. So (A) holds at `ξ`
//! iff a realizable two-piece decomposition with both complexities at least
//! `ξ` exists.
//!
//! (B) fails iff there is a decomposition `Y, Z, R_1, …, R_j` with `j >= 1`
//! in which deleting `Y` or deleting `Z` leaves the gluing graph connected.
//! That happens iff every connected cluster of `R` pieces touches both `Y`
//! and `Z`; the cheapest such configuration is a tree on the `R` pieces with
//! `Y` and `Z` hung off it as leaves, which needs `Σ b_R >= 2j`. Extra
//! edges never break co-connectivity, so that inequality together with
//! realizability is the whole criterion.

mod cases;

pub use cases::{theorem_constructions, CaseConstruction};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rank::{
    check_classification_input, classify_paper, witness_threshold, ClassKind, Classification,
    RankError, Source,
};
use crate::surface::{PieceSig, SurfaceSig};

/// Abstract gluing of pieces along cut curves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingPattern {
    pub pieces: Vec<PieceSig>,
    /// One entry per cut curve; `[i, i]` is a loop.
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternViolation {
    #[error("edge {edge:?} refers to a missing piece")]
    BadEdge { edge: [usize; 2] },
    #[error("piece {piece} has {degree} glued boundary circles but only {available}")]
    DegreeExceedsBoundary {
        piece: usize,
        degree: u32,
        available: u32,
    },
    #[error("free boundary count {found} does not match the target's {expected}")]
    BoundaryMismatch { found: i64, expected: i64 },
    #[error("gluing multigraph is disconnected")]
    Disconnected,
    #[error("Euler characteristics sum to {found}, target has {expected}")]
    EulerMismatch { found: i64, expected: i64 },
    #[error("derived genus {found} differs from target genus {expected}")]
    GenusMismatch { found: i64, expected: i64 },
    #[error("piece {piece} ({sig}) is not essential")]
    InessentialPiece { piece: usize, sig: PieceSig },
    #[error("pattern has no pieces")]
    Empty,
}

impl GluingPattern {
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.pieces.len()];
        for &[i, j] in &self.edges {
            if let Some(d) = deg.get_mut(i) {
                *d += 1;
            }
            if let Some(d) = deg.get_mut(j) {
                *d += 1;
            }
        }
        deg
    }

    /// Genus of the glued surface, `Σ g_i + |edges| - |pieces| + 1`.
    pub fn derived_genus(&self) -> i64 {
        self.pieces.iter().map(|p| p.g as i64).sum::<i64>() + self.edges.len() as i64
            - self.pieces.len() as i64
            + 1
    }

    /// Checks every structural invariant against the surface being built.
    pub fn validate(&self, target: SurfaceSig) -> Result<(), PatternViolation> {
        let m = self.pieces.len();
        if m == 0 {
            return Err(PatternViolation::Empty);
        }
        for edge in &self.edges {
            if edge[0] >= m || edge[1] >= m {
                return Err(PatternViolation::BadEdge { edge: *edge });
            }
        }
        if self.pieces.len() > 1 || self.pieces[0] != target {
            for (i, p) in self.pieces.iter().enumerate() {
                if !p.is_essential_piece() {
                    return Err(PatternViolation::InessentialPiece { piece: i, sig: *p });
                }
            }
        }
        let deg = self.degrees();
        for (i, (p, d)) in self.pieces.iter().zip(&deg).enumerate() {
            if *d > p.b {
                return Err(PatternViolation::DegreeExceedsBoundary {
                    piece: i,
                    degree: *d,
                    available: p.b,
                });
            }
        }
        let free: i64 = self
            .pieces
            .iter()
            .zip(&deg)
            .map(|(p, d)| p.b as i64 - *d as i64)
            .sum();
        if free != target.b as i64 {
            return Err(PatternViolation::BoundaryMismatch {
                found: free,
                expected: target.b as i64,
            });
        }
        if !is_connected(m, &self.edges, None) {
            return Err(PatternViolation::Disconnected);
        }
        let chi: i64 = self.pieces.iter().map(|p| p.euler()).sum();
        if chi != target.euler() {
            return Err(PatternViolation::EulerMismatch {
                found: chi,
                expected: target.euler(),
            });
        }
        if self.derived_genus() != target.g as i64 {
            return Err(PatternViolation::GenusMismatch {
                found: self.derived_genus(),
                expected: target.g as i64,
            });
        }
        Ok(())
    }
}

/// Connectivity of a multigraph on `n` nodes, optionally with one node deleted.
pub(crate) fn is_connected(n: usize, edges: &[[usize; 2]], removed: Option<usize>) -> bool {
    let alive = |v: usize| Some(v) != removed;
    let Some(start) = (0..n).find(|&v| alive(v)) else {
        return true;
    };
    let mut adj = vec![Vec::new(); n];
    for &[i, j] in edges {
        if alive(i) && alive(j) {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    (0..n).all(|v| !alive(v) || seen[v])
}

/// A realizable decomposition with one witnessing pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutDecomposition {
    pub pattern: GluingPattern,
}

impl CutDecomposition {
    pub fn pieces(&self) -> &[PieceSig] {
        &self.pattern.pieces
    }

    pub fn piece_complexities(&self) -> Vec<i64> {
        self.pattern.pieces.iter().map(|p| p.complexity()).collect()
    }

    pub fn len(&self) -> usize {
        self.pattern.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.pieces.is_empty()
    }
}

/// Number of cut curves a realizable multiset needs, if the counts work out.
fn cut_count(pieces: &[PieceSig], target: SurfaceSig) -> Option<u32> {
    let total_b: i64 = pieces.iter().map(|p| p.b as i64).sum();
    let twice = total_b - target.b as i64;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

/// Whether the pieces can be glued into `target` along a multicurve.
pub fn gluing_feasible(pieces: &[PieceSig], target: SurfaceSig) -> bool {
    let m = pieces.len();
    if m == 0 {
        return false;
    }
    if m == 1 && pieces[0] == target {
        return true;
    }
    if pieces.iter().any(|p| !p.is_essential_piece() || p.b == 0) {
        return false;
    }
    if pieces.iter().map(|p| p.euler()).sum::<i64>() != target.euler() {
        return false;
    }
    let Some(e) = cut_count(pieces, target) else {
        return false;
    };
    let e = e as usize;
    let total_b: usize = pieces.iter().map(|p| p.b as usize).sum();
    e + 1 >= m && m <= 2 * e && 2 * e <= total_b
}

/// Builds an explicit pattern for a realizable multiset.
pub fn build_pattern(pieces: &[PieceSig], target: SurfaceSig) -> Option<GluingPattern> {
    if !gluing_feasible(pieces, target) {
        return None;
    }
    let m = pieces.len();
    if m == 1 && pieces[0] == target {
        return Some(GluingPattern {
            pieces: pieces.to_vec(),
            edges: Vec::new(),
        });
    }
    let e = cut_count(pieces, target)? as usize;
    let caps: Vec<usize> = pieces.iter().map(|p| p.b as usize).collect();
    let tree_degrees = distribute(&vec![1; m], &caps, 2 * (m - 1))?;
    let mut edges = tree_from_degrees(&tree_degrees, &[]);
    let used: Vec<usize> = tree_degrees.clone();
    pair_extra_stubs(&mut edges, &used, &caps, e - (m - 1))?;
    let pattern = GluingPattern {
        pieces: pieces.to_vec(),
        edges,
    };
    debug_assert_eq!(pattern.validate(target), Ok(()));
    Some(pattern)
}

/// Raises `base` towards `caps` (front to back) until the sum is `total`.
fn distribute(base: &[usize], caps: &[usize], total: usize) -> Option<Vec<usize>> {
    let mut d = base.to_vec();
    let mut sum: usize = d.iter().sum();
    if sum > total {
        return None;
    }
    for (di, &cap) in d.iter_mut().zip(caps) {
        if *di > cap {
            return None;
        }
        let add = (cap - *di).min(total - sum);
        *di += add;
        sum += add;
    }
    (sum == total).then_some(d)
}

/// Tree with the given positive degree sequence summing to `2(n - 1)`.
/// Nodes listed in `leaves_first` are attached before any other leaf.
fn tree_from_degrees(degrees: &[usize], leaves_first: &[usize]) -> Vec<[usize; 2]> {
    let n = degrees.len();
    if n == 1 {
        return Vec::new();
    }
    let mut rem = degrees.to_vec();
    let mut alive = vec![true; n];
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 0..n - 2 {
        let leaf = leaves_first
            .iter()
            .copied()
            .find(|&v| alive[v] && rem[v] == 1)
            .or_else(|| (0..n).find(|&v| alive[v] && rem[v] == 1))
            .expect("degree sum leaves a leaf");
        let hub = (0..n)
            .find(|&v| alive[v] && v != leaf && rem[v] >= 2)
            .expect("degree sum leaves an inner node");
        edges.push(ordered(leaf, hub));
        rem[leaf] -= 1;
        rem[hub] -= 1;
        alive[leaf] = false;
    }
    let last: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    edges.push(ordered(last[0], last[1]));
    edges
}

fn ordered(a: usize, b: usize) -> [usize; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Adds `extra` edges using leftover boundary circles, pairing half-edges in
/// node order. Loops appear when both halves come from one piece.
fn pair_extra_stubs(
    edges: &mut Vec<[usize; 2]>,
    used: &[usize],
    caps: &[usize],
    extra: usize,
) -> Option<()> {
    let mut stubs = Vec::with_capacity(2 * extra);
    for (v, (&u, &c)) in used.iter().zip(caps).enumerate() {
        for _ in u..c {
            if stubs.len() == 2 * extra {
                break;
            }
            stubs.push(v);
        }
    }
    if stubs.len() != 2 * extra {
        return None;
    }
    edges.extend(stubs.chunks(2).map(|p| ordered(p[0], p[1])));
    Some(())
}

/// Every piece signature that could appear in a decomposition of `target`:
/// essential, at least one boundary circle, genus at most `g`, and Euler
/// characteristic no smaller than the target's.
fn candidate_pieces(target: SurfaceSig, min_complexity: i64) -> Vec<PieceSig> {
    let budget = -target.euler();
    let mut out = Vec::new();
    for g in 0..=target.g {
        for b in 1..=(budget + 2).max(0) as u32 {
            let p = SurfaceSig::new(g, b);
            if p.is_essential_piece() && -p.euler() <= budget && p.complexity() >= min_complexity
            {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Calls `visit` on every non-decreasing multiset drawn from `candidates`
/// whose Euler characteristics sum to `chi` and whose genera sum to at most
/// `genus`, with at most `max_len` elements.
fn for_each_multiset(
    candidates: &[PieceSig],
    chi: i64,
    genus: i64,
    max_len: usize,
    visit: &mut dyn FnMut(&[PieceSig]),
) {
    fn rec(
        candidates: &[PieceSig],
        from: usize,
        chi_left: i64,
        genus_left: i64,
        max_len: usize,
        acc: &mut Vec<PieceSig>,
        visit: &mut dyn FnMut(&[PieceSig]),
    ) {
        if chi_left == 0 {
            if !acc.is_empty() {
                visit(acc);
            }
            return;
        }
        if acc.len() == max_len {
            return;
        }
        for (i, &p) in candidates.iter().enumerate().skip(from) {
            // candidate Euler characteristics are negative; chi_left < 0 here
            if p.euler() < chi_left || p.g as i64 > genus_left {
                continue;
            }
            acc.push(p);
            rec(
                candidates,
                i,
                chi_left - p.euler(),
                genus_left - p.g as i64,
                max_len,
                acc,
                visit,
            );
            acc.pop();
        }
    }
    let mut acc = Vec::new();
    rec(candidates, 0, chi, genus, max_len, &mut acc, visit);
}

/// Every realizable piece multiset with each piece of complexity at least
/// `min_piece_complexity` and at most `max_pieces` pieces, in canonical order
/// (pieces sorted within a multiset, multisets sorted lexicographically).
pub fn enumerate_decompositions(
    target: SurfaceSig,
    min_piece_complexity: i64,
    max_pieces: usize,
) -> Vec<CutDecomposition> {
    let mut out = Vec::new();
    if max_pieces == 0 {
        return out;
    }
    if target.complexity() >= min_piece_complexity {
        out.push(CutDecomposition {
            pattern: GluingPattern {
                pieces: vec![target],
                edges: Vec::new(),
            },
        });
    }
    if target.euler() >= 0 {
        return out;
    }
    let candidates = candidate_pieces(target, min_piece_complexity);
    for_each_multiset(
        &candidates,
        target.euler(),
        target.g as i64,
        max_pieces,
        &mut |pieces| {
            if pieces.len() == 1 && pieces[0] == target {
                return;
            }
            if let Some(pattern) = build_pattern(pieces, target) {
                out.push(CutDecomposition { pattern });
            }
        },
    );
    out.sort_by(|a, b| a.pattern.pieces.cmp(&b.pattern.pieces));
    out
}

/// Upper bound on the number of essential pieces: each has `χ <= -1`.
pub fn max_piece_count(target: SurfaceSig) -> usize {
    (-target.euler()).max(1) as usize
}

/// Largest number of pieces, each of complexity at least `xi`, in a
/// decomposition of `target`; 0 when there is none.
pub fn mu_oracle(target: SurfaceSig, xi: i64) -> Result<i64, RankError> {
    Ok(mu_oracle_witness(target, xi)?.map_or(0, |d| d.len() as i64))
}

/// A decomposition attaining [`mu_oracle`], if any.
pub fn mu_oracle_witness(
    target: SurfaceSig,
    xi: i64,
) -> Result<Option<CutDecomposition>, RankError> {
    if xi <= 0 {
        return Err(RankError::NonPositiveXi(xi));
    }
    Ok(
        enumerate_decompositions(target, xi, max_piece_count(target))
            .into_iter()
            .max_by_key(|d| (d.len(), std::cmp::Reverse(d.pattern.pieces.clone()))),
    )
}

/// Two-piece decomposition certifying condition (A) at `xi`.
pub fn condition_a_witness(target: SurfaceSig, xi: i64) -> Option<GluingPattern> {
    if target.euler() >= 0 {
        return None;
    }
    let candidates = candidate_pieces(target, xi);
    let mut found = None;
    for_each_multiset(&candidates, target.euler(), target.g as i64, 2, &mut |p| {
        if found.is_none() && p.len() == 2 {
            found = build_pattern(p, target);
        }
    });
    found
}

/// Condition (A): two disjoint connected essential subsurfaces of complexity
/// at least `xi` exist.
pub fn condition_a(target: SurfaceSig, xi: i64) -> bool {
    condition_a_witness(target, xi).is_some()
}

/// A decomposition violating condition (B): pieces `0` and `1` are the
/// co-connected subsurfaces `Y` and `Z`, the rest are the leftover pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub pattern: GluingPattern,
}

impl Counterexample {
    pub fn y(&self) -> PieceSig {
        self.pattern.pieces[0]
    }

    pub fn z(&self) -> PieceSig {
        self.pattern.pieces[1]
    }

    pub fn rest(&self) -> &[PieceSig] {
        &self.pattern.pieces[2..]
    }

    /// Re-checks the certificate from scratch.
    pub fn check(&self, target: SurfaceSig, xi: i64) -> bool {
        let n = self.pattern.pieces.len();
        n >= 3
            && self.pattern.validate(target).is_ok()
            && self.y().complexity() >= xi
            && self.z().complexity() >= xi
            && is_connected(n, &self.pattern.edges, Some(0))
            && is_connected(n, &self.pattern.edges, Some(1))
    }
}

/// Builds the co-connected gluing for `Y`, `Z` and the leftover pieces, if
/// one exists.
pub fn co_connected_pattern(
    y: PieceSig,
    z: PieceSig,
    rest: &[PieceSig],
    target: SurfaceSig,
) -> Option<GluingPattern> {
    let j = rest.len();
    if j == 0 {
        return None;
    }
    let mut pieces = vec![y, z];
    pieces.extend_from_slice(rest);
    if !gluing_feasible(&pieces, target) {
        return None;
    }
    let rest_caps: Vec<usize> = rest.iter().map(|p| p.b as usize).collect();
    let rest_deg = distribute(&vec![1; j], &rest_caps, 2 * j)?;
    let mut degrees = vec![1, 1];
    degrees.extend(rest_deg);
    let mut edges = tree_from_degrees(&degrees, &[0, 1]);
    let caps: Vec<usize> = pieces.iter().map(|p| p.b as usize).collect();
    let e = cut_count(&pieces, target)? as usize;
    pair_extra_stubs(&mut edges, &degrees, &caps, e - (j + 1))?;
    Some(GluingPattern { pieces, edges })
}

/// First counterexample to condition (B) at `xi`, in canonical search order.
pub fn condition_b_counterexample(target: SurfaceSig, xi: i64) -> Option<Counterexample> {
    if target.euler() >= 0 {
        return None;
    }
    let yz = candidate_pieces(target, xi);
    let rest_candidates = candidate_pieces(target, 0);
    for (iy, &y) in yz.iter().enumerate() {
        for &z in &yz[iy..] {
            let chi_left = target.euler() - y.euler() - z.euler();
            let genus_left = target.g as i64 - y.g as i64 - z.g as i64;
            if chi_left >= 0 || genus_left < 0 {
                continue;
            }
            let mut found = None;
            for_each_multiset(
                &rest_candidates,
                chi_left,
                genus_left,
                usize::MAX,
                &mut |rest| {
                    if found.is_none() {
                        found = co_connected_pattern(y, z, rest, target);
                    }
                },
            );
            if let Some(pattern) = found {
                let cx = Counterexample { pattern };
                debug_assert!(cx.check(target, xi));
                return Some(cx);
            }
        }
    }
    None
}

/// Condition (B): whenever co-connected `Y`, `Z` of complexity at least `xi`
/// are disjoint, `Z` is the complement of `Y`.
pub fn condition_b(target: SurfaceSig, xi: i64) -> bool {
    condition_b_counterexample(target, xi).is_none()
}

/// Classification with the certificates that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub surface: SurfaceSig,
    pub k: i64,
    pub threshold: i64,
    pub classification: Classification,
    /// Disjoint witness pair, when condition (A) holds.
    pub witness_pair: Option<GluingPattern>,
    /// Violation of condition (B), when (A) holds but (B) fails.
    pub counterexample: Option<Counterexample>,
}

pub fn classify_oracle_verdict(target: SurfaceSig, k: i64) -> Result<OracleVerdict, RankError> {
    check_classification_input(target, k)?;
    let threshold = witness_threshold(target, k)?;
    let witness_pair = condition_a_witness(target, threshold);
    let counterexample = witness_pair
        .as_ref()
        .and_then(|_| condition_b_counterexample(target, threshold));
    let kind = match (&witness_pair, &counterexample) {
        (None, _) => ClassKind::Hyperbolic,
        (Some(_), None) => ClassKind::RelativelyHyperbolic,
        (Some(_), Some(_)) => ClassKind::Thick,
    };
    Ok(OracleVerdict {
        surface: target,
        k,
        threshold,
        classification: Classification {
            kind,
            source: Source::Oracle,
        },
        witness_pair,
        counterexample,
    })
}

/// Ground-truth classification from conditions (A) and (B) at the witness
/// threshold.
pub fn classify_oracle(target: SurfaceSig, k: i64) -> Result<Classification, RankError> {
    Ok(classify_oracle_verdict(target, k)?.classification)
}

/// A triple on which the printed table and the oracle disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub surface: SurfaceSig,
    pub k: i64,
    pub formula: ClassKind,
    pub oracle: ClassKind,
}

/// Every surface with complexity at least 2 in `0..=gmax × 0..=bmax`.
pub fn classifiable_surfaces(gmax: u32, bmax: u32) -> impl Iterator<Item = SurfaceSig> {
    (0..=gmax)
        .flat_map(move |g| (0..=bmax).map(move |b| SurfaceSig::new(g, b)))
        .filter(|s| s.complexity() >= 2)
}

/// All triples in range where [`classify_paper`] and [`classify_oracle`]
/// disagree.
pub fn discrepancies(gmax: u32, bmax: u32) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for sig in classifiable_surfaces(gmax, bmax) {
        for k in 1..=sig.complexity() {
            let formula = classify_paper(sig, k).expect("in range").kind;
            let oracle = classify_oracle(sig, k).expect("in range").kind;
            if formula != oracle {
                out.push(Discrepancy {
                    surface: sig,
                    k,
                    formula,
                    oracle,
                });
            }
        }
    }
    out
}
