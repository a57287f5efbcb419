//! Independent reference enumerators shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use multicurve::normal::{Triangulation, WeightVector};

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Intersection numbers of the slope `p/q` with the three slopes `0/1`,
/// `1/0` and `1/1` of the Farey triangle: `{x, y, x + y}` for coprime
/// `x, y >= 0`. Every ordering occurs as the slope ranges over the rationals.
pub fn farey_triples(max_weight: u32) -> BTreeSet<[u32; 3]> {
    let mut out = BTreeSet::new();
    for x in 0..=max_weight {
        for y in 0..=max_weight - x {
            if gcd(x, y) != 1 {
                continue;
            }
            let t = [x, y, x + y];
            for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                out.insert([t[p[0]], t[p[1]], t[p[2]]]);
            }
        }
    }
    out
}

/// Curves on the once-punctured torus: one slope triple per curve, read
/// directly as the weights on its three edges.
pub fn punctured_torus_slopes(max_weight: u32) -> Vec<WeightVector> {
    farey_triples(max_weight)
        .into_iter()
        .map(|t| WeightVector(t.to_vec()))
        .collect()
}

/// Pairs of edges of a triangulation that lie in no common triangle.
pub fn opposite_edge_pairs(tri: &Triangulation) -> Vec<[usize; 2]> {
    let n = tri.num_edges();
    let mut share = vec![vec![false; n]; n];
    for t in tri.triangles() {
        for a in t {
            for b in t {
                share[a.edge][b.edge] = true;
            }
        }
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !share[a][b] {
                pairs.push([a, b]);
            }
        }
    }
    pairs
}

/// Curves on the four-punctured sphere. The tetrahedral triangulation has
/// three pairs of opposite edges; a slope curve crosses both edges of a pair
/// equally, with the three pair weights forming a Farey triple.
pub fn four_punctured_sphere_slopes(tri: &Triangulation, max_weight: u32) -> Vec<WeightVector> {
    let pairs = opposite_edge_pairs(tri);
    assert_eq!(pairs.len(), 3, "expected a tetrahedron");
    let mut out: Vec<WeightVector> = farey_triples(max_weight)
        .into_iter()
        .map(|t| {
            let mut v = vec![0; tri.num_edges()];
            for (i, pair) in pairs.iter().enumerate() {
                v[pair[0]] = t[i];
                v[pair[1]] = t[i];
            }
            WeightVector(v)
        })
        .collect();
    out.sort();
    out
}

/// A curve surrounding edge `e` of an ideal triangulation: the boundary of
/// a regular neighbourhood of the edge and its two end punctures.
pub fn edge_surrounding_curve(tri: &Triangulation, e: usize) -> WeightVector {
    let links = tri.vertex_links();
    let ends: Vec<usize> = (0..links.len()).filter(|&v| links[v][e] > 0).collect();
    assert_eq!(ends.len(), 2, "edge {e} must join two distinct punctures");
    let mut w: Vec<u32> = (0..tri.num_edges())
        .map(|f| links[ends[0]][f] + links[ends[1]][f])
        .collect();
    w[e] -= 2;
    WeightVector(w)
}
