use serde::Serialize;

use super::trace::{for_each_arc, Arrangement};
use super::{corner_arcs, require_admissible, trace, Multicurve, NormalError, Triangulation, UnionFind, WeightVector};
use crate::surface::{PieceSig, SurfaceSig};

/// The complement of a multicurve, split into connected pieces.
#[derive(Clone, Debug, Serialize)]
pub struct Cut {
    pub nu: Multicurve,
    /// Signature of each piece, in order of first appearance.
    pub pieces: Vec<PieceSig>,
    /// One entry per cut curve, parallel copies listed separately.
    pub curves: Vec<WeightVector>,
    /// The pieces on the two sides of each cut curve.
    pub curve_sides: Vec<[usize; 2]>,
    #[serde(skip)]
    segment_piece: Vec<Vec<usize>>,
}

impl Cut {
    /// Piece signatures sorted lexicographically.
    pub fn sorted_pieces(&self) -> Vec<PieceSig> {
        let mut p = self.pieces.clone();
        p.sort();
        p
    }

    /// The piece containing a curve disjoint from the cut multicurve.
    pub fn locate(&self, tri: &Triangulation, c: &WeightVector) -> Result<usize, NormalError> {
        let single = trace(tri, c)?;
        if single.num_curves() != 1 {
            return Err(NormalError::NotACurve);
        }
        if self.nu.curves().any(|x| x == c) {
            return Err(NormalError::IsCutCurve);
        }
        let expected = self.nu.union(&single);
        let sum = expected.total().expect("non-empty");
        if trace(tri, &sum)? != expected {
            return Err(NormalError::NotDisjoint);
        }
        let arr = Arrangement::new(tri, &sum);
        let ci = arr
            .comps
            .iter()
            .position(|w| w == c)
            .expect("traced union contains the query curve");
        let e = (0..c.len()).find(|&e| c[e] > 0).expect("non-zero curve");
        let q = (0..sum[e] as usize)
            .find(|&q| arr.comp_at(e, q) == ci)
            .unwrap_or_else(|| unreachable!("query curve crosses edge {e}"));
        Ok(self.segment_piece[e][q])
    }
}

/// Cuts the surface along `nu` and reports the complementary pieces.
pub fn cut_pieces(tri: &Triangulation, nu: &Multicurve) -> Result<Cut, NormalError> {
    let v = match nu.total() {
        Some(v) => v,
        None => WeightVector::zero(tri.num_edges()),
    };
    require_admissible(tri, &v)?;
    let arr = Arrangement::new(tri, &v);
    if arr.multicurve() != *nu {
        return Err(NormalError::NotDisjoint);
    }

    let nt = tri.num_triangles();
    let mut corners = Vec::with_capacity(nt);
    let mut base = Vec::with_capacity(nt + 1);
    let mut count = 0;
    for t in 0..nt {
        let n = corner_arcs(tri.triangle_weights(t, &v));
        base.push(count);
        count += 1 + (n[0] + n[1] + n[2]) as usize;
        corners.push(n);
    }
    let corner_region = |t: usize, j: usize, r: usize| -> usize {
        let n = corners[t];
        let before: u32 = n[..j].iter().sum();
        if r < n[j] as usize {
            base[t] + 1 + before as usize + r
        } else {
            base[t]
        }
    };
    let segment_region = |t: usize, j: usize, s: usize| -> usize {
        let w = tri.triangle_weights(t, &v)[j] as usize;
        let n = corners[t];
        if s < n[j] as usize {
            corner_region(t, j, s)
        } else if s <= w - n[(j + 1) % 3] as usize {
            base[t]
        } else {
            corner_region(t, (j + 1) % 3, w - s)
        }
    };

    let mut uf = UnionFind::new(count);
    for e in 0..tri.num_edges() {
        let [(ta, ja), (tb, jb)] = tri.edge_sides(e);
        let ra = tri.triangles()[ta][ja].is_reversed();
        let rb = tri.triangles()[tb][jb].is_reversed();
        let w = v[e] as usize;
        for u in 0..=w {
            let sa = if ra { w - u } else { u };
            let sb = if rb { w - u } else { u };
            uf.union(segment_region(ta, ja, sa), segment_region(tb, jb, sb));
        }
    }

    let mut label = vec![usize::MAX; count];
    let mut region_piece = vec![0; count];
    let mut num_pieces = 0;
    for r in 0..count {
        let root = uf.find(r);
        if label[root] == usize::MAX {
            label[root] = num_pieces;
            num_pieces += 1;
        }
        region_piece[r] = label[root];
    }

    let mut euler = vec![0i64; num_pieces];
    let mut bdry = vec![0i64; num_pieces];
    for &p in &region_piece {
        euler[p] += 1;
    }
    let mut segment_piece = Vec::with_capacity(tri.num_edges());
    for e in 0..tri.num_edges() {
        let [(ta, ja), _] = tri.edge_sides(e);
        let ra = tri.triangles()[ta][ja].is_reversed();
        let w = v[e] as usize;
        let row: Vec<usize> = (0..=w)
            .map(|u| {
                let s = if ra { w - u } else { u };
                region_piece[segment_region(ta, ja, s)]
            })
            .collect();
        for &p in &row {
            euler[p] -= 1;
        }
        segment_piece.push(row);
    }
    let mut vertex_seen = vec![false; tri.num_vertices()];
    for t in 0..nt {
        for j in 0..3 {
            let vx = tri.corner_vertex(t, j);
            if !vertex_seen[vx] {
                vertex_seen[vx] = true;
                let p = region_piece[corner_region(t, j, 0)];
                if tri.is_ideal() {
                    bdry[p] += 1;
                } else {
                    euler[p] += 1;
                }
            }
        }
    }

    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); arr.comps.len()];
    for_each_arc(tri, &v, |arc| {
        let c = arr.comp_at(arc.ends[0].0, arc.ends[0].1);
        for p in [
            region_piece[corner_region(arc.t, arc.j, arc.r)],
            region_piece[corner_region(arc.t, arc.j, arc.r + 1)],
        ] {
            if !sides[c].contains(&p) {
                sides[c].push(p);
            }
        }
    });
    let mut curve_sides = Vec::with_capacity(sides.len());
    for s in &sides {
        let pair = match s.as_slice() {
            [p] => [*p, *p],
            [p, q] => [*p.min(q), *p.max(q)],
            _ => unreachable!("a two-sided curve touches at most two pieces"),
        };
        bdry[pair[0]] += 1;
        bdry[pair[1]] += 1;
        curve_sides.push(pair);
    }

    let pieces = (0..num_pieces)
        .map(|p| {
            let twice_genus = 2 - euler[p] - bdry[p];
            debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
            SurfaceSig::new((twice_genus / 2) as u32, bdry[p] as u32)
        })
        .collect();
    Ok(Cut {
        nu: nu.clone(),
        pieces,
        curves: arr.comps.clone(),
        curve_sides,
        segment_piece,
    })
}
