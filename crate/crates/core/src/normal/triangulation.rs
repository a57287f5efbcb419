use serde::{Deserialize, Serialize};

use super::{NormalError, UnionFind, WeightVector};
use crate::surface::SurfaceSig;

/// One side of a triangle: the edge it lies on and whether the triangle's
/// counter-clockwise boundary runs along (`side = 0`) or against
/// (`side = 1`) the edge's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Side {
    pub edge: usize,
    pub side: u8,
}

impl Side {
    fn new(edge: usize, reversed: bool) -> Self {
        Side {
            edge,
            side: reversed as u8,
        }
    }

    pub fn is_reversed(self) -> bool {
        self.side == 1
    }
}

/// A triangulation of `Σ_{g,b}`.
///
/// Side `j` of a triangle runs from corner `j` to corner `j + 1`
/// (indices mod 3), counter-clockwise. When `b > 0` every vertex is a
/// puncture standing in for a boundary component; when `b = 0` there is a
/// single genuine vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    triangles: Vec<[Side; 3]>,
    num_edges: usize,
    surface: SurfaceSig,
    corner_vertex: Vec<[usize; 3]>,
    num_vertices: usize,
    /// `(triangle, side index)` for the two occurrences of each edge.
    edge_sides: Vec<[(usize, usize); 2]>,
    links: Vec<WeightVector>,
}

#[derive(Serialize, Deserialize)]
struct RawTriangulation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    surface: Option<SurfaceSig>,
    triangles: Vec<[Side; 3]>,
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawTriangulation {
            surface: Some(self.surface),
            triangles: self.triangles.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawTriangulation::deserialize(d)?;
        Triangulation::from_triangles(raw.triangles, raw.surface).map_err(serde::de::Error::custom)
    }
}

impl Triangulation {
    /// Validates a gluing of triangles and derives its vertices.
    ///
    /// Without an explicit surface the signature is read off the gluing,
    /// treating every vertex as a puncture.
    pub fn from_triangles(
        triangles: Vec<[Side; 3]>,
        surface: Option<SurfaceSig>,
    ) -> Result<Self, NormalError> {
        let t = triangles.len();
        let num_edges = triangles
            .iter()
            .flatten()
            .map(|s| s.edge + 1)
            .max()
            .unwrap_or(0);
        let mut seen: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_edges];
        for (ti, tri) in triangles.iter().enumerate() {
            for (j, s) in tri.iter().enumerate() {
                if s.side > 1 {
                    return Err(NormalError::BadTriangulation(format!(
                        "side flag {} on triangle {ti}",
                        s.side
                    )));
                }
                seen[s.edge].push((ti, j));
            }
        }
        let mut edge_sides = Vec::with_capacity(num_edges);
        for (e, occ) in seen.iter().enumerate() {
            if occ.len() != 2 {
                return Err(NormalError::BadTriangulation(format!(
                    "edge {e} appears {} times",
                    occ.len()
                )));
            }
            let flags = occ.iter().map(|&(ti, j)| triangles[ti][j].side).sum::<u8>();
            if flags != 1 {
                return Err(NormalError::BadTriangulation(format!(
                    "edge {e} is glued without respecting orientation"
                )));
            }
            edge_sides.push([occ[0], occ[1]]);
        }

        // corners are 0..3t, edge tails 3t + 2e, heads 3t + 2e + 1
        let mut uf = UnionFind::new(3 * t + 2 * num_edges);
        for (ti, tri) in triangles.iter().enumerate() {
            for (j, s) in tri.iter().enumerate() {
                let (start, end) = if s.is_reversed() {
                    (3 * t + 2 * s.edge + 1, 3 * t + 2 * s.edge)
                } else {
                    (3 * t + 2 * s.edge, 3 * t + 2 * s.edge + 1)
                };
                uf.union(3 * ti + j, start);
                uf.union(3 * ti + (j + 1) % 3, end);
            }
        }
        let mut label = vec![usize::MAX; 3 * t + 2 * num_edges];
        let mut num_vertices = 0;
        let mut corner_vertex = vec![[0; 3]; t];
        for ti in 0..t {
            for j in 0..3 {
                let r = uf.find(3 * ti + j);
                if label[r] == usize::MAX {
                    label[r] = num_vertices;
                    num_vertices += 1;
                }
                corner_vertex[ti][j] = label[r];
            }
        }
        let mut links = vec![WeightVector::zero(num_edges); num_vertices];
        for e in 0..num_edges {
            for end in [3 * t + 2 * e, 3 * t + 2 * e + 1] {
                links[label[uf.find(end)]].0[e] += 1;
            }
        }

        let closed_euler = num_vertices as i64 - num_edges as i64 + t as i64;
        if closed_euler % 2 != 0 || closed_euler > 2 {
            return Err(NormalError::BadTriangulation(format!(
                "V - E + T = {closed_euler} is not the Euler characteristic of a closed surface"
            )));
        }
        let genus = ((2 - closed_euler) / 2) as u32;
        let surface = match surface {
            Some(s) => {
                let ok = s.g == genus
                    && if s.b == 0 {
                        num_vertices == 1
                    } else {
                        s.b as usize == num_vertices
                    };
                if !ok {
                    return Err(NormalError::BadTriangulation(format!(
                        "gluing has genus {genus} and {num_vertices} vertices, not a model of {s}"
                    )));
                }
                s
            }
            None => SurfaceSig::new(genus, num_vertices as u32),
        };
        Ok(Triangulation {
            triangles,
            num_edges,
            surface,
            corner_vertex,
            num_vertices,
            edge_sides,
            links,
        })
    }

    /// The fixed model triangulation of `Σ_{g,b}`.
    ///
    /// * `g >= 1`: the `4g`-gon with sides `a_1 b_1 a_1⁻¹ b_1⁻¹ …`, fanned
    ///   from its first corner; edge `2i` is `a_{i+1}`, edge `2i + 1` is
    ///   `b_{i+1}`, diagonals follow. Extra punctures are added by starring
    ///   triangles `0, 1, 2, …` in turn.
    /// * `g = 0`, `b >= 3`: two `b`-gons glued along their boundary, the
    ///   front fanned from puncture 0 and the back from puncture 1. Edge
    ///   `i < b` joins punctures `i` and `i + 1`.
    pub fn generate(sig: SurfaceSig) -> Result<Self, NormalError> {
        let (g, b) = (sig.g as usize, sig.b as usize);
        let mut next_edge;
        let triangles = if g >= 1 {
            let sides: Vec<Side> = (0..4 * g)
                .map(|j| {
                    let handle = j / 4;
                    match j % 4 {
                        0 => Side::new(2 * handle, false),
                        1 => Side::new(2 * handle + 1, false),
                        2 => Side::new(2 * handle, true),
                        _ => Side::new(2 * handle + 1, true),
                    }
                })
                .collect();
            next_edge = 2 * g;
            let mut tris = fan(&sides, &mut next_edge);
            for i in 0..b.saturating_sub(1) {
                let which = i % tris.len();
                star(&mut tris, which, &mut next_edge);
            }
            tris
        } else if b >= 3 {
            next_edge = b;
            let front: Vec<Side> = (0..b).map(|i| Side::new(i, false)).collect();
            // back face read counter-clockwise from outside: 1, 0, b-1, …, 2
            let back: Vec<Side> = (0..b)
                .map(|m| {
                    let to = (1 + 2 * b - m - 1) % b;
                    Side::new(to, true)
                })
                .collect();
            let mut tris = fan(&front, &mut next_edge);
            tris.extend(fan(&back, &mut next_edge));
            tris
        } else {
            return Err(NormalError::UnsupportedSurface(sig));
        };
        debug_assert_eq!(next_edge, triangles.len() * 3 / 2);
        Triangulation::from_triangles(triangles, Some(sig))
    }

    pub fn surface(&self) -> SurfaceSig {
        self.surface
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    /// Vertices are punctures (removed) rather than points of the surface.
    pub fn is_ideal(&self) -> bool {
        self.surface.b > 0
    }

    pub(crate) fn corner_vertex(&self, t: usize, j: usize) -> usize {
        self.corner_vertex[t][j]
    }

    pub(crate) fn edge_sides(&self, e: usize) -> [(usize, usize); 2] {
        self.edge_sides[e]
    }

    /// Normal coordinates of the small loop around each vertex.
    pub fn vertex_links(&self) -> &[WeightVector] {
        &self.links
    }

    /// Edge weights `(w_0, w_1, w_2)` of triangle `t`, in side order.
    pub(crate) fn triangle_weights(&self, t: usize, v: &WeightVector) -> [u32; 3] {
        let tri = &self.triangles[t];
        [v[tri[0].edge], v[tri[1].edge], v[tri[2].edge]]
    }
}

/// Fans a polygon from its first corner. `sides[j]` runs from corner `j` to
/// corner `j + 1`; diagonals get fresh edge ids oriented away from corner 0.
fn fan(sides: &[Side], next_edge: &mut usize) -> Vec<[Side; 3]> {
    let n = sides.len();
    let diag: Vec<usize> = (0..n)
        .map(|j| {
            if (2..=n - 2).contains(&j) {
                *next_edge += 1;
                *next_edge - 1
            } else {
                usize::MAX
            }
        })
        .collect();
    (1..=n - 2)
        .map(|j| {
            let first = if j == 1 {
                sides[0]
            } else {
                Side::new(diag[j], false)
            };
            let third = if j + 1 == n - 1 {
                sides[n - 1]
            } else {
                Side::new(diag[j + 1], true)
            };
            [first, sides[j], third]
        })
        .collect()
}

/// Adds a vertex inside triangle `t`, replacing it by three triangles.
fn star(tris: &mut Vec<[Side; 3]>, t: usize, next_edge: &mut usize) {
    let [s0, s1, s2] = tris[t];
    // spoke i runs from corner i to the new vertex
    let spoke = [*next_edge, *next_edge + 1, *next_edge + 2];
    *next_edge += 3;
    tris[t] = [s0, Side::new(spoke[1], false), Side::new(spoke[0], true)];
    tris.push([s1, Side::new(spoke[2], false), Side::new(spoke[1], true)]);
    tris.push([s2, Side::new(spoke[0], false), Side::new(spoke[2], true)]);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: u32, b: u32) -> SurfaceSig {
        SurfaceSig::new(g, b)
    }

    #[test]
    fn counts() {
        let t = Triangulation::generate(s(1, 1)).unwrap();
        assert_eq!((t.num_triangles(), t.num_edges()), (2, 3));
        let t = Triangulation::generate(s(0, 4)).unwrap();
        assert_eq!((t.num_triangles(), t.num_edges()), (4, 6));
        let t = Triangulation::generate(s(0, 5)).unwrap();
        assert_eq!((t.num_triangles(), t.num_edges()), (6, 9));
    }

    #[test]
    fn every_supported_signature_is_consistent() {
        for g in 0..=4 {
            for b in 0..=6 {
                let sig = s(g, b);
                match Triangulation::generate(sig) {
                    Ok(t) => {
                        assert_eq!(t.surface(), sig);
                        assert_eq!(3 * t.num_triangles(), 2 * t.num_edges());
                        let v = t.num_vertices() as i64;
                        assert_eq!(v - t.num_edges() as i64 + t.num_triangles() as i64, 2 - 2 * g as i64);
                        if b == 0 {
                            assert_eq!(v, 1);
                            assert_eq!(t.num_triangles() as i64, 4 * g as i64 - 2);
                        } else {
                            assert_eq!(v, b as i64);
                            assert_eq!(-(t.num_triangles() as i64) / 2, sig.euler());
                        }
                        for link in t.vertex_links() {
                            assert!(super::super::admissible(&t, link).unwrap());
                        }
                    }
                    Err(_) => assert!(g == 0 && b < 3),
                }
            }
        }
    }

    #[test]
    fn tetrahedron_for_four_punctures() {
        let t = Triangulation::generate(s(0, 4)).unwrap();
        // every pair of punctures is joined by exactly one edge
        let mut pairs: Vec<(usize, usize)> = t
            .vertex_links()
            .iter()
            .enumerate()
            .flat_map(|(v, link)| {
                (0..t.num_edges())
                    .filter(move |&e| link[e] == 1)
                    .map(move |e| (e, v))
            })
            .collect();
        pairs.sort();
        assert_eq!(pairs.len(), 12);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let t = Triangulation::generate(s(1, 2)).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains(r#""triangles":[[{"edge":0,"side":0}"#));
        let back: Triangulation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);

        let bad = r#"{"triangles":[[{"edge":0,"side":0},{"edge":1,"side":0},{"edge":2,"side":0}]]}"#;
        assert!(serde_json::from_str::<Triangulation>(bad).is_err());
    }

    #[test]
    fn unsupported() {
        assert!(matches!(
            Triangulation::generate(s(0, 2)),
            Err(NormalError::UnsupportedSurface(_))
        ));
    }
}
