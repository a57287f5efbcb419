use super::trace::Arrangement;
use super::{is_peripheral, triangle_ok, Triangulation, WeightVector};

/// Every essential simple closed curve whose weights are all at most
/// `max_weight`, in lexicographic order of weight vectors.
pub fn enumerate_curves(tri: &Triangulation, max_weight: u32) -> Vec<WeightVector> {
    let ne = tri.num_edges();
    // triangles whose largest edge index is e are checked once e is assigned
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for (t, sides) in tri.triangles().iter().enumerate() {
        let last = sides.iter().map(|s| s.edge).max().expect("three sides");
        closing[last].push(t);
    }
    let mut out = Vec::new();
    let mut v = WeightVector::zero(ne);
    search(tri, &closing, max_weight, 0, &mut v, &mut out);
    out
}

fn search(
    tri: &Triangulation,
    closing: &[Vec<usize>],
    max_weight: u32,
    e: usize,
    v: &mut WeightVector,
    out: &mut Vec<WeightVector>,
) {
    if e == v.len() {
        if v.is_zero() || is_peripheral(tri, v) {
            return;
        }
        let arr = Arrangement::new(tri, v);
        if arr.comps.len() == 1 {
            out.push(v.clone());
        }
        return;
    }
    for w in 0..=max_weight {
        v.0[e] = w;
        if closing[e]
            .iter()
            .all(|&t| triangle_ok(tri.triangle_weights(t, v)))
        {
            search(tri, closing, max_weight, e + 1, v, out);
        }
    }
    v.0[e] = 0;
}
