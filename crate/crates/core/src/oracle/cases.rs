//! The explicit cuts used to build large decompositions, one family per
//! residue of `ξ` modulo 3, plus the low-genus fallback.

use serde::Serialize;

use crate::surface::{PieceSig, SurfaceSig};

/// One explicit cut of a surface, with the complexities it is meant to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseConstruction {
    pub label: &'static str,
    pub pieces: Vec<PieceSig>,
    /// Complexity each piece is claimed to have, in the same order.
    pub claimed_complexities: Vec<i64>,
}

fn sig(g: i64, b: i64) -> Option<SurfaceSig> {
    (g >= 0 && b >= 0).then(|| SurfaceSig::new(g as u32, b as u32))
}

fn pair(label: &'static str, x: Option<SurfaceSig>, y: Option<SurfaceSig>, xi: i64, rest: i64)
    -> Option<CaseConstruction>
{
    let (x, y) = (x?, y?);
    y.is_essential_piece().then(|| CaseConstruction {
        label,
        pieces: vec![x, y],
        claimed_complexities: vec![xi, rest],
    })
}

/// Every construction whose side conditions hold for `(target, xi)`.
///
/// Two-piece cuts are only listed when the second piece is essential, i.e.
/// `xi <= complexity(target) - 1`; that piece then has complexity
/// `complexity(target) - xi - 1`.
pub fn theorem_constructions(target: SurfaceSig, xi: i64) -> Vec<CaseConstruction> {
    let (g, b) = (target.g as i64, target.b as i64);
    let xi0 = target.complexity();
    let mut out = Vec::new();
    if xi < 1 || xi > xi0 {
        return out;
    }
    let rest = xi0 - xi - 1;

    let low_genus = || {
        (3 * g - 3 < xi)
            .then(|| pair("low-genus", sig(g, xi - 3 * g + 3), sig(0, b - xi + 3 * g - 1), xi, rest))
            .flatten()
    };

    match xi.rem_euclid(3) {
        1 => {
            let h = (xi + 2) / 3;
            let c = if g >= h {
                pair("mod1", sig(h, 1), sig(g - h, b + 1), xi, rest)
            } else {
                low_genus()
            };
            out.extend(c);
        }
        2 => {
            let h = (xi + 1) / 3;
            if b > 0 {
                let c = if g >= h {
                    pair("mod2", sig(h, 2), sig(g - h, b), xi, rest)
                } else {
                    low_genus()
                };
                out.extend(c);
            } else if g >= 2 {
                out.push(non_separating(target));
            }
        }
        _ => {
            let h = xi / 3;
            if b >= 2 {
                let c = if g >= h {
                    pair("mod0", sig(h, 3), sig(g - h, b - 1), xi, rest)
                } else {
                    low_genus()
                };
                out.extend(c);
            } else if b == 1 {
                // two cut curves; the second piece keeps two boundary circles
                if let (Some(x), Some(y)) = (sig(h, 3), sig(g - 1 - h, 2)) {
                    if y.is_essential_piece() {
                        out.push(CaseConstruction {
                            label: "mod0-one-boundary",
                            pieces: vec![x, y],
                            claimed_complexities: vec![xi, xi0 - xi - 2],
                        });
                    }
                }
            } else if g >= 2 {
                out.push(non_separating(target));
            }
        }
    }
    out
}

fn non_separating(target: SurfaceSig) -> CaseConstruction {
    let piece = SurfaceSig::new(target.g - 1, 2);
    CaseConstruction {
        label: "non-separating",
        pieces: vec![piece],
        claimed_complexities: vec![target.complexity() - 1],
    }
}
