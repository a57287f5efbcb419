//! Closed-form quasi-flat ranks and the relative hyperbolicity table.
//!
//! Everything here is integer arithmetic. The independent check of these
//! formulas lives in [`crate::oracle`], which never calls into this module
//! for the values it is meant to verify.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::SurfaceSig;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RankError {
    #[error("k = {k} is outside 1..={max} for the surface {sig}")]
    KOutOfRange { sig: SurfaceSig, k: i64, max: i64 },
    #[error("complexity parameter must be positive, got {0}")]
    NonPositiveXi(i64),
    #[error("surface {sig} has complexity {complexity}, at least {required} is needed")]
    ComplexityTooSmall {
        sig: SurfaceSig,
        complexity: i64,
        required: i64,
    },
}

/// Large-scale geometry of a multicurve graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Hyperbolic,
    RelativelyHyperbolic,
    Thick,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Hyperbolic => "hyperbolic",
            ClassKind::RelativelyHyperbolic => "relatively_hyperbolic",
            ClassKind::Thick => "thick",
        })
    }
}

/// Where a classification came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Closed-form rank plus the printed table.
    Formula,
    /// Exhaustive decomposition search.
    Oracle,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Formula => "formula",
            Source::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub kind: ClassKind,
    pub source: Source,
}

/// `⌈(2x + 1) / 3⌉`, valid for every integer `x`.
pub fn a_of(x: i64) -> i64 {
    ceil_div(2 * x + 1, 3)
}

fn ceil_div(n: i64, d: i64) -> i64 {
    debug_assert!(d > 0);
    -((-n).div_euclid(d))
}

fn floor_div(n: i64, d: i64) -> i64 {
    debug_assert!(d > 0);
    n.div_euclid(d)
}

/// Maximal number of pieces of complexity at least `xi` in a decomposition
/// of `sig` along a multicurve.
///
/// Returns 0 when `xi` exceeds the complexity of the surface and 1 on the
/// closed-surface exception `b = 0, xi = 3g - 3`.
pub fn mu_formula(sig: SurfaceSig, xi: i64) -> Result<i64, RankError> {
    if xi <= 0 {
        return Err(RankError::NonPositiveXi(xi));
    }
    if xi > sig.complexity() {
        return Ok(0);
    }
    let (g, b) = (sig.g as i64, sig.b as i64);
    if b == 0 && xi == 3 * g - 3 {
        return Ok(1);
    }
    let by_complexity = floor_div(3 * g - 2 + b, xi + 1);
    let by_euler = floor_div(2 * g - 2 + b, a_of(xi));
    Ok(by_complexity.min(by_euler))
}

fn check_k(sig: SurfaceSig, k: i64) -> Result<(), RankError> {
    let max = sig.complexity();
    if max < 1 {
        return Err(RankError::ComplexityTooSmall {
            sig,
            complexity: max,
            required: 1,
        });
    }
    if k < 1 || k > max {
        return Err(RankError::KOutOfRange { sig, k, max });
    }
    Ok(())
}

/// Quasi-flat rank `m(g, b, k)` of the `k`-multicurve graph.
pub fn quasiflat_rank(sig: SurfaceSig, k: i64) -> Result<i64, RankError> {
    check_k(sig, k)?;
    let (g, b) = (sig.g as i64, sig.b as i64);
    if b == 0 && k == 1 {
        return Ok(1);
    }
    let by_euler = floor_div(2 * g - 2 + b, a_of(3 * g - 2 + b - k));
    let by_complexity = floor_div(3 * g - 2 + b, 3 * g - 1 + b - k);
    Ok(by_euler.min(by_complexity))
}

/// Least complexity of a connected subsurface that meets every vertex of the
/// `k`-multicurve graph: `3g - 2 + b - k`.
pub fn witness_threshold(sig: SurfaceSig, k: i64) -> Result<i64, RankError> {
    check_k(sig, k)?;
    Ok(sig.complexity() + 1 - k)
}

/// Checks the classification preconditions shared by the formula and the
/// oracle: complexity at least 2 and `1 <= k <= complexity`.
pub fn check_classification_input(sig: SurfaceSig, k: i64) -> Result<(), RankError> {
    if sig.complexity() < 2 {
        return Err(RankError::ComplexityTooSmall {
            sig,
            complexity: sig.complexity(),
            required: 2,
        });
    }
    check_k(sig, k)
}

/// Values of `k` listed by the relative hyperbolicity table for `(g, b)`,
/// before any range filtering. May contain values outside `1..=3g-3+b`.
pub fn table_k_values(sig: SurfaceSig) -> Vec<i64> {
    let (g, b) = (sig.g as i64, sig.b as i64);
    let g_even = g % 2 == 0;
    let b_even = b % 2 == 0;
    if g_even && b_even && b >= 2 {
        vec![(3 * g + b) / 2]
    } else if g_even && b == 0 {
        vec![3 * g / 2, (3 * g + 2) / 2]
    } else if !g_even && (b == 0 || b == 2) {
        vec![(3 * g + 3) / 2]
    } else if !g_even && !b_even && b >= 3 {
        vec![(3 * g + b) / 2]
    } else {
        Vec::new()
    }
}

/// True when `(g, b, k)` is a row of the printed table with `k` in range.
pub fn in_table(sig: SurfaceSig, k: i64) -> bool {
    (1..=sig.complexity()).contains(&k) && table_k_values(sig).contains(&k)
}

/// Classification read off the closed-form rank and the printed table.
///
/// This deliberately reproduces the table verbatim, including the odd-genus
/// closed-surface row that the decomposition oracle disagrees with; see
/// [`crate::oracle::discrepancies`].
pub fn classify_paper(sig: SurfaceSig, k: i64) -> Result<Classification, RankError> {
    check_classification_input(sig, k)?;
    let kind = if quasiflat_rank(sig, k)? == 1 {
        ClassKind::Hyperbolic
    } else if in_table(sig, k) {
        ClassKind::RelativelyHyperbolic
    } else {
        ClassKind::Thick
    };
    Ok(Classification {
        kind,
        source: Source::Formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: u32, b: u32) -> SurfaceSig {
        SurfaceSig::new(g, b)
    }

    #[test]
    fn a_of_values() {
        assert_eq!(a_of(1), 1);
        assert_eq!(a_of(2), 2);
        assert_eq!(a_of(4), 3);
        assert_eq!(a_of(0), 1);
        assert_eq!(a_of(-1), 0);
        assert_eq!(a_of(-2), -1);
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu_formula(s(2, 0), 3), Ok(1));
        assert_eq!(mu_formula(s(2, 0), 1), Ok(2));
        assert_eq!(mu_formula(s(0, 7), 1), Ok(2));
        assert_eq!(mu_formula(s(2, 0), 4), Ok(0));
        assert_eq!(mu_formula(s(2, 0), 0), Err(RankError::NonPositiveXi(0)));
    }

    #[test]
    fn rank_values() {
        assert_eq!(quasiflat_rank(s(2, 0), 3), Ok(2));
        assert_eq!(quasiflat_rank(s(0, 5), 2), Ok(1));
        assert_eq!(quasiflat_rank(s(4, 0), 1), Ok(1));
        assert!(matches!(
            quasiflat_rank(s(0, 5), 3),
            Err(RankError::KOutOfRange { .. })
        ));
        assert!(quasiflat_rank(s(1, 0), 1).is_err());
    }

    #[test]
    fn witness_threshold_values() {
        assert_eq!(witness_threshold(s(0, 5), 2), Ok(1));
        assert_eq!(witness_threshold(s(3, 0), 5), Ok(2));
        assert_eq!(witness_threshold(s(2, 2), 4), Ok(2));
    }

    #[test]
    fn printed_table_classification_values() {
        let kind = |g, b, k| classify_paper(s(g, b), k).unwrap().kind;
        assert_eq!(kind(2, 4, 5), ClassKind::RelativelyHyperbolic);
        assert_eq!(kind(2, 0, 3), ClassKind::RelativelyHyperbolic);
        assert_eq!(kind(2, 0, 2), ClassKind::Hyperbolic);
        assert_eq!(kind(3, 0, 6), ClassKind::RelativelyHyperbolic);
        assert_eq!(kind(3, 0, 5), ClassKind::Thick);
        assert_eq!(
            classify_paper(s(2, 0), 3).unwrap().source,
            Source::Formula
        );
    }

    #[test]
    fn out_of_range_table_rows_do_not_match() {
        // (3g+2)/2 = 4 exceeds the complexity 3 of the genus-two closed surface.
        assert_eq!(table_k_values(s(2, 0)), vec![3, 4]);
        assert!(!in_table(s(2, 0), 4));
        assert!(classify_paper(s(2, 0), 4).is_err());
    }

    #[test]
    fn classification_rejects_small_surfaces() {
        assert!(matches!(
            classify_paper(s(1, 1), 1),
            Err(RankError::ComplexityTooSmall { .. })
        ));
        assert!(matches!(
            classify_paper(s(0, 4), 1),
            Err(RankError::ComplexityTooSmall { .. })
        ));
    }

    #[test]
    fn classification_is_consistent_with_rank() {
        for g in 0..=6 {
            for b in 0..=7 {
                let sig = s(g, b);
                if sig.complexity() < 2 {
                    continue;
                }
                for k in 1..=sig.complexity() {
                    let c = classify_paper(sig, k).unwrap();
                    let m = quasiflat_rank(sig, k).unwrap();
                    match c.kind {
                        ClassKind::Hyperbolic => assert_eq!(m, 1),
                        ClassKind::RelativelyHyperbolic if !(g % 2 == 1 && b == 0) => {
                            assert_eq!(m, 2, "{sig} k={k}")
                        }
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn rank_endpoints() {
        for g in 0..=8u32 {
            for b in 0..=8u32 {
                let sig = s(g, b);
                let xi0 = sig.complexity();
                if xi0 >= 2 {
                    let expect = (3 * g as i64 - 2 + b as i64).div_euclid(2);
                    assert_eq!(quasiflat_rank(sig, xi0).unwrap(), expect, "{sig}");
                }
                if xi0 >= 1 {
                    assert_eq!(quasiflat_rank(sig, 1).unwrap(), 1, "{sig}");
                }
            }
        }
    }

    #[test]
    fn mu_is_non_increasing_in_xi() {
        for g in 0..=8 {
            for b in 0..=8 {
                let sig = s(g, b);
                let mut prev = i64::MAX;
                for xi in 1..=sig.complexity() + 2 {
                    let m = mu_formula(sig, xi).unwrap();
                    assert!(m <= prev, "{sig} xi={xi}");
                    prev = m;
                }
            }
        }
    }
}
