//! The per-parity descriptions of the integers satisfying conditions (A)
//! and (B), checked against the decomposition oracle.

use multicurve::oracle::{condition_a, condition_b};
use multicurve::surface::SurfaceSig;

fn both(sig: SurfaceSig) -> Vec<i64> {
    (1..=sig.complexity())
        .filter(|&xi| condition_a(sig, xi) && condition_b(sig, xi))
        .collect()
}

fn in_range(sig: SurfaceSig, xi: i64) -> Vec<i64> {
    if (1..=sig.complexity()).contains(&xi) {
        vec![xi]
    } else {
        Vec::new()
    }
}

fn surfaces() -> impl Iterator<Item = SurfaceSig> {
    (0..=5u32)
        .flat_map(|g| (0..=6u32).map(move |b| SurfaceSig::new(g, b)))
        .filter(|s| s.complexity() >= 2)
}

#[test]
fn matching_parities_have_a_unique_threshold() {
    for sig in surfaces() {
        let (g, b) = (sig.g as i64, sig.b as i64);
        if (g % 2 == 0 && b >= 2 && b % 2 == 0) || (g % 2 == 1 && b >= 3 && b % 2 == 1) {
            assert_eq!(both(sig), in_range(sig, (3 * g - 4 + b) / 2), "{sig}");
        }
    }
}

#[test]
fn mismatched_parities_have_none() {
    for sig in surfaces() {
        let (g, b) = (sig.g as i64, sig.b as i64);
        if (g % 2 == 1 && b == 1)
            || (g % 2 == 0 && b % 2 == 1)
            || (g % 2 == 1 && b >= 4 && b % 2 == 0)
        {
            assert_eq!(both(sig), Vec::<i64>::new(), "{sig}");
        }
    }
}

#[test]
fn even_genus_closed_surfaces() {
    for g in (2..=6u32).step_by(2) {
        let sig = SurfaceSig::new(g, 0);
        let g = g as i64;
        for xi in both(sig) {
            assert!(xi == (3 * g - 4) / 2 || xi == (3 * g - 6) / 2, "{sig}: {xi}");
        }
    }
}

#[test]
fn odd_genus_two_boundaries() {
    for g in (1..=5u32).step_by(2) {
        let sig = SurfaceSig::new(g, 2);
        assert_eq!(both(sig), in_range(sig, (3 * g as i64 - 3) / 2), "{sig}");
    }
}

#[test]
fn odd_genus_closed_surfaces() {
    for g in (3..=7u32).step_by(2) {
        let sig = SurfaceSig::new(g, 0);
        assert_eq!(both(sig), vec![(3 * g as i64 - 5) / 2], "{sig}");
    }
}
