//! Signatures of compact orientable surfaces.
//!
//! A surface `Σ_{g,b}` is recorded by its genus `g` and its number of
//! boundary components `b`. Complexity and Euler characteristic are always
//! derived from these two numbers and never stored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Genus and boundary count of a connected compact orientable surface.
///
/// The derived ordering is lexicographic in `(g, b)`, which is the canonical
/// order used for piece multisets throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub g: u32,
    pub b: u32,
}

/// A connected piece of a decomposition. Same data as [`SurfaceSig`].
pub type PieceSig = SurfaceSig;

impl SurfaceSig {
    pub const fn new(g: u32, b: u32) -> Self {
        SurfaceSig { g, b }
    }

    /// `3g - 3 + b`, the number of curves in a pants decomposition.
    /// Negative for the sphere, disk and annulus.
    pub fn complexity(self) -> i64 {
        3 * self.g as i64 - 3 + self.b as i64
    }

    /// `2 - 2g - b`.
    pub fn euler(self) -> i64 {
        2 - 2 * self.g as i64 - self.b as i64
    }

    /// Pieces of a decomposition must have negative Euler characteristic.
    pub fn is_essential_piece(self) -> bool {
        self.euler() <= -1
    }

    /// Graphs of multicurves are only defined once there is at least one curve.
    pub fn is_graph_admissible(self) -> bool {
        self.complexity() >= 1
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.g, self.b)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("expected a surface signature of the form `g,b`, got `{0}`")]
pub struct ParseSigError(pub String);

impl FromStr for SurfaceSig {
    type Err = ParseSigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSigError(s.to_string());
        let (g, b) = s.split_once(',').ok_or_else(err)?;
        let g = g.trim().parse().map_err(|_| err())?;
        let b = b.trim().parse().map_err(|_| err())?;
        Ok(SurfaceSig { g, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complexity_values() {
        assert_eq!(SurfaceSig::new(2, 0).complexity(), 3);
        assert_eq!(SurfaceSig::new(0, 4).complexity(), 1);
        assert_eq!(SurfaceSig::new(1, 1).complexity(), 1);
    }

    #[test]
    fn euler_values() {
        assert_eq!(SurfaceSig::new(2, 0).euler(), -2);
        assert_eq!(SurfaceSig::new(0, 3).euler(), -1);
        assert_eq!(SurfaceSig::new(1, 2).euler(), -2);
    }

    #[test]
    fn essential_pieces() {
        assert!(SurfaceSig::new(0, 3).is_essential_piece());
        assert!(!SurfaceSig::new(0, 2).is_essential_piece());
        assert!(SurfaceSig::new(1, 1).is_essential_piece());
        assert!(!SurfaceSig::new(1, 0).is_essential_piece());
    }

    #[test]
    fn parse_and_display() {
        let s: SurfaceSig = "2, 3".parse().unwrap();
        assert_eq!(s, SurfaceSig::new(2, 3));
        assert_eq!(s.to_string(), "2,3");
        assert!("2".parse::<SurfaceSig>().is_err());
        assert!("a,1".parse::<SurfaceSig>().is_err());
        assert!("-1,1".parse::<SurfaceSig>().is_err());
    }

    #[test]
    fn json_form() {
        let s = SurfaceSig::new(1, 2);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"g":1,"b":2}"#);
    }

    proptest! {
        #[test]
        fn complexity_plus_euler_is_genus_minus_one(g in 0u32..200, b in 0u32..200) {
            let s = SurfaceSig::new(g, b);
            prop_assert_eq!(s.complexity() + s.euler(), g as i64 - 1);
        }

        #[test]
        fn positive_complexity_is_essential(g in 0u32..50, b in 0u32..50) {
            let s = SurfaceSig::new(g, b);
            if s.complexity() >= 1 {
                prop_assert!(s.is_essential_piece());
            }
        }
    }
}
