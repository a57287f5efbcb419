//! Empirical witness checks for pieces of a cut.

use serde::Serialize;

use super::{CurveLab, GraphError};
use crate::normal::{cut_pieces, disjoint, Multicurve, WeightVector};
use crate::surface::PieceSig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub k: usize,
    pub piece: PieceSig,
    pub piece_complexity: i64,
    /// `3g - 2 + b - k`.
    pub threshold: i64,
    /// The piece is at least as complex as the threshold.
    pub predicted_witness: bool,
    /// Number of inventory `k`-multicurves examined.
    pub vertices_checked: usize,
    /// Every examined vertex has a curve meeting the piece.
    pub all_meet: bool,
    /// The first vertex, in inventory order, missing the piece.
    pub avoiding_vertex: Option<Multicurve>,
}

impl WitnessReport {
    /// The inventory verdict agrees with the complexity threshold.
    pub fn consistent(&self) -> bool {
        self.predicted_witness == self.all_meet
    }
}

impl CurveLab {
    /// Whether a curve meets piece `piece` of `Σ ∖ nu`, where `nu` is the
    /// whole boundary of that piece. Curves of `nu` itself do not.
    fn meets_piece(
        &self,
        nu: &Multicurve,
        cut: &crate::normal::Cut,
        piece: usize,
        c: &WeightVector,
    ) -> Result<bool, GraphError> {
        if nu.curves().any(|x| x == c) {
            return Ok(false);
        }
        let single = Multicurve::from_curves([c]);
        if !disjoint(self.triangulation(), nu, &single)? {
            return Ok(true);
        }
        Ok(cut.locate(self.triangulation(), c)? == piece)
    }

    /// Checks, over every `k`-multicurve of the inventory, whether each one
    /// meets the given piece of `Σ ∖ nu`. `k` may equal `ξ₀` here, since only
    /// vertices are needed.
    ///
    /// Every curve of `nu` must bound the chosen piece.
    pub fn witness_empirical_check(
        &self,
        k: usize,
        nu: &Multicurve,
        piece: usize,
    ) -> Result<WitnessReport, GraphError> {
        let xi0 = self.xi0();
        if k == 0 || k > xi0 {
            return Err(GraphError::UnsupportedKind(format!(
                "witness checks need 1 <= k <= {xi0}, got {k}"
            )));
        }
        let cut = cut_pieces(self.triangulation(), nu)?;
        let sig = *cut.pieces.get(piece).ok_or_else(|| {
            GraphError::InvalidPiece(format!("the cut has {} pieces, not {}", cut.pieces.len(), piece + 1))
        })?;
        if nu.components.iter().any(|c| c.mult != 1) {
            return Err(GraphError::InvalidPiece("cut curves must be distinct".into()));
        }
        if let Some(i) = cut.curve_sides.iter().position(|s| !s.contains(&piece)) {
            return Err(GraphError::InvalidPiece(format!(
                "cut curve {} does not bound piece {piece}",
                cut.curves[i]
            )));
        }

        let meets: Vec<bool> = self
            .curves()
            .iter()
            .map(|c| self.meets_piece(nu, &cut, piece, c))
            .collect::<Result<_, _>>()?;
        let vertices = self.multicurve_vertices(k);
        let avoiding = vertices.iter().find(|v| v.iter().all(|&i| !meets[i]));
        let surface = self.surface();
        let threshold = surface.complexity() + 1 - k as i64;
        Ok(WitnessReport {
            k,
            piece: sig,
            piece_complexity: sig.complexity(),
            threshold,
            predicted_witness: sig.complexity() >= threshold,
            vertices_checked: vertices.len(),
            all_meet: avoiding.is_none(),
            avoiding_vertex: avoiding.map(|v| self.multicurve(v)),
        })
    }
}
