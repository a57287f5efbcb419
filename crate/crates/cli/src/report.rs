//! Range sweeps: the classification table, formula verification and the
//! discrepancy report.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::args::{Format, Range};
use crate::{to_json, Output, MISMATCH};
use multicurve::oracle::{classifiable_surfaces, classify_oracle, discrepancies as find_discrepancies, mu_oracle};
use multicurve::rank::{classify_paper, mu_formula, quasiflat_rank, witness_threshold, ClassKind};
use multicurve::surface::SurfaceSig;

#[derive(Debug, Serialize)]
pub struct ReportRow {
    pub g: u32,
    pub b: u32,
    pub k: i64,
    pub rank_formula: i64,
    pub rank_oracle: i64,
    pub classification_formula: ClassKind,
    pub classification_oracle: ClassKind,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    g: u32,
    b: u32,
    xi: i64,
    mu_formula: i64,
    mu_oracle: i64,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Debug, Serialize)]
struct IdentityRow {
    g: u32,
    b: u32,
    k: i64,
    rank: i64,
    mu: i64,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Debug, Serialize)]
struct DiscrepancyRow {
    g: u32,
    b: u32,
    k: i64,
    formula: ClassKind,
    oracle: ClassKind,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Rank read off the oracle: `μ` at the witness threshold, or 1 for the curve
/// graph of a closed surface.
fn rank_oracle(sig: SurfaceSig, k: i64) -> Result<i64, String> {
    if sig.b == 0 && k == 1 {
        return Ok(1);
    }
    mu_oracle(sig, witness_threshold(sig, k).map_err(err)?).map_err(err)
}

/// Every valid `(g, b, ξ)` with `ξ ≥ 1` in range.
fn xi_triples(range: Range) -> impl Iterator<Item = (SurfaceSig, i64)> {
    (0..=range.gmax)
        .flat_map(move |g| (0..=range.bmax).map(move |b| SurfaceSig::new(g, b)))
        .filter(|s| s.complexity() >= 1)
        .flat_map(|s| (1..=s.complexity()).map(move |x| (s, x)))
}

fn csv<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String, String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.serialize(r).map_err(err)?;
    }
    String::from_utf8(w.into_inner().map_err(err)?).map_err(err)
}

fn emit<T: Serialize>(
    format: Format,
    header: &[&str],
    rows: &[T],
    json_body: impl FnOnce() -> serde_json::Value,
) -> Result<String, String> {
    match format {
        Format::Csv => csv(header, rows),
        Format::Json => Ok(to_json(&json_body())),
        Format::Dot => Err("this command supports csv and json".into()),
    }
}

pub fn table_rows(range: Range) -> Result<Vec<ReportRow>, String> {
    let mut rows = Vec::new();
    for sig in classifiable_surfaces(range.gmax, range.bmax) {
        for k in 1..=sig.complexity() {
            let rank_formula = quasiflat_rank(sig, k).map_err(err)?;
            let rank_oracle = rank_oracle(sig, k)?;
            let f = classify_paper(sig, k).map_err(err)?.kind;
            let o = classify_oracle(sig, k).map_err(err)?.kind;
            rows.push(ReportRow {
                g: sig.g,
                b: sig.b,
                k,
                rank_formula,
                rank_oracle,
                classification_formula: f,
                classification_oracle: o,
                matches: rank_formula == rank_oracle && f == o,
            });
        }
    }
    Ok(rows)
}

/// The table is a report, so disagreements are data and the exit code is 0.
pub fn table(range: Range, format: Format) -> Result<Output, String> {
    let rows = table_rows(range)?;
    let text = emit(
        format,
        &[
            "g",
            "b",
            "k",
            "rank_formula",
            "rank_oracle",
            "classification_formula",
            "classification_oracle",
            "match",
        ],
        &rows,
        || {
            let mut formula: BTreeMap<String, usize> = BTreeMap::new();
            let mut oracle: BTreeMap<String, usize> = BTreeMap::new();
            for kind in [ClassKind::Hyperbolic, ClassKind::RelativelyHyperbolic, ClassKind::Thick] {
                formula.insert(kind.to_string(), 0);
                oracle.insert(kind.to_string(), 0);
            }
            for r in &rows {
                *formula.entry(r.classification_formula.to_string()).or_default() += 1;
                *oracle.entry(r.classification_oracle.to_string()).or_default() += 1;
            }
            json!({
                "rows": rows,
                "summary": {
                    "rows": rows.len(),
                    "mismatches": rows.iter().filter(|r| !r.matches).count(),
                    "formula": formula,
                    "oracle": oracle,
                }
            })
        },
    )?;
    Ok(Output::ok(text))
}

fn verify_rows(range: Range) -> Result<Vec<VerifyRow>, String> {
    xi_triples(range)
        .map(|(s, xi)| {
            let f = mu_formula(s, xi).map_err(err)?;
            let o = mu_oracle(s, xi).map_err(err)?;
            Ok(VerifyRow {
                g: s.g,
                b: s.b,
                xi,
                mu_formula: f,
                mu_oracle: o,
                matches: f == o,
            })
        })
        .collect()
}

fn identity_rows(range: Range) -> Result<Vec<IdentityRow>, String> {
    xi_triples(range)
        .map(|(s, k)| {
            let rank = quasiflat_rank(s, k).map_err(err)?;
            let mu = if s.b == 0 && k == 1 {
                1
            } else {
                mu_formula(s, witness_threshold(s, k).map_err(err)?).map_err(err)?
            };
            Ok(IdentityRow {
                g: s.g,
                b: s.b,
                k,
                rank,
                mu,
                matches: rank == mu,
            })
        })
        .collect()
}

/// Exit 1 if the closed form and the oracle disagree anywhere, or if the
/// rank identity fails; the identity summary goes to stderr.
pub fn verify(range: Range, format: Format) -> Result<Output, String> {
    let rows = verify_rows(range)?;
    let identity = identity_rows(range)?;
    let bad = rows.iter().filter(|r| !r.matches).count();
    let bad_identity = identity.iter().filter(|r| !r.matches).count();
    eprintln!(
        "mu: {}/{} agree; rank identity: {}/{} agree",
        rows.len() - bad,
        rows.len(),
        identity.len() - bad_identity,
        identity.len()
    );
    let text = emit(
        format,
        &["g", "b", "xi", "mu_formula", "mu_oracle", "match"],
        &rows,
        || json!({ "rows": rows, "identity": identity, "mismatches": bad + bad_identity }),
    )?;
    Ok(Output {
        text,
        status: if bad + bad_identity == 0 { 0 } else { MISMATCH },
    })
}

pub fn identity(range: Range, format: Format) -> Result<Output, String> {
    let rows = identity_rows(range)?;
    let bad = rows.iter().filter(|r| !r.matches).count();
    let text = emit(format, &["g", "b", "k", "rank", "mu", "match"], &rows, || {
        json!({ "rows": rows, "mismatches": bad })
    })?;
    Ok(Output {
        text,
        status: if bad == 0 { 0 } else { MISMATCH },
    })
}

/// Disagreements are the expected content here, so the exit code is 0.
pub fn discrepancies(range: Range, format: Format) -> Result<Output, String> {
    let rows: Vec<DiscrepancyRow> = find_discrepancies(range.gmax, range.bmax)
        .into_iter()
        .map(|d| DiscrepancyRow {
            g: d.surface.g,
            b: d.surface.b,
            k: d.k,
            formula: d.formula,
            oracle: d.oracle,
        })
        .collect();
    let text = emit(format, &["g", "b", "k", "formula", "oracle"], &rows, || {
        json!({ "discrepancies": rows })
    })?;
    Ok(Output::ok(text))
}
