mod args;
mod report;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::json;

use args::{Cli, Command, CurvesCmd, Format, GraphCmd, KindArg, OracleCmd, SourceArg};
use multicurve::graph::{run_qi_suite, CurveLab, GraphInstance, GraphKind, QiSuiteOptions};
use multicurve::normal::{cut_pieces, disjoint, enumerate_curves, Multicurve, Triangulation};
use multicurve::oracle::{classify_oracle, classify_oracle_verdict, mu_oracle_witness};
use multicurve::rank::{classify_paper, mu_formula, quasiflat_rank};

/// Result of a command: its output and exit status.
struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }

    fn json(value: &impl Serialize) -> Self {
        Output::ok(to_json(value))
    }
}

const MISMATCH: u8 = 1;
const USAGE: u8 = 2;

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable output");
    s.push('\n');
    s
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn read_multicurve(path: &Path) -> Result<Multicurve, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let m: Multicurve =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Multicurve::from_components(m.components))
}

fn run(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Rank { surface, k } => {
            let rank = quasiflat_rank(*surface, *k).map_err(fail)?;
            Ok(Output::json(&json!({"g": surface.g, "b": surface.b, "k": k, "rank": rank})))
        }
        Command::Mu { surface, xi } => {
            let mu = mu_formula(*surface, *xi).map_err(fail)?;
            Ok(Output::json(&json!({"g": surface.g, "b": surface.b, "xi": xi, "mu": mu})))
        }
        Command::Classify { surface, k, source } => {
            let rank = quasiflat_rank(*surface, *k).map_err(fail)?;
            let row = |c: multicurve::rank::Classification| {
                json!({
                    "g": surface.g, "b": surface.b, "k": k, "rank": rank,
                    "classification": c.kind, "source": c.source,
                })
            };
            match source {
                SourceArg::Formula => Ok(Output::json(&row(classify_paper(*surface, *k).map_err(fail)?))),
                SourceArg::Oracle => Ok(Output::json(&row(classify_oracle(*surface, *k).map_err(fail)?))),
                SourceArg::Both => {
                    let f = classify_paper(*surface, *k).map_err(fail)?;
                    let o = classify_oracle(*surface, *k).map_err(fail)?;
                    let matches = f.kind == o.kind;
                    Ok(Output {
                        text: to_json(&json!([row(f), row(o)])),
                        status: if matches { 0 } else { MISMATCH },
                    })
                }
            }
        }
        Command::Oracle(cmd) => oracle(cmd),
        Command::Table(a) => report::table(a.range, a.format),
        Command::Curves(cmd) => curves(cmd),
        Command::Graph(cmd) => graph(cmd),
        Command::QiCheck {
            surface,
            k,
            max_weight,
            samples,
            seed,
        } => {
            let lab = CurveLab::new(*surface, *max_weight).map_err(fail)?;
            let opts = QiSuiteOptions {
                samples: *samples,
                seed: *seed,
            };
            let r = run_qi_suite(&lab, *k, &opts).map_err(fail)?;
            let failed = [&r.extension_lemma, &r.edge_upper_bound, &r.path_lifts, &r.quasi_density]
                .iter()
                .any(|c| c.failures > 0);
            let incomplete = !r.passed() && !failed;
            let status = if failed {
                "fail"
            } else if incomplete {
                "incomplete"
            } else {
                "pass"
            };
            let mut value = serde_json::to_value(&r).expect("report");
            value["status"] = json!(status);
            Ok(Output {
                text: to_json(&value),
                status: if failed { MISMATCH } else { 0 },
            })
        }
    }
}

fn oracle(cmd: &OracleCmd) -> Result<Output, String> {
    match cmd {
        OracleCmd::Mu { surface, xi } => {
            let best = mu_oracle_witness(*surface, *xi).map_err(fail)?;
            let mu = best.as_ref().map_or(0, |d| d.len());
            Ok(Output::json(&json!({
                "g": surface.g, "b": surface.b, "xi": xi, "mu": mu,
                "decomposition": best.map(|d| d.pattern),
            })))
        }
        OracleCmd::Verify { range, format } => report::verify(*range, *format),
        OracleCmd::Identity { range, format } => report::identity(*range, *format),
        OracleCmd::Classify { surface, k } => {
            Ok(Output::json(&classify_oracle_verdict(*surface, *k).map_err(fail)?))
        }
        OracleCmd::Discrepancies { range, format } => report::discrepancies(*range, *format),
    }
}

fn curves(cmd: &CurvesCmd) -> Result<Output, String> {
    match cmd {
        CurvesCmd::Triangulation { surface } => {
            Ok(Output::json(&Triangulation::generate(*surface).map_err(fail)?))
        }
        CurvesCmd::Enumerate {
            surface,
            max_weight,
            format,
        } => {
            if *max_weight == 0 {
                return Err("--max-weight must be at least 1".into());
            }
            let t = Triangulation::generate(*surface).map_err(fail)?;
            let inv = enumerate_curves(&t, *max_weight);
            match format {
                Format::Json => Ok(Output::json(&json!({
                    "surface": surface, "max_weight": max_weight, "curves": inv,
                }))),
                Format::Csv => {
                    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
                    let header: Vec<String> = (0..t.num_edges()).map(|e| format!("e{e}")).collect();
                    w.write_record(&header).map_err(fail)?;
                    for c in &inv {
                        w.serialize(&c.0).map_err(fail)?;
                    }
                    Ok(Output::ok(String::from_utf8(w.into_inner().map_err(fail)?).map_err(fail)?))
                }
                Format::Dot => Err("curves enumerate supports csv and json".into()),
            }
        }
        CurvesCmd::Disjoint { surface, a, b } => {
            let t = Triangulation::generate(*surface).map_err(fail)?;
            let (ma, mb) = (read_multicurve(a)?, read_multicurve(b)?);
            let d = disjoint(&t, &ma, &mb).map_err(fail)?;
            Ok(Output::json(&json!({ "disjoint": d })))
        }
        CurvesCmd::Cut { surface, nu } => {
            let t = Triangulation::generate(*surface).map_err(fail)?;
            let cut = cut_pieces(&t, &read_multicurve(nu)?).map_err(fail)?;
            Ok(Output::json(&cut))
        }
    }
}

fn graph(cmd: &GraphCmd) -> Result<Output, String> {
    match cmd {
        GraphCmd::Build {
            surface,
            kind,
            param,
            max_weight,
            format,
        } => {
            let lab = CurveLab::new(*surface, *max_weight).map_err(fail)?;
            let kind = match kind {
                KindArg::Mk => GraphKind::Multicurve(*param),
                KindArg::Ixi => GraphKind::Interpolating(*param),
            };
            let g = lab.build_graph(kind).map_err(fail)?;
            match format {
                Format::Json => Ok(Output::ok(g.to_json() + "\n")),
                Format::Dot => Ok(Output::ok(g.to_dot())),
                Format::Csv => Err("graph build supports json and dot".into()),
            }
        }
        GraphCmd::Dist { file, u, v } => {
            let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
            let g = GraphInstance::from_json(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let d = g.bfs_distance(*u, *v).map_err(fail)?;
            Ok(Output::json(&json!({ "u": u, "v": v, "distance": d })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(out.status),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(USAGE)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}
