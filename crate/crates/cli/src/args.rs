use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multicurve::surface::SurfaceSig;

#[derive(Parser, Debug)]
#[command(name = "multicurve", version, about = "Quasi-flat ranks and classification of multicurve graphs")]
pub struct Cli {
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quasi-flat rank m(g,b,k) of the k-multicurve graph.
    Rank { surface: SurfaceSig, k: i64 },
    /// Closed-form maximal witness count mu(g,b,xi).
    Mu { surface: SurfaceSig, xi: i64 },
    /// Hyperbolic, relatively hyperbolic or thick.
    Classify {
        surface: SurfaceSig,
        k: i64,
        #[arg(long, value_enum, default_value_t = SourceArg::Formula)]
        source: SourceArg,
    },
    /// Exhaustive decomposition oracle.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Formula and oracle classification for every triple in range.
    Table(TableArgs),
    /// Normal-coordinate curve engine.
    #[command(subcommand)]
    Curves(CurvesCmd),
    /// Finite multicurve and interpolating graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Extension, upper-bound, path-lift and quasi-density checks.
    QiCheck {
        surface: SurfaceSig,
        k: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Formula,
    Oracle,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Range {
    #[arg(long, default_value_t = 4)]
    pub gmax: u32,
    #[arg(long, default_value_t = 5)]
    pub bmax: u32,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub range: Range,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// mu by exhaustive search, with an attaining decomposition.
    Mu { surface: SurfaceSig, xi: i64 },
    /// Compare mu_formula with mu_oracle over a range.
    Verify {
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check m(g,b,k) = mu(g,b,3g-2+b-k) over a range.
    Identity {
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Oracle classification with its certificates.
    Classify { surface: SurfaceSig, k: i64 },
    /// Triples where the printed table and the oracle disagree.
    Discrepancies {
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurvesCmd {
    /// The model triangulation.
    Triangulation { surface: SurfaceSig },
    /// All essential curves with every weight at most W.
    Enumerate {
        surface: SurfaceSig,
        #[arg(long)]
        max_weight: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Whether two multicurves (JSON files) are disjoint.
    Disjoint {
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Complementary pieces of a multicurve (JSON file).
    Cut {
        surface: SurfaceSig,
        #[arg(long)]
        nu: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// k-multicurve graph.
    Mk,
    /// Complexity-xi interpolating graph.
    Ixi,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Build an induced subgraph from the curve inventory.
    Build {
        surface: SurfaceSig,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        param: usize,
        #[arg(long)]
        max_weight: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Shortest-path distance between two vertices of a saved graph.
    Dist { file: PathBuf, u: usize, v: usize },
}
