use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "turan",
    version,
    about = "Exact computations on the Turán polytope T(G, a, r)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest admissible edge count C(n, r) of an ambient hypergraph.
    #[arg(long, env = "TURAN_MAX_EDGES", global = true)]
    pub max_edges: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Turán number ex(n, a, r): the recurrence for graphs, the exact oracle otherwise.
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// The t-recurrence table ex(i, a, 2) for i = a..=n-max.
    Table {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Generate an inequality.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Validity, facet and lifting checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Replay a Chvátal-Gomory derivation.
    #[command(subcommand)]
    Cg(CgCommand),
    /// Maximize the all-ones objective over the clique relaxation Q(n, a, r).
    Lp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Also bound the edges of the whole vertex set [n].
        #[arg(long)]
        include_full_clique: bool,
        /// Write the system in CPLEX LP format to this file.
        #[arg(long)]
        export_lp: Option<PathBuf>,
    },
    /// Build a tight clique-free subset of a wheel or web.
    Witness {
        #[arg(value_enum)]
        family: CyclicFamily,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Kind::I)]
        kind: Kind,
        /// Every type II witness (wheels only).
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Clique,
    Doubling,
    Blowup,
    Wheel,
    Web,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CyclicFamily {
    Wheel,
    Web,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

/// Parameters of the inequality families; each family reads the ones it needs.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyParams {
    /// Vertices of the ambient K^r_n (clique, doubling, blowup).
    #[arg(long)]
    pub n: Option<usize>,
    /// Clique size.
    #[arg(long)]
    pub a: Option<usize>,
    /// Uniformity.
    #[arg(long)]
    pub r: Option<usize>,
    /// Vertices of the wheel or web.
    #[arg(long)]
    pub l: Option<usize>,
    /// Doubled vertex (doubling).
    #[arg(long)]
    pub v: Option<usize>,
    /// Vertex subset, comma separated (clique; defaults to [n]).
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    /// Multiplicities as vertex:m, comma separated (blowup).
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<String>,
}

/// An inequality read from a JSON file or generated inline.
#[derive(Args, Debug, Clone)]
pub struct InequalitySource {
    /// Inequality JSON file.
    #[arg(long, conflicts_with = "gen")]
    pub ineq: Option<PathBuf>,
    /// Generate the inequality from family parameters instead.
    #[arg(long, value_enum)]
    pub gen: Option<Family>,
    #[command(flatten)]
    pub params: FamilyParams,
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Maximize the left-hand side over clique-free subsets of the support.
    Valid {
        #[command(flatten)]
        source: InequalitySource,
    },
    /// Facet verdict by tight-point enumeration and exact affine rank.
    Facet {
        #[command(flatten)]
        source: InequalitySource,
        /// `support`, or `complete:N` for K^r_N.
        #[arg(long, default_value = "support")]
        ambient: String,
    },
    /// Lifting condition from the support into K^r_N.
    Lift {
        #[command(flatten)]
        source: InequalitySource,
        #[arg(long)]
        into: usize,
        #[arg(long, value_enum, default_value_t = LiftForm::General)]
        form: LiftForm,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LiftForm {
    /// ex(H + e) = ex(H) + 1 for every added edge.
    Rank,
    /// Some tight point stays clique-free after adding each edge.
    General,
}

#[derive(Subcommand, Debug)]
pub enum CgCommand {
    /// Clique inequality on S from those on S minus one vertex.
    Subset {
        #[arg(long, value_delimiter = ',', required_unless_present = "n")]
        s: Option<Vec<usize>>,
        /// Shorthand for S = [n].
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: usize,
    },
    /// Subset steps from [a] up to [n].
    Chain {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
    },
    /// The n doubling inequalities on K_n aggregated into the clique inequality.
    Doubling {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
    },
    /// Wheel cliques and edge bounds aggregated into the wheel inequality.
    Wheel {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
}
