use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "realnum", version, about = "Realisation numbers of minimally rigid graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, env = "REALNUM_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
    /// One JSON object per line; overrides --output.
    #[arg(long, global = true)]
    pub jsonl: bool,
    /// Per-graph time budget in seconds.
    #[arg(long, global = true)]
    pub timeout: Option<f64>,
    /// Base seed for oracle weights and randomised searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report elapsed times as 0 so that output is reproducible.
    #[arg(long, global = true)]
    pub deterministic: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// graph6 for `.g6`/`.graph6` files, edge list otherwise.
    Auto,
    Graph6,
    EdgeList,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Split,
    Enumerate,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Built-in graph: k3, k4minus, prism3, k33, fig2.
    #[arg(long, conflicts_with = "input")]
    pub fixture: Option<String>,
    /// Graph file, or `-` for stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// `paper` (edges in input order, first largest), `random:SEED`, or a
    /// comma-separated list of edge labels from largest to smallest.
    #[arg(long, default_value = "paper")]
    pub order: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test whether a graph is minimally 2-rigid.
    Laman(GraphArgs),
    /// Realisation number c2.
    C2 {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// List the intersecting pairs found (forces enumeration).
        #[arg(long)]
        witnesses: bool,
    },
    /// nbc-bases of the graphic matroid.
    Nbc {
        #[command(flatten)]
        graph: GraphArgs,
        /// Print the bases themselves.
        #[arg(long)]
        list: bool,
        /// Print the broken circuits.
        #[arg(long)]
        broken: bool,
    },
    /// Upper and lower bounds on c2.
    Bounds {
        #[command(flatten)]
        graph: GraphArgs,
        /// Skip computing c2 itself.
        #[arg(long)]
        no_c2: bool,
        /// Search for the order with the most realisation bases.
        #[arg(long)]
        search: bool,
        /// Random restarts when the ground set is too large for exhaustive search.
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
    /// Tutte, characteristic and chromatic polynomials.
    Tutte(GraphArgs),
    /// Laman number of a bigraph (G, H).
    Bigraph {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, conflicts_with = "h_input")]
        h_fixture: Option<String>,
        #[arg(long)]
        h_input: Option<PathBuf>,
        /// Edge labels of H glued to the edges of G in order.
        #[arg(long)]
        bijection: Option<String>,
    },
    /// Recount c2 three independent ways.
    OracleVerify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Number of oracle weight seeds.
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        /// Edge label whose flat is pinned to zero; repeatable.
        #[arg(long)]
        epsilon: Vec<String>,
    },
    /// Generate all minimally rigid graphs on n vertices and tabulate them.
    Catalog {
        /// Vertex count, or a range such as `3-6`.
        #[arg(long)]
        n: String,
        /// Check each count against the oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Tabulate every graph of a graph6 stream.
    Batch {
        /// graph6 file; stdin when omitted or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "paper")]
        order: String,
        #[arg(long)]
        oracle: bool,
    },
}
