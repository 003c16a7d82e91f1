use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use maxmin::{Rational, TieBreakRule};

#[derive(Debug, Parser)]
#[command(name = "maxmin", version, about = "Worst-case revenue of item pricings for a unit-demand buyer")]
pub struct Cli {
    /// How the buyer breaks utility ties.
    #[arg(long, global = true, default_value = "high-price", value_name = "high-price|low-price")]
    pub tie_break: TieBreakRule,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Include the worst-case coupling in the output.
    #[arg(long, global = true)]
    pub witness: bool,

    /// Cap on couplings (oracle) or pricings (search) enumerated.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Worst-case coupling and revenue for a pricing.
    BestResponse { instance: PathBuf, pricing: PathBuf },
    /// Revenue of a pricing under a given coupling.
    Revenue {
        instance: PathBuf,
        pricing: PathBuf,
        coupling: PathBuf,
    },
    /// Robust revenue with its comonotonic and Myerson-sum bounds.
    Report { instance: PathBuf, pricing: PathBuf },
    /// Pricing rules.
    #[command(subcommand)]
    Price(PriceCommand),
    /// Exhaustive max-min search over a candidate grid.
    Search {
        instance: PathBuf,
        /// Only pricings with at most this many distinct finite prices.
        #[arg(long)]
        max_distinct: Option<usize>,
        /// JSON list of prices shared by all items, or one list per item.
        #[arg(long)]
        candidates: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Instance generators; print an instance file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Brute-force ground truth on small multiset instances.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum PriceCommand {
    /// Offer only the item with the largest median, at that median.
    Mhr { instance: PathBuf },
    /// Price each item of the set at half its largest value.
    HalfThreshold {
        instance: PathBuf,
        /// Items to offer, 1-based and comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Reduction instance from a graph file (`n` then one `u v` edge per line).
    Mis { graph: PathBuf },
    /// Equal-revenue marginals truncated at 4, 8, 16, ...
    Eqrev {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        grid: usize,
        /// Instead, `n` identical copies truncated at `2^E`.
        #[arg(long, value_name = "E")]
        identical: Option<u32>,
    },
    /// Discretized uniform marginals, one per `a:b` range.
    Uniform {
        #[arg(long, default_value_t = 200)]
        m: usize,
        #[arg(required = true, value_name = "A:B")]
        ranges: Vec<String>,
    },
    /// Discretized exponential marginals, one per rate.
    Exp {
        #[arg(long, default_value_t = 200)]
        m: usize,
        /// Quantile mass covered by the cells; the rest is an atom.
        #[arg(long, default_value = "199/200")]
        q_cap: Rational,
        #[arg(required = true, value_name = "RATE")]
        rates: Vec<Rational>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Minimum revenue over all perfect couplings.
    Min { instance: PathBuf, pricing: PathBuf },
}
