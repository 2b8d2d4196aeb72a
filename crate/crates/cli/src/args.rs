use clap::{Args, Parser, Subcommand, ValueEnum};

use belyi_core::render::TermOrder;

#[derive(Debug, Parser)]
#[command(name = "belyi", version, about = "Normalized dynamical Belyi maps: construction, reduction mod p, rational dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every type (d; e1, e2, e3) with e1 <= e2 <= e3, with counts.
    Enumerate {
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Construct the normalized map of a type.
    Build {
        #[command(flatten)]
        ty: TypeArgs,
        /// Attach a verification certificate.
        #[arg(long)]
        verify: bool,
        /// Relabel the family map so it has exactly the requested type.
        #[arg(long)]
        conjugate: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reduce the normalized map of a type modulo p.
    Reduce {
        #[command(flatten)]
        ty: TypeArgs,
        p: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reduction census over many types and primes, as CSV by default.
    Census {
        /// Inclusive degree range, `a..b` or a single degree.
        #[arg(long, value_name = "A..B", conflicts_with = "paper_table_15", required_unless_present = "paper_table_15")]
        d_range: Option<String>,
        /// Comma-separated primes, or `dividing` for the primes dividing d.
        #[arg(long, default_value = "dividing")]
        primes: String,
        /// Every ordering of each type instead of the sorted representative.
        #[arg(long)]
        all_orderings: bool,
        /// The degree-15 table: (15; 16-e2, e2, 15) for e2 = 2..14, p in {2, 3, 5, 7}.
        #[arg(long)]
        paper_table_15: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Order::Desc)]
        order: Order,
    },
    /// Rational preperiodic points of the normalized map.
    Preper {
        #[command(flatten)]
        ty: TypeArgs,
        /// Compute the backward closure of the fixed points even when no
        /// hypothesis guarantees it is all of PrePer.
        #[arg(long)]
        override_hypothesis: bool,
        #[arg(long, default_value_t = 64)]
        level_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Functional graph of the reduction mod p, with cycles and multipliers.
    Graph {
        #[command(flatten)]
        ty: TypeArgs,
        p: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Real and rational points over 0 and 1 for (d; d-k, k+1, d).
    Fibers {
        d: u64,
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    pub d: u64,
    pub e1: u64,
    pub e2: u64,
    pub e3: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Exponent order for rendered polynomials.
    #[arg(long, value_enum, default_value_t = Order::Desc)]
    pub order: Order,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Desc,
    Asc,
}

impl From<Order> for TermOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Desc => TermOrder::Descending,
            Order::Asc => TermOrder::Ascending,
        }
    }
}
