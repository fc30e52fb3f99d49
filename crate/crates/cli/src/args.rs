use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cyclotome", version, about = "Weight distributions of trace-defined cyclic codes")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived parameters, polynomials and the assumption report of a code.
    Params(CodeArgs),
    /// Gaussian periods of order L, exact and (where one applies) closed form.
    Periods(PeriodArgs),
    /// Cyclotomic numbers of order L.
    Cyclonum(OrderArgs),
    /// Weight distribution by one method.
    Weights(WeightArgs),
    /// Runs every feasible method, compares them and checks the invariants.
    Verify(VerifyArgs),
    /// Rebuilds the reference codes and compares every expected field.
    Corpus(CapArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[arg(long)]
    pub m: u32,
    /// Defining polynomial of GF(r) over GF(p), ascending coefficients, e.g. 1,2,0,1.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub e: u64,
    #[arg(long)]
    pub t: u64,
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    /// Δ_1, ..., Δ_t; defaults to 0, 1, ..., t-1.
    #[arg(long, value_delimiter = ',')]
    pub delta: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Args)]
pub struct OrderArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long = "L")]
    pub order: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PeriodArgs {
    #[command(flatten)]
    pub order: OrderArgs,
    /// Also print the per-class trace-value tallies.
    #[arg(long)]
    pub tallies: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CapArgs {
    /// Largest r^t enumerated by naive or T-sum enumeration.
    #[arg(long, env = "CYCLOTOME_MAX_ENUM")]
    pub max_enum: Option<u64>,
    /// Seed of the random spot checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Naive,
    Tsum,
    Closed,
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub caps: CapArgs,
}

impl CapArgs {
    pub fn caps(&self) -> cyclotome::Caps {
        let caps = cyclotome::Caps { seed: self.seed, ..Default::default() };
        match self.max_enum {
            Some(limit) => caps.with_enumeration_limit(limit),
            None => caps,
        }
    }
}
