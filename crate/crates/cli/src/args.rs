use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "critgap", version, about = "Critical heights and Green's functions of polynomial families over Q(t)")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,

    /// Emit tab-separated tables instead of JSON.
    #[arg(long, global = true)]
    pub tsv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Iterations of the local escape test per point.
    #[arg(long, global = true, default_value_t = 64)]
    pub green_budget: usize,
    /// Initial number of expansion terms at a place.
    #[arg(long, global = true, default_value_t = 16)]
    pub precision_start: usize,
    /// Largest number of expansion terms before giving up.
    #[arg(long, global = true, default_value_t = 1024)]
    pub precision_cap: usize,
    /// Largest iterate computed exactly (also caps the PCF level).
    #[arg(long, global = true, default_value_t = 8)]
    pub iterate_cap: usize,
    /// Relative residual target for numeric roots.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub numeric_tolerance: f64,
    /// Seed for corpus generation.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
}

impl Config {
    pub fn validate(&self) -> Result<(), String> {
        if self.green_budget == 0 || self.precision_start == 0 || self.precision_cap == 0 || self.iterate_cap == 0 {
            return Err("caps must be positive".into());
        }
        if self.precision_start > self.precision_cap {
            return Err("precision-start exceeds precision-cap".into());
        }
        if !(self.numeric_tolerance > 0.0 && self.numeric_tolerance.is_finite()) {
            return Err("numeric-tolerance must be a positive number".into());
        }
        Ok(())
    }
}

/// A map given either by its critical tuple or by its coefficients.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct MapInput {
    /// Critical points c_1 .. c_(d-1) of the normal form.
    #[arg(long, num_args = 1.., value_name = "EXPR")]
    pub tuple: Option<Vec<String>>,
    /// Coefficients a_0 .. a_d in ascending order.
    #[arg(long, num_args = 1.., value_name = "EXPR")]
    pub poly: Option<Vec<String>>,
}

#[derive(Args, Debug, Clone)]
pub struct TupleInput {
    /// Critical points c_1 .. c_(d-1) of the normal form.
    #[arg(long, num_args = 1.., required = true, value_name = "EXPR")]
    pub tuple: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    All,
    Agreement,
    Gap,
    Separation,
    Multiplier,
    Sandwich,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Height of a tuple of rational functions.
    Height {
        #[arg(required = true, value_name = "EXPR")]
        exprs: Vec<String>,
    },
    /// Critical height, from the closed form and from escape rates.
    Hcrit(MapInput),
    /// Local Green's function of a point at a place.
    Green {
        /// Coefficients a_0 .. a_d in ascending order.
        #[arg(long, num_args = 1.., required = true, value_name = "EXPR")]
        poly: Vec<String>,
        #[arg(long, value_name = "EXPR")]
        point: String,
        /// `inf` or a monic irreducible polynomial in t.
        #[arg(long, value_name = "EXPR|inf")]
        place: String,
    },
    /// Multiplier of the fixed point 0 of the normal form.
    Multiplier(TupleInput),
    /// Places where c_1 is strictly smaller than the largest critical point.
    Sset(TupleInput),
    /// The gap inequality.
    Gapcheck(TupleInput),
    /// Multiplier degree over critical height, with per-place bounds.
    Ratio(TupleInput),
    /// A family realizing a prescribed ratio.
    RangeFamily {
        #[arg(short = 'd', value_name = "D")]
        d: usize,
        #[arg(short = 'x', value_name = "P/Q")]
        x: String,
    },
    /// The family with ratio d - 1, in the parameter s.
    Sharp {
        #[arg(short = 'd', value_name = "D")]
        d: usize,
    },
    /// Post-critically finite parameters of the sharp family.
    Pcf {
        #[arg(short = 'd', value_name = "D")]
        d: usize,
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        /// Also locate the new parameters numerically.
        #[arg(long)]
        numeric: bool,
    },
    /// Run the checks over a seeded random corpus.
    Corpus {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, num_args = 1.., default_values_t = [Check::All])]
        check: Vec<Check>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Height { .. } => "height",
            Command::Hcrit(_) => "hcrit",
            Command::Green { .. } => "green",
            Command::Multiplier(_) => "multiplier",
            Command::Sset(_) => "sset",
            Command::Gapcheck(_) => "gapcheck",
            Command::Ratio(_) => "ratio",
            Command::RangeFamily { .. } => "range-family",
            Command::Sharp { .. } => "sharp",
            Command::Pcf { .. } => "pcf",
            Command::Corpus { .. } => "corpus",
        }
    }
}
