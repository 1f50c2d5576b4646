use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
}

/// Homology, Steenrod operations and face-only higher diagonal formulas for
/// simplicial complexes.
#[derive(Debug, Parser)]
#[command(name = "facewise", version)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    pub emit: Emit,

    /// Worker threads (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ComplexArg {
    /// JSON file, or one of the bundled complexes: circle, sphere, sphere3, rp2, torus.
    #[arg(long)]
    pub complex: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ranks of H_*(K; Z_p) and representative cycles.
    Homology {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 2)]
        prime: u32,
    },
    /// Matrix of Sq^i: H^q -> H^{q+i} over Z_2.
    Square {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        q: usize,
    },
    /// Matrix of P^k: H^q -> H^{q+2k(p-1)} over Z_p, p odd.
    Power {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
    },
    /// The face-only formula for D^n_r, optionally instantiated at dimension m.
    Formula {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Instantiate on the standard m-simplex.
        #[arg(long = "dim", alias = "m")]
        dim: Option<usize>,
        /// Coefficient field for the instantiated form.
        #[arg(long, default_value_t = 3)]
        prime: u32,
    },
    /// Runs the built-in invariant checks.
    Selfcheck,
}
