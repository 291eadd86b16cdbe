use std::path::PathBuf;

use clap::{Parser, Subcommand};
use labprim_core::family::DEFAULT_MAX_FAMILY_SIZE;

#[derive(Debug, Clone, Parser)]
#[command(name = "labprim", version, about = "Ideal lattice, maximal tails and tail topology of a labelled graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Use the family in this JSON file instead of generating one
    #[arg(long, global = true)]
    pub family: Option<PathBuf>,

    /// Continue when the space fails a standing assumption
    #[arg(long, global = true)]
    pub allow_unverified: bool,

    /// Stop family generation beyond this many sets
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FAMILY_SIZE)]
    pub max_family_size: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the graph and the family against the standing assumptions
    Validate { input: PathBuf },
    /// Print the family as a list of vertex-name lists
    Family { input: PathBuf },
    /// Hereditary saturated subfamilies, their Hasse diagram and primeness
    Ideals {
        input: PathBuf,
        /// Print only the Hasse diagram as DOT
        #[arg(long)]
        dot: bool,
    },
    /// Maximal tails with the ids of their complements in the lattice
    Tails { input: PathBuf },
    /// Topology on the maximal tails
    Prim {
        input: PathBuf,
        /// Print only the specialization order as DOT
        #[arg(long)]
        dot: bool,
        /// Seed for sampled checks on large tail spaces
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Partition of the family modulo an ideal
    Quotient {
        input: PathBuf,
        /// Lattice id of the ideal, as printed by `ideals`
        #[arg(long)]
        ideal: usize,
    },
    /// Tail generated by an ultimately periodic word from a start set
    TailFromWord {
        input: PathBuf,
        /// Comma-separated vertex names of the start set
        #[arg(long)]
        set: String,
        /// Comma-separated labels before the periodic part
        #[arg(long, default_value = "")]
        prefix: String,
        /// Comma-separated labels of the periodic part
        #[arg(long)]
        cycle: String,
    },
    /// Compare the main computations with the brute-force oracle on a random corpus
    CheckOracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}
