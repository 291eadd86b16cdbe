//! File formats, Graphviz export and the command-line driver for
//! [`labprim_core`].
//!
//! Every command prints pretty JSON in a fixed order: vertices in input
//! order, sets in lexicographic order of their vertex positions, lattice
//! members by size then lexicographically, tails by the lattice id of their
//! complement. Exit status is 0 on success, 1 when an assumption or a
//! verification fails, and 2 on unreadable or malformed input.

pub mod cli;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod io;
pub mod run;

pub use cli::{Cli, Command};
pub use error::CliError;
pub use run::{execute, run, Outcome};
