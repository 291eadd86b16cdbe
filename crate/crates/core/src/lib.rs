//! Combinatorial engine for labelled graphs: the normal accommodating set
//! family `B`, the lattice of hereditary and saturated subfamilies, maximal
//! tails, and the closure topology on the space of maximal tails.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command-line interface live in the `labprim` crate.
//!
//! ```
//! use labprim_core::{fixtures, lattice, tails, LabelledSpace};
//!
//! let space = LabelledSpace::generated(fixtures::g2()).unwrap();
//! let lattice = lattice::enumerate_hs(&space).unwrap();
//! assert_eq!(lattice.len(), 3);
//! let tails = tails::enumerate_tails(&space, &lattice).unwrap();
//! assert_eq!(tails.len(), 2);
//! ```
#![no_std]

extern crate alloc;

pub mod bits;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod graph;
pub mod lattice;
pub mod oracle;
pub mod space;
pub mod tails;
pub mod topology;

pub use bits::BitSet;
pub use error::{Error, Result};
pub use family::{generate_family, verify_space, SetFamily, SpaceReport};
pub use graph::{LabelId, LabelledGraph, UltimatelyPeriodicWord, VertexId, VertexSet, Word};
pub use lattice::{HSFamily, HSLattice, QuotientSpace};
pub use space::{LabelledSpace, SpaceIndex, SpaceOptions, SubFamily};
pub use tails::{ReachabilityIndex, Tail};
pub use topology::TailSpace;
