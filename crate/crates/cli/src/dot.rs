//! Graphviz export of the ideal lattice and the specialization order of
//! the tail space.

use std::fmt::Write;

use labprim_core::lattice::HSLattice;
use labprim_core::topology::{SpecializationOrder, TailSpace};
use labprim_core::LabelledSpace;

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Hasse diagram of the lattice, edges pointing upward.
pub fn lattice_dot(space: &LabelledSpace, lattice: &HSLattice) -> String {
    let mut out = String::from("digraph lattice {\n");
    for (id, h) in lattice.members().iter().enumerate() {
        let label = space.format_subfamily(h.members());
        writeln!(out, "  h{id} [label={}];", quote(&label)).unwrap();
    }
    for (lo, hi) in lattice.hasse_edges() {
        writeln!(out, "  h{lo} -> h{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Specialization order on the tails, without the reflexive pairs.
pub fn prim_order_dot(space: &LabelledSpace, chi: &TailSpace, order: &SpecializationOrder) -> String {
    let mut out = String::from("digraph prim_order {\n");
    for (id, t) in chi.tails().iter().enumerate() {
        let label = space.format_subfamily(&t.tail.sets);
        writeln!(out, "  t{id} [label={}];", quote(&label)).unwrap();
    }
    for (a, b) in order.proper_edges() {
        writeln!(out, "  t{a} -> t{b};").unwrap();
    }
    out.push_str("}\n");
    out
}
