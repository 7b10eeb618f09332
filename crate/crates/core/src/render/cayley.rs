use std::fmt::Write;

use super::RenderError;
use crate::fpgroup::CosetTable;

/// Directed Cayley graph on cosets, one edge per coset and generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGraph {
    pub nodes: usize,
    /// `(source, generator index, target)`, 0-based, sorted by source then generator.
    pub edges: Vec<(usize, usize, usize)>,
    pub names: Vec<String>,
}

pub fn cayley_from_table(t: &CosetTable, names: &[String]) -> Result<CayleyGraph, RenderError> {
    if !t.is_complete() {
        return Err(RenderError::State("coset table is incomplete".into()));
    }
    if names.len() != t.ngens() {
        return Err(RenderError::Domain(format!(
            "{} names for {} generators",
            names.len(),
            t.ngens()
        )));
    }
    let mut edges = Vec::with_capacity(t.nrows() * t.ngens());
    for c in 0..t.nrows() {
        for g in 0..t.ngens() {
            edges.push((c, g, t.get(c, 2 * g).expect("complete table")));
        }
    }
    Ok(CayleyGraph { nodes: t.nrows(), edges, names: names.to_vec() })
}

const PALETTE: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];

/// Graphviz DOT text. Nodes are numbered from 1 like coset table rows.
pub fn emit_dot(g: &CayleyGraph) -> String {
    let mut out = String::from("digraph cayley {\n  node [shape=circle];\n");
    for v in 0..g.nodes {
        writeln!(out, "  {};", v + 1).unwrap();
    }
    for &(s, gen, t) in &g.edges {
        writeln!(
            out,
            "  {} -> {} [label=\"{}\", color={}];",
            s + 1,
            t + 1,
            g.names[gen],
            PALETTE[gen % PALETTE.len()]
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
