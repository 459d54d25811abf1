//! Graphviz output. Each tree becomes a cluster captioned with its
//! S-expression; the root is drawn as `r` and every other vertex as the
//! prime (or `1/p`) on the edge leading into it.

use std::io::{self, Write};

use primetree::Tree;

pub fn write_forest<'a>(out: &mut dyn Write, trees: impl IntoIterator<Item = &'a Tree>) -> io::Result<()> {
    writeln!(out, "digraph forest {{")?;
    writeln!(out, "  node [shape=circle];")?;
    for (i, tree) in trees.into_iter().enumerate() {
        writeln!(out, "  subgraph cluster_{i} {{")?;
        writeln!(out, "    label=\"{tree}\";")?;
        let mut next = 0usize;
        vertex(out, i, &mut next, "r")?;
        edges(out, i, tree, 0, &mut next)?;
        writeln!(out, "  }}")?;
    }
    writeln!(out, "}}")
}

fn vertex(out: &mut dyn Write, tree: usize, next: &mut usize, label: &str) -> io::Result<usize> {
    let id = *next;
    *next += 1;
    writeln!(out, "    t{tree}_{id} [label=\"{label}\"];")?;
    Ok(id)
}

fn edges(out: &mut dyn Write, tree: usize, node: &Tree, parent: usize, next: &mut usize) -> io::Result<()> {
    for (label, child) in node.branches() {
        let id = vertex(out, tree, next, &label.to_string())?;
        writeln!(out, "    t{tree}_{parent} -> t{tree}_{id};")?;
        edges(out, tree, child, id, next)?;
    }
    Ok(())
}
