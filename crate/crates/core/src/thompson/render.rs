use std::fmt::Write;

use crate::forest::{Forest, Tree};

use super::{Groupoid, Triple};

/// Left forest on top, right forest upside down below, and one labelled
/// strand per leaf pair. Crossings are listed in the graph label.
pub(super) fn triple_to_dot(g: &Groupoid, t: &Triple) -> String {
    let mut out = String::from("digraph triple {\n  rankdir=TB;\n  node [shape=point];\n");
    let _ = writeln!(
        out,
        "  label=\"top: {}\";",
        t.middle().top().to_string().replace('"', "'")
    );
    let top_leaves = forest_nodes(t.left(), "L", false, &mut out);
    let bottom_leaves = forest_nodes(t.right(), "R", true, &mut out);
    let rho = t.middle().rho();
    for (i, entry) in t.middle().entries().iter().enumerate() {
        let from = &top_leaves[rho.apply(i + 1) - 1];
        let to = &bottom_leaves[i];
        let label = g.table().format_word(entry);
        let _ = writeln!(
            out,
            "  {from} -> {to} [arrowhead=none, style=bold, label=\"{label}\"];"
        );
    }
    out.push_str("}\n");
    out
}

fn forest_nodes(f: &Forest, prefix: &str, upside_down: bool, out: &mut String) -> Vec<String> {
    let mut leaves = Vec::new();
    let mut counter = 0;
    for tree in f.trees() {
        walk(tree, prefix, upside_down, &mut counter, &mut leaves, out);
    }
    leaves
}

fn walk(
    t: &Tree,
    prefix: &str,
    upside_down: bool,
    counter: &mut usize,
    leaves: &mut Vec<String>,
    out: &mut String,
) -> String {
    let id = format!("{prefix}{counter}");
    *counter += 1;
    match t {
        Tree::Leaf => {
            let _ = writeln!(out, "  {id} [shape=circle, width=0.1, label=\"\"];");
            leaves.push(id.clone());
        }
        Tree::Node(children) => {
            for c in children {
                let cid = walk(c, prefix, upside_down, counter, leaves, out);
                if upside_down {
                    let _ = writeln!(out, "  {cid} -> {id} [arrowhead=none];");
                } else {
                    let _ = writeln!(out, "  {id} -> {cid} [arrowhead=none];");
                }
            }
        }
    }
    id
}
