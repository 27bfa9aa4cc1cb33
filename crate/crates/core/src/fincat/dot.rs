use std::fmt::Write;

use super::category::FinCat;
use super::graph::FinGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT for the underlying graph of a category; identities are omitted.
pub fn category_to_dot(c: &FinCat) -> String {
    let mut out = String::from("digraph category {\n");
    for o in c.objects() {
        let _ = writeln!(out, "  {};", quote(c.obj_id(o)));
    }
    for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(c.obj_id(c.src(m))),
            quote(c.obj_id(c.tgt(m))),
            quote(c.mor_id(m))
        );
    }
    out.push_str("}\n");
    out
}

pub fn graph_to_dot(g: &FinGraph) -> String {
    let mut out = String::from("digraph graph {\n");
    for n in g.nodes() {
        let _ = writeln!(out, "  {};", quote(n));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&g.nodes()[e.src]),
            quote(&g.nodes()[e.tgt]),
            quote(&e.id)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builder::chain;

    #[test]
    fn chain_dot_lists_non_identities() {
        let dot = category_to_dot(&chain(2));
        assert!(dot.contains("\"0\" -> \"1\" [label=\"0->1\"];"));
        assert!(!dot.contains("id_0"));
    }
}
