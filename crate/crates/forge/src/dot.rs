//! Hasse-diagram DOT emission: stable node identifiers, covers as edges
//! drawn bottom-to-top, elements of equal order-level ranked together.
//! Byte-identical output for identical inputs.

use esakia_forge_core::poset::FinitePoset;
use std::fmt::Write;

fn quoted(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn poset_dot(p: &FinitePoset, graph_name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quoted(graph_name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box, fontsize=10];");
    for i in 0..p.len() {
        let _ = writeln!(out, "  {};", quoted(p.name(i)));
    }
    let levels = p.levels();
    let max_level = levels.iter().copied().max().unwrap_or(0);
    for level in 0..=max_level {
        let members: Vec<usize> = (0..p.len()).filter(|&i| levels[i] == level).collect();
        if members.is_empty() {
            continue;
        }
        let mut line = String::from("  { rank=same;");
        for i in members {
            let _ = write!(line, " {};", quoted(p.name(i)));
        }
        line.push_str(" }");
        let _ = writeln!(out, "{line}");
    }
    for (a, b) in p.hasse_edges() {
        let _ = writeln!(out, "  {} -> {};", quoted(p.name(a)), quoted(p.name(b)));
    }
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_dot() {
        let dot = poset_dot(&FinitePoset::singleton(), "point");
        assert!(dot.contains("digraph \"point\""));
        assert!(dot.contains("\"*\";"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn chain_edges_point_upward() {
        let dot = poset_dot(&FinitePoset::chain(3), "chain");
        assert!(dot.contains("\"0\" -> \"1\""));
        assert!(dot.contains("\"1\" -> \"2\""));
        assert!(!dot.contains("\"0\" -> \"2\""));
    }

    #[test]
    fn deterministic_output() {
        let p = FinitePoset::antichain(4);
        assert_eq!(poset_dot(&p, "a"), poset_dot(&p, "a"));
    }
}
