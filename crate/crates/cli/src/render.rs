//! DOT renderings for posets and separability graphs; presentation only,
//! machine consumers should use the JSON artifacts.

use posat_core::{Poset, SeparabilityGraph};

pub fn poset_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir = BT;\n");
    for i in 0..p.size() {
        out.push_str(&format!("  {:?};\n", p.label(i)));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("  {:?} -> {:?};\n", p.label(a), p.label(b)));
    }
    out.push_str("}\n");
    out
}

pub fn sepgraph_dot(g: &SeparabilityGraph) -> String {
    let mut out = String::from("graph separability {\n");
    for v in 1..=g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (x, y) in g.edges() {
        out.push_str(&format!("  {x} -- {y};\n"));
    }
    out.push_str("}\n");
    out
}
