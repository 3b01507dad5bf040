//! Graphviz export of plumbing graphs.

use std::fmt::Write;

use crate::lattice::WuClass;
use crate::plumbing::StarGraph;

/// DOT text: vertex labels are weights, the center is a double circle and
/// Wu vertices are drawn in red.
pub fn to_dot(g: &StarGraph, wu: Option<&WuClass>, title: &str) -> String {
    let mut s = String::new();
    writeln!(s, "graph plumbing {{").unwrap();
    writeln!(s, "  label=\"{}\";", title.replace('"', "\\\"")).unwrap();
    writeln!(s, "  node [shape=circle];").unwrap();
    for (i, w) in g.weights().into_iter().enumerate() {
        let mut attrs = vec![format!("label=\"{w}\"")];
        if i == 0 {
            attrs.push("shape=doublecircle".into());
        }
        if wu.is_some_and(|wu| wu.contains(i)) {
            attrs.push("color=red".into());
            attrs.push("fontcolor=red".into());
            attrs.push("wu=true".into());
        }
        writeln!(s, "  v{i} [{}];", attrs.join(", ")).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(s, "  v{a} -- v{b};").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::wu_class;
    use crate::plumbing::negative_definite_graph;

    #[test]
    fn ten_75() {
        let g = negative_definite_graph(&"1,1,1,1,-3,-3,-3".parse().unwrap()).unwrap();
        let wu = wu_class(&g).unwrap();
        let d = to_dot(&g, Some(&wu), "P(1,1,1,1,-3,-3,-3)");
        assert!(d.contains("v0 [label=\"-4\", shape=doublecircle, color=red, fontcolor=red, wu=true];"));
        assert!(d.contains("v3 [label=\"-3\"];"));
        assert_eq!(d.matches(" -- ").count(), 3);
    }
}
