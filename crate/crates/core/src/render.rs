//! Text renderings of stratification diagrams: Graphviz DOT and a plain
//! level-sorted listing.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::atlas::Atlas;
use crate::stratification::{node_label, StratPoset};

/// Which poset to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Granularity {
    Coarse,
    Fine,
}

/// Node names for a poset: `mL` (plus `#k` for repeated labels) for the
/// coarse poset, the class label and root indices for the fine one.
pub fn node_names(atlas: &Atlas, which: Granularity) -> Vec<String> {
    match which {
        Granularity::Coarse => atlas
            .coarse
            .nodes
            .iter()
            .map(|&c| {
                let base = node_label(&atlas.classes[c]);
                match atlas.duplicate_index(c) {
                    Some(k) => format!("{base}#{k}"),
                    None => base,
                }
            })
            .collect(),
        Granularity::Fine => atlas
            .fine
            .nodes
            .iter()
            .map(|&i| {
                let class = &atlas.classes[atlas.class_of[i]];
                format!("{} {:?}", class.label, atlas.subsystems[i].indices())
            })
            .collect(),
    }
}

fn poset(atlas: &Atlas, which: Granularity) -> &StratPoset {
    match which {
        Granularity::Coarse => &atlas.coarse,
        Granularity::Fine => &atlas.fine,
    }
}

fn levels(p: &StratPoset) -> BTreeMap<u64, Vec<usize>> {
    let mut out: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &l) in p.level.iter().enumerate() {
        out.entry(l).or_default().push(i);
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Directed graph with edges from lower to higher strata and one
/// `rank=same` group per dimension level.
pub fn render_dot(atlas: &Atlas, which: Granularity) -> String {
    let p = poset(atlas, which);
    let names = node_names(atlas, which);
    let title = match which {
        Granularity::Coarse => "coarse",
        Granularity::Fine => "fine",
    };
    let mut out = String::new();
    writeln!(out, "digraph \"{}_{}\" {{", escape(&atlas.spec().to_string()), title).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for (i, name) in names.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(name)).unwrap();
    }
    for (level, members) in levels(p) {
        let ids: Vec<String> = members.iter().map(|i| format!("n{i};")).collect();
        writeln!(out, "  subgraph dim_{level} {{ rank=same; {} }}", ids.join(" ")).unwrap();
    }
    for &(a, b) in &p.covers {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Levels from the top down, each node with the nodes it covers.
pub fn render_ascii(atlas: &Atlas, which: Granularity) -> String {
    let p = poset(atlas, which);
    let names = node_names(atlas, which);
    let mut out = String::new();
    writeln!(out, "{} ({} nodes, {} edges)", atlas.spec(), p.len(), p.covers.len()).unwrap();
    for (level, members) in levels(p).into_iter().rev() {
        writeln!(out, "dim {level}:").unwrap();
        for i in members {
            let below: Vec<&str> = p
                .covers
                .iter()
                .filter(|&&(_, b)| b == i)
                .map(|&(a, _)| names[a].as_str())
                .collect();
            if below.is_empty() {
                writeln!(out, "  {}", names[i]).unwrap();
            } else {
                writeln!(out, "  {}  <-  {}", names[i], below.join(", ")).unwrap();
            }
        }
    }
    writeln!(out, "edges:").unwrap();
    for &(a, b) in &p.covers {
        writeln!(out, "  {} -- {}", names[a], names[b]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsystem::Limits;

    #[test]
    fn a1_ascii() {
        let atlas = Atlas::compute(&"A1".parse().unwrap(), &Limits::default()).unwrap();
        let text = render_ascii(&atlas, Granularity::Coarse);
        assert!(text.contains("  A1  <-  2\n"));
        assert!(text.contains("  2 -- A1\n"));
    }

    #[test]
    fn g2_duplicate_labels_get_suffixes() {
        let atlas = Atlas::compute(&"G2".parse().unwrap(), &Limits::default()).unwrap();
        let names = node_names(&atlas, Granularity::Coarse);
        assert_eq!(names, vec!["G2", "2A2", "9A1^2", "18A1#1", "18A1#2", "12"]);
    }
}
