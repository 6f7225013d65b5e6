use std::fmt::Write;

use crate::decomposition::AttractorDecomposition;
use crate::games::{ParityGame, ParityGraph, Player};
use crate::trees::OrderedTree;

fn edges(g: &ParityGraph, out: &mut String) {
    for e in g.edges() {
        let x = g.edge(e);
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", x.source, x.target, x.priority);
    }
}

pub fn graph_to_dot(g: &ParityGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  v{v} [label=\"{v}\"];");
    }
    edges(g, &mut out);
    out.push_str("}\n");
    out
}

/// Eve's vertices are circles, Adam's boxes.
pub fn game_to_dot(game: &ParityGame) -> String {
    let g = &game.graph;
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        let shape = match game.owner(v) {
            Player::Eve => "circle",
            Player::Adam => "box",
        };
        let _ = writeln!(out, "  v{v} [label=\"{v}\", shape={shape}];");
    }
    edges(g, &mut out);
    out.push_str("}\n");
    out
}

/// Nested clusters, one per child in order; `A_0` vertices are drawn in
/// the cluster of their level.
pub fn ad_to_dot(g: &ParityGraph, d: &AttractorDecomposition) -> String {
    fn cluster(d: &AttractorDecomposition, path: &str, out: &mut String) {
        let _ = writeln!(out, "subgraph cluster_{path} {{\n  label=\"level {}\";", d.level);
        for v in &d.top_attractor {
            let _ = writeln!(out, "  v{v};");
        }
        for (k, c) in d.children.iter().enumerate() {
            for v in c.attractor.difference(&c.subgame) {
                let _ = writeln!(out, "  v{v} [style=dashed];");
            }
            cluster(&c.sub, &format!("{path}_{k}"), out);
        }
        out.push_str("}\n");
    }
    let mut out = String::from("digraph AD {\n");
    cluster(d, "r", &mut out);
    edges(g, &mut out);
    out.push_str("}\n");
    out
}

pub fn tree_to_dot(t: &OrderedTree) -> String {
    fn go(t: &OrderedTree, next: &mut usize, out: &mut String) -> usize {
        let me = *next;
        *next += 1;
        let _ = writeln!(out, "  n{me} [label=\"\"];");
        for c in &t.children {
            let k = go(c, next, out);
            let _ = writeln!(out, "  n{me} -> n{k};");
        }
        me
    }
    let mut out = String::from("digraph T {\n  ordering=out;\n");
    go(t, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::build_ad;

    #[test]
    fn leaf_is_one_node() {
        let s = tree_to_dot(&OrderedTree::leaf());
        assert_eq!(s.matches("[label=").count(), 1);
    }

    #[test]
    fn game_nodes_and_determinism() {
        let g = ParityGraph::from_edges(3, [(0, 1, 2), (1, 2, 1), (2, 0, 0)]).unwrap();
        let game = ParityGame::adam_only(g.clone());
        let s = game_to_dot(&game);
        assert_eq!(s.matches("shape=").count(), 3);
        assert_eq!(s, game_to_dot(&game));
        let d = build_ad(&g, 2).unwrap();
        assert!(ad_to_dot(&g, &d).contains("cluster_r"));
    }
}
