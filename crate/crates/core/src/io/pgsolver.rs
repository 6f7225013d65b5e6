use std::collections::BTreeMap;

use super::IoError;
use crate::games::{Index, ParityGame, ParityGraph, Player, Priority, VertexId};

/// How vertex priorities become edge priorities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Conversion {
    /// An edge carries the priority of the vertex it enters.
    #[default]
    Target,
    /// An edge carries the priority of the vertex it leaves.
    Source,
}

impl Conversion {
    pub fn describe(self) -> &'static str {
        match self {
            Conversion::Target => "target: each edge carries the priority of the vertex it enters",
            Conversion::Source => "source: each edge carries the priority of the vertex it leaves",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PgImport {
    pub game: ParityGame,
    pub names: BTreeMap<VertexId, String>,
    pub conversion: Conversion,
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, at: &str, message: impl Into<String>) -> IoError {
        let column = at.as_ptr() as usize - self.text.as_ptr() as usize + 1;
        IoError::Parse {
            line: self.no,
            column,
            message: message.into(),
        }
    }
}

fn number<T: std::str::FromStr>(line: &Line, tok: &str, what: &str) -> Result<T, IoError> {
    tok.parse().map_err(|_| line.err(tok, format!("expected {what}, found {tok:?}")))
}

/// Reads a game in PGSolver format. Vertex ids are kept; ids below the
/// largest one that are not declared become absent vertices.
pub fn import_pgsolver(text: &str, conversion: Conversion) -> Result<PgImport, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, text)| Line { no: k + 1, text })
        .filter(|l| !l.text.trim().is_empty());
    let header = lines.next().ok_or(IoError::EmptyGame)?;
    let body = header.text.trim().trim_end_matches(';');
    let mut toks = body.split_whitespace();
    if toks.next() != Some("parity") {
        return Err(header.err(header.text.trim_start(), "expected \"parity <n>;\""));
    }
    let n_tok = toks.next().ok_or_else(|| header.err(body, "missing vertex bound"))?;
    let _: usize = number(&header, n_tok, "a vertex bound")?;
    let mut decl: BTreeMap<VertexId, (Priority, Player, Vec<VertexId>, usize)> = BTreeMap::new();
    let mut names = BTreeMap::new();
    for line in lines {
        let t = line.text.trim();
        if t.starts_with("start") {
            continue;
        }
        let t = t.strip_suffix(';').ok_or_else(|| line.err(t, "missing ';'"))?;
        let (t, name) = match t.find('"') {
            Some(q) => (&t[..q], Some(t[q..].trim_matches('"').to_string())),
            None => (t, None),
        };
        let toks: Vec<&str> = t.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(line.err(t, "expected \"<id> <priority> <owner> <successors>\""));
        }
        let id: VertexId = number(&line, toks[0], "a vertex id")?;
        let prio: Priority = number(&line, toks[1], "a priority")?;
        let owner = match toks[2] {
            "0" => Player::Eve,
            "1" => Player::Adam,
            o => return Err(line.err(toks[2], format!("owner must be 0 or 1, found {o:?}"))),
        };
        let succ = toks[3]
            .split(',')
            .map(|s| number(&line, s, "a successor id"))
            .collect::<Result<Vec<VertexId>, _>>()?;
        if decl.insert(id, (prio, owner, succ, line.no)).is_some() {
            return Err(line.err(toks[0], format!("vertex {id} declared twice")));
        }
        if let Some(name) = name {
            names.insert(id, name);
        }
    }
    let universe = decl.keys().next_back().map(|&m| m + 1).ok_or(IoError::EmptyGame)?;
    let mut edges = Vec::new();
    for (&v, (prio, _, succ, no)) in &decl {
        for &w in succ {
            let target = decl.get(&w).ok_or(IoError::DanglingSuccessor { line: *no, vertex: w })?;
            let p = match conversion {
                Conversion::Target => target.0,
                Conversion::Source => *prio,
            };
            edges.push((v, w, p));
        }
    }
    let hi = decl.values().map(|d| d.0).max().unwrap_or(0);
    let graph = ParityGraph::new(universe, edges, Index { lo: 0, hi })?;
    let keep: Vec<bool> = (0..universe).map(|v| decl.contains_key(&v)).collect();
    let owner = (0..universe).map(|v| decl.get(&v).map_or(Player::Eve, |d| d.1)).collect();
    Ok(PgImport {
        game: ParityGame::new(graph.restrict_mask(&keep), owner)?,
        names,
        conversion,
    })
}

/// Writes a game in PGSolver format. Each vertex gets the priority shared
/// by all edges entering it (or leaving it, for [`Conversion::Source`]);
/// vertices with no such edge get 0.
pub fn export_pgsolver(game: &ParityGame, conversion: Conversion) -> Result<String, IoError> {
    let g = &game.graph;
    let mut prio: BTreeMap<VertexId, Priority> = BTreeMap::new();
    for e in g.edges() {
        let edge = g.edge(e);
        let v = match conversion {
            Conversion::Target => edge.target,
            Conversion::Source => edge.source,
        };
        if *prio.entry(v).or_insert(edge.priority) != edge.priority {
            return Err(IoError::NotExpressible(v));
        }
    }
    let max = g.vertices().last().ok_or(IoError::EmptyGame)?;
    let mut out = format!("parity {max};\n");
    for v in g.vertices() {
        let succ: Vec<String> = g.out_edges(v).map(|e| g.edge(e).target.to_string()).collect();
        let owner = match game.owner(v) {
            Player::Eve => 0,
            Player::Adam => 1,
        };
        out.push_str(&format!("{v} {} {owner} {};\n", prio.get(&v).copied().unwrap_or(0), succ.join(",")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::solve;

    const SAMPLE: &str = "parity 1;\n0 3 0 0,1 \"a\";\n1 2 1 0;\n";

    #[test]
    fn two_vertex_sample_uses_target_priorities() {
        let imp = import_pgsolver(SAMPLE, Conversion::Target).unwrap();
        let g = &imp.game.graph;
        assert_eq!(g.vertex_count(), 2);
        for e in g.edges() {
            let target = g.edge(e).target;
            assert_eq!(g.edge(e).priority, [3, 2][target]);
        }
        assert_eq!(imp.names[&0], "a");
        assert_eq!(imp.game.owner(1), Player::Adam);
        let src = import_pgsolver(SAMPLE, Conversion::Source).unwrap();
        assert_eq!(src.game.graph.edge(2).priority, 2);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(import_pgsolver("parity 3;\n", Conversion::Target), Err(IoError::EmptyGame));
        assert_eq!(import_pgsolver("", Conversion::Target), Err(IoError::EmptyGame));
        assert_eq!(
            import_pgsolver("parity 1;\n0 1 0 5;\n", Conversion::Target),
            Err(IoError::DanglingSuccessor { line: 2, vertex: 5 })
        );
        let err = import_pgsolver("parity 1;\n0 x 0 0;\n", Conversion::Target).unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 2, column: 3, .. }), "{err:?}");
    }

    #[test]
    fn round_trip_keeps_winner() {
        let imp = import_pgsolver(SAMPLE, Conversion::Target).unwrap();
        let text = export_pgsolver(&imp.game, Conversion::Target).unwrap();
        let again = import_pgsolver(&text, Conversion::Target).unwrap();
        assert_eq!(again.game.graph, imp.game.graph);
        assert_eq!(solve(&again.game).unwrap(), solve(&imp.game).unwrap());
    }

    #[test]
    fn mixed_incoming_priorities_are_not_expressible() {
        let g = ParityGraph::from_edges(2, [(0, 1, 1), (1, 1, 2), (1, 0, 0)]).unwrap();
        assert_eq!(export_pgsolver(&ParityGame::adam_only(g), Conversion::Target), Err(IoError::NotExpressible(1)));
    }
}
