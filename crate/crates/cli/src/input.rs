use std::io::Read;

use pix_core::automata::{GuidingFunction, Npta, RegularTree};
use pix_core::decomposition::{AttractorDecomposition, LabellingPair};
use pix_core::games::{ParityGame, ParityGraph};
use pix_core::io::{import_pgsolver, Conversion, IoError, Manifest, Object};
use pix_core::trees::OrderedTree;

use crate::cmd::CliError;
use crate::Global;

fn read(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// A native manifest, or a PGSolver file turned into a game manifest.
pub fn manifest(path: &str, g: &Global) -> Result<Manifest, CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with("parity") {
        let conversion = if g.source_priorities { Conversion::Source } else { Conversion::Target };
        let imp = import_pgsolver(&text, conversion)?;
        return Ok(Manifest::game(&imp.game).with_meta("priority_conversion", conversion.describe()));
    }
    Ok(Manifest::parse(&text)?)
}

pub fn game(path: &str, g: &Global) -> Result<ParityGame, CliError> {
    let m = manifest(path, g)?;
    match m.object {
        Object::Graph(_) => Ok(ParityGame::adam_only(m.to_graph()?)),
        _ => Ok(m.to_game()?),
    }
}

pub fn graph(path: &str, g: &Global) -> Result<ParityGraph, CliError> {
    Ok(manifest(path, g)?.to_graph()?)
}

pub fn pair(path: &str, g: &Global) -> Result<LabellingPair, CliError> {
    Ok(manifest(path, g)?.to_pair()?)
}

pub fn decomposition(path: &str, g: &Global) -> Result<AttractorDecomposition, CliError> {
    match manifest(path, g)?.object {
        Object::Decomposition(d) => Ok(d),
        other => Err(IoError::KindMismatch {
            expected: "decomposition",
            found: other.kind(),
        }
        .into()),
    }
}

/// Bracket syntax inline, or a path to a tree manifest.
pub fn tree(arg: &str, g: &Global) -> Result<OrderedTree, CliError> {
    if arg.trim_start().starts_with('(') {
        return arg.parse().map_err(|e| CliError::Usage(format!("tree {arg:?}: {e}")));
    }
    Ok(manifest(arg, g)?.to_tree()?)
}

pub fn automaton(path: &str, g: &Global) -> Result<Npta, CliError> {
    Ok(manifest(path, g)?.to_automaton()?)
}

pub fn regular_tree(path: &str, g: &Global) -> Result<RegularTree, CliError> {
    Ok(manifest(path, g)?.to_regular_tree()?)
}

pub fn guide(path: &str, g: &Global) -> Result<GuidingFunction, CliError> {
    match manifest(path, g)?.object {
        Object::Guide(x) => Ok(x),
        other => Err(IoError::KindMismatch {
            expected: "guide",
            found: other.kind(),
        }
        .into()),
    }
}
