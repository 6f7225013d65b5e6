mod cmd;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cmd::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "pix", version, about = "Parity games, attractor decompositions and register games")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format for graph-like results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Native)]
    pub format: Format,
    /// State cap for product constructions.
    #[arg(long = "cap-states", global = true, default_value_t = 200_000)]
    pub cap_states: usize,
    #[arg(long = "reset-rule", global = true, value_enum, default_value_t = Reset::Liberal)]
    pub reset_rule: Reset,
    /// Read PGSolver input with source-vertex priorities instead of target ones.
    #[arg(long = "source-priorities", global = true)]
    pub source_priorities: bool,
    /// Print errors as JSON on stdout.
    #[arg(long = "json-errors", global = true)]
    pub json_errors: bool,
    /// Write the main result to this file (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Native,
    Pgsolver,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reset {
    Liberal,
    Literal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Winning regions and positional strategies.
    Solve { game: String },
    /// Whether a one-player graph is even; prints an odd lasso if not.
    Even { graph: String },
    /// Attractor of a vertex set for a player.
    Attract {
        game: String,
        /// Comma-separated target vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Side::Eve)]
        player: Side,
    },
    /// Attractor decompositions.
    #[command(subcommand)]
    Ad(AdCommand),
    /// n-Strahler number of an ordered tree (brackets or a tree manifest).
    Strahler {
        tree: String,
        #[arg(long, short)]
        n: u32,
    },
    /// Finite universal tree U(n,k,d) with ω-blocks of width w.
    Universal {
        #[arg(long, short)]
        n: u32,
        #[arg(long, short)]
        k: u32,
        #[arg(long, short)]
        d: u32,
        #[arg(long, short, default_value_t = 2)]
        w: usize,
    },
    /// Order-preserving embedding of one tree into another.
    Embed { tree: String, host: String },
    /// Register transduction games.
    #[command(subcommand)]
    Reg(RegCommand),
    /// n-bound relation between two labellings.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Tree automata on regular trees.
    #[command(subcommand)]
    Aut(AutCommand),
    /// Instance generation and the regression battery.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Re-emit an input in the format chosen by `--format`.
    Convert { input: String },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Eve,
    Adam,
}

#[derive(Subcommand, Debug)]
pub enum AdCommand {
    /// Canonical decomposition of an even graph.
    Build {
        graph: String,
        /// Even level; defaults to the maximal priority rounded up to even.
        #[arg(long)]
        level: Option<u32>,
    },
    /// Validate a decomposition against a graph.
    Check { graph: String, decomposition: String },
    /// Whether a decomposition is tight.
    Tight { graph: String, decomposition: String },
    /// Tree shape of a decomposition.
    Shape { decomposition: String },
}

#[derive(Subcommand, Debug)]
pub enum RegCommand {
    /// Build the product game.
    Build {
        game: String,
        #[arg(long, value_parser = cmd::parse_index)]
        j: pix_core::games::Index,
        #[arg(long, short)]
        n: u32,
    },
    /// Whether Eve wins the register game from every vertex (or `--from`).
    Solve {
        game: String,
        #[arg(long, value_parser = cmd::parse_index)]
        j: pix_core::games::Index,
        #[arg(long, short)]
        n: u32,
        #[arg(long)]
        from: Option<usize>,
    },
    /// Strategy from the canonical decomposition of an even graph, verified.
    Synth {
        graph: String,
        #[arg(long, short)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundCommand {
    /// Whether a labelling pair is n-bound; prints a witness path if not.
    Check {
        pair: String,
        #[arg(long, short)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AutCommand {
    /// Acceptance game of an automaton on a regular tree.
    Game { automaton: String, tree: String },
    /// Whether the automaton accepts the tree.
    Member { automaton: String, tree: String },
    /// Compose an automaton with the register game.
    Compose {
        automaton: String,
        #[arg(long, value_parser = cmd::parse_index)]
        j: pix_core::games::Index,
        #[arg(long, short)]
        n: u32,
    },
    /// Whether a guided run is |A||B|+1-bound by the run of B it follows.
    Guide { a: String, b: String, guide: String, tree: String },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Game,
    Even,
    Pair,
}

#[derive(Subcommand, Debug)]
pub enum LabCommand {
    /// A random instance.
    Random {
        #[arg(long, value_enum, default_value_t = Kind::Game)]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        #[arg(long, default_value_t = 4)]
        priorities: u32,
        /// Bound for `--kind pair`.
        #[arg(long, short, default_value_t = 1)]
        n: usize,
    },
    /// Run the acceptance battery; exit 1 if any criterion fails.
    Battery {
        /// Corpus size in percent of the defaults.
        #[arg(long, default_value_t = 100)]
        scale: usize,
        /// Run only this criterion (e.g. `4` or `6b`).
        #[arg(long)]
        criterion: Option<String>,
        /// Also write the full JSON report here.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let global = cli.global.clone();
    match cmd::run(cli) {
        Ok(Outcome { output, code }) => {
            if let Err(e) = cmd::emit(&global, &output) {
                return report(&global, e);
            }
            ExitCode::from(code)
        }
        Err(e) => report(&global, e),
    }
}

fn report(global: &Global, e: CliError) -> ExitCode {
    if global.json_errors {
        println!("{}", serde_json::json!({"error": e.kind(), "message": e.to_string(), "exit": e.code()}));
    } else {
        eprintln!("pix: {e}");
    }
    ExitCode::from(e.code())
}
