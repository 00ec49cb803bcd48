use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverlab_core::MutationSequence;

#[derive(Debug, Parser)]
#[command(name = "quiverlab", version, about = "Quiver mutation, green sequences and cluster algebra checks")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One line of JSON.
    Structured,
}

#[derive(Debug, Args)]
pub struct QuiverInput {
    /// Quiver document, or `@name` for a shipped example
    /// (`@qce`, `@x7_b1`, `@x7_b2`, `@markov`, `@a2`).
    #[arg(long, short)]
    pub quiver: String,
}

#[derive(Debug, Args)]
pub struct SequenceInput {
    /// Comma-separated vertex labels starting at 1, e.g. `1,4,3`.
    #[arg(long, short, alias = "vertex", allow_hyphen_values = false)]
    pub seq: MutationSequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Green,
    Mgs,
    G2r,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchKindArg {
    Mgs,
    G2r,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Bfs,
    Iddfs,
}

#[derive(Debug, Args)]
pub struct CertificateDepths {
    /// Mutations tried at each certificate node.
    #[arg(long, env = crate::MUTATION_DEPTH_ENV, default_value_t = 2)]
    pub mutation_depth: usize,
    /// Nested freezings allowed.
    #[arg(long, env = crate::RECURSION_DEPTH_ENV, default_value_t = 6)]
    pub recursion_depth: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate along a sequence and print the resulting quiver.
    Mutate {
        #[command(flatten)]
        input: QuiverInput,
        #[command(flatten)]
        seq: SequenceInput,
        /// Frame the quiver first.
        #[arg(long)]
        framed: bool,
    },
    /// Print the framed quiver.
    Frame {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// Replay a sequence from the framed quiver, with colours at each step.
    Replay {
        #[command(flatten)]
        input: QuiverInput,
        #[command(flatten)]
        seq: SequenceInput,
    },
    /// Check a sequence. Exits 1 when the check fails.
    Verify {
        #[arg(long, value_enum)]
        kind: VerifyKind,
        #[command(flatten)]
        input: QuiverInput,
        #[command(flatten)]
        seq: SequenceInput,
    },
    /// Look for a maximal green or green-to-red sequence.
    Search {
        #[arg(long, value_enum)]
        kind: SearchKindArg,
        #[command(flatten)]
        input: QuiverInput,
        #[arg(long, env = crate::MAX_DEPTH_ENV, default_value_t = 8)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Bfs)]
        strategy: StrategyArg,
        /// Keep green vertices that are heads of multiple arrows.
        #[arg(long)]
        no_prune: bool,
        /// Skip the no-MGS certificates before searching.
        #[arg(long)]
        no_obstructions: bool,
        #[arg(long, default_value_t = 2_000_000)]
        max_states: usize,
    },
    /// Mutation class queries.
    #[command(subcommand)]
    Class(ClassCommand),
    /// Obstructions to maximal green sequences and to acyclic seeds.
    #[command(subcommand)]
    Obstruct(ObstructCommand),
    /// Covering pairs and local-acyclicity certificates.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Upper cluster algebra membership and gradings.
    #[command(subcommand)]
    Upper(UpperCommand),
    /// Worked examples.
    #[command(subcommand)]
    Paper(PaperCommand),
    /// Run the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClassCommand {
    /// Enumerate the class up to relabeling.
    Enumerate {
        #[command(flatten)]
        input: QuiverInput,
        #[arg(long, default_value_t = 10_000)]
        max_quivers: usize,
        #[arg(long, default_value_t = 32)]
        max_multiplicity: i64,
        /// Write one quiver document per member plus `index.json` here.
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
    /// Whether the class is finite.
    Finite {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// Column gcds, which are mutation invariant.
    Gcds {
        #[command(flatten)]
        input: QuiverInput,
    },
}

#[derive(Debug, Subcommand)]
pub enum ObstructCommand {
    /// An admissible colouring, or cycles proving none exists.
    Coloring {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// An oriented cycle of multiple arrows.
    Cycle {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// A certificate that this quiver has no maximal green sequence.
    NoMgs {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// A certificate covering the whole mutation class.
    ClassNoMgs {
        #[command(flatten)]
        input: QuiverInput,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// Arrows that lie on no bi-infinite path.
    Pairs {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// A local-acyclicity certificate tree, re-checked before printing.
    Certificate {
        #[command(flatten)]
        input: QuiverInput,
        #[command(flatten)]
        depths: CertificateDepths,
    },
}

#[derive(Debug, Subcommand)]
pub enum UpperCommand {
    /// Membership in the initial and all adjacent Laurent rings. Exits 1
    /// when some direction fails.
    Check {
        #[command(flatten)]
        input: QuiverInput,
        /// Laurent polynomial in x1..xn, y1..yn, e.g. `(y1*x2 + 1)/x1`.
        #[arg(long)]
        poly: String,
    },
    /// Validity of a grading and, optionally, the degree of a polynomial.
    /// Exits 1 when the grading is invalid.
    Grading {
        #[command(flatten)]
        input: QuiverInput,
        /// Degrees of x1..xn, comma-separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Vec<i64>,
        #[arg(long)]
        poly: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PaperCommand {
    /// Recompute every verdict of a worked example. Exits 1 if any fails.
    Reproduce {
        #[arg(value_enum)]
        case: Case,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Qce,
    X7,
    Markov,
}
