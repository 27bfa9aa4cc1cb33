use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "catkit", version, about = "Finite category theory workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Dot,
}

/// Flags shared by every verb.
#[derive(Debug, Clone, Args, Default)]
pub struct Common {
    /// Input file (repeatable; order matters for binary verbs)
    #[arg(long = "in", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// Write the result here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Word-length bound for rewriting
    #[arg(long)]
    pub bound: Option<usize>,
    /// Size budget `OBJECTS,MORPHISMS` or `MORPHISMS` (default from CATKIT_BUDGET)
    #[arg(long)]
    pub budget: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized verbs
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite categories, functors, limits and Kan extensions
    Fincat {
        #[command(subcommand)]
        op: FincatOp,
    },
    /// Presentations: word problem and invariants
    Present {
        #[command(subcommand)]
        op: PresentOp,
    },
    /// Descent categories, algebras and monad morphisms
    Descent {
        #[command(subcommand)]
        op: DescentOp,
    },
    /// Adjunctions, mates and the Beck–Chevalley condition
    Mates {
        #[command(subcommand)]
        op: MatesOp,
    },
    /// Spans and matrices of finite sets
    Bicat {
        #[command(subcommand)]
        op: BicatOp,
    },
    /// CW realizations, Euler characteristic and homology
    Topo {
        #[command(subcommand)]
        op: TopoOp,
    },
    /// Golden-output corpus
    Corpus {
        #[command(subcommand)]
        op: CorpusOp,
    },
}

#[derive(Debug, Subcommand)]
pub enum FincatOp {
    /// List every violated axiom instance of a category
    Validate(Common),
    /// Look up `g ∘ f`
    Compose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
    },
    /// Paths between two nodes of a graph
    Paths {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
    /// The functor category [A, B] of two categories
    FunctorCat(Common),
    /// Limit of a diagram given as a functor
    Limit(Common),
    /// Pointwise right Kan extension of the second functor along the first
    Ran(Common),
    /// Isomorphism search between two categories
    Iso(Common),
    /// DOT rendering of a category
    Dot(Common),
}

#[derive(Debug, Subcommand)]
pub enum PresentOp {
    /// Bounded word problem
    WordEq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Start node for empty words
        #[arg(long)]
        start: Option<String>,
    },
    Deficiency(Common),
    /// Abelianization of each component
    Abelianize(Common),
    /// Euler characteristic thinness test
    Thin(Common),
}

#[derive(Debug, Subcommand)]
pub enum DescentOp {
    /// Colax descent category of a diagram
    Colax(Common),
    /// Descent category (invertible structure maps only)
    Strict(Common),
    /// Compare algebras with the colax descent category of a monad's diagram
    EmCheck(Common),
    /// Monad morphisms between two monads, checked against their descent diagram
    MonadHoms(Common),
}

#[derive(Debug, Subcommand)]
pub enum MatesOp {
    /// Check the triangle identities of an adjunction
    Check(Common),
    /// Mate of a square's 2-cell
    Mate(Common),
    /// Beck–Chevalley test of a square
    Bc(Common),
    /// Mate round trips on random poset squares
    Random {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BicatOp {
    /// Compose two spans, given in path order
    SpanCompose(Common),
    /// Compose two matrices, given in path order
    MatCompose(Common),
    /// Encode a category as a span monad and a matrix monad and decode both
    Roundtrip(Common),
}

#[derive(Debug, Subcommand)]
pub enum TopoOp {
    /// CW complex of a computad
    Realize(Common),
    /// Euler characteristic per component
    Chi(Common),
    /// H0 and H1
    Homology(Common),
    /// Presentation of the fundamental groupoid
    Pi1(Common),
}

#[derive(Debug, Subcommand)]
pub enum CorpusOp {
    /// Run every case and acceptance check
    Run {
        #[arg(long)]
        dir: PathBuf,
        /// Directory receiving one output file per case and the report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite the golden files from current outputs
    Bless {
        #[arg(long)]
        dir: PathBuf,
    },
}

impl Cli {
    pub(crate) fn common(&self) -> Option<&Common> {
        use Command::*;
        Some(match &self.command {
            Fincat { op } => match op {
                FincatOp::Validate(c)
                | FincatOp::FunctorCat(c)
                | FincatOp::Limit(c)
                | FincatOp::Ran(c)
                | FincatOp::Iso(c)
                | FincatOp::Dot(c) => c,
                FincatOp::Compose { common, .. } | FincatOp::Paths { common, .. } => common,
            },
            Present { op } => match op {
                PresentOp::WordEq { common, .. } => common,
                PresentOp::Deficiency(c) | PresentOp::Abelianize(c) | PresentOp::Thin(c) => c,
            },
            Descent { op } => match op {
                DescentOp::Colax(c) | DescentOp::Strict(c) | DescentOp::EmCheck(c) | DescentOp::MonadHoms(c) => c,
            },
            Mates { op } => match op {
                MatesOp::Check(c) | MatesOp::Mate(c) | MatesOp::Bc(c) => c,
                MatesOp::Random { common, .. } => common,
            },
            Bicat { op } => match op {
                BicatOp::SpanCompose(c) | BicatOp::MatCompose(c) | BicatOp::Roundtrip(c) => c,
            },
            Topo { op } => match op {
                TopoOp::Realize(c) | TopoOp::Chi(c) | TopoOp::Homology(c) | TopoOp::Pi1(c) => c,
            },
            Corpus { .. } => return None,
        })
    }

    /// The `--out` file of a single-result verb.
    pub(crate) fn out_path(&self) -> Option<&Path> {
        self.common().and_then(|c| c.out.as_deref())
    }
}
