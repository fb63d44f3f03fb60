pub mod alternation;
pub mod c4;
pub mod chromatic;
pub mod error;
pub mod euler;
pub mod graph;
pub mod harness;
pub mod hypergraph;
pub mod locally_eulerian;
pub mod matching;
pub mod orderings;
pub mod turan;

pub use error::{Error, Result};

// Runs the snippets in the guide as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/matching-graphs.md")]
    pub struct MatchingGraphs;
    #[doc = include_str!("../../../book/src/turan.md")]
    pub struct Turan;
    #[doc = include_str!("../../../book/src/alternation.md")]
    pub struct Alternation;
    #[doc = include_str!("../../../book/src/coloring.md")]
    pub struct Coloring;
    #[doc = include_str!("../../../book/src/orderings.md")]
    pub struct Orderings;
    #[doc = include_str!("../../../book/src/c4.md")]
    pub struct C4;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
