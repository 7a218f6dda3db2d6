//! Construction and verification of 2-degenerate graphs that have a
//! Hamiltonian path but only short induced paths.
//!
//! The pipeline is index-tree → barrier words → skeleton-tree → ribbed-tree
//! → blow-up graph, followed by induced-path analysis on the result.

pub mod analysis;
pub mod barrier_words;
pub mod blowup;
pub mod check;
pub mod cli;
pub mod error;
pub mod graph;
pub mod index_tree;
pub mod ribbed;
pub mod skeleton;

pub use check::{Check, Report};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use index_tree::{Alpha, IndexTree};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/index-trees.md")]
    mod index_trees {}
    #[doc = include_str!("../../../book/src/barrier-words.md")]
    mod barrier_words {}
    #[doc = include_str!("../../../book/src/skeleton.md")]
    mod skeleton {}
    #[doc = include_str!("../../../book/src/ribbed.md")]
    mod ribbed {}
    #[doc = include_str!("../../../book/src/blowup.md")]
    mod blowup {}
    #[doc = include_str!("../../../book/src/induced-paths.md")]
    mod induced_paths {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
