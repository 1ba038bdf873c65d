//! Exact rank machinery for higher inclusion matrices of uniform
//! hypergraphs: colex combinatorics, shadow bounds, the extremal
//! constructions, rank over Q and GF(p), dependence sequences and the
//! experiment drivers built on them.

pub mod combinat;
pub mod error;
pub mod experiments;
pub mod hypergraph;
pub mod kset;
pub mod rankcore;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use kset::KSet;
pub use rankcore::{rank, DependenceSequence, InclusionMatrix, RankCertificate, RankMode};
