//! Desk-scale toolkit for loose Hamilton cycles in 3-uniform hypergraphs.
//!
//! The crate models 3-uniform hypergraphs on small dense vertex ranges and
//! implements the constructive ingredients of the absorbing method for
//! loose Hamilton cycles: extremal and random generators, an exact solver,
//! absorbing structures, reservoir sampling, connection of path systems,
//! fractional and integral template tilings, weak regularity consumers and
//! a staged assembly pipeline that either emits a checked cycle
//! certificate or reports the stage where it failed.

pub mod certificate;
pub mod constructions;
pub mod error;
pub mod experiment;
pub mod hypergraph;
pub mod io;
pub mod l29;
pub mod paths;
pub mod pipeline;
pub mod regularity;
pub mod seeds;
pub mod tiling;

pub use error::{Error, Result};
pub use hypergraph::{choose2, choose3, Edge3, Hypergraph3, PairMasks, VertexId};
pub use paths::{
    validate_loose_cycle, validate_loose_path, validate_tight_path, LooseCycle, LoosePath,
    PathViolation,
};
