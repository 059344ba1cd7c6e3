//! Certified hitting sets for the maximum independent sets of induced-`K_{s,t}`-free graphs.
//!
//! The crate builds a vertex set `T` meeting every maximum independent set by combining
//! a sampled set of "anchor" vertices inside one maximum independent set, the union of
//! their common neighbourhoods, and a low-residual-degree exchange set. Every result comes
//! with a [`HittingCertificate`] that can be replayed and checked against exact oracles.
//!
//! Modules:
//! - [`graph`]: bit-row graphs, generators, induced-pattern search, file formats.
//! - [`mis`]: exact independence number, full enumeration of maximum independent sets, kernel.
//! - [`hitting`]: the construction, verification, exact minimum hitting set, random sampling.
//! - [`drc`]: large cliques in dense induced-`C4`-free graphs via dependent random choice.
//! - [`analysis`]: intersection probabilities, expectation bounds, Monte Carlo, experiments.

pub mod analysis;
pub mod drc;
pub mod error;
pub mod graph;
pub mod hitting;
pub mod mis;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Graph, GraphFormat, InducedEmbedding, VertexSet};
pub use hitting::{HittingCertificate, Mode, ParamSchedule};
pub use mis::MisFamily;
