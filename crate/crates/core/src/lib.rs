//! Exact statevector simulation of depth-p QAOA circuits for MaxCut, and
//! variational parameter search with an Adam-assisted fully informed
//! particle swarm (Adam-FIPSO).
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: problem instances, exact and local-search cuts, JSON I/O.
//! * [`qaoasim`]: cut spectrum, layered state evolution, expectation, landscape scans.
//! * [`optimizer`]: loss, finite differences, Adam moments and the swarm itself.
//! * [`experiment`]: the ER/WS sweep, random baseline, improvement tables.
//! * [`cli`]: the `qaoa-fipso` command-line front end.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod optimizer;
pub mod qaoasim;

pub use error::{Error, Result};
pub use graph::{CutResult, Graph};
pub use optimizer::{Mode, OptimizeResult, SwarmConfig};
pub use qaoasim::{CutSpectrum, QaoaParams, Statevector};
