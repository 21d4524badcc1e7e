//! Generalized subgraph counting and (p,Q)-spectral radii of uniform hypergraphs.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; file formats, the command line and the threaded
//! runner live in the `specturan` companion crate.
//!
//! Module map:
//! - [`hypergraph`]: immutable r-graphs, named generators and structural
//!   transforms (induced subgraphs, blow-ups, 2-shadows, expansions).
//! - [`count`]: embeddings, automorphisms, copy counts, Q-degrees and the
//!   weighted derived s-graph `D(Q,H)`.
//! - [`canon`] and [`enumerate`]: canonical labels and orderly generation of
//!   non-isomorphic r-graphs.
//! - [`spectral`]: the Q-Lagrangian polynomial and its maximum on the unit
//!   p-sphere.
//! - [`extremal`]: exhaustive small-order harnesses for the extremal
//!   statements built on the above.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod canon;
pub mod count;
pub mod enumerate;
mod error;
pub mod exec;
pub mod extremal;
pub mod hypergraph;
pub mod spectral;
mod subsets;

pub use canon::{canonical_form, CanonicalLabel};
pub use count::{FamilySpec, WeightedSGraph};
pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use hypergraph::{BlowupSpec, Generator, Hypergraph};
pub use spectral::{PVector, SolverOptions, SpectralResult};
