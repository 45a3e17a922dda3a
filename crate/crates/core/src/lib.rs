//! Exact symbolic engine for finitely presented higher-rank graphs
//! (k-graphs) and their Kumjian-Pask path algebras over commutative rings.
//!
//! The crate is organized around the life cycle of a computation:
//!
//! - [`kgraph`] — presentations, validation (unique factorization property,
//!   hexagon condition, no sources) and exact path arithmetic;
//! - [`ring`] — scalars in ℚ, 𝔽_p or ℤ and exact kernel solving;
//! - [`algebra`] — elements of the Kumjian-Pask algebra with multiplication
//!   from the defining relations, canonical normal forms, the ℤ^k grading
//!   and the star anti-involution;
//! - [`analysis`] — graph property deciders: closed paths, cofinality,
//!   aperiodicity, the commutativity criterion, components and the Laurent
//!   polynomial picture of commutative algebras;
//! - [`center`] — the exact bounded-window center solver, structural
//!   filters for central elements, diagnostics and the theorem harness.

pub mod algebra;
pub mod analysis;
pub mod center;
pub mod degree;
pub mod fixtures;
pub mod kgraph;
pub mod parallel;
pub mod ring;

pub use degree::{GradeDegree, MultiDegree};
pub use kgraph::{
    parse_graph, validate, BuildMode, EdgeId, KGraph, ParseError, Path, PathError, Presentation,
    VertexId, Violation,
};
pub use ring::{RingError, RingSpec, RingValue};
