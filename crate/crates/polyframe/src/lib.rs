//! Exact-arithmetic orientation data for framed polytopes.
//!
//! A frame (an ordered basis of ambient space) attached to a polytope induces
//! a source/target partition on the facets of every face, extended k-sources
//! and k-targets, cellular string graphs, an augmented chain complex, flag
//! chirotopes, and a poset orientation with layerings. This crate computes
//! all of that over exact rationals, together with the cyclic families
//! (cyclic polytopes, zonotopes, cubes and simplices), their combinatorial
//! face rules, the simplicial and cubical orientals, and the higher Bruhat
//! orders with their cubillages.

pub mod chirotope;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod framing;
pub mod io;
pub mod molecules;
pub mod polytope;
pub mod strings;

pub use error::Error;
