//! Finite duality toolkit: distributive meet-semilattices, algebraic frames,
//! and (pointed) generalized Priestley spaces on finite carriers, with the
//! six functors relating them and an exhaustive small-instance verification
//! harness.
//!
//! Everything here is pure and immutable: posets, spaces, maps, and relations
//! never mutate after construction, so values can be shared freely across
//! threads. At finite scale every topology involved is discrete; topological
//! conditions (clopen, dense, closed) are evaluated in their discrete
//! reductions, which the axiom reports record explicitly.

// Index loops over parallel per-element tables are the house style here.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod doc;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod filters;
pub mod functors;
pub mod morphism;
pub mod poset;
pub mod report;
pub mod space;
pub mod suite;

pub use error::{Error, Result};
pub use poset::{FinitePoset, Mask};
