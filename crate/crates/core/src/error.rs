//! Crate-wide error type.
//!
//! Every fallible operation in the crate reports through the [`enum@Error`]
//! type. Witness data is carried as element names so messages stay
//! meaningful after the originating structure is gone.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("order closure violates antisymmetry: {a} <= {b} and {b} <= {a} with {a} != {b}")]
    Cycle { a: String, b: String },
    #[error("unknown element: {0}")]
    UnknownElement(String),
    #[error("duplicate element: {0}")]
    DuplicateElement(String),
    #[error("carrier too large: {n} elements (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("not a meet-semilattice: {0}")]
    NotASemilattice(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not a frame: {0}")]
    NotAFrame(String),
    #[error("no bottom element")]
    NoBottom,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no separating prime found for {a} over {b}")]
    NoPrimeFound { a: String, b: String },
    #[error("not distributive: witness ({a}, {b}, {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("optimal-filter oracles disagree: {0}")]
    OracleMismatch(String),
    #[error("internal characterizations disagree: {0}")]
    InternalMismatch(String),
    #[error("map does not preserve joins: witness subset {{{0}}}")]
    NotJoinPreserving(String),
    #[error("map does not preserve finite meets: witness subset {{{0}}}")]
    NotMeetHom(String),
    #[error("codomain/domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("relation is not a generalized Priestley morphism: {0}")]
    NotAMorphism(String),
    #[error("relation is not functional: R[{0}] has no least element")]
    NotFunctional(String),
    #[error("map is not a strong Priestley morphism: witness upset {0}")]
    NotStrong(String),
    #[error("map is not join-and-compact preserving: {0}")]
    NotAlgFrmJ(String),
    #[error("functor applied to object of the wrong kind: {0}")]
    WrongSourceKind(String),
    #[error("source object fails its class axioms: {0}")]
    SourceAxiomFailure(String),
    #[error("size cap exceeded: requested {requested}, cap {cap}")]
    SizeCapExceeded { requested: usize, cap: usize },
    #[error("flag not applicable: {0}")]
    TypeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
