//! Exact calculus of binary relations on finite carriers.
//!
//! Entourages of a finite uniform space are plain [`Relation`]s; a uniform
//! structure is presented by a [`UniformBase`] whose filter closure is left
//! implicit. Everything here is exact: no tolerances, rational distances.

mod base;
mod carrier;
mod doc;
mod metric;
mod relation;

pub use base::{
    check_base_axioms, is_hausdorff_base, separating_entourage, symmetric_root, Axiom, AxiomReport,
    AxiomResult, AxiomWitness, RootOrder, UniformBase,
};
pub use carrier::Carrier;
pub use doc::{BaseDoc, RelationDoc};
pub use metric::{metric_base, metric_entourage, DistanceTable};
pub use relation::Relation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("carrier must contain at least one point")]
    EmptyCarrier,
    #[error("duplicate point identifier {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("point index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relations live on different carriers")]
    CarrierMismatch,
    #[error("a uniform base needs at least one relation")]
    EmptyBase,
    #[error("base fails {0}")]
    InvalidBase(Axiom),
    #[error("point sets must be non-empty")]
    EmptyPointSet,
    #[error("point sets are not disjoint (both contain {0:?})")]
    NotDisjoint(String),
    #[error("not separable: no base relation misses ({0:?}, {1:?})")]
    NotSeparable(String, String),
    #[error("relation contains no base element")]
    NotAnEntourage,
    #[error("no base relation has its square inside the target")]
    NoRoot,
    #[error("distance table: {0}")]
    InvalidDistance(String),
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
}
