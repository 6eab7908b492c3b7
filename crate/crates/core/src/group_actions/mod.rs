//! Finitely described groups explored through balls of the Cayley graph.
//!
//! Infinite groups are never enumerated in full: every search takes an
//! explicit radius or bound and reports overflow as a value.

mod action;
mod element;
mod group;
mod perm;
mod subgroup;

pub use action::{orbit_bounded, stabilizer_index, stabilizer_subgroup, ActionTable, GroupAction, Orbit, StabilizerIndex};
pub use element::{GroupElement, RawElement};
pub use group::{FiniteGroup, GroupDescription};
pub use perm::Perm;
pub use subgroup::{
    coset_representatives, residually_finite_witness, residually_finite_witness_with, CosetKey,
    FiniteIndexSubgroup, SubgroupKind, DEFAULT_COSET_RADIUS, DEFAULT_WITNESS_DEGREE,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("finite table is not a group: {0}")]
    NotAGroup(String),
    #[error("element {element} does not belong to {group}")]
    ForeignElement { element: String, group: String },
    #[error("free group rank must be between 1 and 26, got {0}")]
    BadRank(usize),
    #[error("lattice dimension must be at least 1")]
    BadDimension,
    #[error("action table has no image for {0}")]
    MissingImage(String),
    #[error("action table: {0}")]
    InvalidAction(String),
    #[error("subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("coset closure not reached within radius {radius}")]
    CosetClosureNotReached { radius: usize },
    #[error("element is the identity; no finite quotient can separate it")]
    IdentityElement,
    #[error("no witness found: searched permutation quotients up to degree {degree} ({tuples} tuples)")]
    NoWitness { degree: usize, tuples: u64 },
    #[error("quotient image has more than {0} elements")]
    QuotientTooLarge(usize),
}
