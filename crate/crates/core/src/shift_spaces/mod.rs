//! Configurations over a finitely described group, the shift action, the
//! prodiscrete entourages W(Ω), and subshifts of finite type.
//!
//! Configurations are only ever held in one of two finite presentations:
//! periodic under a finite-index normal subgroup, or a finite pattern over a
//! constant background.

mod alphabet;
mod configuration;
mod doc;
mod sft;
mod zgraph;

pub use alphabet::{Alphabet, Symbol};
pub use configuration::{
    shift_apply, translate_pattern, w_related, Configuration, Pattern, PeriodicConfiguration,
    ProdiscreteEntourage, ShiftAction,
};
pub use doc::{ConfigurationDoc, SftDoc};
pub use sft::{locally_admissible, SubshiftOfFiniteType};
pub use zgraph::{
    analyze_z_sft, enumerate_periodic, is_perfect_at_scale, periodic_density_at_scale, DensityReport,
    ZSftAnalysis, ZSftGraph,
};

use thiserror::Error;

use crate::group_actions::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("window: {0}")]
    BadWindow(String),
    #[error("pattern: {0}")]
    BadPattern(String),
    #[error("give exactly one of \"allowed\" and \"forbidden\"")]
    PatternKeys,
    #[error("operation needs a subshift over the integers, got {0}")]
    NotIntegers(String),
    #[error("empty subshift: no admissible bi-infinite configuration")]
    EmptySubshift,
    #[error("configuration: {0}")]
    BadConfiguration(String),
}
