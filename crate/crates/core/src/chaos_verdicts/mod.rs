//! Bounded-quantifier verifiers for the dynamical properties of a group
//! action, and the two pipelines that build sensitivity entourages.
//!
//! A pass is a scale-n certificate: it quantifies over a stated sample of
//! points, a finite neighborhood basis and a ball of the group. Every report
//! carries the parameters it was computed with.

mod certificate;
mod docs;
mod report;
mod system;
mod verify;

pub use certificate::{
    construct_sensitivity_main, construct_sensitivity_mixing, revalidate, Check, MainTraceStep,
    MixingTraceStep, Revalidation, Route, SensitivityCertificate,
};
pub use docs::{EntourageDoc, FiniteSystemDoc, ParametersDoc, PointDoc, SystemDoc};
pub use report::{
    devaney_verdict, MixingSftCheck, PerfectReport, ResidualFinitenessCheck, SensitivityVerdict, VerdictReport,
};
pub use system::{DeskSystem, Entourage, FiniteSystem, ScaleParameters, ShiftSystem};
pub use verify::{
    verify_expansivity, verify_mixing, verify_periodic_density, verify_sensitivity, verify_transitivity,
    ExceptionalSet, ExpansivityReport, ExpansivityWitness, MixingReport, PeriodicDensityReport,
    SensitivityReport, SensitivityWitness, TransitivityReport, TransitivityWitness,
};

use thiserror::Error;

use crate::group_actions::GroupError;
use crate::relation_algebra::RelationError;
use crate::shift_spaces::ShiftError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    /// A hypothesis of a pipeline is not evidenced at the chosen scale.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
