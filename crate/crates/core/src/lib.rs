//! Uniform-space dynamics at desk scale.

pub mod chaos_verdicts;
pub mod group_actions;
pub mod relation_algebra;
pub mod shift_spaces;
