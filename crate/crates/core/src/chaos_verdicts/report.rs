use serde::Serialize;

use super::certificate::{construct_sensitivity_main, construct_sensitivity_mixing, SensitivityCertificate};
use super::docs::PointDoc;
use super::system::{DeskSystem, ScaleParameters, ShiftSystem};
use super::verify::{
    verify_expansivity, verify_mixing, verify_periodic_density, verify_sensitivity, verify_transitivity,
    ExpansivityReport, MixingReport, PeriodicDensityReport, SensitivityReport, TransitivityReport,
};
use super::VerdictError;
use crate::group_actions::{residually_finite_witness, GroupElement, RawElement};
use crate::shift_spaces::{analyze_z_sft, ZSftAnalysis};

/// No basic neighborhood at scale is a single point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    pub pass: bool,
    pub scale: usize,
    /// First neighborhood found to hold one point only.
    pub isolated: Option<String>,
}

/// Sensitivity with the entourage it was checked against and where that
/// entourage came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitivityVerdict {
    /// `main`, `mixing` or `default`.
    pub source: String,
    /// Why the pipelines were not used, when `source` is `default`.
    pub pipeline_errors: Vec<String>,
    pub report: SensitivityReport,
    pub certificate: Option<SensitivityCertificate>,
}

/// Full shifts: periodic density should agree with finding a finite-index
/// subgroup that avoids each non-identity element of the small ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualFinitenessCheck {
    pub radius: usize,
    pub elements: usize,
    pub witnesses_found: usize,
    pub missing: Vec<RawElement>,
    pub agrees_with_periodic_density: bool,
}

/// Mixing Z-subshifts of finite type with a periodic point and no isolated
/// point should be sensitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixingSftCheck {
    pub applies: bool,
    pub sensitivity_confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub parameters: ScaleParameters,
    pub sample_size: usize,
    pub perfect: PerfectReport,
    pub transitive: TransitivityReport,
    pub mixing: MixingReport,
    pub periodic_dense: PeriodicDensityReport,
    pub sensitive: SensitivityVerdict,
    pub expansive: ExpansivityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_sft: Option<ZSftAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_finiteness: Option<ResidualFinitenessCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixing_sft: Option<MixingSftCheck>,
    pub more_than_one_point: bool,
    pub devaney_chaotic: bool,
}

const RESIDUAL_RADIUS: usize = 2;

/// The first cylinder at scale with no ball position taking two values.
pub(crate) fn isolated_cylinder(s: &ShiftSystem) -> Option<String> {
    let k = s.sft().alphabet().size();
    s.cylinders(s.params().scale).into_iter().find_map(|c| {
        let splits = s.ball().iter().filter(|p| !c.contains_key(*p)).any(|p| {
            (0..k)
                .filter(|&b| {
                    let mut d = c.clone();
                    d.insert(p.clone(), b);
                    s.realizable(&d)
                })
                .count()
                >= 2
        });
        (!splits).then(|| s.describe(&c))
    })
}

fn perfect_report(system: &DeskSystem) -> PerfectReport {
    let scale = system.params().scale;
    let isolated = match system {
        DeskSystem::Shift(s) => isolated_cylinder(s),
        DeskSystem::Finite(f) => f.base().relations().iter().enumerate().find_map(|(level, r)| {
            (0..f.size())
                .find(|&x| f.section(r, x).len() < 2)
                .map(|x| format!("U{level}[{}]", f.name(x)))
        }),
    };
    PerfectReport {
        pass: isolated.is_none(),
        scale,
        isolated,
    }
}

fn sensitivity(system: &DeskSystem) -> Result<SensitivityVerdict, VerdictError> {
    let mut errors = Vec::new();
    match construct_sensitivity_main(system) {
        Ok(cert) => {
            let u = cert.u.build(system)?;
            return Ok(SensitivityVerdict {
                source: "main".into(),
                pipeline_errors: errors,
                report: verify_sensitivity(system, &u)?,
                certificate: Some(cert),
            });
        }
        Err(e) => errors.push(format!("main: {e}")),
    }
    match mixing_points(system) {
        Some((x1, x2)) => match construct_sensitivity_mixing(system, &x1, &x2) {
            Ok(cert) => {
                let u = cert.u.build(system)?;
                return Ok(SensitivityVerdict {
                    source: "mixing".into(),
                    pipeline_errors: errors,
                    report: verify_sensitivity(system, &u)?,
                    certificate: Some(cert),
                });
            }
            Err(e) => errors.push(format!("mixing: {e}")),
        },
        None => errors.push("mixing: fewer than two sampled points".into()),
    }
    Ok(SensitivityVerdict {
        source: "default".into(),
        pipeline_errors: errors,
        report: verify_sensitivity(system, &system.default_entourage())?,
        certificate: None,
    })
}

/// The first two sampled points.
fn mixing_points(system: &DeskSystem) -> Option<(PointDoc, PointDoc)> {
    match system {
        DeskSystem::Shift(s) => match s.sample() {
            [a, b, ..] => Some((PointDoc::Configuration(s.doc(a)), PointDoc::Configuration(s.doc(b)))),
            _ => None,
        },
        DeskSystem::Finite(f) if f.size() >= 2 => Some((
            PointDoc::Carrier(f.name(0).to_string()),
            PointDoc::Carrier(f.name(1).to_string()),
        )),
        DeskSystem::Finite(_) => None,
    }
}

/// Runs every verifier on the system and combines the results.
pub fn devaney_verdict(system: &DeskSystem) -> Result<VerdictReport, VerdictError> {
    let params = system.params();
    let perfect = perfect_report(system);
    let transitive = verify_transitivity(system);
    let mixing = verify_mixing(system);
    let periodic_dense = verify_periodic_density(system);
    let sensitive = sensitivity(system)?;
    let expansive = verify_expansivity(system, &system.default_entourage())?;
    let more_than_one_point = system.has_two_points();

    let (sample_size, z_sft, residual_finiteness, mixing_sft) = match system {
        DeskSystem::Shift(s) => {
            let z_sft = match s.graph() {
                Some(_) => Some(analyze_z_sft(s.sft())?),
                None => None,
            };
            let residual = s.sft().is_full_shift().then(|| {
                let group = s.group();
                let elements: Vec<GroupElement> =
                    group.ball(RESIDUAL_RADIUS).into_iter().filter(|g| *g != group.identity()).collect();
                let missing: Vec<RawElement> = elements
                    .iter()
                    .filter(|g| residually_finite_witness(group, g).is_err())
                    .map(RawElement::from)
                    .collect();
                ResidualFinitenessCheck {
                    radius: RESIDUAL_RADIUS,
                    elements: elements.len(),
                    witnesses_found: elements.len() - missing.len(),
                    agrees_with_periodic_density: missing.is_empty() == periodic_dense.pass,
                    missing,
                }
            });
            let mixing_sft = z_sft.as_ref().map(|_| {
                let applies = mixing.pass && !s.sample().is_empty() && perfect.pass;
                MixingSftCheck {
                    applies,
                    sensitivity_confirmed: !applies || sensitive.report.pass,
                }
            });
            (s.sample().len(), z_sft, residual, mixing_sft)
        }
        DeskSystem::Finite(f) => (f.size(), None, None, None),
    };

    let devaney_chaotic = transitive.pass && periodic_dense.pass && more_than_one_point;
    Ok(VerdictReport {
        parameters: params,
        sample_size,
        perfect,
        transitive,
        mixing,
        periodic_dense,
        sensitive,
        expansive,
        z_sft,
        residual_finiteness,
        mixing_sft,
        more_than_one_point,
        devaney_chaotic,
    })
}
