use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::system::{DeskSystem, Entourage, FiniteSystem, ScaleParameters, ShiftSystem};
use super::VerdictError;
use crate::group_actions::{ActionTable, GroupDescription, Perm, RawElement};
use crate::relation_algebra::{BaseDoc, Relation, UniformBase};
use crate::shift_spaces::{Configuration, ConfigurationDoc, ProdiscreteEntourage, SftDoc};

/// Scale parameters as written in a system file; absent keys take defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametersDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period_bound: Option<usize>,
}

impl ParametersDoc {
    /// `self` over `under`.
    pub fn or(self, under: ParametersDoc) -> ParametersDoc {
        ParametersDoc {
            scale: self.scale.or(under.scale),
            ball: self.ball.or(under.ball),
            period_bound: self.period_bound.or(under.period_bound),
        }
    }

    pub fn resolve(self) -> Result<ScaleParameters, VerdictError> {
        let d = ScaleParameters::default();
        ScaleParameters::new(
            self.scale.unwrap_or(d.scale),
            self.ball.unwrap_or(d.ball),
            self.period_bound.unwrap_or(d.period_bound),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDoc {
    /// One carrier permutation per free generator.
    Generators(Vec<Perm>),
    /// One carrier permutation per element of a finite-table group.
    Table(Vec<Perm>),
}

/// A group acting by permutations on a finite carrier with a uniform base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteSystemDoc {
    pub group: GroupDescription,
    pub carrier: Vec<String>,
    pub action: ActionDoc,
    pub base: Vec<Vec<[usize; 2]>>,
}

impl FiniteSystemDoc {
    pub fn base(&self) -> Result<UniformBase, VerdictError> {
        Ok(BaseDoc {
            carrier: self.carrier.clone(),
            base: self.base.clone(),
        }
        .into_base()?)
    }

    pub fn build(&self, params: ScaleParameters) -> Result<FiniteSystem, VerdictError> {
        let base = self.base()?;
        let group = Arc::new(self.group.clone());
        let carrier = base.carrier();
        let action = match &self.action {
            ActionDoc::Generators(images) => ActionTable::from_generators(&group, carrier, images.clone(), params.ball)?,
            ActionDoc::Table(rows) => ActionTable::from_table(&group, carrier, rows.clone())?,
        };
        FiniteSystem::new(base, action, params)
    }
}

/// A system file: exactly one of `subshift` and `finite_system`, plus
/// optional `parameters`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subshift: Option<SftDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_system: Option<FiniteSystemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<ParametersDoc>,
}

impl SystemDoc {
    /// File parameters under `overrides`, over the defaults.
    pub fn parameters(&self, overrides: ParametersDoc) -> Result<ScaleParameters, VerdictError> {
        overrides.or(self.parameters.unwrap_or_default()).resolve()
    }

    pub fn build(&self, params: ScaleParameters) -> Result<DeskSystem, VerdictError> {
        match (&self.subshift, &self.finite_system) {
            (Some(s), None) => Ok(DeskSystem::Shift(ShiftSystem::new(s.build()?, params)?)),
            (None, Some(f)) => Ok(DeskSystem::Finite(f.build(params)?)),
            _ => Err(VerdictError::Argument(
                "give exactly one of \"subshift\" and \"finite_system\"".into(),
            )),
        }
    }
}

/// A point of a system: a carrier name or a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDoc {
    Carrier(String),
    Configuration(ConfigurationDoc),
}

impl PointDoc {
    pub(crate) fn carrier_point(&self, f: &FiniteSystem) -> Result<usize, VerdictError> {
        match self {
            PointDoc::Carrier(name) => Ok(f.base().carrier().position(name)?),
            PointDoc::Configuration(_) => Err(VerdictError::Argument("expected a carrier point name".into())),
        }
    }

    pub(crate) fn configuration(&self, s: &ShiftSystem) -> Result<Configuration, VerdictError> {
        match self {
            PointDoc::Configuration(doc) => Ok(doc.build(s.group(), s.sft().alphabet())?),
            PointDoc::Carrier(_) => Err(VerdictError::Argument("expected a configuration".into())),
        }
    }
}

/// An entourage in JSON. Relations are index pairs on the system's carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EntourageDoc {
    Relation { pairs: Vec<[usize; 2]> },
    Prodiscrete { support: Vec<RawElement> },
}

impl From<&Entourage> for EntourageDoc {
    fn from(e: &Entourage) -> Self {
        match e {
            Entourage::Relation(r) => EntourageDoc::Relation {
                pairs: r.pairs().into_iter().map(|(x, y)| [x, y]).collect(),
            },
            Entourage::Prodiscrete(w) => EntourageDoc::Prodiscrete {
                support: w.support().iter().map(RawElement::from).collect(),
            },
        }
    }
}

impl EntourageDoc {
    pub fn build(&self, system: &DeskSystem) -> Result<Entourage, VerdictError> {
        match (self, system) {
            (EntourageDoc::Relation { pairs }, DeskSystem::Finite(f)) => Ok(Entourage::Relation(Relation::new(
                f.base().carrier(),
                pairs.iter().map(|&[x, y]| (x, y)),
            )?)),
            (EntourageDoc::Prodiscrete { support }, DeskSystem::Shift(s)) => {
                let support = support
                    .iter()
                    .map(|g| s.group().parse_element(g))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Entourage::Prodiscrete(ProdiscreteEntourage::new(support)))
            }
            _ => Err(VerdictError::Argument("entourage kind does not match the system".into())),
        }
    }
}
