//! JSON documents for relations and bases: the carrier as a list of names,
//! each relation as a list of `[i, j]` index pairs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::base::UniformBase;
use super::carrier::Carrier;
use super::relation::Relation;
use super::RelationError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub carrier: Vec<String>,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub carrier: Vec<String>,
    pub base: Vec<Vec<[usize; 2]>>,
}

pub(crate) fn pairs_of(rel: &Relation) -> Vec<[usize; 2]> {
    rel.pairs().into_iter().map(|(x, y)| [x, y]).collect()
}

pub(crate) fn relation_from_pairs(
    carrier: &Arc<Carrier>,
    pairs: &[[usize; 2]],
) -> Result<Relation, RelationError> {
    Relation::new(carrier, pairs.iter().map(|&[x, y]| (x, y)))
}

impl From<&Relation> for RelationDoc {
    fn from(rel: &Relation) -> Self {
        Self {
            carrier: rel.carrier().points().to_vec(),
            pairs: pairs_of(rel),
        }
    }
}

impl RelationDoc {
    pub fn into_relation(self) -> Result<Relation, RelationError> {
        let carrier = Carrier::new(self.carrier)?;
        relation_from_pairs(&carrier, &self.pairs)
    }
}

impl From<&UniformBase> for BaseDoc {
    fn from(base: &UniformBase) -> Self {
        Self {
            carrier: base.carrier().points().to_vec(),
            base: base.relations().iter().map(pairs_of).collect(),
        }
    }
}

impl BaseDoc {
    pub fn into_base(self) -> Result<UniformBase, RelationError> {
        let carrier = Carrier::new(self.carrier)?;
        let base = self
            .base
            .iter()
            .map(|pairs| relation_from_pairs(&carrier, pairs))
            .collect::<Result<Vec<_>, _>>()?;
        UniformBase::new(&carrier, base)
    }
}
