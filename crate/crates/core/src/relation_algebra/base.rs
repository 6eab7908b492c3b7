use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::carrier::{same_carrier, Carrier};
use super::relation::Relation;
use super::RelationError;

/// A finite family of relations presented as a base of a uniform structure.
///
/// The structure itself is the filter generated by the base: every relation
/// containing some base element. Construction does not check the axioms;
/// [`check_base_axioms`] reports on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformBase {
    carrier: Arc<Carrier>,
    base: Vec<Relation>,
}

impl UniformBase {
    pub fn new(carrier: &Arc<Carrier>, base: Vec<Relation>) -> Result<Self, RelationError> {
        if base.is_empty() {
            return Err(RelationError::EmptyBase);
        }
        if base.iter().any(|r| !same_carrier(r.carrier(), carrier)) {
            return Err(RelationError::CarrierMismatch);
        }
        Ok(Self {
            carrier: Arc::clone(carrier),
            base,
        })
    }

    pub fn discrete(carrier: &Arc<Carrier>) -> Self {
        Self::new(carrier, vec![Relation::diagonal(carrier)]).expect("non-empty base")
    }

    pub fn coarse(carrier: &Arc<Carrier>) -> Self {
        Self::new(carrier, vec![Relation::full(carrier)]).expect("non-empty base")
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn relations(&self) -> &[Relation] {
        &self.base
    }

    /// True iff `rel` lies in the generated filter, i.e. contains a base element.
    pub fn generates(&self, rel: &Relation) -> bool {
        self.base.iter().any(|b| b.is_subset(rel) == Ok(true))
    }

    /// Base indices ordered by decreasing size, ties broken by list order.
    fn coarsest_first(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.base.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.base[i].len()));
        order
    }

    /// Index of the smallest base element, first in list order among ties.
    fn finest(&self) -> usize {
        (0..self.base.len())
            .min_by_key(|&i| self.base[i].len())
            .expect("non-empty base")
    }

    fn intersection_of_all(&self) -> Relation {
        self.base[1..].iter().fold(self.base[0].clone(), |acc, r| {
            acc.intersection(r).expect("same carrier")
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "UN-1")]
    ContainsDiagonal,
    #[serde(rename = "UN-2")]
    UpwardClosed,
    #[serde(rename = "UN-3")]
    Intersections,
    #[serde(rename = "UN-4")]
    Inverses,
    #[serde(rename = "UN-5")]
    CompositionRoots,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            Axiom::ContainsDiagonal => "UN-1",
            Axiom::UpwardClosed => "UN-2",
            Axiom::Intersections => "UN-3",
            Axiom::Inverses => "UN-4",
            Axiom::CompositionRoots => "UN-5",
        };
        f.write_str(label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    /// Indices of the offending base relations.
    pub relations: Vec<usize>,
    /// A pair demonstrating the failure, when one exists.
    pub pair: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub pass: bool,
    pub witness: Option<AxiomWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn result(&self, axiom: Axiom) -> &AxiomResult {
        self.results
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("every axiom is reported")
    }

    pub fn first_failure(&self) -> Option<Axiom> {
        self.results.iter().find(|r| !r.pass).map(|r| r.axiom)
    }
}

/// Checks the base forms of the uniform-structure axioms.
///
/// Upward closure holds by construction (the structure is the generated
/// filter), so it is always reported as passing.
pub fn check_base_axioms(b: &UniformBase) -> AxiomReport {
    let carrier = &b.carrier;
    let name = |(x, y): (usize, usize)| (carrier.name(x).to_string(), carrier.name(y).to_string());
    let finest = b.finest();

    let diagonal = b.base.iter().enumerate().find_map(|(i, r)| {
        (0..carrier.size())
            .find(|&x| !r.contains(x, x))
            .map(|x| AxiomWitness {
                relations: vec![i],
                pair: Some(name((x, x))),
            })
    });

    let mut intersections = None;
    'outer: for i in 0..b.base.len() {
        for j in i + 1..b.base.len() {
            let meet = b.base[i].intersection(&b.base[j]).expect("same carrier");
            if !b.generates(&meet) {
                let pair = b.base[finest].first_pair_outside(&meet).map(name);
                intersections = Some(AxiomWitness {
                    relations: vec![i, j],
                    pair,
                });
                break 'outer;
            }
        }
    }

    let inverses = b.base.iter().enumerate().find_map(|(i, u)| {
        let ok = b.base.iter().any(|v| v.inverse().is_subset(u) == Ok(true));
        (!ok).then(|| AxiomWitness {
            relations: vec![i],
            pair: b.base[finest].inverse().first_pair_outside(u).map(name),
        })
    });

    let roots = b.base.iter().enumerate().find_map(|(i, u)| {
        let ok = b
            .base
            .iter()
            .any(|v| v.compose(v).and_then(|vv| vv.is_subset(u)) == Ok(true));
        (!ok).then(|| {
            let square = b.base[finest].compose(&b.base[finest]).expect("same carrier");
            AxiomWitness {
                relations: vec![i],
                pair: square.first_pair_outside(u).map(name),
            }
        })
    });

    let result = |axiom, witness: Option<AxiomWitness>| AxiomResult {
        axiom,
        pass: witness.is_none(),
        witness,
    };
    AxiomReport {
        results: vec![
            result(Axiom::ContainsDiagonal, diagonal),
            result(Axiom::UpwardClosed, None),
            result(Axiom::Intersections, intersections),
            result(Axiom::Inverses, inverses),
            result(Axiom::CompositionRoots, roots),
        ],
    }
}

/// Hausdorff iff the intersection of the base elements is exactly Δ_X.
pub fn is_hausdorff_base(b: &UniformBase) -> Result<bool, RelationError> {
    if let Some(axiom) = check_base_axioms(b).first_failure() {
        return Err(RelationError::InvalidBase(axiom));
    }
    Ok(b.intersection_of_all() == Relation::diagonal(&b.carrier))
}

/// An entourage W with (A × B) ∩ W = ∅.
///
/// For every pair (a, b) the first base element (in list order) missing
/// (a, b) is chosen; W is the intersection of the chosen elements.
pub fn separating_entourage(
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
    base: &UniformBase,
) -> Result<Relation, RelationError> {
    if a.is_empty() || b.is_empty() {
        return Err(RelationError::EmptyPointSet);
    }
    let carrier = &base.carrier;
    for &p in a.iter().chain(b) {
        carrier.check_index(p)?;
    }
    if let Some(&common) = a.intersection(b).next() {
        return Err(RelationError::NotDisjoint(carrier.name(common).to_string()));
    }
    let mut chosen = BTreeSet::new();
    for &x in a {
        for &y in b {
            let idx = base
                .base
                .iter()
                .position(|r| !r.contains(x, y))
                .ok_or_else(|| {
                    RelationError::NotSeparable(
                        carrier.name(x).to_string(),
                        carrier.name(y).to_string(),
                    )
                })?;
            chosen.insert(idx);
        }
    }
    Ok(chosen
        .into_iter()
        .map(|i| base.base[i].clone())
        .reduce(|acc, r| acc.intersection(&r).expect("same carrier"))
        .expect("at least one pair"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootOrder {
    Square,
    Fourth,
}

impl RootOrder {
    pub fn exponent(self) -> usize {
        match self {
            RootOrder::Square => 2,
            RootOrder::Fourth => 4,
        }
    }
}

/// A symmetric entourage whose k-fold composite lies inside `v`.
///
/// One step searches the base coarsest-first for an element B with
/// B ∘ B ⊂ target and returns B ∩ B⁻¹. The fourth root is two steps.
pub fn symmetric_root(
    v: &Relation,
    base: &UniformBase,
    k: RootOrder,
) -> Result<Relation, RelationError> {
    if !same_carrier(v.carrier(), &base.carrier) {
        return Err(RelationError::CarrierMismatch);
    }
    if !base.generates(v) {
        return Err(RelationError::NotAnEntourage);
    }
    let once = square_root_step(v, base)?;
    match k {
        RootOrder::Square => Ok(once),
        RootOrder::Fourth => square_root_step(&once, base),
    }
}

fn square_root_step(target: &Relation, base: &UniformBase) -> Result<Relation, RelationError> {
    base.coarsest_first()
        .into_iter()
        .map(|i| &base.base[i])
        .find(|b| b.compose(b).expect("same carrier").is_subset(target) == Ok(true))
        .map(Relation::symmetrized)
        .ok_or(RelationError::NoRoot)
}
