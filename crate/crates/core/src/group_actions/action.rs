use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::element::GroupElement;
use super::group::GroupDescription;
use super::perm::{self, Perm};
use super::subgroup::{FiniteIndexSubgroup, SubgroupKind};
use super::GroupError;
use crate::relation_algebra::Carrier;

/// A left action of a group on some set of points.
pub trait GroupAction {
    type Point: Clone + Ord;

    fn group(&self) -> &GroupDescription;

    fn act(&self, g: &GroupElement, x: &Self::Point) -> Result<Self::Point, GroupError>;
}

/// An action on a finite carrier, tabulated on a ball of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    group: Arc<GroupDescription>,
    carrier: Arc<Carrier>,
    radius: usize,
    images: BTreeMap<GroupElement, Perm>,
}

impl ActionTable {
    /// Extends images of the standard generators (one permutation per free
    /// generator; inverses are derived) to the ball of the given radius.
    pub fn from_generators(
        group: &Arc<GroupDescription>,
        carrier: &Arc<Carrier>,
        generator_images: Vec<Perm>,
        radius: usize,
    ) -> Result<Self, GroupError> {
        if group.is_finite() {
            return Err(GroupError::InvalidAction(
                "finite-table groups take a full table, not generator images".into(),
            ));
        }
        if generator_images.len() != group.rank() {
            return Err(GroupError::InvalidAction(format!(
                "expected {} generator images, got {}",
                group.rank(),
                generator_images.len()
            )));
        }
        let n = carrier.size();
        for p in &generator_images {
            if p.len() != n || !perm::is_permutation(p) {
                return Err(GroupError::InvalidAction(format!(
                    "generator image {p:?} is not a permutation of the carrier"
                )));
            }
        }
        if matches!(**group, GroupDescription::Lattice { .. }) {
            for (i, p) in generator_images.iter().enumerate() {
                for q in &generator_images[i + 1..] {
                    if perm::compose(p, q) != perm::compose(q, p) {
                        return Err(GroupError::InvalidAction(
                            "lattice generator images must commute".into(),
                        ));
                    }
                }
            }
        }
        let gen_images: Vec<Perm> = generator_images
            .iter()
            .flat_map(|p| [p.clone(), perm::invert(p)])
            .collect();
        let gens = group.generators();
        let e = group.identity();
        let mut images = BTreeMap::from([(e.clone(), perm::identity(n))]);
        let mut queue = VecDeque::from([(e, 0usize)]);
        while let Some((g, depth)) = queue.pop_front() {
            if depth == radius {
                continue;
            }
            let pg = images[&g].clone();
            for (s, ps) in gens.iter().zip(&gen_images) {
                let gs = group.op(&g, s);
                if !images.contains_key(&gs) {
                    // act(gs, x) = act(g, act(s, x))
                    images.insert(gs.clone(), perm::compose(&pg, ps));
                    queue.push_back((gs, depth + 1));
                }
            }
        }
        Ok(Self {
            group: Arc::clone(group),
            carrier: Arc::clone(carrier),
            radius,
            images,
        })
    }

    /// A finite group acting through one permutation per element.
    pub fn from_table(
        group: &Arc<GroupDescription>,
        carrier: &Arc<Carrier>,
        table: Vec<Perm>,
    ) -> Result<Self, GroupError> {
        let GroupDescription::FiniteTable(t) = &**group else {
            return Err(GroupError::InvalidAction("a full table needs a finite-table group".into()));
        };
        if table.len() != t.order() {
            return Err(GroupError::InvalidAction(format!(
                "expected {} rows, got {}",
                t.order(),
                table.len()
            )));
        }
        let n = carrier.size();
        if table.iter().any(|p| p.len() != n || !perm::is_permutation(p)) {
            return Err(GroupError::InvalidAction("every row must permute the carrier".into()));
        }
        if table[t.identity()] != perm::identity(n) {
            return Err(GroupError::InvalidAction("identity does not act trivially".into()));
        }
        for g in 0..t.order() {
            for h in 0..t.order() {
                if perm::compose(&table[g], &table[h]) != table[t.mul(g, h)] {
                    return Err(GroupError::InvalidAction(format!(
                        "act(#{g}, act(#{h}, x)) != act(#{g}#{h}, x)"
                    )));
                }
            }
        }
        let images = table
            .into_iter()
            .enumerate()
            .map(|(i, p)| (GroupElement::Index(i), p))
            .collect();
        Ok(Self {
            group: Arc::clone(group),
            carrier: Arc::clone(carrier),
            radius: 1,
            images,
        })
    }

    /// Identity action of any group.
    pub fn trivial(group: &Arc<GroupDescription>, carrier: &Arc<Carrier>, radius: usize) -> Self {
        let n = carrier.size();
        match &**group {
            GroupDescription::FiniteTable(t) => {
                Self::from_table(group, carrier, vec![perm::identity(n); t.order()]).expect("trivial action")
            }
            _ => Self::from_generators(group, carrier, vec![perm::identity(n); group.rank()], radius)
                .expect("trivial action"),
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn group_arc(&self) -> &Arc<GroupDescription> {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn image(&self, g: &GroupElement) -> Result<&Perm, GroupError> {
        self.images
            .get(g)
            .ok_or_else(|| GroupError::MissingImage(g.to_string()))
    }

    /// Elements with a tabulated image.
    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.images.keys()
    }
}

impl GroupAction for ActionTable {
    type Point = usize;

    fn group(&self) -> &GroupDescription {
        &self.group
    }

    fn act(&self, g: &GroupElement, x: &usize) -> Result<usize, GroupError> {
        Ok(self.image(g)?[*x])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orbit<P> {
    /// Closed under every generator; points in discovery order.
    Finite(Vec<P>),
    ExceedsBound { bound: usize },
}

impl<P> Orbit<P> {
    pub fn points(&self) -> Option<&[P]> {
        match self {
            Orbit::Finite(points) => Some(points),
            Orbit::ExceedsBound { .. } => None,
        }
    }
}

/// The orbit of `x` if it closes up within `bound` points.
pub fn orbit_bounded<A: GroupAction>(
    action: &A,
    x: &A::Point,
    bound: usize,
) -> Result<Orbit<A::Point>, GroupError> {
    let gens = action.group().generators();
    let mut seen = BTreeSet::from([x.clone()]);
    let mut order = vec![x.clone()];
    let mut queue = VecDeque::from([x.clone()]);
    if bound == 0 {
        return Ok(Orbit::ExceedsBound { bound });
    }
    while let Some(p) = queue.pop_front() {
        for s in &gens {
            let q = action.act(s, &p)?;
            if seen.insert(q.clone()) {
                if seen.len() > bound {
                    return Ok(Orbit::ExceedsBound { bound });
                }
                order.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(Orbit::Finite(order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizerIndex {
    Finite(usize),
    InfiniteOrUnknown,
}

/// [G : Stab(x)], read off the orbit size.
pub fn stabilizer_index<A: GroupAction>(
    action: &A,
    x: &A::Point,
    bound: usize,
) -> Result<StabilizerIndex, GroupError> {
    Ok(match orbit_bounded(action, x, bound)? {
        Orbit::Finite(points) => StabilizerIndex::Finite(points.len()),
        Orbit::ExceedsBound { .. } => StabilizerIndex::InfiniteOrUnknown,
    })
}

/// Stab(x) as an explicit subgroup, for finite-table groups.
pub fn stabilizer_subgroup(action: &ActionTable, x: usize) -> Result<FiniteIndexSubgroup, GroupError> {
    let GroupDescription::FiniteTable(t) = &*action.group else {
        return Err(GroupError::InvalidSubgroup(
            "explicit stabilizers are only built for finite-table groups".into(),
        ));
    };
    let members = (0..t.order())
        .filter(|&g| action.images[&GroupElement::Index(g)][x] == x)
        .collect();
    FiniteIndexSubgroup::new(&action.group, SubgroupKind::Members(members))
}
