use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::element::GroupElement;
use super::group::GroupDescription;
use super::perm::{self, Perm};
use super::GroupError;

/// Default maximal degree of permutation quotients tried for free groups.
pub const DEFAULT_WITNESS_DEGREE: usize = 6;
/// Default depth limit for breadth-first transversal searches.
pub const DEFAULT_COSET_RADIUS: usize = 16;

const QUOTIENT_CAP: usize = 50_000;
const WITNESS_TUPLE_CAP: u64 = 2_000_000;

/// Canonical label of a coset.
pub type CosetKey = Vec<i64>;

/// How membership in a finite-index subgroup is decided.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupKind {
    /// n₁Z × … × n_dZ inside Z or Z^d.
    Residues(Vec<u64>),
    /// Kernel of the map from a free group to a permutation group given by
    /// the images of the free generators.
    PermutationKernel(Vec<Perm>),
    /// Explicit member list inside a finite-table group.
    Members(BTreeSet<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteIndexSubgroup {
    group: Arc<GroupDescription>,
    kind: SubgroupKind,
    index: usize,
}

impl FiniteIndexSubgroup {
    pub fn new(group: &Arc<GroupDescription>, kind: SubgroupKind) -> Result<Self, GroupError> {
        let bad = |m: String| Err(GroupError::InvalidSubgroup(m));
        let index = match (&**group, &kind) {
            (GroupDescription::Integers, SubgroupKind::Residues(m)) if m.len() == 1 => m[0],
            (GroupDescription::Lattice { dim }, SubgroupKind::Residues(m)) if m.len() == *dim => {
                m.iter().product()
            }
            (GroupDescription::Free { rank }, SubgroupKind::PermutationKernel(images)) => {
                if images.len() != *rank {
                    return bad(format!("expected {rank} generator images"));
                }
                let degree = images[0].len();
                if degree == 0 || images.iter().any(|p| p.len() != degree || !perm::is_permutation(p)) {
                    return bad("generator images must be permutations of one degree".into());
                }
                perm::generated_order(images, degree, QUOTIENT_CAP)? as u64
            }
            (GroupDescription::FiniteTable(t), SubgroupKind::Members(members)) => {
                let n = t.order();
                if members.iter().any(|&m| m >= n) || !members.contains(&t.identity()) {
                    return bad("members must be elements and include the identity".into());
                }
                for &a in members {
                    if !members.contains(&t.inv(a)) || members.iter().any(|&b| !members.contains(&t.mul(a, b))) {
                        return bad("member list is not closed under products and inverses".into());
                    }
                }
                (n / members.len()) as u64
            }
            _ => return bad(format!("{kind:?} does not describe a subgroup of {group}")),
        };
        if index == 0 {
            return bad("moduli must be positive".into());
        }
        Ok(Self {
            group: Arc::clone(group),
            kind,
            index: index as usize,
        })
    }

    /// G itself.
    pub fn whole(group: &Arc<GroupDescription>) -> Self {
        let kind = match &**group {
            GroupDescription::Integers => SubgroupKind::Residues(vec![1]),
            GroupDescription::Lattice { dim } => SubgroupKind::Residues(vec![1; *dim]),
            GroupDescription::Free { rank } => SubgroupKind::PermutationKernel(vec![vec![0]; *rank]),
            GroupDescription::FiniteTable(t) => SubgroupKind::Members((0..t.order()).collect()),
        };
        Self::new(group, kind).expect("whole group")
    }

    /// nZ inside Z.
    pub fn multiples(n: u64) -> Result<Self, GroupError> {
        Self::new(&Arc::new(GroupDescription::Integers), SubgroupKind::Residues(vec![n]))
    }

    pub fn group(&self) -> &Arc<GroupDescription> {
        &self.group
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    fn image(&self, images: &[Perm], g: &GroupElement) -> Perm {
        let GroupElement::Word(w) = g else {
            panic!("{g} is not a free-group word");
        };
        let degree = images[0].len();
        w.iter().fold(perm::identity(degree), |acc, &l| {
            let p = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                perm::compose(&acc, p)
            } else {
                perm::compose(&acc, &perm::invert(p))
            }
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (&self.kind, g) {
            (SubgroupKind::Residues(m), GroupElement::Int(n)) => n.rem_euclid(m[0] as i64) == 0,
            (SubgroupKind::Residues(m), GroupElement::Vector(v)) => {
                v.iter().zip(m).all(|(c, &n)| c.rem_euclid(n as i64) == 0)
            }
            (SubgroupKind::PermutationKernel(images), _) => {
                self.image(images, g) == perm::identity(images[0].len())
            }
            (SubgroupKind::Members(members), GroupElement::Index(i)) => members.contains(i),
            _ => false,
        }
    }

    /// Key of the right coset Hg.
    pub fn right_coset_key(&self, g: &GroupElement) -> CosetKey {
        self.coset_key(g, false)
    }

    /// Key of the left coset gH.
    pub fn left_coset_key(&self, g: &GroupElement) -> CosetKey {
        self.coset_key(g, true)
    }

    fn coset_key(&self, g: &GroupElement, left: bool) -> CosetKey {
        match (&self.kind, g) {
            (SubgroupKind::Residues(m), GroupElement::Int(n)) => vec![n.rem_euclid(m[0] as i64)],
            (SubgroupKind::Residues(m), GroupElement::Vector(v)) => {
                v.iter().zip(m).map(|(c, &n)| c.rem_euclid(n as i64)).collect()
            }
            (SubgroupKind::PermutationKernel(images), _) => {
                self.image(images, g).into_iter().map(|i| i as i64).collect()
            }
            (SubgroupKind::Members(members), GroupElement::Index(i)) => {
                let GroupDescription::FiniteTable(t) = &*self.group else {
                    unreachable!("member lists only live in finite tables")
                };
                let key = members
                    .iter()
                    .map(|&h| if left { t.mul(*i, h) } else { t.mul(h, *i) })
                    .min()
                    .expect("non-empty subgroup");
                vec![key as i64]
            }
            _ => panic!("{g} is not an element of {}", self.group),
        }
    }

    pub fn is_normal(&self) -> bool {
        match (&self.kind, &*self.group) {
            (SubgroupKind::Members(members), GroupDescription::FiniteTable(t)) => (0..t.order())
                .all(|g| members.iter().all(|&h| members.contains(&t.mul(t.mul(g, h), t.inv(g))))),
            _ => true,
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, GroupError> {
        if self.group != other.group {
            return Err(GroupError::InvalidSubgroup("subgroups of different groups".into()));
        }
        let kind = match (&self.kind, &other.kind) {
            (SubgroupKind::Residues(a), SubgroupKind::Residues(b)) => {
                SubgroupKind::Residues(a.iter().zip(b).map(|(&x, &y)| num_lcm(x, y)).collect())
            }
            (SubgroupKind::PermutationKernel(a), SubgroupKind::PermutationKernel(b)) => {
                let shift = a[0].len();
                SubgroupKind::PermutationKernel(
                    a.iter()
                        .zip(b)
                        .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&i| i + shift)).collect())
                        .collect(),
                )
            }
            (SubgroupKind::Members(a), SubgroupKind::Members(b)) => {
                SubgroupKind::Members(a.intersection(b).copied().collect())
            }
            _ => unreachable!("kinds are determined by the group"),
        };
        Self::new(&self.group, kind)
    }

    /// One representative per right coset Hg.
    pub fn right_transversal(&self, max_radius: usize) -> Result<Vec<GroupElement>, GroupError> {
        self.transversal(max_radius, false)
    }

    fn transversal(&self, max_radius: usize, left: bool) -> Result<Vec<GroupElement>, GroupError> {
        match &self.kind {
            SubgroupKind::Residues(m) => Ok(match &*self.group {
                GroupDescription::Integers => (0..m[0] as i64).map(GroupElement::Int).collect(),
                _ => m
                    .iter()
                    .map(|&n| 0..n as i64)
                    .multi_cartesian_product()
                    .map(GroupElement::Vector)
                    .collect(),
            }),
            SubgroupKind::Members(_) => {
                let mut keys = HashSet::new();
                Ok(self
                    .group
                    .ball(0)
                    .into_iter()
                    .filter(|g| keys.insert(self.coset_key(g, left)))
                    .collect())
            }
            SubgroupKind::PermutationKernel(_) => {
                // breadth-first over the quotient, first arrival per coset
                let gens = self.group.generators();
                let e = self.group.identity();
                let mut keys = HashSet::from([self.coset_key(&e, left)]);
                let mut reps = vec![e.clone()];
                let mut queue = VecDeque::from([(e, 0usize)]);
                while let Some((g, depth)) = queue.pop_front() {
                    if reps.len() == self.index {
                        break;
                    }
                    if depth == max_radius {
                        continue;
                    }
                    for s in &gens {
                        let next = self.group.op(&g, s);
                        if keys.insert(self.coset_key(&next, left)) {
                            reps.push(next.clone());
                            queue.push_back((next, depth + 1));
                        }
                    }
                }
                if reps.len() == self.index {
                    Ok(reps)
                } else {
                    Err(GroupError::CosetClosureNotReached { radius: max_radius })
                }
            }
        }
    }
}

fn num_lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// A complete set of left-coset representatives containing the identity.
///
/// Residue subgroups of Z and Z^d get the least non-negative residues;
/// other subgroups get the first element reached per coset in breadth-first
/// order, searching at most `max_radius` deep.
pub fn coset_representatives(
    h: &FiniteIndexSubgroup,
    max_radius: usize,
) -> Result<Vec<GroupElement>, GroupError> {
    h.transversal(max_radius, true)
}

/// A finite-index subgroup avoiding `g`, with the default search degree.
pub fn residually_finite_witness(
    group: &Arc<GroupDescription>,
    g: &GroupElement,
) -> Result<FiniteIndexSubgroup, GroupError> {
    residually_finite_witness_with(group, g, DEFAULT_WITNESS_DEGREE)
}

pub fn residually_finite_witness_with(
    group: &Arc<GroupDescription>,
    g: &GroupElement,
    max_degree: usize,
) -> Result<FiniteIndexSubgroup, GroupError> {
    group.check(g)?;
    if *g == group.identity() {
        return Err(GroupError::IdentityElement);
    }
    match (&**group, g) {
        (GroupDescription::Integers, GroupElement::Int(n)) => {
            FiniteIndexSubgroup::new(group, SubgroupKind::Residues(vec![n.unsigned_abs() + 1]))
        }
        (GroupDescription::Lattice { .. }, GroupElement::Vector(v)) => FiniteIndexSubgroup::new(
            group,
            SubgroupKind::Residues(v.iter().map(|c| c.unsigned_abs() + 1).collect()),
        ),
        (GroupDescription::FiniteTable(t), _) => {
            FiniteIndexSubgroup::new(group, SubgroupKind::Members(BTreeSet::from([t.identity()])))
        }
        (GroupDescription::Free { rank }, GroupElement::Word(_)) => free_witness(group, *rank, g, max_degree),
        _ => unreachable!("element checked against group"),
    }
}

/// Searches tuples of permutations, degree by degree, in lexicographic
/// order for a homomorphism to S_m that does not kill `g`.
fn free_witness(
    group: &Arc<GroupDescription>,
    rank: usize,
    g: &GroupElement,
    max_degree: usize,
) -> Result<FiniteIndexSubgroup, GroupError> {
    let mut tried = 0u64;
    for degree in 2..=max_degree {
        let perms: Vec<Perm> = (0..degree).permutations(degree).collect();
        for choice in (0..rank).map(|_| 0..perms.len()).multi_cartesian_product() {
            tried += 1;
            if tried > WITNESS_TUPLE_CAP {
                return Err(GroupError::NoWitness { degree, tuples: tried - 1 });
            }
            let images: Vec<Perm> = choice.iter().map(|&i| perms[i].clone()).collect();
            let probe = FiniteIndexSubgroup {
                group: Arc::clone(group),
                kind: SubgroupKind::PermutationKernel(images.clone()),
                index: 0,
            };
            if !probe.contains(g) {
                return FiniteIndexSubgroup::new(group, SubgroupKind::PermutationKernel(images));
            }
        }
    }
    Err(GroupError::NoWitness {
        degree: max_degree,
        tuples: tried,
    })
}
