use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::carrier::{same_carrier, Carrier};
use super::RelationError;

/// Carriers up to this size store one `u64` row per point.
const DENSE_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq)]
enum Pairs {
    /// `rows[x]` has bit `y` set iff `(x, y)` is in the relation.
    Dense(Vec<u64>),
    Sparse(BTreeSet<(usize, usize)>),
}

/// A binary relation on a finite carrier.
#[derive(Clone)]
pub struct Relation {
    carrier: Arc<Carrier>,
    pairs: Pairs,
}

impl Relation {
    pub fn empty(carrier: &Arc<Carrier>) -> Self {
        let pairs = if carrier.size() <= DENSE_LIMIT {
            Pairs::Dense(vec![0; carrier.size()])
        } else {
            Pairs::Sparse(BTreeSet::new())
        };
        Self {
            carrier: Arc::clone(carrier),
            pairs,
        }
    }

    pub fn new<I>(carrier: &Arc<Carrier>, pairs: I) -> Result<Self, RelationError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rel = Self::empty(carrier);
        for (x, y) in pairs {
            carrier.check_index(x)?;
            carrier.check_index(y)?;
            rel.insert(x, y);
        }
        Ok(rel)
    }

    /// Builds a relation from named pairs.
    pub fn from_names<'a, I>(carrier: &Arc<Carrier>, pairs: I) -> Result<Self, RelationError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut rel = Self::empty(carrier);
        for (x, y) in pairs {
            let (x, y) = (carrier.position(x)?, carrier.position(y)?);
            rel.insert(x, y);
        }
        Ok(rel)
    }

    /// Δ_X.
    pub fn diagonal(carrier: &Arc<Carrier>) -> Self {
        Self::from_predicate(carrier, |x, y| x == y)
    }

    /// X × X.
    pub fn full(carrier: &Arc<Carrier>) -> Self {
        Self::from_predicate(carrier, |_, _| true)
    }

    pub fn from_predicate(carrier: &Arc<Carrier>, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let n = carrier.size();
        let mut rel = Self::empty(carrier);
        for x in 0..n {
            for y in 0..n {
                if keep(x, y) {
                    rel.insert(x, y);
                }
            }
        }
        rel
    }

    fn insert(&mut self, x: usize, y: usize) {
        match &mut self.pairs {
            Pairs::Dense(rows) => rows[x] |= 1 << y,
            Pairs::Sparse(set) => {
                set.insert((x, y));
            }
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        if x >= self.carrier.size() || y >= self.carrier.size() {
            return false;
        }
        match &self.pairs {
            Pairs::Dense(rows) => rows[x] >> y & 1 == 1,
            Pairs::Sparse(set) => set.contains(&(x, y)),
        }
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match &self.pairs {
            Pairs::Dense(rows) => rows
                .iter()
                .enumerate()
                .flat_map(|(x, &row)| bits(row).map(move |y| (x, y)))
                .collect(),
            Pairs::Sparse(set) => set.iter().copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        match &self.pairs {
            Pairs::Dense(rows) => rows.iter().map(|r| r.count_ones() as usize).sum(),
            Pairs::Sparse(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn row(&self, x: usize) -> Vec<usize> {
        match &self.pairs {
            Pairs::Dense(rows) => bits(rows[x]).collect(),
            Pairs::Sparse(set) => set
                .range((x, 0)..(x + 1, 0))
                .map(|&(_, y)| y)
                .collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), RelationError> {
        if same_carrier(&self.carrier, &other.carrier) {
            Ok(())
        } else {
            Err(RelationError::CarrierMismatch)
        }
    }

    /// U ∘ V = {(x, y) : ∃ z, (x, z) ∈ U and (z, y) ∈ V}.
    pub fn compose(&self, other: &Self) -> Result<Self, RelationError> {
        self.check_same(other)?;
        let pairs = match (&self.pairs, &other.pairs) {
            (Pairs::Dense(u), Pairs::Dense(v)) => Pairs::Dense(
                u.iter()
                    .map(|&row| bits(row).fold(0u64, |acc, z| acc | v[z]))
                    .collect(),
            ),
            _ => {
                let mut out = BTreeSet::new();
                for x in 0..self.carrier.size() {
                    for z in self.row(x) {
                        out.extend(other.row(z).into_iter().map(|y| (x, y)));
                    }
                }
                Pairs::Sparse(out)
            }
        };
        Ok(Self {
            carrier: Arc::clone(&self.carrier),
            pairs,
        })
    }

    /// The k-fold composite U ∘ … ∘ U, k ≥ 1.
    pub fn power(&self, k: usize) -> Self {
        assert!(k >= 1, "power of a relation needs k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self).expect("same carrier");
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::empty(&self.carrier);
        for (x, y) in self.pairs() {
            out.insert(y, x);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.inverse() == *self
    }

    /// U ∩ U⁻¹, always symmetric.
    pub fn symmetrized(&self) -> Self {
        self.intersection(&self.inverse()).expect("same carrier")
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, RelationError> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a && b))
    }

    pub fn union(&self, other: &Self) -> Result<Self, RelationError> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a || b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        match (&self.pairs, &other.pairs) {
            (Pairs::Dense(u), Pairs::Dense(v)) => {
                let n = self.carrier.size();
                let rows = u
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| {
                        (0..n).fold(0u64, |acc, y| {
                            if f(a >> y & 1 == 1, b >> y & 1 == 1) {
                                acc | 1 << y
                            } else {
                                acc
                            }
                        })
                    })
                    .collect();
                Self {
                    carrier: Arc::clone(&self.carrier),
                    pairs: Pairs::Dense(rows),
                }
            }
            _ => Self::from_predicate(&self.carrier, |x, y| {
                f(self.contains(x, y), other.contains(x, y))
            }),
        }
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, RelationError> {
        self.check_same(other)?;
        Ok(match (&self.pairs, &other.pairs) {
            (Pairs::Dense(u), Pairs::Dense(v)) => u.iter().zip(v).all(|(&a, &b)| a & !b == 0),
            _ => self.pairs().into_iter().all(|(x, y)| other.contains(x, y)),
        })
    }

    /// First pair of `self` missing from `other`, lexicographically.
    pub fn first_pair_outside(&self, other: &Self) -> Option<(usize, usize)> {
        self.pairs().into_iter().find(|&(x, y)| !other.contains(x, y))
    }

    pub fn contains_diagonal(&self) -> bool {
        (0..self.carrier.size()).all(|x| self.contains(x, x))
    }

    /// U[x] = {y : (x, y) ∈ U}.
    pub fn neighborhood(&self, x: usize) -> Result<BTreeSet<usize>, RelationError> {
        self.carrier.check_index(x)?;
        Ok(self.row(x).into_iter().collect())
    }

    pub fn neighborhood_of(&self, name: &str) -> Result<BTreeSet<usize>, RelationError> {
        self.neighborhood(self.carrier.position(name)?)
    }

    /// Reflexive, symmetric and transitive.
    pub fn is_equivalence(&self) -> bool {
        self.contains_diagonal()
            && self.is_symmetric()
            && self.compose(self).map(|c| c.is_subset(self) == Ok(true)) == Ok(true)
    }
}

fn bits(mut row: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if row == 0 {
            None
        } else {
            let y = row.trailing_zeros() as usize;
            row &= row - 1;
            Some(y)
        }
    })
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        if !same_carrier(&self.carrier, &other.carrier) {
            return false;
        }
        match (&self.pairs, &other.pairs) {
            (Pairs::Dense(u), Pairs::Dense(v)) => u == v,
            _ => self.pairs() == other.pairs(),
        }
    }
}

impl Eq for Relation {}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(
                self.pairs()
                    .into_iter()
                    .map(|(x, y)| (self.carrier.name(x).to_string(), self.carrier.name(y).to_string())),
            )
            .finish()
    }
}
