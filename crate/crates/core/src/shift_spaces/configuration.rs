use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::alphabet::Symbol;
use super::ShiftError;
use crate::group_actions::{
    coset_representatives, residually_finite_witness, CosetKey, FiniteIndexSubgroup, GroupAction,
    GroupDescription, GroupElement, GroupError, SubgroupKind, DEFAULT_COSET_RADIUS,
};

/// A finite pattern p: Ω → A.
pub type Pattern = BTreeMap<GroupElement, Symbol>;

/// A configuration constant on the left cosets gH of a finite-index normal
/// subgroup H.
#[derive(Debug, Clone)]
pub struct PeriodicConfiguration {
    subgroup: FiniteIndexSubgroup,
    reps: Vec<GroupElement>,
    values: Vec<Symbol>,
    lookup: HashMap<CosetKey, usize>,
}

impl PeriodicConfiguration {
    /// Samples `f` once per coset representative. Residue subgroups of Z and
    /// Z^d are shrunk to the least box of periods.
    pub fn new(
        subgroup: FiniteIndexSubgroup,
        f: impl Fn(&GroupElement) -> Symbol,
    ) -> Result<Self, ShiftError> {
        if !subgroup.is_normal() {
            return Err(ShiftError::BadConfiguration(
                "periodic configurations need a normal subgroup".into(),
            ));
        }
        let reps = coset_representatives(&subgroup, DEFAULT_COSET_RADIUS)?;
        let values = reps.iter().map(&f).collect();
        let config = Self::assemble(subgroup, reps, values);
        match config.subgroup.kind() {
            SubgroupKind::Residues(m) => {
                let reduced = least_periods(m, |r| config.value_at_residues(r));
                if &reduced == m {
                    Ok(config)
                } else {
                    let h = FiniteIndexSubgroup::new(config.subgroup.group(), SubgroupKind::Residues(reduced))?;
                    let reps = coset_representatives(&h, DEFAULT_COSET_RADIUS)?;
                    let values = reps.iter().map(|g| config.value(g)).collect();
                    Ok(Self::assemble(h, reps, values))
                }
            }
            _ if config.subgroup.index() > 1 && config.values.iter().all(|&v| v == config.values[0]) => {
                let whole = FiniteIndexSubgroup::whole(config.subgroup.group());
                let reps = coset_representatives(&whole, 0)?;
                Ok(Self::assemble(whole, reps, vec![config.values[0]]))
            }
            _ => Ok(config),
        }
    }

    fn assemble(subgroup: FiniteIndexSubgroup, reps: Vec<GroupElement>, values: Vec<Symbol>) -> Self {
        let lookup = reps
            .iter()
            .enumerate()
            .map(|(i, t)| (subgroup.left_coset_key(t), i))
            .collect();
        Self {
            subgroup,
            reps,
            values,
            lookup,
        }
    }

    fn value_at_residues(&self, r: &[i64]) -> Symbol {
        let g = match &**self.subgroup.group() {
            GroupDescription::Integers => GroupElement::Int(r[0]),
            _ => GroupElement::Vector(r.to_vec()),
        };
        self.value(&g)
    }

    pub fn value(&self, g: &GroupElement) -> Symbol {
        self.values[self.lookup[&self.subgroup.left_coset_key(g)]]
    }

    pub fn subgroup(&self) -> &FiniteIndexSubgroup {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn values(&self) -> &[Symbol] {
        &self.values
    }

    fn shifted(&self, group: &GroupDescription, g: &GroupElement) -> Self {
        let g_inv = group.inverse(g);
        let values = self.reps.iter().map(|t| self.value(&group.op(&g_inv, t))).collect();
        Self::assemble(self.subgroup.clone(), self.reps.clone(), values)
    }
}

impl PartialEq for PeriodicConfiguration {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PeriodicConfiguration {}

impl PartialOrd for PeriodicConfiguration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PeriodicConfiguration {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.subgroup.kind(), &self.values).cmp(&(other.subgroup.kind(), &other.values))
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

/// Shrinks each modulus to the least divisor that is still a period.
fn least_periods(m: &[u64], value: impl Fn(&[i64]) -> Symbol) -> Vec<u64> {
    use itertools::Itertools;
    let mut m = m.to_vec();
    for i in 0..m.len() {
        let original = m[i];
        for d in (1..original).filter(|d| original % d == 0) {
            let invariant = m
                .iter()
                .map(|&n| 0..n as i64)
                .multi_cartesian_product()
                .all(|r| {
                    let mut moved = r.clone();
                    moved[i] += d as i64;
                    value(&r) == value(&moved)
                });
            if invariant {
                m[i] = d;
                break;
            }
        }
    }
    m
}

/// A point of A^G in one of its finite presentations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Configuration {
    Periodic(PeriodicConfiguration),
    /// `pattern` on its domain, `default` everywhere else.
    Filled { pattern: Pattern, default: Symbol },
    /// A Z-configuration reading `middle` from position `start`, repeating
    /// `left` before it and `right` after it. Both cycles are anchored at the
    /// ends of `middle`: position start−1 holds the last symbol of `left` and
    /// position start+|middle| the first symbol of `right`.
    Spliced {
        left: Vec<Symbol>,
        start: i64,
        middle: Vec<Symbol>,
        right: Vec<Symbol>,
    },
}

impl Configuration {
    pub fn constant(group: &Arc<GroupDescription>, s: Symbol) -> Self {
        let whole = FiniteIndexSubgroup::whole(group);
        Configuration::Periodic(PeriodicConfiguration::new(whole, |_| s).expect("whole group is normal"))
    }

    /// The Z-configuration repeating `word` with `word[0]` at position 0.
    pub fn periodic_word(word: &[Symbol]) -> Self {
        assert!(!word.is_empty(), "periodic word must be non-empty");
        let n = word.len() as i64;
        let h = FiniteIndexSubgroup::multiples(n as u64).expect("positive period");
        let x = PeriodicConfiguration::new(h, |g| match g {
            GroupElement::Int(i) => word[i.rem_euclid(n) as usize],
            _ => unreachable!("integer coset representatives"),
        })
        .expect("subgroups of Z are normal");
        Configuration::Periodic(x)
    }

    /// A periodic configuration extending `pattern`, with `default` on the
    /// cosets the pattern does not reach. The period subgroup is cut out by
    /// residual-finiteness witnesses separating the pattern's domain.
    pub fn periodic_from_pattern(
        group: &Arc<GroupDescription>,
        pattern: &Pattern,
        default: Symbol,
    ) -> Result<Self, ShiftError> {
        let domain: Vec<&GroupElement> = pattern.keys().collect();
        let mut differences: Vec<GroupElement> = Vec::new();
        for (i, a) in domain.iter().enumerate() {
            for b in &domain[i + 1..] {
                differences.push(group.op(&group.inverse(a), b));
            }
        }
        differences.sort_by(|a, b| group.length(b).cmp(&group.length(a)).then_with(|| a.cmp(b)));
        let mut h = FiniteIndexSubgroup::whole(group);
        for d in &differences {
            if h.contains(d) {
                h = h.intersect(&residually_finite_witness(group, d)?)?;
            }
        }
        let by_coset: HashMap<CosetKey, Symbol> =
            pattern.iter().map(|(g, &s)| (h.left_coset_key(g), s)).collect();
        let key_of = h.clone();
        let x = PeriodicConfiguration::new(h, |t| {
            by_coset.get(&key_of.left_coset_key(t)).copied().unwrap_or(default)
        })?;
        Ok(Configuration::Periodic(x))
    }

    /// x(g).
    /// Equality as functions on the group. Two periodic configurations are
    /// compared on a transversal of the intersection of their subgroups.
    pub fn same_point(&self, other: &Self) -> Result<bool, ShiftError> {
        if let (Some(a), Some(b)) = (self.z_profile(), other.z_profile()) {
            if matches!(self, Configuration::Spliced { .. }) || matches!(other, Configuration::Spliced { .. }) {
                let before = num_lcm(a.2, b.2) as i64;
                let after = num_lcm(a.3, b.3) as i64;
                return Ok((a.0.min(b.0) - before..a.1.max(b.1) + after)
                    .map(GroupElement::Int)
                    .all(|g| self.eval(&g) == other.eval(&g)));
            }
        }
        match (self, other) {
            (Configuration::Periodic(a), Configuration::Periodic(b)) if a.subgroup.kind() != b.subgroup.kind() => {
                let k = a.subgroup.intersect(&b.subgroup)?;
                let reps = coset_representatives(&k, DEFAULT_COSET_RADIUS)?;
                Ok(reps.iter().all(|t| a.value(t) == b.value(t)))
            }
            _ => Ok(self == other),
        }
    }

    pub fn eval(&self, g: &GroupElement) -> Symbol {
        match self {
            Configuration::Periodic(x) => x.value(g),
            Configuration::Filled { pattern, default } => pattern.get(g).copied().unwrap_or(*default),
            Configuration::Spliced { left, start, middle, right } => {
                let GroupElement::Int(i) = g else {
                    panic!("{g} is not an integer");
                };
                let end = start + middle.len() as i64;
                if i < start {
                    left[(i - start).rem_euclid(left.len() as i64) as usize]
                } else if *i >= end {
                    right[(i - end).rem_euclid(right.len() as i64) as usize]
                } else {
                    middle[(i - start) as usize]
                }
            }
        }
    }

    /// For configurations of Z: the span [lo, hi) outside which x repeats,
    /// and the periods to the left and to the right of it.
    fn z_profile(&self) -> Option<(i64, i64, u64, u64)> {
        match self {
            Configuration::Spliced { left, start, middle, right } => Some((
                *start,
                start + middle.len() as i64,
                left.len() as u64,
                right.len() as u64,
            )),
            Configuration::Periodic(p) if matches!(**p.subgroup.group(), GroupDescription::Integers) => {
                let n = p.subgroup.index() as u64;
                Some((0, 0, n, n))
            }
            Configuration::Filled { pattern, .. } => {
                let ints: Option<Vec<i64>> = pattern
                    .keys()
                    .map(|g| match g {
                        GroupElement::Int(i) => Some(*i),
                        _ => None,
                    })
                    .collect();
                let ints = ints?;
                let lo = ints.iter().min().copied().unwrap_or(0);
                let hi = ints.iter().max().map_or(0, |m| m + 1);
                Some((lo, hi, 1, 1))
            }
            _ => None,
        }
    }

    pub fn restrict<'a>(&self, support: impl IntoIterator<Item = &'a GroupElement>) -> Pattern {
        support.into_iter().map(|g| (g.clone(), self.eval(g))).collect()
    }

    /// Index of the period subgroup, for periodic configurations.
    pub fn period(&self) -> Option<usize> {
        match self {
            Configuration::Periodic(x) => Some(x.subgroup.index()),
            Configuration::Filled { .. } | Configuration::Spliced { .. } => None,
        }
    }

    /// For Z-periodic configurations, one period starting at position 0.
    pub fn z_word(&self) -> Option<Vec<Symbol>> {
        match self {
            Configuration::Periodic(x) if matches!(**x.subgroup.group(), GroupDescription::Integers) => {
                Some(x.values.clone())
            }
            _ => None,
        }
    }
}

/// gx, where (gx)(h) = x(g⁻¹h).
pub fn shift_apply(group: &GroupDescription, g: &GroupElement, x: &Configuration) -> Configuration {
    match x {
        Configuration::Periodic(p) => Configuration::Periodic(p.shifted(group, g)),
        Configuration::Filled { pattern, default } => Configuration::Filled {
            pattern: translate_pattern(group, g, pattern),
            default: *default,
        },
        Configuration::Spliced { left, start, middle, right } => {
            let GroupElement::Int(n) = g else {
                panic!("{g} is not an integer");
            };
            Configuration::Spliced {
                left: left.clone(),
                start: start + n,
                middle: middle.clone(),
                right: right.clone(),
            }
        }
    }
}

/// The pattern defining g·[p]: value p(ω) moved to gω.
pub fn translate_pattern(group: &GroupDescription, g: &GroupElement, pattern: &Pattern) -> Pattern {
    pattern.iter().map(|(w, &s)| (group.op(g, w), s)).collect()
}

/// (x, y) ∈ W(Ω).
pub fn w_related<'a>(
    omega: impl IntoIterator<Item = &'a GroupElement>,
    x: &Configuration,
    y: &Configuration,
) -> bool {
    omega.into_iter().all(|g| x.eval(g) == y.eval(g))
}

/// W(Ω): agreement on a finite support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProdiscreteEntourage {
    support: BTreeSet<GroupElement>,
}

impl ProdiscreteEntourage {
    pub fn new(support: impl IntoIterator<Item = GroupElement>) -> Self {
        Self {
            support: support.into_iter().collect(),
        }
    }

    pub fn support(&self) -> &BTreeSet<GroupElement> {
        &self.support
    }

    pub fn contains(&self, x: &Configuration, y: &Configuration) -> bool {
        w_related(&self.support, x, y)
    }

    /// W(Ω₁) ∩ W(Ω₂) = W(Ω₁ ∪ Ω₂).
    pub fn intersection(&self, other: &Self) -> Self {
        Self::new(self.support.union(&other.support).cloned())
    }

    /// The cylinder W(Ω)[x] as a pattern.
    pub fn section(&self, x: &Configuration) -> Pattern {
        x.restrict(&self.support)
    }
}

/// The shift action of G on A^G.
#[derive(Debug, Clone)]
pub struct ShiftAction {
    group: Arc<GroupDescription>,
}

impl ShiftAction {
    pub fn new(group: &Arc<GroupDescription>) -> Self {
        Self {
            group: Arc::clone(group),
        }
    }
}

impl GroupAction for ShiftAction {
    type Point = Configuration;

    fn group(&self) -> &GroupDescription {
        &self.group
    }

    fn act(&self, g: &GroupElement, x: &Configuration) -> Result<Configuration, GroupError> {
        Ok(shift_apply(&self.group, g, x))
    }
}
