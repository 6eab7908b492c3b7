use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::VerdictError;
use crate::group_actions::{ActionTable, GroupDescription, GroupElement};
use crate::relation_algebra::{Relation, UniformBase};
use crate::shift_spaces::{
    Configuration, ConfigurationDoc, Pattern, ProdiscreteEntourage, SubshiftOfFiniteType, Symbol, ZSftGraph,
};

/// How far the bounded quantifiers reach: basis depth, group ball radius and
/// the largest orbit accepted as periodic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleParameters {
    pub scale: usize,
    pub ball: usize,
    pub period_bound: usize,
}

impl Default for ScaleParameters {
    fn default() -> Self {
        Self {
            scale: 4,
            ball: 8,
            period_bound: 12,
        }
    }
}

impl ScaleParameters {
    pub fn new(scale: usize, ball: usize, period_bound: usize) -> Result<Self, VerdictError> {
        if scale == 0 || ball == 0 || period_bound == 0 {
            return Err(VerdictError::Argument("scale parameters must be positive".into()));
        }
        Ok(Self {
            scale,
            ball,
            period_bound,
        })
    }
}

/// An entourage of either kind of system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entourage {
    Relation(Relation),
    Prodiscrete(ProdiscreteEntourage),
}

/// A group acting on a finite carrier with a uniform base.
#[derive(Debug, Clone)]
pub struct FiniteSystem {
    base: UniformBase,
    action: ActionTable,
    elements: Vec<GroupElement>,
    params: ScaleParameters,
}

impl FiniteSystem {
    pub fn new(base: UniformBase, action: ActionTable, params: ScaleParameters) -> Result<Self, VerdictError> {
        if base.carrier().points() != action.carrier().points() {
            return Err(VerdictError::Argument("base and action use different carriers".into()));
        }
        let group = action.group_arc();
        let elements = if group.is_finite() {
            group.ball(0)
        } else {
            group.ball(params.ball.min(action.radius()))
        };
        Ok(Self {
            base,
            action,
            elements,
            params,
        })
    }

    pub fn base(&self) -> &UniformBase {
        &self.base
    }

    pub fn action(&self) -> &ActionTable {
        &self.action
    }

    pub fn group(&self) -> &Arc<GroupDescription> {
        self.action.group_arc()
    }

    /// The group elements quantified over, in ball order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn params(&self) -> ScaleParameters {
        self.params
    }

    pub fn size(&self) -> usize {
        self.base.carrier().size()
    }

    pub fn name(&self, x: usize) -> &str {
        self.base.carrier().name(x)
    }

    pub fn act(&self, g: &GroupElement, x: usize) -> usize {
        self.action.image(g).expect("quantified elements lie in the table")[x]
    }

    /// The smallest base relation.
    pub fn finest(&self) -> &Relation {
        self.base
            .relations()
            .iter()
            .min_by_key(|r| r.len())
            .expect("bases are non-empty")
    }

    pub fn section(&self, rel: &Relation, x: usize) -> BTreeSet<usize> {
        rel.neighborhood(x).expect("point of the carrier")
    }
}

#[derive(Debug, Clone)]
enum Engine {
    Graph(ZSftGraph),
    Full,
}

/// A subshift of finite type under the shift action, with its sample of
/// periodic points and the supports Ω₀ ⊆ Ω₁ ⊆ … of the basis.
#[derive(Debug, Clone)]
pub struct ShiftSystem {
    sft: SubshiftOfFiniteType,
    engine: Engine,
    params: ScaleParameters,
    ball: Vec<GroupElement>,
    sample: Vec<Configuration>,
}

const FINITE_SAMPLE_LIMIT: usize = 4096;

impl ShiftSystem {
    /// Subshifts over Z are handled through their block graph; over other
    /// groups only full shifts are supported.
    pub fn new(sft: SubshiftOfFiniteType, params: ScaleParameters) -> Result<Self, VerdictError> {
        let group = Arc::clone(sft.group());
        let engine = match &*group {
            GroupDescription::Integers => Engine::Graph(ZSftGraph::new(&sft)?),
            _ if sft.is_full_shift() => Engine::Full,
            _ => {
                return Err(VerdictError::Unsupported(format!(
                    "dynamical verdicts over {group} are limited to full shifts"
                )))
            }
        };
        let ball = group.ball(params.ball);
        let mut system = Self {
            sft,
            engine,
            params,
            ball,
            sample: Vec::new(),
        };
        system.sample = system.build_sample()?;
        Ok(system)
    }

    fn build_sample(&self) -> Result<Vec<Configuration>, VerdictError> {
        let group = self.group();
        let k = self.sft.alphabet().size();
        let mut points: BTreeSet<Configuration> = BTreeSet::new();
        match &self.engine {
            Engine::Graph(g) => {
                // periods up to the scale, or up to the first cycle if longer
                let mut n = 1;
                while n <= self.params.scale || (points.is_empty() && n <= g.state_count()) {
                    points.extend(g.closed_walks(n).iter().map(|w| Configuration::periodic_word(w)));
                    n += 1;
                }
                for c in self.cylinders(self.params.scale) {
                    if !points.iter().any(|x| c.iter().all(|(g, &s)| x.eval(g) == s)) {
                        points.extend(self.realize(&c));
                    }
                }
            }
            Engine::Full => {
                points.extend((0..k).map(|s| Configuration::constant(group, s)));
                let order = group.order();
                let everything = order.and_then(|n| k.checked_pow(n as u32)).filter(|&c| c <= FINITE_SAMPLE_LIMIT);
                let support = if everything.is_some() {
                    group.ball(0)
                } else {
                    group.first_elements(2)
                };
                for pattern in all_patterns(&support, k) {
                    let x = Configuration::periodic_from_pattern(group, &pattern, 0)?;
                    let mut seen = false;
                    for y in &points {
                        seen |= x.same_point(y)?;
                    }
                    if !seen {
                        points.insert(x);
                    }
                }
            }
        }
        let mut sample: Vec<Configuration> = points.into_iter().collect();
        sample.sort_by_key(|x| x.period().unwrap_or(usize::MAX));
        Ok(sample)
    }

    pub fn sft(&self) -> &SubshiftOfFiniteType {
        &self.sft
    }

    pub fn group(&self) -> &Arc<GroupDescription> {
        self.sft.group()
    }

    pub fn params(&self) -> ScaleParameters {
        self.params
    }

    /// The group ball quantified over, in breadth-first order.
    pub fn ball(&self) -> &[GroupElement] {
        &self.ball
    }

    /// Sampled points: periodic ones by increasing period, then one point in
    /// each cylinder at scale that none of them reaches.
    pub fn sample(&self) -> &[Configuration] {
        &self.sample
    }

    pub fn graph(&self) -> Option<&ZSftGraph> {
        match &self.engine {
            Engine::Graph(g) => Some(g),
            Engine::Full => None,
        }
    }

    /// Ω_n: the first n elements of the ball order.
    pub fn support(&self, level: usize) -> Vec<GroupElement> {
        self.group().first_elements(level)
    }

    pub fn contains(&self, x: &Configuration) -> bool {
        self.sft.contains(x)
    }

    /// Some point of the subshift extends the pattern.
    pub fn realizable(&self, p: &Pattern) -> bool {
        match &self.engine {
            Engine::Graph(g) => g.realizable(&int_constraints(p)),
            Engine::Full => true,
        }
    }

    /// A point of the subshift extending the pattern. Over Z it is periodic
    /// when a short enough period exists and spliced otherwise.
    pub fn realize(&self, p: &Pattern) -> Option<Configuration> {
        match &self.engine {
            Engine::Graph(g) => {
                let c = int_constraints(p);
                let span = match (c.first_key_value(), c.last_key_value()) {
                    (Some((lo, _)), Some((hi, _))) => (hi - lo + 1) as usize,
                    _ => 1,
                };
                let cap = span + g.state_count() + g.window_len();
                g.realize_periodic(&c, cap)
                    .map(|w| Configuration::periodic_word(&w))
                    .or_else(|| g.realize_spliced(&c))
            }
            Engine::Full => Configuration::periodic_from_pattern(self.group(), p, 0).ok(),
        }
    }

    /// The non-empty cylinders on Ω_level, as patterns.
    pub fn cylinders(&self, level: usize) -> Vec<Pattern> {
        let support = self.support(level);
        match &self.engine {
            Engine::Graph(g) => {
                let positions: Vec<i64> = support.iter().map(int_of).collect();
                g.cylinders(&positions)
                    .into_iter()
                    .map(|w| support.iter().cloned().zip(w).collect())
                    .collect()
            }
            Engine::Full => all_patterns(&support, self.sft.alphabet().size()),
        }
    }

    pub fn describe(&self, p: &Pattern) -> String {
        let cells = p
            .iter()
            .map(|(g, &s)| format!("{g}:{}", self.sft.alphabet().name(s)))
            .join(",");
        format!("{{{cells}}}")
    }

    pub fn doc(&self, x: &Configuration) -> ConfigurationDoc {
        ConfigurationDoc::new(x, self.sft.alphabet())
    }

    pub fn describe_point(&self, x: &Configuration) -> String {
        match self.doc(x) {
            ConfigurationDoc::Word(w) => format!("({w})^∞"),
            other => serde_json::to_string(&other).expect("serializable"),
        }
    }
}

fn int_of(g: &GroupElement) -> i64 {
    match g {
        GroupElement::Int(n) => *n,
        _ => unreachable!("block graphs only exist over Z"),
    }
}

fn int_constraints(p: &Pattern) -> BTreeMap<i64, Symbol> {
    p.iter().map(|(g, &s)| (int_of(g), s)).collect()
}

fn all_patterns(support: &[GroupElement], k: usize) -> Vec<Pattern> {
    if support.is_empty() {
        return vec![Pattern::new()];
    }
    support
        .iter()
        .map(|_| 0..k)
        .multi_cartesian_product()
        .map(|w| support.iter().cloned().zip(w).collect())
        .collect()
}

/// The union of two patterns, if they agree on their common domain.
pub(crate) fn merge(a: &Pattern, b: &Pattern) -> Option<Pattern> {
    let mut out = a.clone();
    for (g, &s) in b {
        if *out.entry(g.clone()).or_insert(s) != s {
            return None;
        }
    }
    Some(out)
}

/// The dynamical system handed to the verifiers.
#[derive(Debug, Clone)]
pub enum DeskSystem {
    Finite(FiniteSystem),
    Shift(ShiftSystem),
}

impl DeskSystem {
    pub fn params(&self) -> ScaleParameters {
        match self {
            DeskSystem::Finite(f) => f.params(),
            DeskSystem::Shift(s) => s.params(),
        }
    }

    pub fn group(&self) -> &Arc<GroupDescription> {
        match self {
            DeskSystem::Finite(f) => f.group(),
            DeskSystem::Shift(s) => s.group(),
        }
    }

    /// W({1_G}) for shifts, the finest base relation otherwise.
    pub fn default_entourage(&self) -> Entourage {
        match self {
            DeskSystem::Finite(f) => Entourage::Relation(f.finest().clone()),
            DeskSystem::Shift(s) => Entourage::Prodiscrete(ProdiscreteEntourage::new([s.group().identity()])),
        }
    }

    /// Evidence that the space has more than one point.
    pub fn has_two_points(&self) -> bool {
        match self {
            DeskSystem::Finite(f) => f.size() >= 2,
            DeskSystem::Shift(s) => s.sample().len() >= 2,
        }
    }
}
