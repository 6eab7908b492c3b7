use std::collections::BTreeSet;

use serde::Serialize;

use super::docs::{EntourageDoc, PointDoc};
use super::system::{merge, DeskSystem, Entourage, FiniteSystem, ShiftSystem};
use super::VerdictError;
use crate::group_actions::{orbit_bounded, GroupDescription, GroupElement, Orbit, RawElement};
use crate::relation_algebra::Relation;
use crate::shift_spaces::{translate_pattern, Configuration, Pattern, ProdiscreteEntourage};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityWitness {
    pub from: String,
    pub to: String,
    pub g: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub pass: bool,
    pub scale: usize,
    pub ball: usize,
    pub neighborhoods: usize,
    pub witnesses: Vec<TransitivityWitness>,
    /// First ordered pair (V, W) with no g in the ball such that gV meets W.
    pub failure: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalSet {
    pub from: String,
    pub to: String,
    pub elements: Vec<GroupElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixingReport {
    pub pass: bool,
    pub scale: usize,
    pub ball: usize,
    /// Exceptional sets must lie in the ball of this radius.
    pub allowed_radius: usize,
    pub finite_group: bool,
    pub pairs: usize,
    /// Non-empty exceptional sets {g : gV ∩ W = ∅} within the ball.
    pub exceptional: Vec<ExceptionalSet>,
    pub failure: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicDensityReport {
    pub pass: bool,
    pub scale: usize,
    pub period_bound: usize,
    pub method: String,
    pub neighborhoods: usize,
    pub largest_period: usize,
    pub gaps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SensitivityWitness {
    pub x: PointDoc,
    pub level: usize,
    pub y: PointDoc,
    pub g: RawElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitivityReport {
    pub pass: bool,
    pub scale: usize,
    pub ball: usize,
    pub entourage: EntourageDoc,
    pub cells: usize,
    pub witnesses: Vec<SensitivityWitness>,
    /// First (x, level) whose neighborhood holds no witness.
    pub counterexample: Option<(PointDoc, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansivityWitness {
    pub x: PointDoc,
    pub y: PointDoc,
    pub g: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansivityReport {
    pub pass: bool,
    pub ball: usize,
    pub entourage: EntourageDoc,
    pub pairs: usize,
    pub witnesses: Vec<ExpansivityWitness>,
    pub failure: Option<(PointDoc, PointDoc)>,
}

/// (gx, gy) ∉ W(Ω), evaluated through (gx)(ω) = x(g⁻¹ω).
pub(crate) fn separated_after(
    group: &GroupDescription,
    g: &GroupElement,
    x: &Configuration,
    y: &Configuration,
    u: &ProdiscreteEntourage,
) -> bool {
    let g_inv = group.inverse(g);
    u.support().iter().any(|w| {
        let h = group.op(&g_inv, w);
        x.eval(&h) != y.eval(&h)
    })
}

/// g·[from] ∩ [to] ≠ ∅, returning the combined pattern.
pub(crate) fn moved_meets(s: &ShiftSystem, g: &GroupElement, from: &Pattern, to: &Pattern) -> Option<Pattern> {
    merge(&translate_pattern(s.group(), g, from), to).filter(|p| s.realizable(p))
}

/// For each ordered pair of cylinders on a common support, the indices of
/// ball elements g with g·[u] ∩ [v] = ∅.
fn missed_translates(s: &ShiftSystem, cylinders: &[Pattern]) -> Vec<Vec<usize>> {
    let n = cylinders.len();
    let mut missed = vec![Vec::new(); n * n];
    let Some(first) = cylinders.first() else { return missed };
    let support: Vec<&GroupElement> = first.keys().collect();
    let values: Vec<Vec<usize>> = cylinders.iter().map(|c| c.values().copied().collect()).collect();
    let full = s.sft().is_full_shift();
    for (k, g) in s.ball().iter().enumerate() {
        let overlaps: Vec<(usize, usize)> = support
            .iter()
            .enumerate()
            .filter_map(|(a, w)| {
                let moved = s.group().op(g, w);
                support.iter().position(|t| **t == moved).map(|b| (a, b))
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                let agree = overlaps.iter().all(|&(a, b)| values[i][a] == values[j][b]);
                let meets = agree && (full || moved_meets(s, g, &cylinders[i], &cylinders[j]).is_some());
                if !meets {
                    missed[i * n + j].push(k);
                }
            }
        }
    }
    missed
}

pub fn verify_transitivity(system: &DeskSystem) -> TransitivityReport {
    let params = system.params();
    let mut witnesses = Vec::new();
    let mut failure = None;
    let neighborhoods;
    match system {
        DeskSystem::Shift(s) => {
            let cylinders = s.cylinders(params.scale);
            neighborhoods = cylinders.len();
            'pairs: for u in &cylinders {
                for v in &cylinders {
                    match s.ball().iter().find(|g| moved_meets(s, g, u, v).is_some()) {
                        Some(g) => witnesses.push(TransitivityWitness {
                            from: s.describe(u),
                            to: s.describe(v),
                            g: g.clone(),
                        }),
                        None => {
                            failure = Some((s.describe(u), s.describe(v)));
                            break 'pairs;
                        }
                    }
                }
            }
        }
        DeskSystem::Finite(f) => {
            let finest = f.finest();
            let sections: Vec<BTreeSet<usize>> = (0..f.size()).map(|x| f.section(finest, x)).collect();
            neighborhoods = sections.len();
            'pairs: for (x, nx) in sections.iter().enumerate() {
                for (y, ny) in sections.iter().enumerate() {
                    let hit = f.elements().iter().find(|g| nx.iter().any(|&a| ny.contains(&f.act(g, a))));
                    match hit {
                        Some(g) => witnesses.push(TransitivityWitness {
                            from: format!("U[{}]", f.name(x)),
                            to: format!("U[{}]", f.name(y)),
                            g: g.clone(),
                        }),
                        None => {
                            failure = Some((format!("U[{}]", f.name(x)), format!("U[{}]", f.name(y))));
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    TransitivityReport {
        pass: failure.is_none(),
        scale: params.scale,
        ball: params.ball,
        neighborhoods,
        witnesses,
        failure,
    }
}

/// Passes when every exceptional set found in the ball stays inside the
/// ball of half the radius, leaving a clean outer annulus. Actions of finite
/// groups pass outright.
pub fn verify_mixing(system: &DeskSystem) -> MixingReport {
    let params = system.params();
    let group = system.group();
    let allowed_radius = params.ball / 2;
    let mut exceptional = Vec::new();
    let pairs;
    match system {
        DeskSystem::Shift(s) => {
            let cylinders = s.cylinders(params.scale);
            pairs = cylinders.len() * cylinders.len();
            let missed = missed_translates(s, &cylinders);
            for (i, u) in cylinders.iter().enumerate() {
                for (j, v) in cylinders.iter().enumerate() {
                    let elements: Vec<GroupElement> = missed[i * cylinders.len() + j]
                        .iter()
                        .map(|&k| s.ball()[k].clone())
                        .collect();
                    if !elements.is_empty() {
                        exceptional.push(ExceptionalSet {
                            from: s.describe(u),
                            to: s.describe(v),
                            elements,
                        });
                    }
                }
            }
        }
        DeskSystem::Finite(f) => {
            let finest = f.finest();
            let sections: Vec<BTreeSet<usize>> = (0..f.size()).map(|x| f.section(finest, x)).collect();
            pairs = sections.len() * sections.len();
            for (x, nx) in sections.iter().enumerate() {
                for (y, ny) in sections.iter().enumerate() {
                    let elements: Vec<GroupElement> = f
                        .elements()
                        .iter()
                        .filter(|g| !nx.iter().any(|&a| ny.contains(&f.act(g, a))))
                        .cloned()
                        .collect();
                    if !elements.is_empty() {
                        exceptional.push(ExceptionalSet {
                            from: format!("U[{}]", f.name(x)),
                            to: format!("U[{}]", f.name(y)),
                            elements,
                        });
                    }
                }
            }
        }
    }
    let finite_group = group.is_finite();
    let failure = exceptional
        .iter()
        .find(|e| e.elements.iter().any(|g| group.length(g) > allowed_radius))
        .map(|e| (e.from.clone(), e.to.clone()));
    MixingReport {
        pass: finite_group || failure.is_none(),
        scale: params.scale,
        ball: params.ball,
        allowed_radius,
        finite_group,
        pairs,
        exceptional,
        failure: if finite_group { None } else { failure },
    }
}

/// Full shifts use periodic extensions cut out by residual-finiteness
/// witnesses, other Z-subshifts cycles of the block graph, finite systems
/// orbits of the action.
pub fn verify_periodic_density(system: &DeskSystem) -> PeriodicDensityReport {
    let params = system.params();
    let mut gaps = Vec::new();
    let mut largest_period = 0;
    let (method, neighborhoods) = match system {
        DeskSystem::Shift(s) => {
            let cylinders = s.cylinders(params.scale);
            let full = s.sft().is_full_shift();
            for c in &cylinders {
                let found = if full {
                    Configuration::periodic_from_pattern(s.group(), c, 0).ok()
                } else {
                    let g = s.graph().expect("non-full subshifts are over Z");
                    let constraints = c
                        .iter()
                        .map(|(k, &v)| match k {
                            GroupElement::Int(n) => (*n, v),
                            _ => unreachable!("integer positions"),
                        })
                        .collect();
                    g.realize_periodic(&constraints, params.period_bound)
                        .map(|w| Configuration::periodic_word(&w))
                };
                match found.and_then(|x| x.period().filter(|&p| p <= params.period_bound)) {
                    Some(p) => largest_period = largest_period.max(p),
                    None => gaps.push(s.describe(c)),
                }
            }
            let method = if full {
                "residual-finiteness quotients"
            } else {
                "block-graph cycles"
            };
            (method, cylinders.len())
        }
        DeskSystem::Finite(f) => {
            let finest = f.finest();
            for x in 0..f.size() {
                let periods = f.section(finest, x).into_iter().filter_map(|y| {
                    match orbit_bounded(f.action(), &y, params.period_bound) {
                        Ok(Orbit::Finite(points)) => Some(points.len()),
                        _ => None,
                    }
                });
                match periods.min() {
                    Some(p) => largest_period = largest_period.max(p),
                    None => gaps.push(format!("U[{}]", f.name(x))),
                }
            }
            ("finite orbits", f.size())
        }
    };
    PeriodicDensityReport {
        pass: gaps.is_empty(),
        scale: params.scale,
        period_bound: params.period_bound,
        method: method.to_string(),
        neighborhoods,
        largest_period,
        gaps,
    }
}

/// First witness for one sensitivity cell of a shift: y agrees with x on
/// Ω_level and differs at the first position p in ball order outside it,
/// then g is the first ball element separating gx and gy.
pub(crate) fn shift_cell_witness(
    s: &ShiftSystem,
    u: &ProdiscreteEntourage,
    x: &Configuration,
    level: usize,
) -> Option<(Configuration, GroupElement)> {
    let support = s.support(level);
    let base = x.restrict(&support);
    let k = s.sft().alphabet().size();
    for p in s.ball().iter().filter(|p| !base.contains_key(*p)) {
        let xp = x.eval(p);
        for b in (0..k).filter(|&b| b != xp) {
            let mut c = base.clone();
            c.insert(p.clone(), b);
            let Some(y) = s.realize(&c) else { continue };
            if let Some(g) = s.ball().iter().find(|g| separated_after(s.group(), g, x, &y, u)) {
                return Some((y, g.clone()));
            }
        }
    }
    None
}

pub(crate) fn finite_cell_witness(f: &FiniteSystem, u: &Relation, x: usize, level: usize) -> Option<(usize, GroupElement)> {
    let neighborhood = f.section(&f.base().relations()[level], x);
    neighborhood.into_iter().find_map(|y| {
        f.elements()
            .iter()
            .find(|g| !u.contains(f.act(g, x), f.act(g, y)))
            .map(|g| (y, g.clone()))
    })
}

/// Searches every (sample point, basis level) cell for y in the basic
/// neighborhood and g in the ball with (gx, gy) ∉ U.
pub fn verify_sensitivity(system: &DeskSystem, u: &Entourage) -> Result<SensitivityReport, VerdictError> {
    let params = system.params();
    let mut witnesses = Vec::new();
    let mut counterexample = None;
    let mut cells = 0;
    match (system, u) {
        (DeskSystem::Shift(s), Entourage::Prodiscrete(w)) => {
            'cells: for x in s.sample() {
                for level in 1..=params.scale {
                    cells += 1;
                    match shift_cell_witness(s, w, x, level) {
                        Some((y, g)) => witnesses.push(SensitivityWitness {
                            x: PointDoc::Configuration(s.doc(x)),
                            level,
                            y: PointDoc::Configuration(s.doc(&y)),
                            g: RawElement::from(&g),
                        }),
                        None => {
                            counterexample = Some((PointDoc::Configuration(s.doc(x)), level));
                            break 'cells;
                        }
                    }
                }
            }
        }
        (DeskSystem::Finite(f), Entourage::Relation(r)) => {
            if r.carrier().points() != f.base().carrier().points() {
                return Err(VerdictError::Argument("entourage lives on another carrier".into()));
            }
            'cells: for x in 0..f.size() {
                for level in 0..f.base().relations().len() {
                    cells += 1;
                    match finite_cell_witness(f, r, x, level) {
                        Some((y, g)) => witnesses.push(SensitivityWitness {
                            x: PointDoc::Carrier(f.name(x).to_string()),
                            level,
                            y: PointDoc::Carrier(f.name(y).to_string()),
                            g: RawElement::from(&g),
                        }),
                        None => {
                            counterexample = Some((PointDoc::Carrier(f.name(x).to_string()), level));
                            break 'cells;
                        }
                    }
                }
            }
        }
        _ => return Err(VerdictError::Argument("entourage kind does not match the system".into())),
    }
    Ok(SensitivityReport {
        pass: counterexample.is_none(),
        scale: params.scale,
        ball: params.ball,
        entourage: EntourageDoc::from(u),
        cells,
        witnesses,
        counterexample,
    })
}

/// For every pair of distinct sampled points, a g in the ball with
/// (gx, gy) ∉ U.
pub fn verify_expansivity(system: &DeskSystem, u: &Entourage) -> Result<ExpansivityReport, VerdictError> {
    let params = system.params();
    let mut witnesses = Vec::new();
    let mut failure = None;
    let mut pairs = 0;
    match (system, u) {
        (DeskSystem::Shift(s), Entourage::Prodiscrete(w)) => {
            let sample = s.sample();
            'pairs: for (i, x) in sample.iter().enumerate() {
                for y in &sample[i + 1..] {
                    pairs += 1;
                    let doc = |c: &Configuration| PointDoc::Configuration(s.doc(c));
                    match s.ball().iter().find(|g| separated_after(s.group(), g, x, y, w)) {
                        Some(g) => witnesses.push(ExpansivityWitness {
                            x: doc(x),
                            y: doc(y),
                            g: g.clone(),
                        }),
                        None => {
                            failure = Some((doc(x), doc(y)));
                            break 'pairs;
                        }
                    }
                }
            }
        }
        (DeskSystem::Finite(f), Entourage::Relation(r)) => {
            let name = |x: usize| PointDoc::Carrier(f.name(x).to_string());
            'pairs: for x in 0..f.size() {
                for y in x + 1..f.size() {
                    pairs += 1;
                    match f.elements().iter().find(|g| !r.contains(f.act(g, x), f.act(g, y))) {
                        Some(g) => witnesses.push(ExpansivityWitness {
                            x: name(x),
                            y: name(y),
                            g: g.clone(),
                        }),
                        None => {
                            failure = Some((name(x), name(y)));
                            break 'pairs;
                        }
                    }
                }
            }
        }
        _ => return Err(VerdictError::Argument("entourage kind does not match the system".into())),
    }
    Ok(ExpansivityReport {
        pass: failure.is_none(),
        ball: params.ball,
        entourage: EntourageDoc::from(u),
        pairs,
        witnesses,
        failure,
    })
}
