use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;

use super::alphabet::{Alphabet, Symbol};
use super::configuration::Configuration;
use super::ShiftError;
use crate::group_actions::{GroupDescription, GroupElement};

/// X(Ω, 𝒫) = {x : (gx)|Ω ∈ 𝒫 for all g}.
///
/// Windows are normalized at construction: over Z to an interval
/// `0..m` with m ≥ 2, elsewhere to a sorted window containing the identity.
/// Coordinates added by the normalization are left free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubshiftOfFiniteType {
    group: Arc<GroupDescription>,
    alphabet: Alphabet,
    window: Vec<GroupElement>,
    allowed: BTreeSet<Vec<Symbol>>,
}

impl SubshiftOfFiniteType {
    /// `allowed` patterns list one symbol per window element, in the order
    /// the window is given.
    pub fn from_allowed(
        group: &Arc<GroupDescription>,
        alphabet: Alphabet,
        window: Vec<GroupElement>,
        allowed: Vec<Vec<Symbol>>,
    ) -> Result<Self, ShiftError> {
        validate(group, &alphabet, &window, &allowed)?;
        let allowed: BTreeSet<Vec<Symbol>> = allowed.into_iter().collect();
        Ok(normalize(group, alphabet, window, allowed))
    }

    pub fn from_forbidden(
        group: &Arc<GroupDescription>,
        alphabet: Alphabet,
        window: Vec<GroupElement>,
        forbidden: Vec<Vec<Symbol>>,
    ) -> Result<Self, ShiftError> {
        validate(group, &alphabet, &window, &forbidden)?;
        let forbidden: BTreeSet<Vec<Symbol>> = forbidden.into_iter().collect();
        let allowed = all_words(alphabet.size(), window.len())
            .into_iter()
            .filter(|p| !forbidden.contains(p))
            .collect();
        Ok(normalize(group, alphabet, window, allowed))
    }

    /// A^G.
    pub fn full_shift(group: &Arc<GroupDescription>, alphabet: Alphabet) -> Self {
        let e = group.identity();
        let allowed = (0..alphabet.size()).map(|s| vec![s]).collect();
        normalize(group, alphabet, vec![e], allowed)
    }

    pub fn group(&self) -> &Arc<GroupDescription> {
        &self.group
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn window(&self) -> &[GroupElement] {
        &self.window
    }

    pub fn allowed(&self) -> &BTreeSet<Vec<Symbol>> {
        &self.allowed
    }

    pub fn is_full_shift(&self) -> bool {
        self.allowed.len() == self.alphabet.size().pow(self.window.len() as u32)
    }

    pub fn allows(&self, pattern: &[Symbol]) -> bool {
        self.allowed.contains(pattern)
    }

    /// (gx)|Ω read in window order.
    pub fn window_at(&self, g: &GroupElement, x: &Configuration) -> Vec<Symbol> {
        let g_inv = self.group.inverse(g);
        self.window.iter().map(|w| x.eval(&self.group.op(&g_inv, w))).collect()
    }

    /// Exact membership. Periodic configurations are checked once per coset
    /// of their period subgroup; filled configurations at the background
    /// window and at every translate meeting the pattern; spliced ones over
    /// the middle and one period of each side.
    pub fn contains(&self, x: &Configuration) -> bool {
        match x {
            Configuration::Periodic(p) => p
                .representatives()
                .iter()
                .all(|t| self.allows(&self.window_at(t, x))),
            Configuration::Filled { pattern, default } => {
                if !self.allows(&vec![*default; self.window.len()]) {
                    return false;
                }
                pattern
                    .keys()
                    .cartesian_product(&self.window)
                    .map(|(d, w)| self.group.op(w, &self.group.inverse(d)))
                    .all(|g| self.allows(&self.window_at(&g, x)))
            }
            Configuration::Spliced { left, start, middle, right } => {
                let reach = self
                    .window
                    .iter()
                    .map(|w| match w {
                        GroupElement::Int(n) => n.abs(),
                        _ => 0,
                    })
                    .max()
                    .unwrap_or(0);
                let lo = start - left.len() as i64 - reach;
                let hi = start + (middle.len() + right.len()) as i64 + reach;
                (lo..=hi).all(|i| self.allows(&self.window_at(&GroupElement::Int(-i), x)))
            }
        }
    }
}

/// Every window of x translated by the ball of the given radius is allowed.
pub fn locally_admissible(s: &SubshiftOfFiniteType, x: &Configuration, radius: usize) -> bool {
    s.group.ball(radius).iter().all(|g| s.allows(&s.window_at(g, x)))
}

fn all_words(k: usize, len: usize) -> Vec<Vec<Symbol>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    (0..len).map(|_| 0..k).multi_cartesian_product().collect()
}

fn validate(
    group: &GroupDescription,
    alphabet: &Alphabet,
    window: &[GroupElement],
    patterns: &[Vec<Symbol>],
) -> Result<(), ShiftError> {
    if window.is_empty() {
        return Err(ShiftError::BadWindow("window must not be empty".into()));
    }
    for g in window {
        group.check(g)?;
    }
    if window.iter().collect::<BTreeSet<_>>().len() != window.len() {
        return Err(ShiftError::BadWindow("window elements must be distinct".into()));
    }
    for p in patterns {
        if p.len() != window.len() {
            return Err(ShiftError::BadPattern(format!(
                "pattern of length {} on a window of size {}",
                p.len(),
                window.len()
            )));
        }
        if let Some(&s) = p.iter().find(|&&s| s >= alphabet.size()) {
            return Err(ShiftError::BadPattern(format!("symbol index {s} outside the alphabet")));
        }
    }
    Ok(())
}

fn normalize(
    group: &Arc<GroupDescription>,
    alphabet: Alphabet,
    window: Vec<GroupElement>,
    allowed: BTreeSet<Vec<Symbol>>,
) -> SubshiftOfFiniteType {
    let (new_window, origin): (Vec<GroupElement>, Vec<GroupElement>) = match &**group {
        GroupDescription::Integers => {
            let ints: Vec<i64> = window
                .iter()
                .map(|g| match g {
                    GroupElement::Int(n) => *n,
                    _ => unreachable!("validated"),
                })
                .collect();
            let lo = *ints.iter().min().expect("non-empty window");
            let hi = (*ints.iter().max().expect("non-empty window")).max(lo + 1);
            (
                (0..=hi - lo).map(GroupElement::Int).collect(),
                (lo..=hi).map(GroupElement::Int).collect(),
            )
        }
        _ => {
            let mut hull: BTreeSet<GroupElement> = window.iter().cloned().collect();
            hull.insert(group.identity());
            let hull: Vec<GroupElement> = hull.into_iter().collect();
            (hull.clone(), hull)
        }
    };
    let position: BTreeMap<&GroupElement, usize> = window.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let free = origin.iter().filter(|g| !position.contains_key(g)).count();
    let mut expanded = BTreeSet::new();
    for p in &allowed {
        for fill in all_words(alphabet.size(), free) {
            let mut fill = fill.into_iter();
            let q = origin
                .iter()
                .map(|g| match position.get(g) {
                    Some(&i) => p[i],
                    None => fill.next().expect("one free symbol per added coordinate"),
                })
                .collect();
            expanded.insert(q);
        }
    }
    SubshiftOfFiniteType {
        group: Arc::clone(group),
        alphabet,
        window: new_window,
        allowed: expanded,
    }
}
