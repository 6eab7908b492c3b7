use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::alphabet::Symbol;
use super::configuration::Configuration;
use super::sft::SubshiftOfFiniteType;
use super::ShiftError;
use crate::group_actions::GroupDescription;

/// The essential block graph of a Z-SFT with window `0..m`: vertices are the
/// (m−1)-blocks lying on some bi-infinite path, edges the allowed m-blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSftGraph {
    m: usize,
    states: Vec<Vec<Symbol>>,
    succ: Vec<Vec<usize>>,
}

impl ZSftGraph {
    pub fn new(s: &SubshiftOfFiniteType) -> Result<Self, ShiftError> {
        if !matches!(**s.group(), GroupDescription::Integers) {
            return Err(ShiftError::NotIntegers(s.group().to_string()));
        }
        let m = s.window().len();
        let mut edges: BTreeSet<(Vec<Symbol>, Vec<Symbol>)> =
            s.allowed().iter().map(|w| (w[..m - 1].to_vec(), w[1..].to_vec())).collect();
        // strip blocks that cannot be continued in both directions
        loop {
            let heads: BTreeSet<&Vec<Symbol>> = edges.iter().map(|(u, _)| u).collect();
            let tails: BTreeSet<&Vec<Symbol>> = edges.iter().map(|(_, v)| v).collect();
            let keep: BTreeSet<(Vec<Symbol>, Vec<Symbol>)> = edges
                .iter()
                .filter(|(u, v)| tails.contains(u) && heads.contains(v))
                .cloned()
                .collect();
            if keep.len() == edges.len() {
                break;
            }
            edges = keep;
        }
        if edges.is_empty() {
            return Err(ShiftError::EmptySubshift);
        }
        let states: Vec<Vec<Symbol>> = edges
            .iter()
            .map(|(u, _)| u.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<&Vec<Symbol>, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut succ = vec![Vec::new(); states.len()];
        for (u, v) in &edges {
            succ[index[u]].push(index[v]);
        }
        Ok(Self { m, states, succ })
    }

    pub fn window_len(&self) -> usize {
        self.m
    }

    pub fn states(&self) -> &[Vec<Symbol>] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.states.len();
        self.succ
            .iter()
            .map(|out| {
                let mut row = vec![0; n];
                for &v in out {
                    row[v] = 1;
                }
                row
            })
            .collect()
    }

    fn consistent(&self, state: usize, at: i64, constraints: &BTreeMap<i64, Symbol>) -> bool {
        self.states[state]
            .iter()
            .enumerate()
            .all(|(j, s)| constraints.get(&(at + j as i64)).is_none_or(|c| c == s))
    }

    /// Some point of the subshift takes the prescribed values.
    pub fn realizable(&self, constraints: &BTreeMap<i64, Symbol>) -> bool {
        let (Some((&lo, _)), Some((&hi, _))) = (constraints.first_key_value(), constraints.last_key_value()) else {
            return true;
        };
        let n = self.states.len();
        let mut alive: Vec<bool> = (0..n).map(|s| self.consistent(s, lo, constraints)).collect();
        for at in lo + 1..=hi {
            let mut next = vec![false; n];
            for u in (0..n).filter(|&u| alive[u]) {
                for &v in &self.succ[u] {
                    if !next[v] && self.consistent(v, at, constraints) {
                        next[v] = true;
                    }
                }
            }
            alive = next;
        }
        alive.iter().any(|&a| a)
    }

    /// One period of a periodic point meeting the constraints, trying
    /// periods 1, 2, … up to `max_period`.
    pub fn realize_periodic(&self, constraints: &BTreeMap<i64, Symbol>, max_period: usize) -> Option<Vec<Symbol>> {
        'period: for p in 1..=max_period {
            let mut want = vec![None; p];
            for (&i, &s) in constraints {
                let k = i.rem_euclid(p as i64) as usize;
                match want[k] {
                    Some(t) if t != s => continue 'period,
                    _ => want[k] = Some(s),
                }
            }
            if let Some(word) = self.closed_walk(&want) {
                return Some(word);
            }
        }
        None
    }

    /// A point meeting the constraints that is periodic to the left and to
    /// the right of a finite stretch. The walk through the constrained span
    /// is the least in state order; outside it the first predecessor and
    /// first successor are followed until a state repeats.
    pub fn realize_spliced(&self, constraints: &BTreeMap<i64, Symbol>) -> Option<Configuration> {
        let n = self.states.len();
        let lo = constraints.keys().next().copied().unwrap_or(0);
        let hi = constraints.keys().next_back().copied().unwrap_or(0);
        let mut alive: Vec<bool> = (0..n).map(|s| self.consistent(s, lo, constraints)).collect();
        let mut parents: Vec<Vec<Option<usize>>> = Vec::new();
        for at in lo + 1..=hi {
            let mut parent = vec![None; n];
            for u in (0..n).filter(|&u| alive[u]) {
                for &v in &self.succ[u] {
                    if parent[v].is_none() && self.consistent(v, at, constraints) {
                        parent[v] = Some(u);
                    }
                }
            }
            alive = parent.iter().map(Option::is_some).collect();
            parents.push(parent);
        }
        let mut u = (0..n).find(|&u| alive[u])?;
        let mut span = vec![u];
        for parent in parents.iter().rev() {
            u = parent[u].expect("alive states have parents");
            span.push(u);
        }
        span.reverse();

        let symbol = |s: &usize| self.states[*s][0];
        let pred = |v: usize| (0..n).find(|&u| self.succ[u].contains(&v)).expect("essential graph");
        // forward[j] sits at position hi + j, backward[j] at lo − j
        let forward = until_repeat(*span.last().expect("non-empty span"), |u| self.succ[u][0]);
        let backward = until_repeat(span[0], pred);

        let (k, cycle) = forward;
        let (right, tail): (Vec<Symbol>, &[usize]) = if k == 0 {
            (cycle[1..].iter().chain(&cycle[..1]).map(symbol).collect(), &[])
        } else {
            (cycle[k..].iter().map(symbol).collect(), &cycle[1..k])
        };
        let mut middle: Vec<Symbol> = span.iter().chain(tail).map(symbol).collect();

        let (k, cycle) = backward;
        let start;
        let left: Vec<Symbol> = if k == 0 {
            start = lo;
            cycle[..1].iter().chain(cycle[1..].iter().rev()).map(symbol).collect()
        } else {
            start = lo - k as i64 + 1;
            let head: Vec<Symbol> = cycle[1..k].iter().rev().map(symbol).collect();
            middle.splice(0..0, head);
            cycle[k..].iter().rev().map(symbol).collect()
        };
        Some(Configuration::Spliced { left, start, middle, right })
    }

    fn closed_walk(&self, want: &[Option<Symbol>]) -> Option<Vec<Symbol>> {
        let n = self.states.len();
        let p = want.len();
        let ok = |s: usize, i: usize| want[i].is_none_or(|c| self.states[s][0] == c);
        for start in (0..n).filter(|&s| ok(s, 0)) {
            let mut frontier = vec![false; n];
            frontier[start] = true;
            let mut parents: Vec<Vec<Option<usize>>> = Vec::with_capacity(p);
            for i in 1..p {
                let mut parent = vec![None; n];
                for u in (0..n).filter(|&u| frontier[u]) {
                    for &v in &self.succ[u] {
                        if parent[v].is_none() && ok(v, i) {
                            parent[v] = Some(u);
                        }
                    }
                }
                frontier = parent.iter().map(Option::is_some).collect();
                parents.push(parent);
            }
            let Some(mut u) = (0..n).find(|&u| frontier[u] && self.succ[u].contains(&start)) else {
                continue;
            };
            let mut path = vec![0; p];
            for i in (1..p).rev() {
                path[i] = u;
                u = parents[i - 1][u].expect("reached states have parents");
            }
            path[0] = start;
            return Some(path.iter().map(|&s| self.states[s][0]).collect());
        }
        None
    }

    /// Every point of period dividing `n`, as one word of length `n` per
    /// closed walk.
    pub fn closed_walks(&self, n: usize) -> Vec<Vec<Symbol>> {
        fn extend(g: &ZSftGraph, start: usize, path: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<Symbol>>) {
            let last = *path.last().expect("non-empty path");
            if path.len() == n {
                if g.succ[last].contains(&start) {
                    out.push(path.iter().map(|&s| g.states[s][0]).collect());
                }
                return;
            }
            for &v in &g.succ[last] {
                path.push(v);
                extend(g, start, path, n, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        for start in 0..self.states.len() {
            extend(self, start, &mut vec![start], n, &mut out);
        }
        out
    }

    /// All words on `positions` that occur in some point, in lexicographic
    /// order of the symbols listed by position.
    pub fn cylinders(&self, positions: &[i64]) -> Vec<Vec<Symbol>> {
        fn grow(
            g: &ZSftGraph,
            positions: &[i64],
            k: usize,
            partial: &mut BTreeMap<i64, Symbol>,
            word: &mut Vec<Symbol>,
            out: &mut Vec<Vec<Symbol>>,
        ) {
            if word.len() == positions.len() {
                out.push(word.clone());
                return;
            }
            let at = positions[word.len()];
            for s in 0..k {
                partial.insert(at, s);
                if g.realizable(partial) {
                    word.push(s);
                    grow(g, positions, k, partial, word, out);
                    word.pop();
                }
                partial.remove(&at);
            }
        }
        let k = self.alphabet_size();
        let mut out = Vec::new();
        grow(self, positions, k, &mut BTreeMap::new(), &mut Vec::new(), &mut out);
        out
    }

    fn alphabet_size(&self) -> usize {
        self.states.iter().flatten().max().map_or(0, |&s| s + 1)
    }

    pub fn strongly_connected(&self) -> bool {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.states.len()).map(|_| g.add_node(())).collect();
        for (u, out) in self.succ.iter().enumerate() {
            for &v in out {
                g.add_edge(nodes[u], nodes[v], ());
            }
        }
        tarjan_scc(&g).len() == 1
    }

    /// Least N with A^N > 0, searching up to the Wielandt bound.
    pub fn mixing_gap(&self) -> Option<usize> {
        let n = self.states.len();
        let words = n.div_ceil(64);
        let a: Vec<Vec<u64>> = self
            .succ
            .iter()
            .map(|out| {
                let mut row = vec![0u64; words];
                for &v in out {
                    row[v / 64] |= 1 << (v % 64);
                }
                row
            })
            .collect();
        let full = |row: &[u64]| (0..n).all(|v| row[v / 64] >> (v % 64) & 1 == 1);
        let bound = (n - 1) * (n - 1) + 1;
        let mut power = a.clone();
        for k in 1..=bound {
            if power.iter().all(|r| full(r)) {
                return Some(k);
            }
            power = power
                .iter()
                .map(|row| {
                    let mut next = vec![0u64; words];
                    for u in (0..n).filter(|&u| row[u / 64] >> (u % 64) & 1 == 1) {
                        for (x, y) in next.iter_mut().zip(&a[u]) {
                            *x |= y;
                        }
                    }
                    next
                })
                .collect();
        }
        None
    }

    fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.states.len();
        let mut parent = vec![None; n];
        let mut queue = std::collections::VecDeque::from([from]);
        // paths of positive length, so `from == to` asks for a cycle
        while let Some(u) = queue.pop_front() {
            for &v in &self.succ[u] {
                if parent[v].is_none() {
                    parent[v] = Some(u);
                    if v == to {
                        let mut path = vec![to];
                        let mut w = u;
                        while w != from {
                            path.push(w);
                            w = parent[w].expect("visited");
                        }
                        path.push(from);
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

/// A path in the block graph between two states, by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPath {
    pub from: usize,
    pub to: usize,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZSftAnalysis {
    pub states: Vec<String>,
    pub matrix: Vec<Vec<u8>>,
    pub strongly_connected: bool,
    pub primitive: bool,
    pub mixing_gap: Option<usize>,
    /// One shortest path per ordered pair of states, when strongly connected.
    pub witness_paths: Vec<WitnessPath>,
}

/// Follows `step` from `first` until a state repeats. Returns the index
/// where the cycle begins and the states visited.
fn until_repeat(first: usize, step: impl Fn(usize) -> usize) -> (usize, Vec<usize>) {
    let mut seen = vec![first];
    loop {
        let next = step(*seen.last().expect("non-empty"));
        if let Some(k) = seen.iter().position(|&s| s == next) {
            return (k, seen);
        }
        seen.push(next);
    }
}

pub fn analyze_z_sft(s: &SubshiftOfFiniteType) -> Result<ZSftAnalysis, ShiftError> {
    let g = ZSftGraph::new(s)?;
    let strongly_connected = g.strongly_connected();
    let mixing_gap = if strongly_connected { g.mixing_gap() } else { None };
    let n = g.state_count();
    let witness_paths = if strongly_connected {
        (0..n)
            .flat_map(|from| (0..n).map(move |to| (from, to)))
            .map(|(from, to)| WitnessPath {
                from,
                to,
                path: g.shortest_path(from, to).expect("strongly connected"),
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(ZSftAnalysis {
        states: g.states.iter().map(|w| s.alphabet().format_word(w)).collect(),
        matrix: g.matrix(),
        strongly_connected,
        primitive: mixing_gap.is_some(),
        mixing_gap,
        witness_paths,
    })
}

/// All points of period dividing `n`.
pub fn enumerate_periodic(s: &SubshiftOfFiniteType, n: usize) -> Result<Vec<Configuration>, ShiftError> {
    let g = ZSftGraph::new(s)?;
    let points: BTreeSet<Configuration> = g
        .closed_walks(n)
        .iter()
        .map(|w| Configuration::periodic_word(w))
        .collect();
    Ok(points.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub scale: usize,
    pub period_bound: usize,
    pub cylinders: usize,
    /// Admissible words with no periodic point of period ≤ `period_bound`.
    pub gaps: Vec<String>,
    pub pass: bool,
}

/// Checks every admissible word on `0..n` against periodic points.
pub fn periodic_density_at_scale(
    s: &SubshiftOfFiniteType,
    n: usize,
    period_bound: usize,
) -> Result<DensityReport, ShiftError> {
    let g = ZSftGraph::new(s)?;
    let positions: Vec<i64> = (0..n as i64).collect();
    let words = g.cylinders(&positions);
    let gaps: Vec<String> = words
        .iter()
        .filter(|w| {
            let constraints = positions.iter().copied().zip(w.iter().copied()).collect();
            g.realize_periodic(&constraints, period_bound).is_none()
        })
        .map(|w| s.alphabet().format_word(w))
        .collect();
    Ok(DensityReport {
        scale: n,
        period_bound,
        cylinders: words.len(),
        pass: gaps.is_empty(),
        gaps,
    })
}

/// Every admissible word on `0..n` has two distinct admissible extensions
/// by at most 2·(states + 1) symbols on either side.
pub fn is_perfect_at_scale(s: &SubshiftOfFiniteType, n: usize) -> Result<bool, ShiftError> {
    let g = ZSftGraph::new(s)?;
    let reach = 2 * (g.state_count() as i64 + 1);
    let positions: Vec<i64> = (0..n as i64).collect();
    let k = s.alphabet().size();
    Ok(g.cylinders(&positions).iter().all(|w| {
        let base: BTreeMap<i64, Symbol> = positions.iter().copied().zip(w.iter().copied()).collect();
        (1..=reach).flat_map(|d| [n as i64 - 1 + d, -d]).any(|at| {
            (0..k)
                .filter(|&sym| {
                    let mut c = base.clone();
                    c.insert(at, sym);
                    g.realizable(&c)
                })
                .count()
                >= 2
        })
    }))
}
