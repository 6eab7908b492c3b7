#![allow(dead_code)]

use std::sync::Arc;

use unichaos::chaos_verdicts::{DeskSystem, FiniteSystem, ScaleParameters, ShiftSystem};
use unichaos::group_actions::{ActionTable, FiniteGroup, GroupDescription, GroupElement, Perm};
use unichaos::relation_algebra::{Carrier, UniformBase};
use unichaos::shift_spaces::{Alphabet, SubshiftOfFiniteType};

pub fn z() -> Arc<GroupDescription> {
    Arc::new(GroupDescription::Integers)
}

pub fn params() -> ScaleParameters {
    ScaleParameters::default()
}

fn int_window(m: i64) -> Vec<GroupElement> {
    (0..m).map(GroupElement::Int).collect()
}

pub fn full_shift_z() -> SubshiftOfFiniteType {
    SubshiftOfFiniteType::full_shift(&z(), Alphabet::digits(2))
}

pub fn golden_mean() -> SubshiftOfFiniteType {
    SubshiftOfFiniteType::from_forbidden(&z(), Alphabet::digits(2), int_window(2), vec![vec![1, 1]]).unwrap()
}

/// Only the all-0 configuration.
pub fn singleton() -> SubshiftOfFiniteType {
    SubshiftOfFiniteType::from_allowed(&z(), Alphabet::digits(2), int_window(2), vec![vec![0, 0]]).unwrap()
}

/// The two points ...0101... and ...1010...
pub fn flip() -> SubshiftOfFiniteType {
    SubshiftOfFiniteType::from_allowed(&z(), Alphabet::digits(2), int_window(2), vec![vec![0, 1], vec![1, 0]]).unwrap()
}

pub fn full_shift_over(group: GroupDescription) -> SubshiftOfFiniteType {
    SubshiftOfFiniteType::full_shift(&Arc::new(group), Alphabet::digits(2))
}

pub fn shift(s: SubshiftOfFiniteType, p: ScaleParameters) -> DeskSystem {
    DeskSystem::Shift(ShiftSystem::new(s, p).unwrap())
}

/// Z/n acting on n points by rotation, with the discrete base.
pub fn discrete_rotation(n: usize) -> DeskSystem {
    let carrier = Carrier::numbered(n).unwrap();
    let group = Arc::new(GroupDescription::FiniteTable(FiniteGroup::cyclic(n)));
    let rows = (0..n)
        .map(|k| (0..n).map(|i| (i + k) % n).collect::<Perm>())
        .collect();
    let action = ActionTable::from_table(&group, &carrier, rows).unwrap();
    DeskSystem::Finite(FiniteSystem::new(UniformBase::discrete(&carrier), action, params()).unwrap())
}

/// Z acting trivially on n points, with the discrete base.
pub fn discrete_identity_z(n: usize) -> DeskSystem {
    let carrier = Carrier::numbered(n).unwrap();
    let action = ActionTable::from_generators(&z(), &carrier, vec![(0..n).collect()], params().ball).unwrap();
    DeskSystem::Finite(FiniteSystem::new(UniformBase::discrete(&carrier), action, params()).unwrap())
}

pub mod random {
    use std::sync::Arc;

    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use unichaos::relation_algebra::{Carrier, DistanceTable, Relation};
    use unichaos::shift_spaces::{Alphabet, SubshiftOfFiniteType};

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn relation(rng: &mut ChaCha8Rng, carrier: &Arc<Carrier>) -> Relation {
        let n = carrier.size();
        let density: f64 = rng.gen_range(0.0..0.6);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        Relation::new(carrier, pairs).unwrap()
    }

    /// Shortest-path metric of a complete graph with random positive weights.
    pub fn metric(rng: &mut ChaCha8Rng, n: usize) -> DistanceTable {
        let mut d = vec![vec![0i64; n]; n];
        for x in 0..n {
            for y in x + 1..n {
                let w = rng.gen_range(1..=9);
                d[x][y] = w;
                d[y][x] = w;
            }
        }
        for k in 0..n {
            for x in 0..n {
                for y in 0..n {
                    d[x][y] = d[x][y].min(d[x][k] + d[k][y]);
                }
            }
        }
        DistanceTable::from_integers(&Carrier::numbered(n).unwrap(), d).unwrap()
    }

    /// A Z-subshift with alphabet size 2..=3 and window 1..=3 given by a
    /// random non-empty set of allowed blocks.
    pub fn z_sft(rng: &mut ChaCha8Rng) -> SubshiftOfFiniteType {
        let k = rng.gen_range(2..=3usize);
        let m = rng.gen_range(1..=3usize);
        let mut blocks: Vec<Vec<usize>> = (0..k.pow(m as u32))
            .map(|mut c| {
                let mut w = vec![0; m];
                for s in w.iter_mut().rev() {
                    *s = c % k;
                    c /= k;
                }
                w
            })
            .collect();
        blocks.shuffle(rng);
        let keep = rng.gen_range(1..=blocks.len());
        blocks.truncate(keep);
        let window = (0..m as i64).map(unichaos::group_actions::GroupElement::Int).collect();
        SubshiftOfFiniteType::from_allowed(&super::z(), Alphabet::digits(k), window, blocks).unwrap()
    }
}

/// Brute-force answers computed without the library's graph machinery.
pub mod oracle {
    use std::collections::BTreeSet;

    use unichaos::group_actions::GroupElement;
    use unichaos::shift_spaces::{Configuration, SubshiftOfFiniteType};

    pub type Pairs = BTreeSet<(usize, usize)>;

    pub fn compose(a: &Pairs, b: &Pairs) -> Pairs {
        let mut out = Pairs::new();
        for &(x, z) in a {
            for &(z2, y) in b {
                if z == z2 {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    pub fn inverse(a: &Pairs) -> Pairs {
        a.iter().map(|&(x, y)| (y, x)).collect()
    }

    /// The equivalence relation generated by `a` on n points.
    pub fn equivalence_closure(n: usize, a: &Pairs) -> Pairs {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(x, y) in a {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        let mut out = Pairs::new();
        for x in 0..n {
            for y in 0..n {
                if find(&mut parent, x) == find(&mut parent, y) {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    pub fn words(k: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..k).map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Window length and allowed blocks as plain vectors.
    fn blocks(s: &SubshiftOfFiniteType) -> (usize, BTreeSet<Vec<usize>>) {
        (s.window().len(), s.allowed().iter().cloned().collect())
    }

    /// Words w of length n whose cyclic windows are all allowed: the points
    /// of period dividing n.
    pub fn cyclic_words(s: &SubshiftOfFiniteType, n: usize) -> usize {
        let (m, allowed) = blocks(s);
        words(s.alphabet().size(), n)
            .into_iter()
            .filter(|w| cyclic_admissible(m, &allowed, w))
            .count()
    }

    fn cyclic_admissible(m: usize, allowed: &BTreeSet<Vec<usize>>, w: &[usize]) -> bool {
        let n = w.len();
        (0..n).all(|i| allowed.contains(&(0..m).map(|j| w[(i + j) % n]).collect::<Vec<_>>()))
    }

    /// Some bi-infinite point meets the constraints: an admissible word
    /// through the constrained span with more than k^(m−1) free symbols on
    /// each side, so a block repeats on both sides and can be looped.
    pub fn extendable(s: &SubshiftOfFiniteType, constraints: &[(i64, usize)]) -> bool {
        let (m, allowed) = blocks(s);
        let k = s.alphabet().size();
        let pad = k.pow(m as u32 - 1) as i64 + 1;
        let lo = constraints.iter().map(|c| c.0).min().unwrap_or(0) - pad;
        let hi = constraints.iter().map(|c| c.0).max().unwrap_or(0) + pad;
        let fits = |at: i64, v: usize| constraints.iter().all(|&(i, c)| i != at || c == v);
        // suffixes of length m−1 reachable so far
        let mut live: BTreeSet<Vec<usize>> = words(k, m - 1)
            .into_iter()
            .filter(|w| w.iter().enumerate().all(|(j, &v)| fits(lo + j as i64, v)))
            .collect();
        for at in lo + m as i64 - 1..=hi {
            live = live
                .iter()
                .flat_map(|w| (0..k).map(move |v| (w, v)))
                .filter(|&(w, v)| {
                    let mut b = w.clone();
                    b.push(v);
                    fits(at, v) && allowed.contains(&b)
                })
                .map(|(w, v)| {
                    let mut next = w[1..].to_vec();
                    next.push(v);
                    next
                })
                .collect();
        }
        !live.is_empty()
    }

    /// Every window of x starting in [lo, hi] is allowed.
    pub fn windows_allowed(s: &SubshiftOfFiniteType, x: &Configuration, lo: i64, hi: i64) -> bool {
        let (m, allowed) = blocks(s);
        (lo..=hi).all(|i| allowed.contains(&(0..m as i64).map(|j| x.eval(&GroupElement::Int(i + j))).collect::<Vec<_>>()))
    }

    /// Some point of period at most `max_period` takes value v at every
    /// constrained position i.
    pub fn periodic_fit(s: &SubshiftOfFiniteType, constraints: &[(i64, usize)], max_period: usize) -> bool {
        let (m, allowed) = blocks(s);
        (1..=max_period).any(|n| {
            words(s.alphabet().size(), n).into_iter().any(|w| {
                constraints.iter().all(|&(i, v)| w[i.rem_euclid(n as i64) as usize] == v)
                    && cyclic_admissible(m, &allowed, &w)
            })
        })
    }

    /// trace(Aⁿ) for the untrimmed block graph on all (m-1)-words.
    pub fn trace_of_power(s: &SubshiftOfFiniteType, n: usize) -> u64 {
        let (m, allowed) = blocks(s);
        let states = words(s.alphabet().size(), m - 1);
        let size = states.len();
        let mut a = vec![vec![0u64; size]; size];
        for (i, u) in states.iter().enumerate() {
            for (j, v) in states.iter().enumerate() {
                if u[1..] == v[..m - 2] {
                    let mut block = u.clone();
                    block.push(v[m - 2]);
                    if allowed.contains(&block) {
                        a[i][j] = 1;
                    }
                }
            }
        }
        let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..size)
                .map(|i| (0..size).map(|j| (0..size).map(|k| x[i][k] * y[k][j]).sum()).collect())
                .collect()
        };
        let mut p = a.clone();
        for _ in 1..n {
            p = mul(&p, &a);
        }
        (0..size).map(|i| p[i][i]).sum()
    }

    /// Successor sets on (m-1)-words, trimmed to words with an allowed
    /// predecessor and successor forever, by naive fixed-point iteration.
    fn essential(s: &SubshiftOfFiniteType) -> (Vec<Vec<usize>>, Vec<BTreeSet<usize>>) {
        let (m, allowed) = blocks(s);
        let states = words(s.alphabet().size(), m - 1);
        let step = |u: &Vec<usize>, v: &Vec<usize>| {
            u[1..] == v[..m - 2] && {
                let mut block = u.clone();
                block.push(v[m - 2]);
                allowed.contains(&block)
            }
        };
        let mut alive: BTreeSet<usize> = (0..states.len()).collect();
        loop {
            let keep: BTreeSet<usize> = alive
                .iter()
                .copied()
                .filter(|&u| {
                    alive.iter().any(|&v| step(&states[u], &states[v]))
                        && alive.iter().any(|&v| step(&states[v], &states[u]))
                })
                .collect();
            if keep == alive {
                break;
            }
            alive = keep;
        }
        let live: Vec<usize> = alive.into_iter().collect();
        let succ = live
            .iter()
            .map(|&u| {
                live.iter()
                    .enumerate()
                    .filter(|(_, &v)| step(&states[u], &states[v]))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        (live.iter().map(|&u| states[u].clone()).collect(), succ)
    }

    /// Every admissible cylinder reaches every other one.
    pub fn irreducible(s: &SubshiftOfFiniteType) -> bool {
        let (states, succ) = essential(s);
        if states.is_empty() {
            return false;
        }
        (0..states.len()).all(|u| {
            let mut seen = BTreeSet::from([u]);
            let mut frontier = vec![u];
            while let Some(x) = frontier.pop() {
                for &y in &succ[x] {
                    if seen.insert(y) {
                        frontier.push(y);
                    }
                }
            }
            // reaching u again needs a walk of positive length
            seen.len() == states.len() && (0..states.len()).any(|x| succ[x].contains(&u))
        })
    }

    /// Least N such that every cylinder reaches every other in exactly N
    /// steps, if any N up to the Wielandt bound works.
    pub fn mixing_gap(s: &SubshiftOfFiniteType) -> Option<usize> {
        let (states, succ) = essential(s);
        let n = states.len();
        if n == 0 {
            return None;
        }
        let bound = (n - 1) * (n - 1) + 1;
        let mut reach: Vec<BTreeSet<usize>> = (0..n).map(|u| BTreeSet::from([u])).collect();
        for steps in 1..=bound {
            reach = reach
                .iter()
                .map(|r| r.iter().flat_map(|&x| succ[x].iter().copied()).collect())
                .collect();
            if reach.iter().all(|r| r.len() == n) {
                return Some(steps);
            }
        }
        None
    }

    pub fn state_count(s: &SubshiftOfFiniteType) -> usize {
        essential(s).0.len()
    }
}
