use std::collections::{BTreeSet, VecDeque};

use super::GroupError;

/// A permutation of `0..degree`, stored as its image list.
pub type Perm = Vec<usize>;

pub(crate) fn identity(degree: usize) -> Perm {
    (0..degree).collect()
}

/// (p * q)(i) = p(q(i)): apply `q` first.
pub(crate) fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub(crate) fn invert(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub(crate) fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

/// Size of the group generated by `gens`, refusing to go past `cap`.
pub(crate) fn generated_order(gens: &[Perm], degree: usize, cap: usize) -> Result<usize, GroupError> {
    let start = identity(degree);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let next = compose(&p, g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::QuotientTooLarge(cap));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        let transposition = vec![1, 0, 2];
        let cycle = vec![1, 2, 0];
        assert_eq!(generated_order(&[transposition.clone()], 3, 100).unwrap(), 2);
        assert_eq!(generated_order(&[transposition, cycle], 3, 100).unwrap(), 6);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = vec![2, 0, 3, 1];
        assert_eq!(compose(&p, &invert(&p)), identity(4));
        assert!(is_permutation(&p));
        assert!(!is_permutation(&[0, 0]));
    }
}
