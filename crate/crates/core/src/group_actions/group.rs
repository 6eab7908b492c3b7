use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::{GroupElement, RawElement};
use super::GroupError;

/// A group given by its Cayley table, with identity and inverses derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |m: &str| Err(GroupError::NotAGroup(m.to_string()));
        if n == 0 {
            return bad("empty table");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return bad("table must be n x n with entries in 0..n");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverses.push(y),
                None => return Err(GroupError::NotAGroup(format!("element {x} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    /// Z/n as a table.
    pub fn cyclic(n: usize) -> Self {
        Self::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
            .expect("cyclic group table")
    }

    /// S_3 with elements indexed by lexicographic permutations of {0,1,2}.
    pub fn symmetric3() -> Self {
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                        perms.iter().position(|r| *r == pq).expect("closed")
                    })
                    .collect()
            })
            .collect();
        Self::new(table).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// The groups the artifact can explore.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupDoc", into = "GroupDoc")]
pub enum GroupDescription {
    FiniteTable(FiniteGroup),
    Integers,
    Lattice { dim: usize },
    Free { rank: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum GroupDoc {
    FiniteTable { table: Vec<Vec<usize>> },
    Integers {},
    Lattice { dim: usize },
    Free { rank: usize },
}

impl TryFrom<GroupDoc> for GroupDescription {
    type Error = GroupError;

    fn try_from(doc: GroupDoc) -> Result<Self, Self::Error> {
        match doc {
            GroupDoc::FiniteTable { table } => Ok(Self::FiniteTable(FiniteGroup::new(table)?)),
            GroupDoc::Integers {} => Ok(Self::Integers),
            GroupDoc::Lattice { dim } => Self::lattice(dim),
            GroupDoc::Free { rank } => Self::free(rank),
        }
    }
}

impl From<GroupDescription> for GroupDoc {
    fn from(g: GroupDescription) -> Self {
        match g {
            GroupDescription::FiniteTable(t) => GroupDoc::FiniteTable { table: t.table },
            GroupDescription::Integers => GroupDoc::Integers {},
            GroupDescription::Lattice { dim } => GroupDoc::Lattice { dim },
            GroupDescription::Free { rank } => GroupDoc::Free { rank },
        }
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescription::FiniteTable(t) => write!(f, "finite group of order {}", t.order()),
            GroupDescription::Integers => write!(f, "Z"),
            GroupDescription::Lattice { dim } => write!(f, "Z^{dim}"),
            GroupDescription::Free { rank } => write!(f, "F_{rank}"),
        }
    }
}

impl GroupDescription {
    pub fn lattice(dim: usize) -> Result<Self, GroupError> {
        if dim == 0 {
            Err(GroupError::BadDimension)
        } else {
            Ok(Self::Lattice { dim })
        }
    }

    pub fn free(rank: usize) -> Result<Self, GroupError> {
        if (1..=26).contains(&rank) {
            Ok(Self::Free { rank })
        } else {
            Err(GroupError::BadRank(rank))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::FiniteTable(_))
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Self::FiniteTable(t) => Some(t.order()),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Self::FiniteTable(t) => GroupElement::Index(t.identity),
            Self::Integers => GroupElement::Int(0),
            Self::Lattice { dim } => GroupElement::Vector(vec![0; *dim]),
            Self::Free { .. } => GroupElement::Word(Vec::new()),
        }
    }

    fn foreign(&self, g: &GroupElement) -> GroupError {
        GroupError::ForeignElement {
            element: g.to_string(),
            group: self.to_string(),
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        let ok = match (self, g) {
            (Self::FiniteTable(t), GroupElement::Index(i)) => *i < t.order(),
            (Self::Integers, GroupElement::Int(_)) => true,
            (Self::Lattice { dim }, GroupElement::Vector(v)) => v.len() == *dim,
            (Self::Free { rank }, GroupElement::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.foreign(g))
        }
    }

    /// Interprets a JSON element for this group.
    pub fn parse_element(&self, raw: &RawElement) -> Result<GroupElement, GroupError> {
        let g = match (self, raw) {
            (Self::FiniteTable(_), RawElement::Number(n)) if *n >= 0 => GroupElement::Index(*n as usize),
            (Self::Integers, RawElement::Number(n)) => GroupElement::Int(*n),
            (Self::Integers, RawElement::Tuple(v)) if v.len() == 1 => GroupElement::Int(v[0]),
            (Self::Lattice { .. }, RawElement::Tuple(v)) => GroupElement::Vector(v.clone()),
            (Self::Free { .. }, RawElement::Word(s)) => {
                GroupElement::word_from_str(s).ok_or_else(|| GroupError::ForeignElement {
                    element: s.clone(),
                    group: self.to_string(),
                })?
            }
            _ => {
                return Err(GroupError::ForeignElement {
                    element: raw.to_string(),
                    group: self.to_string(),
                })
            }
        };
        self.check(&g)?;
        Ok(g)
    }

    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (Self::FiniteTable(t), GroupElement::Index(x), GroupElement::Index(y)) => {
                GroupElement::Index(t.mul(*x, *y))
            }
            (Self::Integers, GroupElement::Int(x), GroupElement::Int(y)) => GroupElement::Int(x + y),
            (Self::Lattice { .. }, GroupElement::Vector(x), GroupElement::Vector(y)) => {
                GroupElement::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Self::Free { .. }, GroupElement::Word(x), GroupElement::Word(y)) => {
                let mut out = x.clone();
                for &l in y {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElement::Word(out)
            }
            _ => panic!("elements {a} and {b} do not both belong to {self}"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (Self::FiniteTable(t), GroupElement::Index(x)) => GroupElement::Index(t.inv(*x)),
            (Self::Integers, GroupElement::Int(x)) => GroupElement::Int(-x),
            (Self::Lattice { .. }, GroupElement::Vector(x)) => {
                GroupElement::Vector(x.iter().map(|c| -c).collect())
            }
            (Self::Free { .. }, GroupElement::Word(w)) => {
                GroupElement::Word(w.iter().rev().map(|l| -l).collect())
            }
            _ => panic!("element {a} does not belong to {self}"),
        }
    }

    /// Word length with respect to the standard generating set.
    pub fn length(&self, a: &GroupElement) -> usize {
        match a {
            GroupElement::Index(i) => match self {
                Self::FiniteTable(t) if *i == t.identity => 0,
                _ => 1,
            },
            GroupElement::Int(n) => n.unsigned_abs() as usize,
            GroupElement::Vector(v) => v.iter().map(|c| c.unsigned_abs() as usize).sum(),
            GroupElement::Word(w) => w.len(),
        }
    }

    /// Standard generators, each followed by its inverse. A finite table is
    /// generated by all of its non-identity elements.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            Self::FiniteTable(t) => (0..t.order())
                .filter(|&i| i != t.identity)
                .map(GroupElement::Index)
                .collect(),
            Self::Integers => vec![GroupElement::Int(1), GroupElement::Int(-1)],
            Self::Lattice { dim } => (0..*dim)
                .flat_map(|k| {
                    let mut e = vec![0; *dim];
                    e[k] = 1;
                    let mut minus = vec![0; *dim];
                    minus[k] = -1;
                    [GroupElement::Vector(e), GroupElement::Vector(minus)]
                })
                .collect(),
            Self::Free { rank } => (1..=*rank as i32)
                .flat_map(|k| [GroupElement::Word(vec![k]), GroupElement::Word(vec![-k])])
                .collect(),
        }
    }

    /// Number of free generators (before adding inverses).
    pub fn rank(&self) -> usize {
        match self {
            Self::FiniteTable(t) => t.order().saturating_sub(1),
            Self::Integers => 1,
            Self::Lattice { dim } => *dim,
            Self::Free { rank } => *rank,
        }
    }

    /// All elements of word length at most `radius`, in breadth-first order
    /// over the generator list. Finite tables return every element.
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        let radius = if self.is_finite() { usize::MAX } else { radius };
        self.breadth_first(|seen, depth| depth > radius && !seen.is_empty(), usize::MAX)
    }

    /// The first `n` elements of the breadth-first order (all of them if the
    /// group is smaller).
    pub fn first_elements(&self, n: usize) -> Vec<GroupElement> {
        self.breadth_first(|_, _| false, n)
    }

    fn breadth_first(
        &self,
        stop_at_depth: impl Fn(&[GroupElement], usize) -> bool,
        limit: usize,
    ) -> Vec<GroupElement> {
        let gens = self.generators();
        let e = self.identity();
        let mut out = Vec::new();
        if limit == 0 {
            return out;
        }
        let mut seen: HashSet<GroupElement> = HashSet::from([e.clone()]);
        let mut queue = VecDeque::from([(e, 0usize)]);
        while let Some((g, depth)) = queue.pop_front() {
            if stop_at_depth(&out, depth) {
                break;
            }
            out.push(g.clone());
            if out.len() >= limit {
                break;
            }
            for s in &gens {
                let next = self.op(&g, s);
                if seen.insert(next.clone()) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ball() {
        let mut ball: Vec<i64> = GroupDescription::Integers
            .ball(2)
            .into_iter()
            .map(|g| match g {
                GroupElement::Int(n) => n,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(ball, vec![0, 1, -1, 2, -2]);
        ball.sort();
        assert_eq!(ball, vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn free_group_balls() {
        let f2 = GroupDescription::free(2).unwrap();
        let names: Vec<String> = f2.ball(1).iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["ε", "a", "A", "b", "B"]);
        // 1 + 4 + 4*3 reduced words
        assert_eq!(f2.ball(2).len(), 17);
        assert_eq!(f2.ball(3).len(), 1 + 4 + 12 + 36);
    }

    #[test]
    fn lattice_ball_size() {
        let z2 = GroupDescription::lattice(2).unwrap();
        // |{v : |v|_1 <= r}| = 2r^2 + 2r + 1
        assert_eq!(z2.ball(3).len(), 25);
    }

    #[test]
    fn finite_ball_ignores_radius() {
        let s3 = GroupDescription::FiniteTable(FiniteGroup::symmetric3());
        assert_eq!(s3.ball(0).len(), 6);
        assert_eq!(s3.ball(5).len(), 6);
    }

    #[test]
    fn first_elements_are_centered_intervals() {
        let z = GroupDescription::Integers;
        let firsts: Vec<String> = z.first_elements(4).iter().map(|g| g.to_string()).collect();
        assert_eq!(firsts, ["0", "1", "-1", "2"]);
        assert!(z.first_elements(0).is_empty());
    }

    #[test]
    fn table_validation() {
        assert!(matches!(FiniteGroup::new(vec![vec![0, 0], vec![0, 1]]), Err(GroupError::NotAGroup(_))));
        assert!(matches!(FiniteGroup::new(vec![]), Err(GroupError::NotAGroup(_))));
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.inv(1), 2);
    }

    #[test]
    fn free_word_arithmetic() {
        let f2 = GroupDescription::free(2).unwrap();
        let w = GroupElement::word_from_str("abAB").unwrap();
        let inv = f2.inverse(&w);
        assert_eq!(inv.to_string(), "baBA");
        assert_eq!(f2.op(&w, &inv), f2.identity());
        assert_eq!(f2.length(&w), 4);
    }

    #[test]
    fn json_round_trip() {
        let g: GroupDescription = serde_json::from_str(r#"{"kind":"lattice","dim":2}"#).unwrap();
        assert_eq!(g, GroupDescription::Lattice { dim: 2 });
        let t: GroupDescription =
            serde_json::from_str(r#"{"kind":"finite-table","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"kind":"finite-table","table":[[0,1],[1,0]]}"#);
        assert!(serde_json::from_str::<GroupDescription>(r#"{"kind":"free","rank":0}"#).is_err());
        assert!(serde_json::from_str::<GroupDescription>(r#"{"kind":"integers","extra":1}"#).is_err());
    }
}
