use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

/// An element of a [`GroupDescription`](super::GroupDescription) in canonical form.
///
/// Free-group words are stored reduced, one letter per entry: `k + 1` is the
/// `k`-th generator and `-(k + 1)` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Index(usize),
    Int(i64),
    Vector(Vec<i64>),
    Word(Vec<i32>),
}

impl GroupElement {
    /// Letters `a`, `b`, ... for generators, upper case for inverses.
    pub fn word_from_str(s: &str) -> Option<Self> {
        let mut letters: Vec<i32> = Vec::with_capacity(s.len());
        for c in s.chars() {
            let letter = match c {
                'a'..='z' => c as i32 - 'a' as i32 + 1,
                'A'..='Z' => -(c as i32 - 'A' as i32 + 1),
                _ => return None,
            };
            if letters.last() == Some(&-letter) {
                letters.pop();
            } else {
                letters.push(letter);
            }
        }
        Some(GroupElement::Word(letters))
    }
}

fn letter_char(l: i32) -> char {
    let k = l.unsigned_abs() - 1;
    let base = if l > 0 { b'a' } else { b'A' };
    (base + k as u8) as char
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Index(i) => write!(f, "#{i}"),
            GroupElement::Int(n) => write!(f, "{n}"),
            GroupElement::Vector(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            GroupElement::Word(w) if w.is_empty() => write!(f, "ε"),
            GroupElement::Word(w) => w.iter().try_for_each(|&l| write!(f, "{}", letter_char(l))),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupElement::Index(i) => s.serialize_u64(*i as u64),
            GroupElement::Int(n) => s.serialize_i64(*n),
            GroupElement::Vector(v) => v.serialize(s),
            GroupElement::Word(w) => s.serialize_str(&w.iter().map(|&l| letter_char(l)).collect::<String>()),
        }
    }
}

/// An element as it appears in JSON, before it is checked against a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawElement {
    Number(i64),
    Tuple(Vec<i64>),
    Word(String),
}

impl From<&GroupElement> for RawElement {
    fn from(g: &GroupElement) -> Self {
        match g {
            GroupElement::Index(i) => RawElement::Number(*i as i64),
            GroupElement::Int(n) => RawElement::Number(*n),
            GroupElement::Vector(v) => RawElement::Tuple(v.clone()),
            GroupElement::Word(w) => RawElement::Word(w.iter().map(|&l| letter_char(l)).collect()),
        }
    }
}

impl fmt::Display for RawElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawElement::Number(n) => write!(f, "{n}"),
            RawElement::Tuple(v) => write!(f, "{v:?}"),
            RawElement::Word(w) => write!(f, "{w:?}"),
        }
    }
}
