use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::alphabet::{Alphabet, Symbol};
use super::configuration::{Configuration, Pattern, PeriodicConfiguration};
use super::sft::SubshiftOfFiniteType;
use super::ShiftError;
use crate::group_actions::{FiniteIndexSubgroup, GroupDescription, GroupElement, RawElement, SubgroupKind};

/// A pattern in JSON: a list of symbol names, or a word when every symbol
/// is a single character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternDoc {
    Symbols(Vec<String>),
    Word(String),
}

/// `{"group", "alphabet", "window", "allowed" | "forbidden"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftDoc {
    pub group: GroupDescription,
    pub alphabet: Vec<String>,
    pub window: Vec<RawElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allowed: Option<Vec<PatternDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<PatternDoc>>,
}

impl SftDoc {
    pub fn build(&self) -> Result<SubshiftOfFiniteType, ShiftError> {
        let group = Arc::new(self.group.clone());
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let window = self
            .window
            .iter()
            .map(|g| group.parse_element(g))
            .collect::<Result<Vec<_>, _>>()?;
        let parse = |patterns: &[PatternDoc]| -> Result<Vec<Vec<Symbol>>, ShiftError> {
            patterns
                .iter()
                .map(|p| match p {
                    PatternDoc::Symbols(names) => names.iter().map(|s| alphabet.symbol(s)).collect(),
                    PatternDoc::Word(w) => alphabet.parse_word(w),
                })
                .collect()
        };
        match (&self.allowed, &self.forbidden) {
            (Some(a), None) => SubshiftOfFiniteType::from_allowed(&group, alphabet.clone(), window, parse(a)?),
            (None, Some(f)) => SubshiftOfFiniteType::from_forbidden(&group, alphabet.clone(), window, parse(f)?),
            _ => Err(ShiftError::PatternKeys),
        }
    }
}

/// A configuration in JSON. Z-periodic points are written as one period,
/// `{"word": "01"}`, starting at position 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ConfigurationDoc {
    Word(String),
    Periodic {
        subgroup: SubgroupKind,
        values: Vec<(RawElement, String)>,
    },
    Filled {
        pattern: Vec<(RawElement, String)>,
        default: String,
    },
    Spliced {
        left: String,
        start: i64,
        middle: String,
        right: String,
    },
}

impl ConfigurationDoc {
    pub fn new(x: &Configuration, alphabet: &Alphabet) -> Self {
        if let Some(word) = x.z_word() {
            return ConfigurationDoc::Word(alphabet.format_word(&word));
        }
        let entry = |g: &GroupElement, s: Symbol| (RawElement::from(g), alphabet.name(s).to_string());
        match x {
            Configuration::Periodic(p) => ConfigurationDoc::Periodic {
                subgroup: p.subgroup().kind().clone(),
                values: p
                    .representatives()
                    .iter()
                    .zip(p.values())
                    .map(|(g, &s)| entry(g, s))
                    .collect(),
            },
            Configuration::Filled { pattern, default } => ConfigurationDoc::Filled {
                pattern: pattern.iter().map(|(g, &s)| entry(g, s)).collect(),
                default: alphabet.name(*default).to_string(),
            },
            Configuration::Spliced { left, start, middle, right } => ConfigurationDoc::Spliced {
                left: alphabet.format_word(left),
                start: *start,
                middle: alphabet.format_word(middle),
                right: alphabet.format_word(right),
            },
        }
    }

    pub fn build(&self, group: &Arc<GroupDescription>, alphabet: &Alphabet) -> Result<Configuration, ShiftError> {
        let entries = |list: &[(RawElement, String)]| -> Result<Vec<(GroupElement, Symbol)>, ShiftError> {
            list.iter()
                .map(|(g, s)| Ok((group.parse_element(g)?, alphabet.symbol(s)?)))
                .collect()
        };
        match self {
            ConfigurationDoc::Word(w) => {
                if !matches!(**group, GroupDescription::Integers) {
                    return Err(ShiftError::NotIntegers(group.to_string()));
                }
                let word = alphabet.parse_word(w)?;
                if word.is_empty() {
                    return Err(ShiftError::BadConfiguration("empty period".into()));
                }
                Ok(Configuration::periodic_word(&word))
            }
            ConfigurationDoc::Periodic { subgroup, values } => {
                let h = FiniteIndexSubgroup::new(group, subgroup.clone())?;
                let mut by_coset = HashMap::new();
                for (g, s) in entries(values)? {
                    if by_coset.insert(h.left_coset_key(&g), s).is_some_and(|t| t != s) {
                        return Err(ShiftError::BadConfiguration(format!("conflicting values on the coset of {g}")));
                    }
                }
                if by_coset.len() != h.index() {
                    return Err(ShiftError::BadConfiguration(format!(
                        "{} coset values given for a subgroup of index {}",
                        by_coset.len(),
                        h.index()
                    )));
                }
                let key_of = h.clone();
                Ok(Configuration::Periodic(PeriodicConfiguration::new(h, |t| {
                    by_coset[&key_of.left_coset_key(t)]
                })?))
            }
            ConfigurationDoc::Filled { pattern, default } => Ok(Configuration::Filled {
                pattern: entries(pattern)?.into_iter().collect::<Pattern>(),
                default: alphabet.symbol(default)?,
            }),
            ConfigurationDoc::Spliced { left, start, middle, right } => {
                if !matches!(**group, GroupDescription::Integers) {
                    return Err(ShiftError::NotIntegers(group.to_string()));
                }
                let [left, middle, right] = [left, middle, right].map(|w| alphabet.parse_word(w));
                let (left, middle, right) = (left?, middle?, right?);
                if left.is_empty() || right.is_empty() {
                    return Err(ShiftError::BadConfiguration("empty period".into()));
                }
                Ok(Configuration::Spliced {
                    left,
                    start: *start,
                    middle,
                    right,
                })
            }
        }
    }
}
