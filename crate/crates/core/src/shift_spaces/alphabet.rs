use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::ShiftError;

/// Index of a letter in its [`Alphabet`].
pub type Symbol = usize;

/// A finite ordered set of named symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, ShiftError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(ShiftError::EmptyAlphabet);
        }
        let mut seen = HashSet::new();
        if let Some(dup) = symbols.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(ShiftError::DuplicateSymbol(dup.clone()));
        }
        Ok(Self { symbols })
    }

    /// `{"0", "1", ..., "k-1"}`.
    pub fn digits(k: usize) -> Self {
        Self::new((0..k).map(|i| i.to_string())).expect("at least one digit")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s]
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol, ShiftError> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| ShiftError::UnknownSymbol(name.to_string()))
    }

    /// Reads a word either as comma-separated names or, when every name is a
    /// single character, character by character.
    pub fn parse_word(&self, word: &str) -> Result<Vec<Symbol>, ShiftError> {
        if word.contains(',') || self.symbols.iter().any(|s| s.chars().count() != 1) {
            word.split(',').map(|s| self.symbol(s.trim())).collect()
        } else {
            word.chars().map(|c| self.symbol(&c.to_string())).collect()
        }
    }

    pub fn format_word(&self, word: &[Symbol]) -> String {
        if self.symbols.iter().all(|s| s.chars().count() == 1) {
            word.iter().map(|&s| self.name(s)).collect()
        } else {
            word.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(",")
        }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = ShiftError;

    fn try_from(symbols: Vec<String>) -> Result<Self, Self::Error> {
        Self::new(symbols)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}
