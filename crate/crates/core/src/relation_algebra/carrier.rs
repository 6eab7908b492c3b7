use std::collections::HashMap;
use std::sync::Arc;

use super::RelationError;

/// An ordered finite set of opaque point identifiers.
#[derive(Debug, Clone)]
pub struct Carrier {
    points: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<I, S>(points: I) -> Result<Arc<Self>, RelationError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(RelationError::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(RelationError::DuplicatePoint(p.clone()));
            }
        }
        Ok(Arc::new(Self { points, index }))
    }

    /// Carrier with points named `0`, `1`, ... `n-1`.
    pub fn numbered(n: usize) -> Result<Arc<Self>, RelationError> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn position(&self, name: &str) -> Result<usize, RelationError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| RelationError::UnknownPoint(name.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<(), RelationError> {
        if i < self.size() {
            Ok(())
        } else {
            Err(RelationError::IndexOutOfRange {
                index: i,
                size: self.size(),
            })
        }
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Carrier {}

pub(crate) fn same_carrier(a: &Arc<Carrier>, b: &Arc<Carrier>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
