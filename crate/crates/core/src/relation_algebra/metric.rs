use std::sync::Arc;

use num_rational::Rational64;

use super::base::UniformBase;
use super::carrier::Carrier;
use super::relation::Relation;
use super::RelationError;

/// Exact rational (pseudo)metric on a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    carrier: Arc<Carrier>,
    d: Vec<Vec<Rational64>>,
}

impl DistanceTable {
    pub fn new(carrier: &Arc<Carrier>, d: Vec<Vec<Rational64>>) -> Result<Self, RelationError> {
        let n = carrier.size();
        let bad = |msg: String| Err(RelationError::InvalidDistance(msg));
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return bad(format!("expected a {n}x{n} matrix"));
        }
        let zero = Rational64::from_integer(0);
        for x in 0..n {
            if d[x][x] != zero {
                return bad(format!("d({0},{0}) is not zero", carrier.name(x)));
            }
            for y in 0..n {
                if d[x][y] < zero {
                    return bad(format!("d({},{}) is negative", carrier.name(x), carrier.name(y)));
                }
                if d[x][y] != d[y][x] {
                    return bad(format!("d({0},{1}) != d({1},{0})", carrier.name(x), carrier.name(y)));
                }
                for z in 0..n {
                    if d[x][z] > d[x][y] + d[y][z] {
                        return bad(format!(
                            "triangle inequality fails for ({}, {}, {})",
                            carrier.name(x),
                            carrier.name(y),
                            carrier.name(z)
                        ));
                    }
                }
            }
        }
        Ok(Self {
            carrier: Arc::clone(carrier),
            d,
        })
    }

    /// Integer-valued table, convenient for tests and fixtures.
    pub fn from_integers(carrier: &Arc<Carrier>, d: Vec<Vec<i64>>) -> Result<Self, RelationError> {
        let d = d
            .into_iter()
            .map(|row| row.into_iter().map(Rational64::from_integer).collect())
            .collect();
        Self::new(carrier, d)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn distance(&self, x: usize, y: usize) -> Rational64 {
        self.d[x][y]
    }

    /// Distinct positive distance values, ascending.
    pub fn positive_values(&self) -> Vec<Rational64> {
        let zero = Rational64::from_integer(0);
        let mut values: Vec<Rational64> = self
            .d
            .iter()
            .flatten()
            .copied()
            .filter(|&v| v > zero)
            .collect();
        values.sort();
        values.dedup();
        values
    }

    pub fn diameter(&self) -> Rational64 {
        self.d.iter().flatten().copied().max().unwrap_or_default()
    }
}

/// {(x, y) : d(x, y) < eps}.
pub fn metric_entourage(d: &DistanceTable, eps: Rational64) -> Result<Relation, RelationError> {
    if eps <= Rational64::from_integer(0) {
        return Err(RelationError::NonPositiveEpsilon);
    }
    Ok(Relation::from_predicate(&d.carrier, |x, y| d.d[x][y] < eps))
}

/// Base of the metric uniform structure: one ε-entourage per distinct
/// positive distance ε (finest first), followed by X × X.
///
/// On a finite carrier every ε-entourage equals one of these.
pub fn metric_base(d: &DistanceTable) -> UniformBase {
    let mut base: Vec<Relation> = d
        .positive_values()
        .into_iter()
        .map(|eps| metric_entourage(d, eps).expect("positive epsilon"))
        .collect();
    base.push(Relation::full(&d.carrier));
    UniformBase::new(&d.carrier, base).expect("non-empty base")
}
