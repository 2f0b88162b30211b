//! Divisors: formal sums of sphere points with integer multiplicities.

use std::collections::BTreeMap;

use super::point::SpherePoint;

/// The zero/pole bookkeeping of a rational function: a finite map from
/// sphere points to nonzero multiplicities. Divisors produced from a
/// `FactoredRational` always have degree zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Divisor {
    entries: BTreeMap<SpherePoint, i64>,
}

impl Divisor {
    pub(crate) fn from_map(entries: BTreeMap<SpherePoint, i64>) -> Self {
        debug_assert!(entries.values().all(|m| *m != 0));
        Self { entries }
    }

    pub fn support(&self) -> impl Iterator<Item = &SpherePoint> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SpherePoint, i64)> {
        self.entries.iter().map(|(p, m)| (p, *m))
    }

    pub fn multiplicity(&self, point: &SpherePoint) -> i64 {
        self.entries.get(point).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
