use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A hom space from `source` to `target` with a basis of labelled vectors,
/// each sitting in a cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedHom<L> {
    pub source: i64,
    pub target: i64,
    pub basis: Vec<(i64, L)>,
}

impl<L> BigradedHom<L> {
    pub fn zero(source: i64, target: i64) -> Self {
        BigradedHom { source, target, basis: Vec::new() }
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut dims = BTreeMap::new();
        for (d, _) in &self.basis {
            *dims.entry(*d).or_insert(0) += 1;
        }
        dims
    }

    /// Dimensions in degrees `0..=top`, zero padded.
    pub fn dims_up_to(&self, top: i64) -> Vec<usize> {
        let dims = self.dims_by_degree();
        (0..=top).map(|d| dims.get(&d).copied().unwrap_or(0)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.basis.iter().map(|(_, l)| l)
    }

    pub fn map_labels<M>(&self, f: impl Fn(&L) -> M) -> BigradedHom<M> {
        BigradedHom {
            source: self.source,
            target: self.target,
            basis: self.basis.iter().map(|(d, l)| (*d, f(l))).collect(),
        }
    }
}
