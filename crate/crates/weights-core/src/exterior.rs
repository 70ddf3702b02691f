use serde::{Deserialize, Serialize};

use crate::Weights;

/// A basis vector `e_J` of the exterior algebra on `e_0, ..., e_n`, with
/// `deg e_i = 1` and weight `deg_a e_i = a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct ExteriorBasisElement {
    subset: Vec<usize>,
}

impl From<ExteriorBasisElement> for Vec<usize> {
    fn from(e: ExteriorBasisElement) -> Self {
        e.subset
    }
}

impl From<Vec<usize>> for ExteriorBasisElement {
    fn from(v: Vec<usize>) -> Self {
        ExteriorBasisElement::new(v)
    }
}

impl ExteriorBasisElement {
    /// Sorts and deduplicates the indices.
    pub fn new(mut subset: Vec<usize>) -> Self {
        subset.sort_unstable();
        subset.dedup();
        ExteriorBasisElement { subset }
    }

    pub fn empty() -> Self {
        ExteriorBasisElement { subset: Vec::new() }
    }

    pub fn generator(i: usize) -> Self {
        ExteriorBasisElement { subset: vec![i] }
    }

    pub fn from_mask(mask: u64) -> Self {
        let subset = (0..64).filter(|i| mask >> i & 1 == 1).collect();
        ExteriorBasisElement { subset }
    }

    pub fn mask(&self) -> u64 {
        self.subset.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// `|J|`.
    pub fn degree(&self) -> usize {
        self.subset.len()
    }

    /// `a_J`.
    pub fn weight(&self, w: &Weights) -> i64 {
        w.subset_weight(&self.subset)
    }

    pub fn is_empty(&self) -> bool {
        self.subset.is_empty()
    }
}

impl std::fmt::Display for ExteriorBasisElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.subset.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.subset.iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// All `J` with `|J| = r` and `a_J = s`, sorted lexicographically.
pub fn exterior_basis(w: &Weights, r: i64, s: i64) -> Vec<ExteriorBasisElement> {
    if r < 0 || r > w.len() as i64 {
        return Vec::new();
    }
    let mut out: Vec<_> = (0u64..1 << w.len())
        .filter(|m| m.count_ones() as i64 == r)
        .map(ExteriorBasisElement::from_mask)
        .filter(|e| e.weight(w) == s)
        .collect();
    out.sort();
    out
}

/// `sum_{r,s} |exterior_basis(w, r, s)|`, which is `2^{n+1}`.
pub fn exterior_dimension_total(w: &Weights) -> usize {
    (0..=w.len() as i64)
        .flat_map(|r| (0..=w.l()).map(move |s| (r, s)))
        .map(|(r, s)| exterior_basis(w, r, s).len())
        .sum()
}
