use serde::{Deserialize, Serialize};

use crate::BisectError;

/// A triangulation of points on a line: the cells between consecutive used
/// points, and `phi(a)` = total length of the cells having `a` as a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation1d {
    pub vertices: Vec<i64>,
    pub cells: Vec<(i64, i64)>,
    pub phi: Vec<u64>,
    /// Every triangulation of a one dimensional configuration is regular.
    pub coherent: bool,
}

/// All triangulations of the sorted configuration `a`, one per subset of
/// interior points, the empty subset first.
pub fn triangulations_1d(a: &[i64]) -> Result<Vec<Triangulation1d>, BisectError> {
    if a.len() < 2 || a.windows(2).any(|p| p[0] >= p[1]) {
        return Err(BisectError::BadConfiguration("need at least two strictly increasing points".into()));
    }
    let interior = &a[1..a.len() - 1];
    if interior.len() >= 63 {
        return Err(BisectError::BadConfiguration("too many interior points".into()));
    }
    let out = (0u64..1 << interior.len())
        .map(|mask| {
            let mut vertices = vec![a[0]];
            vertices.extend(interior.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
            vertices.push(a[a.len() - 1]);
            let cells: Vec<(i64, i64)> = vertices.windows(2).map(|p| (p[0], p[1])).collect();
            let phi = a
                .iter()
                .map(|&x| cells.iter().filter(|c| c.0 == x || c.1 == x).map(|c| (c.1 - c.0) as u64).sum())
                .collect();
            Triangulation1d { vertices, cells, phi, coherent: true }
        })
        .collect();
    Ok(out)
}
