use serde::{Deserialize, Serialize};
use weights_core::{BigradedHom, ExteriorBasisElement, Weights};

use crate::{check_index, BsideError};

/// A summand `P_i[s]` of the module `N_{k,j}` in homological position `j`,
/// indexed by the subset `J` that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionSummand {
    pub position: i64,
    pub projective_index: i64,
    pub internal_shift: i64,
    pub witness: ExteriorBasisElement,
}

/// Summands of the resolution of `S_k`, grouped by position `0..=k`.
///
/// `N_{k,j}` is the sum of `P_{k-j+|J|-a_J}[|J| - j]` over `|J| <= j`, with
/// negative indices dropped. Positions past `k` are always empty, since
/// `a_J >= |J|`.
pub fn resolution_summands(w: &Weights, k: i64) -> Result<Vec<Vec<ResolutionSummand>>, BsideError> {
    check_index(w, k)?;
    let mut subsets: Vec<_> = (0u64..1 << w.len()).map(ExteriorBasisElement::from_mask).collect();
    subsets.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
    let positions = (0..=k)
        .map(|j| {
            subsets
                .iter()
                .filter(|s| s.degree() as i64 <= j)
                .filter_map(|s| {
                    let size = s.degree() as i64;
                    let index = k - j + size - s.weight(w);
                    (index >= 0).then(|| ResolutionSummand {
                        position: j,
                        projective_index: index,
                        internal_shift: size - j,
                        witness: s.clone(),
                    })
                })
                .collect()
        })
        .collect();
    Ok(positions)
}

/// Reads `Ext(S_k, S_i)` off the resolution: each `P_i` summand contributes
/// one class in total degree `position + internal_shift`.
pub fn verify_prop6_via_resolution(
    w: &Weights,
    k: i64,
    i: i64,
) -> Result<BigradedHom<ExteriorBasisElement>, BsideError> {
    check_index(w, i)?;
    let mut hom = BigradedHom::zero(i, k);
    for summand in resolution_summands(w, k)?.into_iter().flatten() {
        if summand.projective_index == i {
            hom.basis.push((summand.position + summand.internal_shift, summand.witness));
        }
    }
    hom.basis.sort_by(|a, b| (a.0, a.1.degree(), &a.1).cmp(&(b.0, b.1.degree(), &b.1)));
    Ok(hom)
}
