use serde::{Deserialize, Serialize};
use weights_core::{BigradedHom, ExteriorBasisElement, Weights};

use crate::{check_index, BsideError};

/// A basis arrow `source -> target` of the dual algebra, standing for the
/// class `e_J` in `Ext^{|J|}(S_target, S_source)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualElement {
    pub source: i64,
    pub target: i64,
    pub subset: ExteriorBasisElement,
}

/// `Ext(S_k, S_i)`: every `e_J` with `a_J <= k - i`, in degree `|J|`.
pub fn dual_ext(w: &Weights, k: i64, i: i64) -> Result<BigradedHom<ExteriorBasisElement>, BsideError> {
    check_index(w, k)?;
    check_index(w, i)?;
    let mut hom = BigradedHom::zero(i, k);
    if k < i {
        return Ok(hom);
    }
    let mut subsets: Vec<_> = (0u64..1 << w.len())
        .map(ExteriorBasisElement::from_mask)
        .filter(|e| e.weight(w) <= k - i)
        .collect();
    subsets.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
    hom.basis = subsets.into_iter().map(|e| (e.degree() as i64, e)).collect();
    Ok(hom)
}

/// Sign of `e_J ^ e_K` relative to `e_{J u K}`, or `None` when `J` and `K`
/// overlap.
pub fn wedge_sign(j: &ExteriorBasisElement, k: &ExteriorBasisElement) -> Option<i64> {
    if j.mask() & k.mask() != 0 {
        return None;
    }
    let inversions: usize = j
        .subset()
        .iter()
        .map(|&x| k.subset().iter().filter(|&&y| y < x).count())
        .sum();
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// `u * v` for `v: i -> j` and `u: j -> k`: the wedge product, truncated to
/// weights at most `k - i`.
pub fn compose_dual(
    w: &Weights,
    u: &DualElement,
    v: &DualElement,
) -> Result<Option<(i64, DualElement)>, BsideError> {
    if v.target != u.source {
        return Err(BsideError::EndpointMismatch(v.source, v.target, u.source, u.target));
    }
    for e in [u, v] {
        if e.subset.weight(w) > e.target - e.source {
            return Err(BsideError::InvalidElement(format!(
                "{} has weight above {}",
                e.subset,
                e.target - e.source
            )));
        }
    }
    let Some(sign) = wedge_sign(&u.subset, &v.subset) else {
        return Ok(None);
    };
    let mut union = u.subset.subset().to_vec();
    union.extend_from_slice(v.subset.subset());
    let subset = ExteriorBasisElement::new(union);
    if subset.weight(w) > u.target - v.source {
        return Ok(None);
    }
    Ok(Some((sign, DualElement { source: v.source, target: u.target, subset })))
}
