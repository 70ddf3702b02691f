use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use weights_core::{monomial_basis, BigradedHom, Monomial, Weights};

use crate::{check_index, BsideError};

/// A basis element (times a coefficient) of `Ext^e(i_* O(j), i_* O(k))`,
/// which is `R_{k-j}` for `e = 0` and `R_{k-j-1}` for `e = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverElement {
    pub source: i64,
    pub target: i64,
    pub coh_degree: u8,
    pub monomial: Monomial,
    #[serde(with = "weights_core::ratser")]
    pub coefficient: Rational64,
}

impl QuiverElement {
    pub fn new(
        w: &Weights,
        source: i64,
        target: i64,
        coh_degree: u8,
        monomial: Monomial,
        coefficient: Rational64,
    ) -> Result<Self, BsideError> {
        check_index(w, source)?;
        check_index(w, target)?;
        if coh_degree > 1 {
            return Err(BsideError::InvalidElement(format!("coh_degree {coh_degree} > 1")));
        }
        if target < source {
            return Err(BsideError::InvalidElement(format!("no morphisms {source} -> {target}")));
        }
        let expected = target - source - coh_degree as i64;
        if monomial.degree_in(w) != expected {
            return Err(BsideError::InvalidElement(format!(
                "monomial {monomial} has degree {} but {expected} is required",
                monomial.degree_in(w)
            )));
        }
        Ok(QuiverElement { source, target, coh_degree, monomial, coefficient })
    }

    /// `(target - source) + coh_degree`.
    pub fn weight(&self) -> i64 {
        self.target - self.source + self.coh_degree as i64
    }

    pub fn identity(w: &Weights, k: i64) -> Result<Self, BsideError> {
        QuiverElement::new(w, k, k, 0, Monomial::one(w), Rational64::from_integer(1))
    }
}

/// `Ext(i_* O(j), i_* O(k))` with degree 0 and degree 1 monomial bases.
pub fn ext_pushforward(w: &Weights, j: i64, k: i64) -> Result<BigradedHom<Monomial>, BsideError> {
    check_index(w, j)?;
    check_index(w, k)?;
    let mut hom = BigradedHom::zero(j, k);
    if k < j {
        return Ok(hom);
    }
    hom.basis.extend(monomial_basis(w, k - j).into_iter().map(|m| (0, m)));
    hom.basis.extend(monomial_basis(w, k - j - 1).into_iter().map(|m| (1, m)));
    Ok(hom)
}

/// The basis of [`ext_pushforward`] as unit-coefficient elements.
pub fn quiver_basis(w: &Weights, j: i64, k: i64) -> Result<Vec<QuiverElement>, BsideError> {
    let hom = ext_pushforward(w, j, k)?;
    Ok(hom
        .basis
        .into_iter()
        .map(|(d, m)| QuiverElement {
            source: j,
            target: k,
            coh_degree: d as u8,
            monomial: m,
            coefficient: Rational64::from_integer(1),
        })
        .collect())
}

/// `g o f`: monomials multiply, degrees add, and two degree one classes
/// compose to zero.
pub fn compose_quiver(g: &QuiverElement, f: &QuiverElement) -> Result<Option<QuiverElement>, BsideError> {
    if f.target != g.source {
        return Err(BsideError::EndpointMismatch(f.source, f.target, g.source, g.target));
    }
    let coh_degree = f.coh_degree + g.coh_degree;
    if coh_degree > 1 {
        return Ok(None);
    }
    let coefficient = f.coefficient * g.coefficient;
    if coefficient == Rational64::from_integer(0) {
        return Ok(None);
    }
    Ok(Some(QuiverElement {
        source: f.source,
        target: g.target,
        coh_degree,
        monomial: f.monomial.mul(&g.monomial),
        coefficient,
    }))
}
