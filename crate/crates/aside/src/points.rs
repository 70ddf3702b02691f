use serde::{Deserialize, Serialize};
use weights_core::{BigradedHom, ExteriorBasisElement, Weights};

use crate::strip::{q, IntersectionPoint, Kind, Strip, Q};
use crate::AsideError;

/// All points of `L_j` and `L_k` in one period, ordered Arc, SegPM, SegMP.
pub fn intersections(w: &Weights, j: i64, k: i64) -> Result<Vec<IntersectionPoint>, AsideError> {
    let strip = Strip::new(w)?;
    strip_intersections(&strip, j, k)
}

pub(crate) fn strip_intersections(
    strip: &Strip,
    j: i64,
    k: i64,
) -> Result<Vec<IntersectionPoint>, AsideError> {
    strip.check_index(j)?;
    strip.check_index(k)?;
    if j >= k {
        return Err(AsideError::NotAscending(j, k));
    }
    [Kind::Arc, Kind::SegPM, Kind::SegMP]
        .into_iter()
        .filter(|&kind| strip.exists(j, k, kind))
        .map(|kind| point(strip, j, k, kind))
        .collect()
}

pub(crate) fn point(strip: &Strip, j: i64, k: i64, kind: Kind) -> Result<IntersectionPoint, AsideError> {
    let x = strip.segment_x(j, k, kind);
    let y = match kind {
        Kind::Arc => q(j + k + 1 - strip.big_l()),
        Kind::SegPM => x.unwrap() * strip.slope_minus(k) + q(2 * k + 1 - 2 * strip.big_l()),
        Kind::SegMP => x.unwrap() * strip.slope_plus(k) + q(2 * k + 1),
    };
    let degree = strip_maslov(strip, j, k, kind)?;
    Ok(IntersectionPoint {
        j,
        k,
        kind,
        x,
        y,
        shift: Strip::shift(kind),
        degree,
        label: Strip::label(kind),
    })
}

/// Maslov index of `p` in units of pi, from the angle bookkeeping of the
/// grading along the boundary paths. Every term is an exact rational.
pub fn maslov_degree(w: &Weights, p: &IntersectionPoint) -> Result<i64, AsideError> {
    let strip = Strip::new(w)?;
    strip.check_index(p.j)?;
    strip.check_index(p.k)?;
    if !strip.exists(p.j, p.k, p.kind) {
        return Err(AsideError::NoSuchPoint(p.j, p.k, p.kind));
    }
    strip_maslov(&strip, p.j, p.k, p.kind)
}

fn strip_maslov(strip: &Strip, j: i64, k: i64, kind: Kind) -> Result<i64, AsideError> {
    let ll = strip.big_l();
    let (cj, ck) = (strip.curve(j), strip.curve(k));
    // Grading functions at the two ends of each curve.
    let phi_plus = q(1) - Q::new(ck.q_plus.im, 2 * ll);
    let phi_minus = -Q::new(cj.q_minus.im, 2 * ll);
    // Angle swept by the half circle of radius r, as a fraction of pi.
    let semicircle = |r: Q| q(1) - r / ll;
    let gap = Q::new(ck.q_plus.im - cj.q_minus.im, 2);

    let (xi, or) = match kind {
        Kind::Arc => (-semicircle(gap), q(0)),
        // The path goes once more around the double loop.
        Kind::SegPM => (-semicircle(gap) - q(2), q(1)),
        Kind::SegMP => {
            let alpha1 = q(2) - semicircle(gap - q(2 * ll));
            let alpha2 = q(-2);
            (alpha1 + alpha2, q(1))
        }
    };
    let mu = -(xi + or + phi_plus - phi_minus);
    if !mu.is_integer() {
        return Err(AsideError::ModelInconsistency(format!(
            "Maslov index {mu} of {kind:?} point ({j}, {k}) is not an integer"
        )));
    }
    Ok(mu.to_integer())
}

/// A basis vector of `Hom(L_j, L_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomGenerator {
    Identity,
    Point(IntersectionPoint),
}

impl HomGenerator {
    pub fn label(&self) -> ExteriorBasisElement {
        match self {
            HomGenerator::Identity => ExteriorBasisElement::empty(),
            HomGenerator::Point(p) => p.label.clone(),
        }
    }
}

/// `Hom(L_j, L_k)`: the intersection points for `j < k` in their Maslov
/// degrees, the identity for `j = k`, and zero for `j > k`.
pub fn hom_space(w: &Weights, j: i64, k: i64) -> Result<BigradedHom<HomGenerator>, AsideError> {
    let strip = Strip::new(w)?;
    strip.check_index(j)?;
    strip.check_index(k)?;
    let mut hom = BigradedHom::zero(j, k);
    if j == k {
        hom.basis.push((0, HomGenerator::Identity));
    } else if j < k {
        for p in strip_intersections(&strip, j, k)? {
            hom.basis.push((p.degree, HomGenerator::Point(p)));
        }
    }
    Ok(hom)
}
