use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use weights_core::{ExteriorBasisElement, Weights};

use crate::AsideError;

pub type Q = Rational64;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const fn new(re: i64, im: i64) -> Self {
        Gaussian { re, im }
    }
}

/// The three pieces of a curve in the order of its parameter `t`:
/// `s_-` for `t in [0, 1]`, the half circle for `t in [1, 2]`, `s_+` for
/// `t in [2, 3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Piece {
    SMinus,
    Arc,
    SPlus,
}

impl Piece {
    pub fn index(self) -> i64 {
        match self {
            Piece::SMinus => 0,
            Piece::Arc => 1,
            Piece::SPlus => 2,
        }
    }

    pub fn from_index(i: i64) -> Self {
        match i {
            0 => Piece::SMinus,
            1 => Piece::Arc,
            2 => Piece::SPlus,
            _ => panic!("piece index {i}"),
        }
    }

    pub fn is_segment(self) -> bool {
        self != Piece::Arc
    }

    /// Piece containing a parameter value that is not an integer.
    pub fn at(t: Q) -> Self {
        Piece::from_index(t.floor().to_integer())
    }
}

/// One vanishing cycle `L_k` in the strip, as the path
/// `Q_{k-} -> P_{k-} -> C_k -> P_{k+} -> Q_{k+}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripCurve {
    pub index: i64,
    pub p_plus: Gaussian,
    pub p_minus: Gaussian,
    pub q_plus: Gaussian,
    pub q_minus: Gaussian,
    pub arc_center: Gaussian,
    pub arc_radius: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// `C_j` meets `C_k`.
    Arc,
    /// `s_{j+}` meets `s_{k-}`, both in the same period.
    SegPM,
    /// `s_{k+}` meets `s_{j-}`, the latter one period higher.
    SegMP,
}

/// A labelled point of `L_j` and `L_k`, `j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub j: i64,
    pub k: i64,
    pub kind: Kind,
    #[serde(with = "weights_core::ratser::option")]
    pub x: Option<Q>,
    /// Height in the period of the `s_{k}` or `C_k` piece it lies on.
    #[serde(with = "weights_core::ratser")]
    pub y: Q,
    pub shift: i64,
    pub degree: i64,
    pub label: ExteriorBasisElement,
}

/// The strip model for a weight pair `a_0 <= a_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    weights: Weights,
    a0: i64,
    a1: i64,
    l: i64,
}

impl Strip {
    pub fn new(w: &Weights) -> Result<Self, AsideError> {
        if w.len() != 2 {
            return Err(AsideError::NotTwoWeights(w.len()));
        }
        let (a0, a1) = (w.a()[0], w.a()[1]);
        if a0 > a1 {
            return Err(AsideError::Unsorted(a0, a1));
        }
        Ok(Strip { weights: w.clone(), a0, a1, l: w.l() })
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    /// `l - 1`: the arc radius and the number of curves.
    pub fn big_l(&self) -> i64 {
        self.l - 1
    }

    /// Vertical period `4(l - 1)`.
    pub fn period(&self) -> i64 {
        4 * self.big_l()
    }

    pub fn curve_count(&self) -> i64 {
        self.l - 1
    }

    pub fn check_index(&self, k: i64) -> Result<(), AsideError> {
        if k < 0 || k > self.l - 2 {
            return Err(AsideError::IndexOutOfRange { index: k, max: self.l - 2 });
        }
        Ok(())
    }

    pub fn curve(&self, k: i64) -> StripCurve {
        let ll = self.big_l();
        let p_plus = Gaussian::new(0, 2 * k + 1);
        let p_minus = Gaussian::new(0, 2 * k + 1 - 2 * ll);
        let q_minus = Gaussian::new(1, 4 * k + 1 - 2 * ll);
        let q_plus = Gaussian::new(1, q_minus.im + 4 * self.a0 - 2);
        let arc_center = Gaussian::new(0, p_minus.im + ll);
        StripCurve { index: k, p_plus, p_minus, q_plus, q_minus, arc_center, arc_radius: ll }
    }

    /// Slope of `s_{k+}`.
    pub fn slope_plus(&self, k: i64) -> i64 {
        2 * k - 2 * self.l + 4 * self.a0
    }

    /// Slope of `s_{k-}`.
    pub fn slope_minus(&self, k: i64) -> i64 {
        2 * k
    }

    /// Height of the arc centre of `C_k` in period `lift`.
    pub fn arc_center_y(&self, k: i64, lift: i64) -> i64 {
        2 * k + 1 - self.big_l() + self.period() * lift
    }

    /// Point of `L_k` (period `lift`) at parameter `t`. The abscissa is
    /// `None` on the arc, where it is irrational in general and never needed.
    pub fn point_at(&self, k: i64, lift: i64, t: Q) -> (Option<Q>, Q) {
        let ll = self.big_l();
        let base = q(self.period() * lift);
        if t <= q(1) {
            let x = q(1) - t;
            (Some(x), x * self.slope_minus(k) + q(2 * k + 1 - 2 * ll) + base)
        } else if t < q(2) {
            (None, q(2 * k + 1 - 2 * ll) + (t - q(1)) * (2 * ll) + base)
        } else {
            let x = t - q(2);
            (Some(x), x * self.slope_plus(k) + q(2 * k + 1) + base)
        }
    }

    /// Direction of `L_k` along increasing `t` on a segment piece.
    pub fn segment_direction(&self, k: i64, piece: Piece) -> (i64, i64) {
        match piece {
            Piece::SMinus => (-1, -self.slope_minus(k)),
            Piece::SPlus => (1, self.slope_plus(k)),
            Piece::Arc => panic!("arc has no constant direction"),
        }
    }

    /// Whether `kind` occurs for `j < k`.
    pub fn exists(&self, j: i64, k: i64, kind: Kind) -> bool {
        let gap = k - j;
        gap >= 1
            && match kind {
                Kind::Arc => true,
                Kind::SegPM => self.a0 <= gap,
                Kind::SegMP => self.a1 <= gap,
            }
    }

    /// Exact abscissa of a segment intersection.
    pub fn segment_x(&self, j: i64, k: i64, kind: Kind) -> Option<Q> {
        let (ll, gap) = (self.big_l(), k - j);
        match kind {
            Kind::Arc => None,
            Kind::SegPM => Some(Q::new(ll - gap, gap + self.l - 2 * self.a0)),
            Kind::SegMP => Some(Q::new(gap - ll, -gap + self.l - 2 * self.a0)),
        }
    }

    /// Parameters of the intersection on `L_j` and `L_k`, and the period of
    /// the `L_j` piece relative to the `L_k` piece.
    pub fn corner_params(&self, j: i64, k: i64, kind: Kind) -> (Q, Q, i64) {
        let ll = self.big_l();
        match kind {
            Kind::Arc => (
                q(1) + Q::new(k - j + ll, 2 * ll),
                q(1) + Q::new(j - k + ll, 2 * ll),
                0,
            ),
            Kind::SegPM => {
                let x = self.segment_x(j, k, kind).unwrap();
                (q(2) + x, q(1) - x, 0)
            }
            Kind::SegMP => {
                let x = self.segment_x(j, k, kind).unwrap();
                (q(1) - x, q(2) + x, 1)
            }
        }
    }

    pub fn label(kind: Kind) -> ExteriorBasisElement {
        match kind {
            Kind::Arc => ExteriorBasisElement::empty(),
            Kind::SegPM => ExteriorBasisElement::generator(0),
            Kind::SegMP => ExteriorBasisElement::generator(1),
        }
    }

    pub fn shift(kind: Kind) -> i64 {
        match kind {
            Kind::SegMP => -1,
            _ => 0,
        }
    }
}

pub fn build_curves(w: &Weights) -> Result<Vec<StripCurve>, AsideError> {
    let s = Strip::new(w)?;
    Ok((0..s.curve_count()).map(|k| s.curve(k)).collect())
}
