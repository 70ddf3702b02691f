use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use weights_core::{LatticePolytope, Point};

use crate::BisectError;

/// A lattice polytope `Q` with marked points `A` containing its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPolytope {
    pub q: LatticePolytope,
    pub a: Vec<Point>,
}

impl MarkedPolytope {
    /// `Q` is taken to be the hull of `a`.
    pub fn hull_of(a: &[Point]) -> Result<Self, BisectError> {
        let q = LatticePolytope::from_points(a)?;
        let mut a = a.to_vec();
        a.sort_unstable();
        a.dedup();
        Ok(MarkedPolytope { q, a })
    }

    /// Points of the line `y = 0`.
    pub fn on_line(a: &[i64]) -> Result<Self, BisectError> {
        Self::hull_of(&a.iter().map(|&x| [x, 0]).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> u8 {
        self.q.dim()
    }

    pub fn marked(&self) -> BTreeSet<Point> {
        self.a.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub cells: Vec<MarkedPolytope>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bisection {
    pub cell0: MarkedPolytope,
    pub cell1: MarkedPolytope,
}

impl Bisection {
    pub fn from_marks(a0: &[Point], a1: &[Point]) -> Result<Self, BisectError> {
        Ok(Bisection { cell0: MarkedPolytope::hull_of(a0)?, cell1: MarkedPolytope::hull_of(a1)? })
    }

    pub fn on_line(a0: &[i64], a1: &[i64]) -> Result<Self, BisectError> {
        Ok(Bisection { cell0: MarkedPolytope::on_line(a0)?, cell1: MarkedPolytope::on_line(a1)? })
    }

    pub fn as_subdivision(&self) -> Subdivision {
        Subdivision { cells: vec![self.cell0.clone(), self.cell1.clone()] }
    }

    /// `(Q, A_0 u A_1)`.
    pub fn parent(&self) -> Result<MarkedPolytope, BisectError> {
        let mut a = self.cell0.a.clone();
        a.extend_from_slice(&self.cell1.a);
        MarkedPolytope::hull_of(&a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// Parent or cell of dimension one off the line `y = 0`.
    OffLine { cell: Option<usize> },
    VertexNotMarked { cell: Option<usize>, vertex: Point },
    MarkedOutside { cell: Option<usize>, point: Point },
    LowerDimensional { cell: usize },
    MarkedNotInParent { cell: usize, point: Point },
    OutsideParent { cell: usize },
    InteriorsOverlap { cells: (usize, usize) },
    NotCommonFace { cells: (usize, usize) },
    MarkingMismatch { cells: (usize, usize) },
    /// Twice the covered area (or the covered length) against the parent's.
    UnionMismatch { covered: i64, parent: i64 },
    OriginNotInterior,
    MarkingUnion,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from(violations: Vec<Violation>) -> Self {
        ValidationReport { pass: violations.is_empty(), violations }
    }
}

fn check_marked(m: &MarkedPolytope, cell: Option<usize>, out: &mut Vec<Violation>) {
    if m.dim() == 1 && m.a.iter().any(|p| p[1] != 0) {
        out.push(Violation::OffLine { cell });
    }
    for &v in m.q.vertices() {
        if !m.a.contains(&v) {
            out.push(Violation::VertexNotMarked { cell, vertex: v });
        }
    }
    for &p in &m.a {
        if !m.q.contains(p) {
            out.push(Violation::MarkedOutside { cell, point: p });
        }
    }
}

fn dot(a: Point, b: Point) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Kind of intersection of two polygons.
enum Meeting {
    Disjoint,
    /// Touching along the line `n . x = c`, met in the ranges of `d . x` over
    /// the vertices of each polygon on that line.
    Touching { p: (i64, i64), q: (i64, i64) },
    Overlapping,
}

fn meet_polygons(p: &LatticePolytope, q: &LatticePolytope) -> Meeting {
    let mut touching = None;
    for (a_poly, b_poly) in [(p, q), (q, p)] {
        for (a, b) in a_poly.edges() {
            let n = [b[1] - a[1], a[0] - b[0]];
            let c = dot(n, a);
            let min_b = b_poly.vertices().iter().map(|&v| dot(n, v)).min().unwrap();
            if min_b > c {
                return Meeting::Disjoint;
            }
            if min_b == c && touching.is_none() {
                let d = [-n[1], n[0]];
                let range = |poly: &LatticePolytope| {
                    let on: Vec<i64> =
                        poly.vertices().iter().filter(|&&v| dot(n, v) == c).map(|&v| dot(d, v)).collect();
                    (*on.iter().min().unwrap(), *on.iter().max().unwrap())
                };
                let (ra, rb) = (range(a_poly), range(b_poly));
                touching = Some(if std::ptr::eq(a_poly, p) { (ra, rb) } else { (rb, ra) });
            }
        }
    }
    match touching {
        Some((p, q)) => Meeting::Touching { p, q },
        None => Meeting::Overlapping,
    }
}

/// Whether `j`, a nonempty subrange of `i`, is a face of the segment or point `i`.
fn is_face(j: (i64, i64), i: (i64, i64)) -> bool {
    j == i || (j.0 == j.1 && (j.0 == i.0 || j.0 == i.1))
}

/// Checks the subdivision clauses: full dimensional cells, pairwise
/// intersections that are common faces, matching markings on those faces, and
/// cells that exactly cover the parent.
pub fn validate_subdivision(s: &Subdivision, parent: &MarkedPolytope) -> ValidationReport {
    let mut out = Vec::new();
    check_marked(parent, None, &mut out);
    let dim = parent.dim();
    let parent_marks = parent.marked();
    for (i, cell) in s.cells.iter().enumerate() {
        check_marked(cell, Some(i), &mut out);
        if cell.dim() != dim {
            out.push(Violation::LowerDimensional { cell: i });
        }
        for &p in &cell.a {
            if !parent_marks.contains(&p) {
                out.push(Violation::MarkedNotInParent { cell: i, point: p });
            }
        }
        if !cell.q.vertices().iter().all(|&v| parent.q.contains(v)) {
            out.push(Violation::OutsideParent { cell: i });
        }
    }
    if out.iter().any(|v| matches!(v, Violation::LowerDimensional { .. } | Violation::OffLine { .. })) {
        return ValidationReport::from(out);
    }

    for i in 0..s.cells.len() {
        for j in i + 1..s.cells.len() {
            let (ci, cj) = (&s.cells[i], &s.cells[j]);
            if dim == 1 {
                let (a, b) = (ci.q.vertices(), cj.q.vertices());
                if a[0][0].max(b[0][0]) < a[1][0].min(b[1][0]) {
                    out.push(Violation::InteriorsOverlap { cells: (i, j) });
                }
            } else {
                match meet_polygons(&ci.q, &cj.q) {
                    Meeting::Disjoint => {}
                    Meeting::Overlapping => out.push(Violation::InteriorsOverlap { cells: (i, j) }),
                    Meeting::Touching { p, q } => {
                        let meet = (p.0.max(q.0), p.1.min(q.1));
                        if meet.0 <= meet.1 && !(is_face(meet, p) && is_face(meet, q)) {
                            out.push(Violation::NotCommonFace { cells: (i, j) });
                        }
                    }
                }
            }
            let on_i: BTreeSet<Point> = ci.a.iter().copied().filter(|&x| cj.q.contains(x)).collect();
            let on_j: BTreeSet<Point> = cj.a.iter().copied().filter(|&x| ci.q.contains(x)).collect();
            if on_i != on_j {
                out.push(Violation::MarkingMismatch { cells: (i, j) });
            }
        }
    }

    let size = |q: &LatticePolytope| if dim == 1 { (q.vertices()[1][0] - q.vertices()[0][0]).abs() } else { q.area2() };
    let covered: i64 = s.cells.iter().map(|c| size(&c.q)).sum();
    if covered != size(&parent.q) {
        out.push(Violation::UnionMismatch { covered, parent: size(&parent.q) });
    }
    ValidationReport::from(out)
}

/// The bisection conditions: `0` in the interior of `Q_0`, `A_0 u A_1 = A`,
/// and a valid two cell subdivision.
pub fn validate_bisection(b: &Bisection, parent: &MarkedPolytope) -> ValidationReport {
    let mut report = validate_subdivision(&b.as_subdivision(), parent);
    if !b.cell0.q.contains_interior([0, 0]) {
        report.violations.push(Violation::OriginNotInterior);
    }
    let union: BTreeSet<Point> = b.cell0.marked().union(&b.cell1.marked()).copied().collect();
    if union != parent.marked() {
        report.violations.push(Violation::MarkingUnion);
    }
    report.pass = report.violations.is_empty();
    report
}
