use aside::*;
use num_rational::Rational64;
use proptest::prelude::*;
use weights_core::{ExteriorBasisElement as E, Weights};

fn w(a0: i64, a1: i64) -> Weights {
    Weights::new(vec![a0, a1]).unwrap()
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[test]
fn curve_coordinates() {
    let c = &build_curves(&w(2, 3)).unwrap()[0];
    assert_eq!(c.p_plus, Gaussian::new(0, 1));
    assert_eq!(c.p_minus, Gaussian::new(0, -7));
    assert_eq!(c.q_minus, Gaussian::new(1, -7));
    assert_eq!(c.q_plus, Gaussian::new(1, -1));
    assert_eq!(c.arc_center, Gaussian::new(0, -3));
    assert_eq!(c.arc_radius, 4);

    let c = &build_curves(&w(1, 4)).unwrap()[0];
    assert_eq!(c.q_plus.im - c.q_minus.im, 2);
    assert_eq!(build_curves(&w(1, 1)).unwrap().len(), 1);
    assert_eq!(build_curves(&w(2, 3)).unwrap().len(), 4);
}

#[test]
fn curve_errors() {
    assert!(matches!(build_curves(&w(3, 2)), Err(AsideError::Unsorted(3, 2))));
    let three = Weights::new(vec![1, 1, 1]).unwrap();
    assert!(matches!(build_curves(&three), Err(AsideError::NotTwoWeights(3))));
}

#[test]
fn segments_join_their_endpoints() {
    for (a0, a1) in [(1, 1), (2, 3), (1, 4), (3, 7)] {
        let s = Strip::new(&w(a0, a1)).unwrap();
        for c in build_curves(&w(a0, a1)).unwrap() {
            let k = c.index;
            assert_eq!(c.p_plus.im + s.slope_plus(k), c.q_plus.im);
            assert_eq!(c.p_minus.im + s.slope_minus(k), c.q_minus.im);
            assert_eq!(c.arc_center.im + c.arc_radius, c.p_plus.im);
            assert_eq!(c.arc_center.im - c.arc_radius, c.p_minus.im);
        }
    }
}

fn kinds(points: &[IntersectionPoint]) -> Vec<(Kind, Option<Rational64>)> {
    points.iter().map(|p| (p.kind, p.x)).collect()
}

#[test]
fn intersection_examples() {
    let a = w(2, 3);
    assert_eq!(kinds(&intersections(&a, 0, 2).unwrap()), vec![(Kind::Arc, None), (Kind::SegPM, Some(r(2, 3)))]);
    assert_eq!(kinds(&intersections(&a, 0, 1).unwrap()), vec![(Kind::Arc, None)]);
    let pts = intersections(&a, 0, 3).unwrap();
    assert_eq!(
        kinds(&pts),
        vec![(Kind::Arc, None), (Kind::SegPM, Some(r(1, 4))), (Kind::SegMP, Some(r(1, 2)))]
    );
    assert_eq!(pts.iter().map(|p| p.shift).collect::<Vec<_>>(), vec![0, 0, -1]);
    assert_eq!(
        pts.iter().map(|p| p.label.clone()).collect::<Vec<_>>(),
        vec![E::empty(), E::generator(0), E::generator(1)]
    );
}

#[test]
fn intersection_errors() {
    let a = w(2, 3);
    assert!(matches!(intersections(&a, 2, 2), Err(AsideError::NotAscending(2, 2))));
    assert!(matches!(intersections(&a, 0, 4), Err(AsideError::IndexOutOfRange { index: 4, max: 3 })));
    assert!(intersections(&a, -1, 2).is_err());
}

#[test]
fn maslov_examples() {
    let a = w(2, 3);
    let pts = intersections(&a, 0, 3).unwrap();
    let degrees: Vec<i64> = pts.iter().map(|p| maslov_degree(&a, p).unwrap()).collect();
    assert_eq!(degrees, vec![0, 1, 1]);
    let mut fake = pts[2].clone();
    fake.k = 2;
    assert!(matches!(maslov_degree(&a, &fake), Err(AsideError::NoSuchPoint(0, 2, Kind::SegMP))));
}

#[test]
fn hom_space_examples() {
    let a = w(2, 3);
    let h = hom_space(&a, 0, 3).unwrap();
    assert_eq!(h.dims_up_to(1), vec![1, 2]);
    let labels: Vec<E> = h.labels().map(HomGenerator::label).collect();
    assert_eq!(labels, vec![E::empty(), E::generator(0), E::generator(1)]);

    let id = hom_space(&a, 2, 2).unwrap();
    assert_eq!(id.basis, vec![(0, HomGenerator::Identity)]);
    assert!(hom_space(&a, 3, 1).unwrap().is_zero());

    let h = hom_space(&w(1, 4), 0, 1).unwrap();
    assert_eq!(h.dims_up_to(1), vec![1, 1]);
    let labels: Vec<E> = h.labels().map(HomGenerator::label).collect();
    assert_eq!(labels, vec![E::empty(), E::generator(0)]);
}

#[test]
fn strip_svg_draws_every_curve() {
    let svg = strip_svg(&w(2, 3)).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<path").count(), 4);
    assert!(svg.trim_end().ends_with("</svg>"));
}

fn weight_pair() -> impl Strategy<Value = (i64, i64)> {
    (1i64..12, 1i64..12).prop_map(|(a, b)| (a.min(b), a.max(b)))
}

fn pair_in(l: i64) -> impl Strategy<Value = (i64, i64)> {
    (0..l - 1, 0..l - 1).prop_filter_map("need j < k", |(j, k)| (j < k).then_some((j, k)))
}

fn with_pair() -> impl Strategy<Value = ((i64, i64), (i64, i64))> {
    weight_pair()
        .prop_filter("need two curves", |(a, b)| a + b >= 3)
        .prop_flat_map(|ab| (Just(ab), pair_in(ab.0 + ab.1)))
}

proptest! {
    #[test]
    fn hom_dimension_formula(((a0, a1), (j, k)) in with_pair()) {
        let a = w(a0, a1);
        let h = hom_space(&a, j, k).unwrap();
        let gap = k - j;
        let expected = 1 + usize::from(a0 <= gap) + usize::from(a1 <= gap);
        prop_assert_eq!(h.total_dim(), expected);
        prop_assert_eq!(h.dims_up_to(1), vec![1, expected - 1]);
    }

    // Solves both line equations over every shift d independently of the
    // closed forms and checks the unique solution with x in (0, 1).
    #[test]
    fn segment_points_are_unique_solutions(((a0, a1), (j, k)) in with_pair()) {
        let a = w(a0, a1);
        let s = Strip::new(&a).unwrap();
        let (l, big) = (a.l(), a.l() - 1);
        let pts = intersections(&a, j, k).unwrap();
        for kind in [Kind::SegPM, Kind::SegMP] {
            let mut found = Vec::new();
            for d in -3i64..=3 {
                // Lines y = m x + c, the second one shifted by d periods.
                let ((m1, c1), (m2, c2)) = match kind {
                    Kind::SegPM => ((2 * j - 2 * l + 4 * a0, 2 * j + 1), (2 * k, 2 * k + 1 - 2 * big + 4 * big * d)),
                    _ => ((2 * k - 2 * l + 4 * a0, 2 * k + 1 + 4 * big * d), (2 * j, 2 * j + 1 - 2 * big)),
                };
                if m1 == m2 {
                    continue;
                }
                let x = r(c2 - c1, m1 - m2);
                if x > r(0, 1) && x < r(1, 1) {
                    found.push((d, x));
                }
            }
            let ours: Vec<_> = pts.iter().filter(|p| p.kind == kind).collect();
            prop_assert!(found.len() <= 1);
            prop_assert_eq!(ours.len(), found.len());
            if let (Some(p), Some(&(d, x))) = (ours.first(), found.first()) {
                prop_assert_eq!(p.x, Some(x));
                prop_assert_eq!(p.shift, d);
                let on_k = match kind {
                    Kind::SegPM => x * s.slope_minus(k) + r(2 * k + 1 - 2 * big, 1),
                    _ => x * s.slope_plus(k) + r(2 * k + 1, 1),
                };
                prop_assert_eq!(p.y, on_k);
            }
        }
    }

    #[test]
    fn degree_zero_exactly_on_arcs(((a0, a1), (j, k)) in with_pair()) {
        let a = w(a0, a1);
        for p in intersections(&a, j, k).unwrap() {
            let d = maslov_degree(&a, &p).unwrap();
            prop_assert_eq!(d, p.degree);
            prop_assert_eq!(d == 0, p.kind == Kind::Arc);
            prop_assert!(d == 0 || d == 1);
            prop_assert_eq!(p.label.degree() as i64, d);
        }
    }

    #[test]
    fn arc_points_sit_on_both_circles(((a0, a1), (j, k)) in with_pair()) {
        let a = w(a0, a1);
        let curves = build_curves(&a).unwrap();
        let p = &intersections(&a, j, k).unwrap()[0];
        let big = a.l() - 1;
        // Equal radii put the point at mid height, with x^2 = L^2 - (k - j)^2 > 0.
        let (cj, ck) = (curves[j as usize].arc_center.im, curves[k as usize].arc_center.im);
        prop_assert_eq!(p.y * 2, r(cj + ck, 1));
        prop_assert!(big * big - (k - j) * (k - j) > 0);
    }
}
