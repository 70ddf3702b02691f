use aside::*;
use proptest::prelude::*;
use weights_core::{ExteriorBasisElement as E, Weights};

use Sign::{Minus, Plus};

fn w(a0: i64, a1: i64) -> Weights {
    Weights::new(vec![a0, a1]).unwrap()
}

fn pt(a: &Weights, j: i64, k: i64, kind: Kind) -> IntersectionPoint {
    intersections(a, j, k).unwrap().into_iter().find(|p| p.kind == kind).unwrap()
}

#[test]
fn arc_triangle_is_accepted() {
    let word = DiscWord::new(
        vec![Letter::arc(0, Minus), Letter::arc(1, Plus), Letter::arc(2, Minus)],
        vec![Kind::Arc; 3],
    );
    assert_eq!(classify_disc_word(&w(2, 3), &word).unwrap(), Verdict::Accept);
    assert_eq!(word.to_string(), "C_0(-) C_1(+) C_2(-)");
}

#[test]
fn reversed_arc_triangle_fails_coverage() {
    let word = DiscWord::new(
        vec![Letter::arc(0, Plus), Letter::arc(1, Minus), Letter::arc(2, Plus)],
        vec![Kind::Arc; 3],
    );
    assert_eq!(
        classify_disc_word(&w(2, 3), &word).unwrap(),
        Verdict::Reject(RejectReason::Coverage { block: 0 })
    );
}

#[test]
fn three_segments_in_a_row_are_rejected() {
    let word = DiscWord::new(
        vec![Letter::s_plus(0, Plus), Letter::s_minus(1, Plus), Letter::s_plus(2, Minus)],
        vec![Kind::SegPM; 3],
    );
    assert_eq!(
        classify_disc_word(&w(2, 3), &word).unwrap(),
        Verdict::Reject(RejectReason::ThreeConsecutiveSegments)
    );
}

#[test]
fn two_arc_pairs_are_rejected() {
    let word = DiscWord::new(
        vec![Letter::arc(0, Plus), Letter::arc(1, Minus), Letter::arc(2, Plus), Letter::arc(3, Minus)],
        vec![Kind::Arc; 4],
    );
    assert_eq!(
        classify_disc_word(&w(2, 3), &word).unwrap(),
        Verdict::Reject(RejectReason::ArcWordNotTriangle)
    );
    let mixed = DiscWord::new(
        vec![
            Letter::s_plus(0, Minus),
            Letter::arc(0, Minus),
            Letter::arc(1, Plus),
            Letter::arc(2, Minus),
            Letter::s_minus(2, Minus),
        ],
        vec![Kind::Arc, Kind::Arc, Kind::SegPM],
    );
    assert_eq!(
        classify_disc_word(&w(2, 3), &mixed).unwrap(),
        Verdict::Reject(RejectReason::MultipleArcPairs)
    );
}

#[test]
fn other_named_rules() {
    let a = w(2, 3);
    let reject = |letters: Vec<Letter>, corners: Vec<Kind>| match classify_disc_word(&a, &DiscWord::new(letters, corners)) {
        Ok(Verdict::Reject(r)) => r,
        other => panic!("{other:?}"),
    };
    assert_eq!(
        reject(vec![Letter::arc(1, Minus), Letter::arc(0, Plus), Letter::arc(2, Minus)], vec![Kind::Arc; 3]),
        RejectReason::NonIncreasingSubscripts
    );
    assert_eq!(
        reject(vec![Letter::s_plus(0, Plus), Letter::s_minus(2, Plus)], vec![Kind::SegPM; 2]),
        RejectReason::SegmentOnly
    );
    assert_eq!(
        reject(
            vec![Letter::s_plus(0, Minus), Letter::arc(0, Minus), Letter::s_minus(1, Plus), Letter::s_plus(2, Plus)],
            vec![Kind::Arc; 3]
        ),
        RejectReason::IsolatedArc
    );
    assert_eq!(
        reject(
            vec![Letter::arc(0, Minus), Letter::s_plus(1, Plus), Letter::s_minus(3, Plus), Letter::arc(3, Plus)],
            vec![Kind::Arc; 3]
        ),
        RejectReason::ArcEndpoints
    );
}

#[test]
fn geometric_rejections() {
    let a = w(2, 3);
    // C_0 and C_1 share no SegPM point since a_0 = 2 > 1.
    let word = DiscWord::new(
        vec![Letter::s_plus(0, Minus), Letter::arc(0, Minus), Letter::arc(1, Plus), Letter::s_plus(1, Plus), Letter::s_minus(2, Plus)],
        vec![Kind::Arc, Kind::SegPM, Kind::SegPM],
    );
    assert_eq!(
        classify_disc_word(&a, &word).unwrap(),
        Verdict::Reject(RejectReason::MissingCorner { corner: 1 })
    );
}

#[test]
fn malformed_words_are_errors() {
    let a = w(2, 3);
    let bad = [
        DiscWord::new(vec![], vec![]),
        DiscWord::new(vec![Letter::arc(0, Minus), Letter::arc(7, Plus)], vec![Kind::Arc; 2]),
        DiscWord::new(vec![Letter::arc(0, Minus), Letter::s_plus(0, Minus)], vec![Kind::Arc]),
        DiscWord::new(vec![Letter::arc(0, Minus), Letter::arc(1, Plus)], vec![Kind::Arc]),
        DiscWord::new(vec![Letter::s_plus(0, Minus), Letter::arc(0, Plus), Letter::arc(1, Plus)], vec![Kind::Arc; 2]),
        DiscWord::new(vec![Letter::s_plus(0, Minus), Letter::s_minus(0, Minus), Letter::arc(1, Plus)], vec![Kind::Arc; 2]),
    ];
    for word in bad {
        assert!(matches!(classify_disc_word(&a, &word), Err(AsideError::MalformedWord(_))), "{word}");
    }
}

#[test]
fn m2_examples() {
    let a = w(2, 3);
    let arc01 = pt(&a, 0, 1, Kind::Arc);
    let arc12 = pt(&a, 1, 2, Kind::Arc);
    assert_eq!(m2_product(&a, &arc12, &arc01).unwrap(), vec![(1, pt(&a, 0, 2, Kind::Arc))]);

    let pm13 = pt(&a, 1, 3, Kind::SegPM);
    assert_eq!(m2_product(&a, &pm13, &arc01).unwrap(), vec![(1, pt(&a, 0, 3, Kind::SegPM))]);
    let pm02 = pt(&a, 0, 2, Kind::SegPM);
    let arc23 = pt(&a, 2, 3, Kind::Arc);
    assert_eq!(m2_product(&a, &arc23, &pm02).unwrap(), vec![(1, pt(&a, 0, 3, Kind::SegPM))]);

    let d = w(3, 3);
    let mp03 = pt(&d, 0, 3, Kind::SegMP);
    let arc34 = pt(&d, 3, 4, Kind::Arc);
    assert_eq!(m2_product(&d, &arc34, &mp03).unwrap(), vec![(1, pt(&d, 0, 4, Kind::SegMP))]);

    // e_0 e_0 = 0.
    let b = w(1, 4);
    let pm01 = pt(&b, 0, 1, Kind::SegPM);
    let pm12 = pt(&b, 1, 2, Kind::SegPM);
    assert!(m2_product(&b, &pm12, &pm01).unwrap().is_empty());
}

#[test]
fn e0_and_e1_never_compose() {
    // SegPM on (i, j) and SegMP on (j, k) need k - i >= a_0 + a_1 = l, past
    // the last curve, so the product e_0 e_1 has no operands at all.
    for (a0, a1) in [(1, 1), (1, 2), (2, 3), (3, 3), (2, 7)] {
        let a = w(a0, a1);
        for (i, j, k) in all_triples(&a) {
            let has = |x: i64, y: i64, kind| intersections(&a, x, y).unwrap().iter().any(|p| p.kind == kind);
            assert!(!(has(i, j, Kind::SegPM) && has(j, k, Kind::SegMP)));
            assert!(!(has(i, j, Kind::SegMP) && has(j, k, Kind::SegPM)));
        }
    }
}

#[test]
fn m2_mismatched_endpoints() {
    let a = w(2, 3);
    let arc01 = pt(&a, 0, 1, Kind::Arc);
    let arc23 = pt(&a, 2, 3, Kind::Arc);
    assert!(matches!(m2_product(&a, &arc23, &arc01), Err(AsideError::EndpointMismatch(0, 1, 2, 3))));
}

#[test]
fn higher_products_examples() {
    for (a0, a1) in [(2, 3), (1, 4), (1, 1)] {
        let report = higher_products_vanish(&w(a0, a1), 8).unwrap();
        assert!(report.pass);
        assert!(report.accepted_by_corners.keys().all(|&c| c == 3));
    }
    let report = higher_products_vanish(&w(1, 1), 8).unwrap();
    assert!(report.examined_by_length.is_empty());
    assert!(matches!(higher_products_vanish(&w(2, 3), 5), Err(AsideError::WordBound(5))));
}

/// Independent product rule on labels: wedge when disjoint, zero when the
/// weight exceeds the target gap.
fn wedge_label(a: &Weights, x: &E, y: &E, gap: i64) -> Option<E> {
    if x.mask() & y.mask() != 0 {
        return None;
    }
    let e = E::from_mask(x.mask() | y.mask());
    (e.weight(a) <= gap).then_some(e)
}

fn all_triples(a: &Weights) -> impl Iterator<Item = (i64, i64, i64)> {
    let n = a.l() - 1;
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

/// Letter shapes of the accepted triangles on curves `i < j < k`.
fn shape(word: &DiscWord) -> String {
    let curves: Vec<i64> = {
        let mut c: Vec<i64> = word.letters.iter().map(|l| l.curve).collect();
        c.dedup();
        c
    };
    word.letters
        .iter()
        .map(|l| {
            let name = ["i", "j", "k"][curves.iter().position(|&c| c == l.curve).unwrap()];
            let s = if l.sign == Plus { "+" } else { "-" };
            match l.piece {
                Piece::Arc => format!("C{name}{s}"),
                Piece::SPlus => format!("s{name}p{s}"),
                Piece::SMinus => format!("s{name}m{s}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn accepted_triangles_have_five_shapes() {
    let allowed = [
        "Ci- Cj+ Ck-",
        "sip- Ci- Cj+ sjp+ skm+",
        "sip+ sjm+ Cj+ Ck- skm-",
        "sim+ Ci+ Cj- sjm- skp-",
        "sim- sjp- Cj- Ck+ skp+",
    ];
    let kinds = [Kind::Arc, Kind::SegPM, Kind::SegMP];
    let mut seen = std::collections::BTreeSet::new();
    for (a0, a1) in [(1, 1), (1, 2), (2, 3), (1, 4), (3, 3), (3, 5), (4, 4), (2, 7)] {
        let a = w(a0, a1);
        let strip = Strip::new(&a).unwrap();
        for (i, j, k) in all_triples(&a) {
            for x in kinds {
                for y in kinds {
                    for z in kinds {
                        let Some(word) = word_from_corners(&strip, &[i, j, k], &[x, y, z]) else {
                            continue;
                        };
                        if classify_disc_word(&a, &word).unwrap().is_accept() {
                            let s = shape(&word);
                            assert!(allowed.contains(&s.as_str()), "{a} {word}");
                            seen.insert(s);
                        }
                    }
                }
            }
        }
    }
    assert_eq!(seen.len(), allowed.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_match_the_wedge((a0, a1) in (1i64..9, 1i64..9)) {
        let a = w(a0.min(a1), a0.max(a1));
        for (i, j, k) in all_triples(&a) {
            for p0 in intersections(&a, i, j).unwrap() {
                for p1 in intersections(&a, j, k).unwrap() {
                    let got = m2_product(&a, &p1, &p0).unwrap();
                    let expected = wedge_label(&a, &p1.label, &p0.label, k - i);
                    let labels: Vec<(i64, E)> = got.iter().map(|(c, p)| (*c, p.label.clone())).collect();
                    prop_assert_eq!(labels, expected.into_iter().map(|e| (1, e)).collect::<Vec<_>>());
                    for (_, p) in &got {
                        prop_assert_eq!(p.degree, p0.degree + p1.degree);
                    }
                }
            }
        }
    }

    #[test]
    fn products_are_associative((a0, a1) in (1i64..7, 1i64..7)) {
        let a = w(a0.min(a1), a0.max(a1));
        let n = a.l() - 1;
        let compose = |x: &[(i64, IntersectionPoint)], y: &[(i64, IntersectionPoint)]| {
            let mut out = Vec::new();
            for (cx, px) in x {
                for (cy, py) in y {
                    for (c, p) in m2_product(&a, px, py).unwrap() {
                        out.push((c * cx * cy, p));
                    }
                }
            }
            out
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for m in k + 1..n {
                        for pa in intersections(&a, i, j).unwrap() {
                            for pb in intersections(&a, j, k).unwrap() {
                                for pc in intersections(&a, k, m).unwrap() {
                                    let one = |p: &IntersectionPoint| vec![(1, p.clone())];
                                    let left = compose(&compose(&one(&pc), &one(&pb)), &one(&pa));
                                    let right = compose(&one(&pc), &compose(&one(&pb), &one(&pa)));
                                    prop_assert_eq!(left, right);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn verdicts_are_period_invariant((a0, a1) in (1i64..8, 1i64..8), lift in -3i64..=3) {
        let a = w(a0.min(a1), a0.max(a1));
        let strip = Strip::new(&a).unwrap();
        let kinds = [Kind::Arc, Kind::SegPM, Kind::SegMP];
        for (i, j, k) in all_triples(&a) {
            for x in kinds {
                for y in kinds {
                    for z in kinds {
                        if let Some(word) = word_from_corners(&strip, &[i, j, k], &[x, y, z]) {
                            prop_assert_eq!(
                                classify_disc_word(&a, &word).unwrap(),
                                classify_disc_word_shifted(&a, &word, lift).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn only_triangles_survive((a0, a1) in (1i64..7, 1i64..7)) {
        let a = w(a0.min(a1), a0.max(a1));
        let report = higher_products_vanish(&a, 8).unwrap();
        prop_assert!(report.pass);
        let accepted: u64 = report.accepted_by_length.values().sum();
        prop_assert_eq!(report.accepted_by_corners.get(&3).copied().unwrap_or(0), accepted);
    }
}
