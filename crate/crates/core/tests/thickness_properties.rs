use gasket_core::exact::{dyadic, int, rat, to_f64, Rational, SQRT3};
use gasket_core::gasket::{apply_map, in_stage, pull_back};
use gasket_core::geom::{convex_hull, inscribed_disk, Point};
use gasket_core::thickness::{
    empirical_inradius, local_triangle, local_triangle_normalized, outer_inradius, scale_level,
};
use gasket_core::{Gasket, MembershipWitness, Side, Surd3, WitnessedPoint, Word};
use proptest::prelude::*;

fn witnessed(max_len: usize) -> impl Strategy<Value = WitnessedPoint> {
    (prop::collection::vec(1u8..=3, 0..=max_len), 0usize..3, 0u32..=6, any::<u16>()).prop_map(|(l, s, m, k)| {
        let k = k as i128 % ((1i128 << m) + 1);
        let w = MembershipWitness::new(Word::new(l).unwrap(), Side::ALL[s], dyadic(k, m)).unwrap();
        WitnessedPoint::from_witness(w)
    })
}

fn radius() -> impl Strategy<Value = Rational> {
    (1i128..=96, 1i128..=96).prop_filter_map("r in (0, 1]", |(a, b)| (a <= b).then(|| rat(a, b)))
}

proptest! {
    #[test]
    fn certificates_are_sound(x in witnessed(6), r in radius()) {
        let cert = local_triangle(&x, r).unwrap();
        prop_assert!(cert.verify().is_ok());
        // independent re-checks
        let q = cert.triangle;
        prop_assert_eq!(q.side_lengths2(), [r * r; 3]);
        for v in q.vertices() {
            prop_assert!(v.dist2(x.point()) <= r * r);
            prop_assert!(in_stage(&v, 12));
        }
        for (v, w) in q.vertices().iter().zip(&cert.vertex_witnesses) {
            prop_assert_eq!(w.point(), *v);
        }
        prop_assert_eq!(cert.inradius(), Surd3::sqrt3_times(r * rat(1, 6)));
        let lp = inscribed_disk(&q.into()).radius();
        prop_assert!((lp - to_f64(&r) * SQRT3 / 6.0).abs() < 1e-12);
        let half = rat(1, 2);
        prop_assert!(cert.r_normalized >= half && cert.r_normalized <= int(1));
        // smallest such scale
        prop_assert!(cert.n == 0 || cert.r_normalized < int(1));
    }

    #[test]
    fn normalized_construction_is_total(x in witnessed(4), k in 0i128..=64) {
        // every point of E at every normalized radius in [1/2, 1]
        let r = rat(32 + k / 2, 64) + rat(k % 2, 128);
        let (corner, tri) = local_triangle_normalized(&x, r).unwrap();
        prop_assert!(tri.is_equilateral());
        prop_assert_eq!(tri.side_lengths2()[0], r * r);
        prop_assert!(tri.vertices().contains(&Point::vertex(corner.index()).unwrap()));
        for v in tri.vertices() {
            prop_assert!(v.dist2(x.point()) <= r * r);
        }
    }

    #[test]
    fn certificates_are_scale_equivariant(x in witnessed(6), r in radius()) {
        prop_assume!(r <= rat(1, 4));
        let cert = local_triangle(&x, r).unwrap();
        let j = cert.word.first().unwrap();
        let first = Word::new(vec![j]).unwrap();
        let back = x.witness().pull_back(&first).unwrap();
        let inner = WitnessedPoint::new(pull_back(&first, x.point()), back).unwrap();
        let coarse = local_triangle(&inner, r * int(2)).unwrap();
        let image = coarse.triangle.map(|v| apply_map(j, v).unwrap()).unwrap();
        prop_assert!(image.same_as(&cert.triangle));
        prop_assert_eq!(coarse.corner, cert.corner);
    }

    #[test]
    fn scale_level_brackets_radius(r in radius()) {
        let n = scale_level(&r);
        let scaled = r * int(1i128 << n);
        prop_assert!(scaled >= rat(1, 2) && scaled <= int(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_is_monotone_and_bracketed(qi in 0usize..123, k in 4i128..=32) {
        let g = Gasket::default();
        let queries = g.vertex_sample(4).unwrap();
        let x = *queries[qi % queries.len()].point();
        let r = rat(k, 32);
        let mut prev = 0.0f64;
        for n in 3..=7u32 {
            let inner = empirical_inradius(&g, &x, r, n).unwrap().radius;
            let outer = outer_inradius(&g, &x, r, n).unwrap().radius;
            prop_assert!(inner + 1e-12 >= prev, "level {} dropped: {} < {}", n, inner, prev);
            prop_assert!(inner <= outer + 1e-12);
            // the outer hull contains the certified triangle
            prop_assert!(outer >= to_f64(&r) * SQRT3 / 6.0 - 1e-9);
            prev = inner;
        }
    }
}

#[test]
fn pruned_oracle_matches_brute_force() {
    let g = Gasket::default();
    let sample: Vec<Point> = g.vertex_sample(6).unwrap().iter().map(|p| *p.point()).collect();
    for x in g.vertex_sample(2).unwrap() {
        for k in [3i128, 7, 12, 16, 25, 32] {
            let r = rat(k, 32);
            let near: Vec<Point> = sample.iter().copied().filter(|p| p.dist2(x.point()) <= r * r).collect();
            let brute = convex_hull(&near).unwrap();
            let expect = if brute.is_degenerate() { 0.0 } else { inscribed_disk(&brute).radius() };
            let got = empirical_inradius(&g, x.point(), r, 6).unwrap();
            assert!((got.radius - expect).abs() < 1e-12, "x = {:?}, r = {r}", x.point());
            assert_eq!(got.degenerate, brute.is_degenerate());
        }
    }
}

#[test]
fn corner_query_with_unit_radius_is_the_whole_triangle() {
    let g = Gasket::default();
    for n in [0u32, 3, 8] {
        let est = empirical_inradius(&g, &Point::v1(), int(1), n).unwrap();
        assert!((est.radius - SQRT3 / 6.0).abs() < 1e-12);
    }
}
