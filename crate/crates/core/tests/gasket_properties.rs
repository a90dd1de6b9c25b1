use std::collections::BTreeSet;

use gasket_core::exact::{dyadic, int, rat};
use gasket_core::gasket::{
    apply_map, apply_word, cell, find_witness, in_stage, locate_cells, side_dyadics, stage_area,
};
use gasket_core::geom::{convex_hull, Point, Triangle};
use gasket_core::{Gasket, MembershipWitness, Side, Surd3, WitnessedPoint, Word};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u8..=3, 0..=max_len).prop_map(|l| Word::new(l).unwrap())
}

fn side() -> impl Strategy<Value = Side> {
    (0u8..3).prop_map(|i| Side::ALL[i as usize])
}

fn witness() -> impl Strategy<Value = MembershipWitness> {
    (word(6), side(), 0u32..=8, any::<u16>()).prop_map(|(w, s, m, k)| {
        let k = k as i128 % ((1i128 << m) + 1);
        MembershipWitness::new(w, s, dyadic(k, m)).unwrap()
    })
}

proptest! {
    #[test]
    fn witnessed_points_lie_in_every_stage(w in witness()) {
        let p = w.point();
        prop_assert!(in_stage(&p, 12));
        prop_assert!(WitnessedPoint::from_witness(w.clone()).is_valid());
        let found = find_witness(&p, 14);
        prop_assert!(found.is_some());
        prop_assert_eq!(found.unwrap().point(), p);
    }

    #[test]
    fn push_forward_then_pull_back(w in witness(), prefix in word(5)) {
        let pushed = w.push_forward(&prefix);
        prop_assert_eq!(pushed.point(), apply_word(&prefix, &w.point()));
        let back = pushed.pull_back(&prefix).unwrap();
        prop_assert_eq!(back.point(), w.point());
    }

    #[test]
    fn pull_back_along_any_containing_cell(w in witness(), depth in 0usize..6) {
        let p = w.point();
        for v in locate_cells(&p, depth).unwrap() {
            let back = w.pull_back(&v);
            prop_assert!(back.is_some(), "no pullback of {} along {}", w.word(), v);
            prop_assert_eq!(back.unwrap().point(), gasket_core::gasket::pull_back(&v, &p));
        }
    }

    #[test]
    fn cells_are_images_of_the_base(w in word(8)) {
        let c = cell(&w);
        let image = Triangle::unit().map(|v| apply_word(&w, v)).unwrap();
        prop_assert!(c.triangle.same_as(&image));
        prop_assert_eq!(c.triangle.side_lengths2(), [c.side * c.side; 3]);
        let mut scale = rat(1, 4);
        for _ in 0..w.len() {
            scale *= rat(1, 4);
        }
        prop_assert_eq!(c.triangle.area(), Surd3::sqrt3_times(scale));
        // the interior centroid lies in exactly this cell
        let cells = locate_cells(&c.triangle.centroid(), w.len()).unwrap();
        prop_assert_eq!(cells, vec![w.clone()]);
    }

    #[test]
    fn word_text_round_trip(w in word(20)) {
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn parent_cells_contain_children(w in word(7), j in 1u8..=3) {
        let parent = cell(&w).triangle;
        for v in cell(&w.child(j)).triangle.vertices() {
            prop_assert!(parent.contains(&v).is_in_closed());
        }
    }

    #[test]
    fn side_dyadics_lie_on_the_side(w in word(5), s in side(), n in 0u32..6) {
        let pts = side_dyadics(&w, s, n);
        prop_assert_eq!(pts.len(), (1usize << n) + 1);
        let (a, b) = s.endpoints();
        let pa = apply_word(&w, &Point::vertex(a).unwrap());
        let pb = apply_word(&w, &Point::vertex(b).unwrap());
        for (k, p) in pts.iter().enumerate() {
            prop_assert_eq!(*p.point(), pa.lerp(&pb, dyadic(k as i128, n)));
            prop_assert!(in_stage(p.point(), 10));
        }
    }
}

#[test]
fn vertex_samples_are_self_similar() {
    let g = Gasket::default();
    for n in 0..7u32 {
        let lower: Vec<Point> = g.vertex_sample(n).unwrap().iter().map(|p| *p.point()).collect();
        let upper: BTreeSet<Point> = g.vertex_sample(n + 1).unwrap().iter().map(|p| *p.point()).collect();
        let images: BTreeSet<Point> = (1..=3u8)
            .flat_map(|i| lower.iter().map(move |p| apply_map(i, p).unwrap()))
            .collect();
        assert_eq!(images, upper, "level {n}");
        assert_eq!(upper.len(), 3 * (3usize.pow(n + 1) + 1) / 2);
    }
}

#[test]
fn stages_are_nested_and_areas_telescope() {
    let g = Gasket::default();
    for m in 0..7u32 {
        let coarse = g.stage(m).unwrap();
        let fine = g.stage(m + 1).unwrap();
        assert_eq!(fine.cells.len(), 3 * coarse.cells.len());
        for (k, c) in fine.cells.iter().enumerate() {
            let parent = &coarse.cells[k / 3];
            assert!(c.word.starts_with(&parent.word));
            for v in c.triangle.vertices() {
                assert!(parent.triangle.contains(&v).is_in_closed());
            }
        }
        assert_eq!(fine.total_area(), coarse.total_area() * Surd3::from_rational(rat(3, 4)));
        assert_eq!(coarse.total_area(), stage_area(m));
    }
}

#[test]
fn hull_of_every_sample_is_the_base_triangle() {
    let g = Gasket::default();
    for n in 0..=8u32 {
        let pts: Vec<Point> = g.vertex_sample(n).unwrap().iter().map(|p| *p.point()).collect();
        let hull = convex_hull(&pts).unwrap();
        assert!(hull.equals_triangle(&Triangle::unit()));
        let diam2 = hull
            .vertices()
            .iter()
            .flat_map(|a| hull.vertices().iter().map(move |b| a.dist2(b)))
            .max()
            .unwrap();
        assert_eq!(diam2, int(1));
    }
}

#[test]
fn sample_witnesses_reproduce_their_points() {
    let g = Gasket::default();
    for n in 0..=6u32 {
        for p in g.vertex_sample(n).unwrap() {
            assert!(p.is_valid());
            assert!(in_stage(p.point(), 12));
        }
    }
}

#[test]
fn points_off_the_gasket_fail_deep_stages() {
    // centroid of the removed middle triangle
    let hole = Point::new(rat(1, 3), rat(1, 3));
    assert!(in_stage(&hole, 0));
    assert!(!in_stage(&hole, 1));
    assert!(find_witness(&hole, 10).is_none());
}
