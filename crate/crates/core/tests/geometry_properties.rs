use gasket_core::exact::{int, rat, to_f64, SQRT3};
use gasket_core::geom::{
    convex_hull, inscribed_disk, orient, point_in_triangle, side_distances, Location, Point, Real, Triangle,
};
use proptest::prelude::*;
use std::cmp::Ordering;

fn lattice_point(max: i128, den: i128) -> impl Strategy<Value = Point> {
    (-max..=max, -max..=max).prop_map(move |(u, w)| Point::new(rat(u, den), rat(w, den)))
}

fn point_set() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(lattice_point(64, 32), 1..40)
}

/// Largest inscribed disk by enumerating every triple of edge lines and
/// solving for the point equidistant from all three.
fn triple_oracle(verts: &[[f64; 2]]) -> f64 {
    let m = verts.len();
    let lines: Vec<([f64; 2], f64)> = (0..m)
        .map(|i| {
            let (p, q) = (verts[i], verts[(i + 1) % m]);
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let len = dx.hypot(dy);
            // inward normal, distance = n·y - n·p
            let n = [-dy / len, dx / len];
            (n, n[0] * p[0] + n[1] * p[1])
        })
        .collect();
    let mut best = 0.0f64;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                // n_k·y - rho = off_k for k in {a, b, c}
                let rows = [lines[a], lines[b], lines[c]];
                let mat = rows.map(|(n, _)| [n[0], n[1], -1.0]);
                let rhs = rows.map(|(_, o)| o);
                let det = |m: [[f64; 3]; 3]| {
                    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
                };
                let d = det(mat);
                if d.abs() < 1e-14 {
                    continue;
                }
                let solve_col = |k: usize| {
                    let mut mm = mat;
                    for r in 0..3 {
                        mm[r][k] = rhs[r];
                    }
                    det(mm) / d
                };
                let (y0, y1, rho) = (solve_col(0), solve_col(1), solve_col(2));
                let feasible = lines.iter().all(|(n, o)| n[0] * y0 + n[1] * y1 - o >= rho - 1e-12);
                if feasible && rho > best {
                    best = rho;
                }
            }
        }
    }
    best
}

proptest! {
    #[test]
    fn hull_is_idempotent(pts in point_set()) {
        let h = convex_hull(&pts).unwrap();
        let again = convex_hull(h.vertices()).unwrap();
        prop_assert_eq!(h, again);
    }

    #[test]
    fn hull_is_monotone(pts in point_set(), extra in point_set()) {
        let small = convex_hull(&pts).unwrap();
        let mut all = pts.clone();
        all.extend(extra);
        let big = convex_hull(&all).unwrap();
        for v in small.vertices() {
            prop_assert!(big.contains(v).is_in_closed());
        }
        for p in &all {
            prop_assert!(big.contains(p).is_in_closed());
        }
    }

    #[test]
    fn hull_is_strictly_convex(pts in point_set()) {
        let h = convex_hull(&pts).unwrap();
        let v = h.vertices();
        if v.len() >= 3 {
            for i in 0..v.len() {
                let turn = orient(&v[i], &v[(i + 1) % v.len()], &v[(i + 2) % v.len()]);
                prop_assert_eq!(turn, Ordering::Greater);
            }
        }
    }

    #[test]
    fn inscribed_disk_is_optimal(pts in prop::collection::vec(lattice_point(64, 32), 4..30)) {
        let h = convex_hull(&pts).unwrap();
        prop_assume!(!h.is_degenerate());
        let d = inscribed_disk(&h);
        let oracle = triple_oracle(&h.cartesian());
        prop_assert!((d.radius() - oracle).abs() < 1e-9, "lp {} oracle {}", d.radius(), oracle);

        // no grid center does better, and the reported center is feasible
        let verts = h.cartesian();
        let m = verts.len();
        let min_edge = |c: [f64; 2]| (0..m).map(|i| {
            let (p, q) = (verts[i], verts[(i + 1) % m]);
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            (dx * (c[1] - p[1]) - dy * (c[0] - p[0])) / dx.hypot(dy)
        }).fold(f64::INFINITY, f64::min);
        let center = d.disk.center.cartesian();
        prop_assert!(min_edge(center) >= d.radius() - 1e-9);
        let (xs, ys): (Vec<f64>, Vec<f64>) = verts.iter().map(|p| (p[0], p[1])).unzip();
        let (x0, x1) = (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        let (y0, y1) = (ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        for i in 0..=40 {
            for j in 0..=40 {
                let c = [x0 + (x1 - x0) * i as f64 / 40.0, y0 + (y1 - y0) * j as f64 / 40.0];
                prop_assert!(min_edge(c) <= d.radius() + 1e-9);
            }
        }
    }

    #[test]
    fn viviani_exact_on_lattice_triangles(
        corner in lattice_point(16, 8),
        side_num in 1i128..16,
        up in any::<bool>(),
        a in 0i128..=64, b in 0i128..=64,
    ) {
        // lattice-aligned equilateral triangle of rational side
        let s = rat(side_num, 4);
        let (e1, e2) = if up {
            (Point::new(s, int(0)), Point::new(int(0), s))
        } else {
            (Point::new(s, int(0)), Point::new(s, -s))
        };
        let tri = Triangle::new(corner, corner + e1, corner + e2).unwrap();
        prop_assume!(a + b <= 64);
        let z = corner + e1 * rat(a, 64) + e2 * rat(b, 64);
        let d = side_distances(&z, &tri).unwrap();
        let sum = d.iter().map(|x| x.exact().unwrap()).fold(gasket_core::Surd3::zero(), |acc, x| acc + x);
        prop_assert_eq!(sum, gasket_core::Surd3::sqrt3_times(s * rat(1, 2)));
    }

    #[test]
    fn viviani_float_on_rotated_triangles(
        corner in lattice_point(16, 8),
        du in -32i128..32, dw in -32i128..32,
        weights in prop::collection::vec((0u32..1000, 0u32..1000, 1u32..1000), 1000),
    ) {
        prop_assume!(du != 0 || dw != 0);
        // rotation by 60° in the basis: (u, w) -> (-w, u + w)
        let d = Point::new(rat(du, 16), rat(dw, 16));
        let rot = Point::new(-d.w, d.u + d.w);
        let tri = Triangle::new(corner, corner + d, corner + rot).unwrap();
        prop_assert!(tri.is_equilateral());
        let side = to_f64(&d.norm2()).sqrt();
        let [a, b, c] = tri.vertices();
        for (x, y, zz) in weights {
            let total = (x + y + zz) as i128;
            let z = a * rat(x as i128, total) + b * rat(y as i128, total) + c * rat(zz as i128, total);
            let ds = side_distances(&z, &tri).unwrap();
            let sum: f64 = ds.iter().map(Real::to_f64).sum();
            prop_assert!((sum - side * SQRT3 / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orientation_is_affine_invariant(a in lattice_point(64, 16), b in lattice_point(64, 16), c in lattice_point(64, 16)) {
        let exact = orient(&a, &b, &c);
        let [pa, pb, pc] = [a, b, c].map(|p| p.cartesian());
        let cross = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0]);
        if cross.abs() > 1e-9 {
            prop_assert_eq!(exact, cross.partial_cmp(&0.0).unwrap());
        }
        // squared distance agrees with the Cartesian embedding
        let d2 = to_f64(&a.dist2(&b));
        let e = (pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2);
        prop_assert!((d2 - e).abs() < 1e-9);
    }
}

#[test]
fn inscribed_disk_of_triangle_and_rhombus() {
    let d = inscribed_disk(&Triangle::unit().into());
    assert!((d.radius() - SQRT3 / 6.0).abs() < 1e-12);
    let rhombus = convex_hull(&[
        Point::from_ints(0, 0),
        Point::from_ints(2, 0),
        Point::from_ints(2, 2),
        Point::from_ints(0, 2),
    ])
    .unwrap();
    // a lattice rhombus with 60° angle: inradius = side·sin60/2
    let r = inscribed_disk(&rhombus).radius();
    assert!((r - 2.0 * SQRT3 / 4.0).abs() < 1e-12);
}

#[test]
fn centroid_is_inside_unit_triangle() {
    let t = Triangle::unit();
    assert_eq!(point_in_triangle(&Point::new(rat(1, 3), rat(1, 3)), &t), Location::Inside);
    assert_eq!(point_in_triangle(&Point::new(rat(1, 2), rat(1, 2)), &t), Location::OnBoundary);
}
