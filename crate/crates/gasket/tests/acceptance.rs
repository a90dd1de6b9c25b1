//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use gasket::cli::{parse_query_point, parse_radius};
use gasket::scan::parallel_scan;
use gasket_core::exact::{int, rat, Rational};
use gasket_core::gasket::{apply_word, in_stage, side_dyadics, stage_area};
use gasket_core::geom::{convex_hull, inscribed_disk};
use gasket_core::sumset::{kominers_min_summands, segment_sum, BoundQuery, Segment};
use gasket_core::thickness::{
    default_radii, empirical_inradius, local_triangle, outer_inradius, thickness_scan, upper_bound_witness,
    ScanGrid,
};
use gasket_core::{Gasket, Point, Side, Surd3, Triangle, Word};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn tau_f64() -> f64 {
    3f64.sqrt() / 6.0
}

fn exact_witness() -> Check {
    let start = Instant::now();
    let g = Gasket::default();
    let w = upper_bound_witness(&g).map_err(|e| e.to_string())?;
    ensure(w.inradius == Surd3::sqrt3_times(rat(1, 6)), || format!("inradius {} is not sqrt3/6", w.inradius))?;
    ensure((w.inradius.to_f64() - tau_f64()).abs() < 1e-12, || format!("float {}", w.inradius.to_f64()))?;
    ensure(w.hull.equals_triangle(&Triangle::unit()), || "hull is not the base triangle".into())?;
    let lp = inscribed_disk(&w.hull).radius();
    ensure((lp - tau_f64()).abs() < 1e-12, || format!("LP radius {lp}"))?;
    // the CLI subcommand reports the same value
    let cfg = gasket::cli::parse_args(["gasket", "witness"], None).map_err(|e| format!("{e:?}"))?;
    let v: serde_json::Value = serde_json::from_str(&gasket::cli::run(&cfg).map_err(|e| e.to_string())?).unwrap();
    ensure(v["inradius"]["sqrt3_coeff"] == "1/6" && v["inradius"]["rational"] == "0/1", || format!("cli {v}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("inradius = sqrt3/6 exactly, float {:.15}, {elapsed:.2?}", w.inradius.to_f64()))
}

fn certificate_sweep() -> Check {
    let start = Instant::now();
    let g = Gasket::default();
    let xs = g.vertex_sample(4).map_err(|e| e.to_string())?;
    ensure(xs.len() == 123, || format!("{} sample points", xs.len()))?;
    let radii = default_radii();
    let failures: Vec<String> = xs
        .par_iter()
        .flat_map_iter(|x| radii.iter().map(move |r| (x, *r)))
        .filter_map(|(x, r)| {
            let check = || -> Result<(), String> {
                let c = local_triangle(x, r).map_err(|e| e.to_string())?;
                c.verify().map_err(|e| e.to_string())?;
                let q = c.triangle;
                ensure(q.side_lengths2() == [r * r; 3], || "side is not r".into())?;
                for (v, wit) in q.vertices().iter().zip(&c.vertex_witnesses) {
                    ensure(v.dist2(x.point()) <= r * r, || "vertex outside B(x, r)".into())?;
                    ensure(wit.point() == *v, || "witness does not reproduce vertex".into())?;
                    ensure(in_stage(v, 12), || "vertex not in K_12".into())?;
                }
                Ok(())
            };
            check().err().map(|e| format!("x = {:?}, r = {r}: {e}", x.point()))
        })
        .collect();
    let total = xs.len() * radii.len();
    ensure(failures.is_empty(), || format!("{} of {total} failed; first: {}", failures.len(), failures[0]))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{total} certificates, 0 failures, {elapsed:.2?}"))
}

fn oracle_consistency() -> Check {
    let start = Instant::now();
    let g = Gasket::default();
    let radii: Vec<Rational> = default_radii().into_iter().filter(|r| *r >= rat(1, 4)).collect();
    let grid = ScanGrid::new(10, 4, radii).map_err(|e| e.to_string())?;
    let report = parallel_scan(&g, grid, None).map_err(|e| e.to_string())?;
    let lower = tau_f64() - 0.02;
    let bad: Vec<String> = report
        .entries
        .par_iter()
        .filter_map(|e| {
            let outer = outer_inradius(&g, &e.x, e.r, 10).ok()?.radius / gasket_core::exact::to_f64(&e.r);
            (e.normalized < lower || e.normalized > outer + 1e-12)
                .then(|| format!("x = {:?}, r = {}: {} not in [{lower}, {outer}]", e.x, e.r, e.normalized))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} pairs out of bracket; first: {}", bad.len(), bad[0]))?;
    let min = report.numeric_lower.unwrap_or(f64::NAN);

    // monotone in the sample level on spot checks
    let sample = g.vertex_sample(4).unwrap();
    let spots: Vec<(Point, Rational)> =
        [(0usize, 8i128), (7, 11), (19, 16), (40, 23), (61, 32), (88, 9), (101, 27), (122, 13)]
            .iter()
            .map(|&(i, k)| (*sample[i].point(), rat(k, 32)))
            .collect();
    for (x, r) in &spots {
        let mut prev = 0.0;
        for n in 6..=10 {
            let v = empirical_inradius(&g, x, *r, n).map_err(|e| e.to_string())?.radius;
            ensure(v + 1e-12 >= prev, || format!("x = {x:?}, r = {r}: level {n} gives {v} < {prev}"))?;
            prev = v;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{} pairs in bracket, min normalized {min:.6} (>= {lower:.6}), {} monotone spot checks over 5 levels, {elapsed:.2?}",
        report.entries.len(),
        spots.len()
    ))
}

fn stage_area_law() -> Check {
    let g = Gasket::default();
    for m in 0..=10u32 {
        let enumerated = g.stage(m).map_err(|e| e.to_string())?.total_area();
        // (3/4)^m · √3/4 from integer powers
        let law = Surd3::sqrt3_times(Rational::new(3i128.pow(m), 4i128.pow(m + 1)));
        ensure(enumerated == law && stage_area(m) == law, || {
            format!("m = {m}: enumerated {enumerated}, formula {}, law {law}", stage_area(m))
        })?;
    }
    Ok(format!("m = 0..10 exact; area(K_10) = {}", stage_area(10)))
}

fn side_witnesses() -> Check {
    let mut checked = 0usize;
    let check_all = |w: &Word, checked: &mut usize| -> Result<(), String> {
        for side in Side::ALL {
            let pts = side_dyadics(&Word::empty(), side, 10);
            ensure(pts.len() == 1025, || format!("{} points", pts.len()))?;
            for p in pts {
                let q = apply_word(w, p.point());
                let wit = p.witness().push_forward(w);
                ensure(wit.point() == q, || format!("pushed witness misses {q:?}"))?;
                for m in 1..=10 {
                    ensure(in_stage(&q, m), || format!("{q:?} (word '{w}') not in K_{m}"))?;
                }
                *checked += 1;
            }
        }
        Ok(())
    };
    check_all(&Word::empty(), &mut checked)?;
    let mut runner = TestRunner::deterministic();
    let words = proptest::collection::vec(1u8..=3, 0..=6);
    for _ in 0..20 {
        let letters = words.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        check_all(&Word::new(letters).unwrap(), &mut checked)?;
    }
    Ok(format!("{checked} side points pass in_stage for m = 1..10 (base + 20 random words)"))
}

fn rescaling_example() -> Check {
    let g = Gasket::default();
    let x = parse_query_point("cart:0.07,0.04", &g).map_err(|e| e.to_string())?;
    let r = parse_radius("0.20").map_err(|e| e.to_string())?;
    ensure(r == rat(1, 5), || format!("r parsed as {r}"))?;
    let c = local_triangle(&x, r).map_err(|e| e.to_string())?;
    ensure(c.n == 2, || format!("n = {}", c.n))?;
    ensure(c.word.to_string() == "11", || format!("word '{}'", c.word))?;
    ensure(c.r_normalized == rat(4, 5), || format!("r' = {}", c.r_normalized))?;
    let four_x = *x.point() * int(4);
    ensure(*c.x_normalized.point() == four_x, || "x' is not 4x".into())?;
    ensure(c.triangle.side_lengths2() == [rat(1, 25); 3], || "side of Q is not 1/5".into())?;
    let [cx, cy] = x.point().cartesian();
    Ok(format!("x = ({cx:.4}, {cy:.4}) -> n = 2, w = 11, r' = 4/5, x' = 4x, side(Q) = 1/5"))
}

fn kominers_bound() -> Check {
    let c = 3f64.sqrt() / 6.0;
    let b = kominers_min_summands(&BoundQuery::new(2, c).map_err(|e| e.to_string())?);
    let oracle = 2f64.sqrt() / ((1.0 + c).sqrt() - 1.0).powi(2);
    ensure((b.threshold - 77.37).abs() <= 0.01, || format!("threshold {}", b.threshold))?;
    ensure((b.threshold - oracle).abs() < 1e-9, || format!("threshold {} vs {oracle}", b.threshold))?;
    ensure(b.n_min == 78, || format!("n_min {}", b.n_min))?;
    Ok(format!("threshold {:.4}, n_min {}", b.threshold, b.n_min))
}

fn parallelogram() -> Check {
    let (v1, v2, v3) = (Point::v1(), Point::v2(), Point::v3());
    let p = segment_sum(&Segment::new(v1, v2), &Segment::new(v1, v3));
    let got: BTreeSet<Point> = p.vertices().iter().copied().collect();
    let want: BTreeSet<Point> = [v1 + v1, v1 + v2, v2 + v3, v1 + v3].into_iter().collect();
    ensure(got == want && p.len() == 4, || format!("vertices {:?}", p.vertices()))?;
    ensure(p.area() == Surd3::sqrt3_times(rat(1, 2)), || format!("area {}", p.area()))?;
    let r = inscribed_disk(&p).radius();
    ensure(r > 0.0, || "no inscribed disk".into())?;
    // unit rhombus with a 60 degree angle: height sqrt3/2
    ensure((r - 3f64.sqrt() / 4.0).abs() < 1e-12, || format!("inradius {r}"))?;
    Ok(format!("area sqrt3/2 exact, inscribed radius {r:.6}"))
}

fn hull_facts() -> Check {
    let g = Gasket::default();
    for n in 0..=8u32 {
        let pts: Vec<Point> = g.vertex_sample(n).unwrap().iter().map(|p| *p.point()).collect();
        let hull = convex_hull(&pts).map_err(|e| e.to_string())?;
        ensure(hull.equals_triangle(&Triangle::unit()), || format!("n = {n}: hull {:?}", hull.vertices()))?;
        // diameter over all sample pairs is attained on the hull
        let diam2 = hull
            .vertices()
            .iter()
            .flat_map(|a| hull.vertices().iter().map(move |b| a.dist2(b)))
            .max()
            .unwrap();
        ensure(diam2 == int(1), || format!("n = {n}: diameter^2 {diam2}"))?;
        ensure(pts.iter().all(|p| p.dist2(&Point::v1()) <= int(1)), || "point beyond unit distance".into())?;
    }
    Ok("conv(E_n) = base triangle and diam = 1 for n = 0..8".into())
}

fn determinism() -> Check {
    let g = Gasket::default();
    let grid = ScanGrid::new(8, 3, default_radii()).unwrap();
    let one = parallel_scan(&g, grid.clone(), Some(1)).map_err(|e| e.to_string())?;
    let eight = parallel_scan(&g, grid.clone(), Some(8)).map_err(|e| e.to_string())?;
    let again = parallel_scan(&g, grid.clone(), Some(8)).map_err(|e| e.to_string())?;
    let seq = thickness_scan(&g, grid).map_err(|e| e.to_string())?;
    ensure(one == eight && eight == again && one == seq, || "scan reports differ across thread counts".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases: [&[&str]; 10] = [
        &["stage", "--level", "5", "--format", "json"],
        &["stage", "--level", "4", "--format", "svg"],
        &["certificate", "--x", "cart:0.07,0.04", "--r", "0.20"],
        &["render", "--subject", "certificate", "--x", "cart:0.07,0.04", "--r", "0.20"],
        &["scan", "--sample-level", "8", "--query-level", "3", "--threads", "8"],
        &["scan", "--sample-level", "8", "--query-level", "3", "--format", "csv"],
        &["witness"],
        &["sumset", "--n-terms", "2", "--sample-level", "5", "--format", "json"],
        &["sumset", "--format", "svg"],
        &["bound", "--d", "2", "--c", "sqrt3/6"],
    ];
    for args in cases {
        let mut outputs = Vec::new();
        for round in 0..2 {
            let path = dir.path().join(format!("{}-{round}", args.join("_").replace([':', ',', '/'], "")));
            let status = Command::new(env!("CARGO_BIN_EXE_gasket"))
                .args(args)
                .arg("--out")
                .arg(&path)
                .env_remove("GASKET_LEVEL_CAP")
                .status()
                .map_err(|e| e.to_string())?;
            ensure(status.success(), || format!("{args:?} exited with {status}"))?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || format!("{args:?} differs between runs"))?;
    }
    Ok(format!("1/8 threads and sequential scans identical ({} entries); {} CLI artifacts byte-identical", one.entries.len(), cases.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact thickness witness", exact_witness),
        ("certificate soundness sweep", certificate_sweep),
        ("oracle consistency", oracle_consistency),
        ("stage-area law", stage_area_law),
        ("side witnesses in every stage", side_witnesses),
        ("rescaling example", rescaling_example),
        ("many-summand bound", kominers_bound),
        ("two-side parallelogram", parallelogram),
        ("hull and diameter", hull_facts),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

