//! Minkowski sums of witnessed pieces of the gasket.
//!
//! Interior evidence comes in two strengths. [`segment_sum`] is exact: two
//! non-parallel sides of `Δ` lie in `E`, so their sum, a parallelogram with
//! positive area, lies in `E + E`. [`interior_coverage_check`] is only a
//! density measurement on a finite sumset sample.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational};
use crate::gasket::Gasket;
use crate::geom::{convex_hull, ConvexPolygon, Disk, Point};

/// Default cap on the number of pairwise sums formed by one Minkowski step.
pub const DEFAULT_SUM_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

/// `s1 + s2`: a parallelogram, or a flat polygon when the segments are parallel.
pub fn segment_sum(s1: &Segment, s2: &Segment) -> ConvexPolygon {
    let sums = [s1.a + s2.a, s1.a + s2.b, s1.b + s2.a, s1.b + s2.b];
    convex_hull(&sums).expect("four sums")
}

/// Dimension and common thickness for the many-summand interior bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery {
    pub d: u32,
    pub c: f64,
}

impl BoundQuery {
    pub fn new(d: u32, c: f64) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::NonPositiveThickness(format!("{c}")));
        }
        if c > 1.0 {
            return Err(Error::BoundQuery(format!("thickness {c} exceeds 1")));
        }
        if d == 0 {
            return Err(Error::BoundQuery("dimension must be at least 1".into()));
        }
        Ok(BoundQuery { d, c })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    /// `√d / (√(1 + c) - 1)²`
    pub threshold: f64,
    /// Smallest integer strictly above the threshold.
    pub n_min: u64,
}

/// Smallest `n` with `n > √d / (√(1 + c) − 1)²`: that many summands of
/// thickness at least `c` have a sum with nonempty interior.
pub fn kominers_min_summands(q: &BoundQuery) -> BoundResult {
    let gap = libm::sqrt(1.0 + q.c) - 1.0;
    let threshold = libm::sqrt(q.d as f64) / (gap * gap);
    BoundResult { threshold, n_min: libm::floor(threshold) as u64 + 1 }
}

/// `{a + b}` deduplicated and sorted.
pub fn minkowski_sum(a: &[Point], b: &[Point], budget: u64) -> Result<Vec<Point>> {
    let size = a.len() as u64 * b.len() as u64;
    if size > budget {
        return Err(Error::Budget { size, budget, suggested_level: 0 });
    }
    let mut out = BTreeSet::new();
    for p in a {
        for q in b {
            out.insert(*p + *q);
        }
    }
    Ok(out.into_iter().collect())
}

/// `n_terms`-fold sum of a point set.
pub fn n_fold_sum(points: &[Point], n_terms: u32, budget: u64) -> Result<Vec<Point>> {
    if n_terms == 0 {
        return Err(Error::BoundQuery("n_terms must be at least 1".into()));
    }
    let mut base: Vec<Point> = points.to_vec();
    base.sort();
    base.dedup();
    let mut acc = base.clone();
    for _ in 1..n_terms {
        acc = minkowski_sum(&acc, &base, budget)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumsetConfig {
    pub n_terms: u32,
    pub sample_level: u32,
    pub coverage_spacing: Rational,
    pub budget: u64,
}

impl SumsetConfig {
    pub fn new(n_terms: u32, sample_level: u32, coverage_spacing: Rational) -> Result<Self> {
        if n_terms == 0 {
            return Err(Error::BoundQuery("n_terms must be at least 1".into()));
        }
        if coverage_spacing <= Rational::zero() {
            return Err(Error::BoundQuery("coverage spacing must be positive".into()));
        }
        Ok(SumsetConfig { n_terms, sample_level, coverage_spacing, budget: DEFAULT_SUM_BUDGET })
    }
}

fn sample_size(level: u32) -> u64 {
    3 * (3u64.pow(level) + 1) / 2
}

/// `n_terms`-fold sum of the level-`sample_level` vertex sample `E_n ⊂ E`,
/// hence a subset of `n_terms · E`.
pub fn sumset_sample(gasket: &Gasket, cfg: &SumsetConfig) -> Result<Vec<Point>> {
    gasket.check_level(cfg.sample_level)?;
    let base = sample_size(cfg.sample_level);
    // the k-fold sum has at most min(base^k, lattice points of kΔ) elements
    let lattice = |k: u64| {
        let m = k * (1u64 << cfg.sample_level);
        (m + 1) * (m + 2) / 2
    };
    let mut worst = 0u64;
    for k in 1..cfg.n_terms as u64 {
        let prev = base.saturating_pow(k as u32).min(lattice(k));
        worst = worst.max(prev.saturating_mul(base));
    }
    if worst > cfg.budget {
        let suggested_level = (0..cfg.sample_level)
            .rev()
            .find(|&l| {
                let b = sample_size(l);
                (1..cfg.n_terms as u64).all(|k| b.saturating_pow(k as u32).saturating_mul(b) <= cfg.budget)
            })
            .unwrap_or(0);
        return Err(Error::Budget { size: worst, budget: cfg.budget, suggested_level });
    }
    let pts: Vec<Point> = gasket.vertex_sample(cfg.sample_level)?.iter().map(|p| *p.point()).collect();
    n_fold_sum(&pts, cfg.n_terms, cfg.budget)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageReport {
    pub covered: bool,
    /// Largest distance from a grid node in the disk to its nearest sample point.
    pub worst_gap: f64,
    pub nodes_checked: usize,
}

/// Density evidence only: every node of the Cartesian grid of pitch
/// `spacing` that lies in `disk` must have a sample point within `spacing`.
pub fn interior_coverage_check(points: &[Point], disk: &Disk, spacing: Rational) -> CoverageReport {
    let s = to_f64(&spacing);
    let center = disk.center.cartesian();
    let radius = disk.radius.to_f64();
    let pts: Vec<[f64; 2]> = points.iter().map(Point::cartesian).collect();
    if pts.is_empty() || s.is_nan() || s <= 0.0 {
        return CoverageReport { covered: false, worst_gap: f64::INFINITY, nodes_checked: 0 };
    }
    let key = |p: [f64; 2]| (libm::floor(p[0] / s) as i64, libm::floor(p[1] / s) as i64);
    let mut buckets: BTreeMap<(i64, i64), Vec<[f64; 2]>> = BTreeMap::new();
    for p in &pts {
        buckets.entry(key(*p)).or_default().push(*p);
    }
    let d = |a: [f64; 2], b: [f64; 2]| libm::hypot(a[0] - b[0], a[1] - b[1]);
    let lo_i = libm::ceil((center[0] - radius) / s) as i64;
    let hi_i = libm::floor((center[0] + radius) / s) as i64;
    let lo_j = libm::ceil((center[1] - radius) / s) as i64;
    let hi_j = libm::floor((center[1] + radius) / s) as i64;
    let mut worst = 0.0f64;
    let mut nodes = 0usize;
    for i in lo_i..=hi_i {
        for j in lo_j..=hi_j {
            let node = [i as f64 * s, j as f64 * s];
            if d(node, center) > radius {
                continue;
            }
            nodes += 1;
            let (ki, kj) = key(node);
            let mut near = f64::INFINITY;
            for di in -1..=1 {
                for dj in -1..=1 {
                    if let Some(b) = buckets.get(&(ki + di, kj + dj)) {
                        near = b.iter().fold(near, |m, p| m.min(d(node, *p)));
                    }
                }
            }
            if near > s {
                // the 3x3 neighbourhood is exact only below one pitch
                near = pts.iter().fold(f64::INFINITY, |m, p| m.min(d(node, *p)));
            }
            worst = worst.max(near);
        }
    }
    CoverageReport { covered: worst <= s, worst_gap: worst, nodes_checked: nodes }
}
