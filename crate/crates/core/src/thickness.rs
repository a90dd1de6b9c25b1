//! Local equilateral triangles inside `conv(E ∩ B(x, r))` and the thickness
//! constant `√3/6`.
//!
//! For `1/2 ≤ r ≤ 1` the query point lies in some first-level cell `T_i`,
//! and the corner triangle `Q_i(r)` (side `r`, anchored at `v_i`) has its
//! three vertices on the sides of `Δ` and within distance `r` of every
//! point of `Q_i(r) ⊇ T_i`. Smaller radii are reduced to that range by
//! pulling the query back through a cell of the matching scale, solving
//! there, and pushing the triangle forward again.
//!
//! The brute-force side of the module, [`empirical_inradius`], never uses
//! the certificate construction: it hulls the finite vertex sample inside
//! the disk and solves for the largest inscribed disk.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, to_f64, Rational, Surd3};
use crate::gasket::{
    apply_word, child_lattice, locate_cells, pull_back, root_lattice, Gasket, MembershipWitness, Side,
    WitnessedPoint, Word,
};
use crate::geom::{
    convex_hull, equilateral_incircle_radius, exact_incircle, inscribed_disk, monotone_chain, point_in_triangle,
    side_distances, Center, ConvexPolygon, Disk, Location, Point, Real, Triangle,
};

/// Corner index `i ∈ {1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner(u8);

impl Corner {
    pub fn new(i: u8) -> Result<Self> {
        if (1..=3).contains(&i) {
            Ok(Corner(i))
        } else {
            Err(Error::InvalidIndex(i))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    fn next(self) -> u8 {
        self.0 % 3 + 1
    }

    fn prev(self) -> u8 {
        (self.0 + 1) % 3 + 1
    }
}

fn check_normalized(r: &Rational) -> Result<()> {
    if *r < rat(1, 2) || *r > Rational::one() {
        Err(Error::NormalizedRange(format!("{r}")))
    } else {
        Ok(())
    }
}

/// Vertices of `Q_i(r)` counterclockwise, each with its side witness on `Δ`.
fn corner_vertices(i: Corner, r: Rational) -> [(Point, MembershipWitness); 3] {
    let vi = Point::vertex(i.0).expect("corner index checked");
    let on_side = |j: u8| {
        let side = Side::joining(i.0, j).expect("distinct corners");
        let (start, _) = side.endpoints();
        let t = if start == i.0 { r } else { Rational::one() - r };
        let witness = MembershipWitness::new(Word::empty(), side, t).expect("t in [0, 1]");
        (witness.point(), witness)
    };
    let apex = {
        let side = Side::from_index(i.0).expect("corner index checked");
        let w = MembershipWitness::new(Word::empty(), side, Rational::zero()).expect("t = 0");
        debug_assert_eq!(w.point(), vi);
        (vi, w)
    };
    [apex, on_side(i.next()), on_side(i.prev())]
}

/// `Q_i(r) = conv{v_i, v_i + r(v_j - v_i), v_i + r(v_k - v_i)}` for
/// `r ∈ [1/2, 1]`.
pub fn corner_triangle(i: Corner, r: Rational) -> Result<Triangle> {
    check_normalized(&r)?;
    let [a, b, c] = corner_vertices(i, r);
    Triangle::new(a.0, b.0, c.0)
}

/// Smallest `i` with `x ∈ T_i`, paired with `Q_i(r)`; requires `1/2 ≤ r ≤ 1`.
pub fn local_triangle_normalized(x: &WitnessedPoint, r: Rational) -> Result<(Corner, Triangle)> {
    if !x.is_valid() {
        return Err(Error::Witness(format!("invalid witness for {:?}", x.point())));
    }
    let (corner, verts) = normalized_parts(x.point(), r)?;
    Ok((corner, Triangle::new(verts[0].0, verts[1].0, verts[2].0)?))
}

fn normalized_parts(x: &Point, r: Rational) -> Result<(Corner, [(Point, MembershipWitness); 3])> {
    check_normalized(&r)?;
    let words = locate_cells(x, 1).map_err(|_| Error::NotInStageOne)?;
    let i = words.first().and_then(Word::first).ok_or(Error::NotInStageOne)?;
    let corner = Corner(i);
    let verts = corner_vertices(corner, r);
    let r2 = r * r;
    for (v, _) in &verts {
        if v.dist2(x) > r2 {
            return Err(Error::Invariant(format!("corner vertex {v:?} farther than r from {x:?}")));
        }
    }
    Ok((corner, verts))
}

/// Smallest `n ≥ 0` with `2^n · r ≥ 1/2`, i.e. `max(0, ⌈log2(1/(2r))⌉)`.
pub fn scale_level(r: &Rational) -> u32 {
    let half = rat(1, 2);
    let mut n = 0u32;
    let mut scaled = *r;
    while scaled < half {
        scaled *= int(2);
        n += 1;
    }
    n
}

/// Exact certificate that `conv(E ∩ B(x, r))` contains an equilateral
/// triangle of side `r`, hence a disk of radius `r·√3/6`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub x: WitnessedPoint,
    pub r: Rational,
    /// Scale with `2^n · r ∈ [1/2, 1]`.
    pub n: u32,
    pub word: Word,
    pub corner: Corner,
    /// `φ_w⁻¹(x)`, with its pulled-back witness.
    pub x_normalized: WitnessedPoint,
    /// `2^n · r`.
    pub r_normalized: Rational,
    pub triangle: Triangle,
    pub incircle: Disk,
    pub vertex_witnesses: [MembershipWitness; 3],
}

impl Certificate {
    /// Re-check every invariant in exact arithmetic.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Invariant(format!("{msg} (x = {:?}, r = {})", self.x.point(), self.r)));
        if !self.x.is_valid() || !self.x_normalized.is_valid() {
            return fail("query witness does not reproduce its point");
        }
        if self.word.len() != self.n as usize {
            return fail("word length differs from scale");
        }
        if self.r_normalized != self.r * int(1i128 << self.n) || self.n != scale_level(&self.r) {
            return fail("normalized radius is not 2^n r");
        }
        if apply_word(&self.word, self.x_normalized.point()) != *self.x.point() {
            return fail("pulled-back query does not map to x");
        }
        if !point_in_triangle(self.x.point(), &crate::gasket::cell(&self.word).triangle).is_in_closed() {
            return fail("x is not in the chosen cell");
        }
        let r2 = self.r * self.r;
        if self.triangle.side_lengths2().iter().any(|s| *s != r2) {
            return fail("triangle side is not r");
        }
        for (v, wit) in self.triangle.vertices().iter().zip(&self.vertex_witnesses) {
            if v.dist2(self.x.point()) > r2 {
                return fail("triangle vertex outside B(x, r)");
            }
            if wit.point() != *v {
                return fail("vertex witness does not reproduce the vertex");
            }
        }
        let expected = equilateral_incircle_radius(self.r)?;
        let Center::Exact(center) = self.incircle.center else {
            return fail("incircle center is not exact");
        };
        if self.incircle.radius != Real::Exact(expected) || center != self.triangle.centroid() {
            return fail("incircle is not the exact incircle of Q");
        }
        for d in side_distances(&center, &self.triangle)? {
            if d.exact().is_none_or(|d| d < expected) {
                return fail("incircle leaves Q");
            }
        }
        Ok(())
    }

    pub fn inradius(&self) -> Surd3 {
        self.incircle.radius.exact().expect("certificate incircles are exact")
    }
}

/// Build and verify the certificate for a witnessed `x` and `0 < r ≤ 1`.
pub fn local_triangle(x: &WitnessedPoint, r: Rational) -> Result<Certificate> {
    if r <= Rational::zero() || r > Rational::one() {
        return Err(Error::RadiusRange(format!("{r}")));
    }
    if !x.is_valid() {
        return Err(Error::Witness(format!("invalid witness for {:?}", x.point())));
    }
    let n = scale_level(&r);
    let word = locate_cells(x.point(), n as usize)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Witness(format!("{:?} is not in stage K_{n}", x.point())))?;
    let back = x
        .witness()
        .pull_back(&word)
        .ok_or_else(|| Error::Witness(format!("cannot pull the witness back through '{word}'")))?;
    let x_normalized = WitnessedPoint::new(pull_back(&word, x.point()), back)?;
    let r_normalized = r * int(1i128 << n);
    let (corner, parts) = normalized_parts(x_normalized.point(), r_normalized)?;
    let vertices = parts.clone().map(|(p, _)| apply_word(&word, &p));
    let vertex_witnesses = parts.map(|(_, w)| w.push_forward(&word));
    let triangle = Triangle::new(vertices[0], vertices[1], vertices[2])?;
    if triangle.vertices() != vertices {
        return Err(Error::Invariant("corner maps must preserve orientation".into()));
    }
    let incircle = exact_incircle(&triangle).ok_or_else(|| Error::Invariant("Q is not equilateral".into()))?;
    let cert = Certificate {
        x: x.clone(),
        r,
        n,
        word,
        corner,
        x_normalized,
        r_normalized,
        triangle,
        incircle,
        vertex_witnesses,
    };
    cert.verify()?;
    Ok(cert)
}

/// The inscribed disk carried by a certificate: radius `r·√3/6`.
pub fn certificate_disk(cert: &Certificate) -> Disk {
    cert.incircle
}

/// The query `(v1, 1)` where the local hull is all of `Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBoundWitness {
    pub x: WitnessedPoint,
    pub r: Rational,
    pub hull: ConvexPolygon,
    pub inradius: Surd3,
}

/// `E ∩ B(v1, 1) = E` and `conv(E) = Δ`, whose largest inscribed disk has
/// radius `√3/6`; no larger constant can work.
pub fn upper_bound_witness(gasket: &Gasket) -> Result<UpperBoundWitness> {
    upper_bound_witness_at(gasket, 1)
}

/// Same witness anchored at corner `v_i`.
pub fn upper_bound_witness_at(gasket: &Gasket, i: u8) -> Result<UpperBoundWitness> {
    let x = WitnessedPoint::vertex(i)?;
    let r = Rational::one();
    let in_disk: Vec<Point> = gasket
        .vertex_sample(0)?
        .iter()
        .map(|p| *p.point())
        .filter(|p| p.dist2(x.point()) <= r * r)
        .collect();
    let hull = convex_hull(&in_disk)?;
    // E ⊂ Δ and the three corners are in E, so this hull is conv(E) itself
    if !hull.equals_triangle(&Triangle::unit()) {
        return Err(Error::Invariant("local hull at the corner is not Δ".into()));
    }
    let inradius = inscribed_disk(&hull)
        .disk
        .radius
        .exact()
        .ok_or_else(|| Error::Invariant("inscribed disk of Δ is not exact".into()))?;
    Ok(UpperBoundWitness { x, r, hull, inradius })
}

/// `√3/6`.
pub fn exact_thickness() -> Surd3 {
    Surd3::sqrt3_times(rat(1, 6))
}

/// Closed disk with exact integer membership tests against the level-`n`
/// vertex lattice.
struct LatticeDisk {
    center: (i128, i128),
    /// lattice coordinates are multiplied by this before comparison
    scale: i128,
    /// `|d|² · r_den² ≤ r_num² · denom²`
    r_num2_d2: i128,
    r_den2: i128,
    center_f: [f64; 2],
    radius_f: f64,
    unit_f: f64,
}

impl LatticeDisk {
    fn new(x: &Point, r: &Rational, n: u32) -> Self {
        let lattice = 1i128 << n;
        let denom = num_integer::lcm(num_integer::lcm(*x.u.denom(), *x.w.denom()), lattice);
        let center = ((x.u * int(denom)).to_integer(), (x.w * int(denom)).to_integer());
        LatticeDisk {
            center,
            scale: denom / lattice,
            r_num2_d2: r.numer() * r.numer() * denom * denom,
            r_den2: r.denom() * r.denom(),
            center_f: x.cartesian(),
            radius_f: to_f64(r),
            unit_f: 1.0 / lattice as f64,
        }
    }

    fn contains(&self, p: (i64, i64)) -> bool {
        let du = p.0 as i128 * self.scale - self.center.0;
        let dw = p.1 as i128 * self.scale - self.center.1;
        (du * du + du * dw + dw * dw) * self.r_den2 <= self.r_num2_d2
    }

    fn cartesian(&self, p: (i64, i64)) -> [f64; 2] {
        let u = p.0 as f64 * self.unit_f;
        let w = p.1 as f64 * self.unit_f;
        [u + 0.5 * w, w * crate::exact::SQRT3 * 0.5]
    }

    /// Float distance from the center to the closed triangle.
    fn distance_to(&self, tri: &[(i64, i64); 3]) -> f64 {
        let v = tri.map(|p| self.cartesian(p));
        let c = self.center_f;
        let side = |a: [f64; 2], b: [f64; 2]| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
        if side(v[0], v[1]) >= 0.0 && side(v[1], v[2]) >= 0.0 && side(v[2], v[0]) >= 0.0 {
            return 0.0;
        }
        (0..3)
            .map(|k| segment_distance(c, v[k], v[(k + 1) % 3]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Conservative: false only when the triangle is certainly disjoint.
    fn may_meet(&self, tri: &[(i64, i64); 3]) -> bool {
        self.distance_to(tri) <= self.radius_f + 1e-9
    }
}

fn segment_distance(c: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = (((c[0] - a[0]) * dx + (c[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
    libm::hypot(c[0] - a[0] - t * dx, c[1] - a[1] - t * dy)
}

/// Lower estimate of the largest disk in `conv(E ∩ B(x, r))` from a finite sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalInradius {
    pub radius: f64,
    /// Sample in the disk is empty, a point, or collinear.
    pub degenerate: bool,
    pub hull_vertices: usize,
}

fn lattice_hull_inradius(points: Vec<(i64, i64)>, n: u32) -> EmpiricalInradius {
    let orient = |a: &(i64, i64), b: &(i64, i64), c: &(i64, i64)| {
        let (bx, by) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
        let (cx, cy) = ((c.0 - a.0) as i128, (c.1 - a.1) as i128);
        (bx * cy - by * cx).cmp(&0)
    };
    let hull = monotone_chain(points, orient);
    if hull.len() < 3 {
        return EmpiricalInradius { radius: 0.0, degenerate: true, hull_vertices: hull.len() };
    }
    let poly = convex_hull(&hull.iter().map(|&(u, w)| Point::dyadic(u as i128, w as i128, n)).collect::<Vec<_>>())
        .expect("non-empty hull");
    EmpiricalInradius { radius: inscribed_disk(&poly).radius(), degenerate: false, hull_vertices: hull.len() }
}

/// Inradius of `conv({p ∈ E_n : |p - x| ≤ r})`.
///
/// Cells lying wholly inside the disk contribute only their three corners,
/// which leaves the hull unchanged; cells certainly outside are skipped.
/// Always a lower bound for the inradius of `conv(E ∩ B(x, r))`.
pub fn empirical_inradius(gasket: &Gasket, x: &Point, r: Rational, n: u32) -> Result<EmpiricalInradius> {
    gasket.check_level(n)?;
    if point_in_triangle(x, &Triangle::unit()) == Location::Outside {
        return Err(Error::PointOutsideBase);
    }
    if r <= Rational::zero() {
        return Err(Error::RadiusRange(format!("{r}")));
    }
    let disk = LatticeDisk::new(x, &r, n);
    let mut pts = Vec::new();
    collect_inner(&disk, root_lattice(n), n, &mut pts);
    Ok(lattice_hull_inradius(pts, n))
}

fn collect_inner(disk: &LatticeDisk, tri: [(i64, i64); 3], depth: u32, out: &mut Vec<(i64, i64)>) {
    let inside = tri.map(|p| disk.contains(p));
    if inside.iter().all(|&b| b) {
        out.extend_from_slice(&tri);
        return;
    }
    if !disk.may_meet(&tri) {
        return;
    }
    if depth == 0 {
        out.extend(tri.iter().zip(inside).filter(|(_, b)| *b).map(|(p, _)| *p));
        return;
    }
    for j in 1..=3u8 {
        collect_inner(disk, child_lattice(&tri, j), depth - 1, out);
    }
}

/// Upper bracket: inradius of the hull of every level-`n` cell that meets
/// `B(x, r)`. That hull contains `conv(E ∩ B(x, r))`.
pub fn outer_inradius(gasket: &Gasket, x: &Point, r: Rational, n: u32) -> Result<EmpiricalInradius> {
    gasket.check_level(n)?;
    if point_in_triangle(x, &Triangle::unit()) == Location::Outside {
        return Err(Error::PointOutsideBase);
    }
    let disk = LatticeDisk::new(x, &r, n);
    let mut pts = Vec::new();
    collect_outer(&disk, root_lattice(n), n, &mut pts);
    Ok(lattice_hull_inradius(pts, n))
}

fn collect_outer(disk: &LatticeDisk, tri: [(i64, i64); 3], depth: u32, out: &mut Vec<(i64, i64)>) {
    if !disk.may_meet(&tri) {
        return;
    }
    if depth == 0 || tri.iter().all(|p| disk.contains(*p)) {
        out.extend_from_slice(&tri);
        return;
    }
    for j in 1..=3u8 {
        collect_outer(disk, child_lattice(&tri, j), depth - 1, out);
    }
}

/// `{k/32 : 1 ≤ k ≤ 32}`.
pub fn default_radii() -> Vec<Rational> {
    (1..=32).map(|k| rat(k, 32)).collect()
}

/// One evaluated `(x, r)` pair of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub x: Point,
    pub r: Rational,
    pub inradius: f64,
    /// `inradius / r`
    pub normalized: f64,
    pub degenerate: bool,
}

/// Grid behind a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanGrid {
    pub sample_level: u32,
    pub query_level: u32,
    pub radii: Vec<Rational>,
}

/// Outcome of a thickness scan together with the exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessReport {
    /// `√3/6`.
    pub exact_value: Surd3,
    /// The sup is a max for the gasket (attained at `(v1, 1)`).
    pub attained: bool,
    /// Min of `inradius / r` over non-degenerate entries; `None` if all degenerate.
    pub numeric_lower: Option<f64>,
    pub argmin: Option<(Point, Rational)>,
    pub witness_upper: f64,
    pub witness_upper_exact: Surd3,
    pub degenerate_count: usize,
    pub grid: ScanGrid,
    pub entries: Vec<ScanEntry>,
}

impl ScanGrid {
    pub fn new(sample_level: u32, query_level: u32, radii: Vec<Rational>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::EmptyRadii);
        }
        if let Some(bad) = radii.iter().find(|r| **r <= Rational::zero() || **r > Rational::one()) {
            return Err(Error::RadiusRange(format!("{bad}")));
        }
        Ok(ScanGrid { sample_level, query_level, radii })
    }

    /// Query pairs in deterministic order: sample points of level
    /// `query_level` (sorted), each crossed with the radii in given order.
    pub fn plan(&self, gasket: &Gasket) -> Result<Vec<(Point, Rational)>> {
        gasket.check_level(self.sample_level)?;
        let queries = gasket.vertex_sample(self.query_level)?;
        Ok(queries
            .iter()
            .flat_map(|q| self.radii.iter().map(move |r| (*q.point(), *r)))
            .collect())
    }
}

/// Evaluate one scan pair.
pub fn evaluate_pair(gasket: &Gasket, x: &Point, r: Rational, sample_level: u32) -> Result<ScanEntry> {
    let est = empirical_inradius(gasket, x, r, sample_level)?;
    Ok(ScanEntry {
        x: *x,
        r,
        inradius: est.radius,
        normalized: est.radius / to_f64(&r),
        degenerate: est.degenerate,
    })
}

/// Total order used by the min-reduction; independent of evaluation order.
fn entry_order(a: &ScanEntry, b: &ScanEntry) -> Ordering {
    a.normalized
        .total_cmp(&b.normalized)
        .then_with(|| a.x.cmp(&b.x))
        .then_with(|| a.r.cmp(&b.r))
}

impl ThicknessReport {
    pub fn from_entries(gasket: &Gasket, grid: ScanGrid, entries: Vec<ScanEntry>) -> Result<Self> {
        let witness = upper_bound_witness(gasket)?;
        let best = entries.iter().filter(|e| !e.degenerate).min_by(|a, b| entry_order(a, b));
        Ok(ThicknessReport {
            exact_value: exact_thickness(),
            attained: true,
            numeric_lower: best.map(|e| e.normalized),
            argmin: best.map(|e| (e.x, e.r)),
            witness_upper: witness.inradius.to_f64(),
            witness_upper_exact: witness.inradius,
            degenerate_count: entries.iter().filter(|e| e.degenerate).count(),
            grid,
            entries,
        })
    }
}

/// Sequential scan; `inf (inradius / r)` over the grid.
pub fn thickness_scan(gasket: &Gasket, grid: ScanGrid) -> Result<ThicknessReport> {
    let entries = grid
        .plan(gasket)?
        .iter()
        .map(|(x, r)| evaluate_pair(gasket, x, *r, grid.sample_level))
        .collect::<Result<Vec<_>>>()?;
    ThicknessReport::from_entries(gasket, grid, entries)
}
