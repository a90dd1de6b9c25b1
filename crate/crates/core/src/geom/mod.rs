//! Planar geometry kernel in the triangular basis.
//!
//! A [`Point`] `(u, w)` sits at Cartesian `(u + w/2, w·√3/2)`. The basis
//! change has positive determinant `√3/2`, so orientation signs can be read
//! off the rational basis determinant and convex hulls can be built directly
//! on basis coordinates. Squared lengths are the rational form
//! `u² + u·w + w²`.

mod chebyshev;
mod hull;

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, sqrt_exact, to_f64, Rational, Surd3, SQRT3};

pub(crate) use chebyshev::chebyshev_center;
pub use hull::convex_hull;
pub(crate) use hull::monotone_chain;

/// Exact planar point in the triangular basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub u: Rational,
    pub w: Rational,
}

impl Point {
    pub const fn new(u: Rational, w: Rational) -> Self {
        Point { u, w }
    }

    pub fn from_ints(u: i128, w: i128) -> Self {
        Point::new(int(u), int(w))
    }

    /// Point with coordinates `(u / 2^k, w / 2^k)`.
    pub fn dyadic(u: i128, w: i128, k: u32) -> Self {
        let d = 1i128 << k;
        Point::new(rat(u, d), rat(w, d))
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    /// Vertex `v_i` of the unit triangle: `v1 = (0,0)`, `v2 = (1,0)`, `v3 = (0,1)`
    /// in basis coordinates.
    pub fn vertex(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Point::from_ints(0, 0)),
            2 => Ok(Point::from_ints(1, 0)),
            3 => Ok(Point::from_ints(0, 1)),
            other => Err(Error::InvalidIndex(other)),
        }
    }

    pub fn v1() -> Self {
        Point::from_ints(0, 0)
    }

    pub fn v2() -> Self {
        Point::from_ints(1, 0)
    }

    pub fn v3() -> Self {
        Point::from_ints(0, 1)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        (*self + *other) * rat(1, 2)
    }

    /// `(1 - t)·self + t·other`.
    pub fn lerp(&self, other: &Point, t: Rational) -> Point {
        *self + (*other - *self) * t
    }

    /// Exact squared Euclidean length of the position vector.
    pub fn norm2(&self) -> Rational {
        self.u * self.u + self.u * self.w + self.w * self.w
    }

    pub fn dist2(&self, other: &Point) -> Rational {
        (*self - *other).norm2()
    }

    /// Euclidean inner product of position vectors.
    pub fn dot(&self, other: &Point) -> Rational {
        self.u * other.u + (self.u * other.w + self.w * other.u) * rat(1, 2) + self.w * other.w
    }

    /// Basis determinant; the Cartesian cross product is this times `√3/2`.
    pub fn det(&self, other: &Point) -> Rational {
        self.u * other.w - self.w * other.u
    }

    pub fn is_dyadic(&self) -> bool {
        crate::exact::is_dyadic(&self.u) && crate::exact::is_dyadic(&self.w)
    }

    pub fn cartesian(&self) -> [f64; 2] {
        let u = to_f64(&self.u);
        let w = to_f64(&self.w);
        [u + 0.5 * w, w * SQRT3 * 0.5]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.u + rhs.u, self.w + rhs.w)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.u - rhs.u, self.w - rhs.w)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.u, -self.w)
    }
}

impl Mul<Rational> for Point {
    type Output = Point;
    fn mul(self, k: Rational) -> Point {
        Point::new(self.u * k, self.w * k)
    }
}

/// Sign of the turn `a -> b -> c`; `Greater` is counterclockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    (*b - *a).det(&(*c - *a)).cmp(&Rational::zero())
}

/// Result of a closed point-in-region test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

impl Location {
    pub fn is_in_closed(self) -> bool {
        self != Location::Outside
    }
}

/// Non-degenerate triangle, vertices stored counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triangle {
    a: Point,
    b: Point,
    c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        match orient(&a, &b, &c) {
            Ordering::Greater => Ok(Triangle { a, b, c }),
            Ordering::Less => Ok(Triangle { a, b: c, c: b }),
            Ordering::Equal => Err(Error::DegenerateTriangle),
        }
    }

    /// The unit triangle `Δ = conv{v1, v2, v3}`.
    pub fn unit() -> Self {
        Triangle { a: Point::v1(), b: Point::v2(), c: Point::v3() }
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    /// Edges `(a,b)`, `(b,c)`, `(c,a)`.
    pub fn edges(&self) -> [(Point, Point); 3] {
        [(self.a, self.b), (self.b, self.c), (self.c, self.a)]
    }

    /// Apply a map to every vertex; the result is re-oriented.
    pub fn map(&self, f: impl Fn(&Point) -> Point) -> Result<Triangle> {
        Triangle::new(f(&self.a), f(&self.b), f(&self.c))
    }

    pub fn area(&self) -> Surd3 {
        // |det|/2 in the basis, times the basis area factor √3/2
        Surd3::sqrt3_times((self.b - self.a).det(&(self.c - self.a)) * rat(1, 4))
    }

    pub fn side_lengths2(&self) -> [Rational; 3] {
        self.edges().map(|(p, q)| p.dist2(&q))
    }

    pub fn is_equilateral(&self) -> bool {
        let [x, y, z] = self.side_lengths2();
        x == y && y == z
    }

    pub fn centroid(&self) -> Point {
        (self.a + self.b + self.c) * rat(1, 3)
    }

    /// Same vertex set regardless of starting vertex.
    pub fn same_as(&self, other: &Triangle) -> bool {
        let mut x = self.vertices();
        let mut y = other.vertices();
        x.sort();
        y.sort();
        x == y
    }

    pub fn contains(&self, p: &Point) -> Location {
        point_in_triangle(p, self)
    }
}

/// Exact closed point-in-triangle classification.
pub fn point_in_triangle(p: &Point, tri: &Triangle) -> Location {
    let mut on_edge = false;
    for (s, e) in tri.edges() {
        match orient(&s, &e, p) {
            Ordering::Less => return Location::Outside,
            Ordering::Equal => on_edge = true,
            Ordering::Greater => {}
        }
    }
    if on_edge {
        Location::OnBoundary
    } else {
        Location::Inside
    }
}

/// A real value that is exact when it can be, `f64` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Real {
    Exact(Surd3),
    Approx(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(s) => s.to_f64(),
            Real::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<Surd3> {
        match self {
            Real::Exact(s) => Some(*s),
            Real::Approx(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Center {
    Exact(Point),
    Approx([f64; 2]),
}

impl Center {
    pub fn cartesian(&self) -> [f64; 2] {
        match self {
            Center::Exact(p) => p.cartesian(),
            Center::Approx(c) => *c,
        }
    }
}

/// Closed disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Center,
    pub radius: Real,
}

impl Disk {
    /// `B(x, r)` with exact center and rational radius.
    pub fn ball(x: Point, r: Rational) -> Disk {
        Disk { center: Center::Exact(x), radius: Real::Exact(Surd3::from_rational(r)) }
    }
}

/// Output of [`inscribed_disk`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InscribedDisk {
    pub disk: Disk,
    /// False when the set of maximal centers is a segment.
    pub unique_center: bool,
    /// Polygon has no interior; radius is zero.
    pub degenerate: bool,
}

impl InscribedDisk {
    pub fn radius(&self) -> f64 {
        self.disk.radius.to_f64()
    }
}

/// Convex polygon: counterclockwise, strictly convex vertex chain.
///
/// Fewer than three vertices marks a flat (degenerate) hull: a segment or a
/// single point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub(crate) fn from_ccw(vertices: Vec<Point>) -> Self {
        ConvexPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn area(&self) -> Surd3 {
        let n = self.vertices.len();
        if n < 3 {
            return Surd3::zero();
        }
        let twice: Rational = (0..n)
            .map(|i| self.vertices[i].det(&self.vertices[(i + 1) % n]))
            .fold(Rational::zero(), |acc, d| acc + d);
        Surd3::sqrt3_times(twice * rat(1, 4))
    }

    pub fn contains(&self, p: &Point) -> Location {
        let n = self.vertices.len();
        match n {
            0 => Location::Outside,
            1 => {
                if self.vertices[0] == *p {
                    Location::OnBoundary
                } else {
                    Location::Outside
                }
            }
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let on_line = orient(&a, &b, p) == Ordering::Equal;
                let t = (*p - a).dot(&(b - a));
                if on_line && t >= Rational::zero() && t <= (b - a).norm2() {
                    Location::OnBoundary
                } else {
                    Location::Outside
                }
            }
            _ => {
                let mut on_edge = false;
                for i in 0..n {
                    match orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) {
                        Ordering::Less => return Location::Outside,
                        Ordering::Equal => on_edge = true,
                        Ordering::Greater => {}
                    }
                }
                if on_edge {
                    Location::OnBoundary
                } else {
                    Location::Inside
                }
            }
        }
    }

    pub fn as_triangle(&self) -> Option<Triangle> {
        match self.vertices.as_slice() {
            [a, b, c] => Triangle::new(*a, *b, *c).ok(),
            _ => None,
        }
    }

    /// Same vertex set as `tri`.
    pub fn equals_triangle(&self, tri: &Triangle) -> bool {
        self.as_triangle().is_some_and(|t| t.same_as(tri))
    }

    pub fn cartesian(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(Point::cartesian).collect()
    }
}

impl From<Triangle> for ConvexPolygon {
    fn from(t: Triangle) -> Self {
        ConvexPolygon { vertices: t.vertices().to_vec() }
    }
}

/// Inradius of an equilateral triangle with the given side: `side·√3/6`.
pub fn equilateral_incircle_radius(side: Rational) -> Result<Surd3> {
    if side <= Rational::zero() {
        return Err(Error::NonPositiveSide);
    }
    Ok(Surd3::sqrt3_times(side * rat(1, 6)))
}

/// Exact incircle of an equilateral triangle with rational side length.
pub fn exact_incircle(tri: &Triangle) -> Option<Disk> {
    if !tri.is_equilateral() {
        return None;
    }
    let side = sqrt_exact(&tri.side_lengths2()[0])?;
    let radius = equilateral_incircle_radius(side).ok()?;
    Some(Disk { center: Center::Exact(tri.centroid()), radius: Real::Exact(radius) })
}

/// Largest disk contained in a convex polygon (Chebyshev center).
///
/// Equilateral triangles with rational side are solved exactly, other
/// triangles by the incenter formula, larger polygons by a small linear
/// program in `(center, radius)`.
pub fn inscribed_disk(poly: &ConvexPolygon) -> InscribedDisk {
    let verts = poly.vertices();
    if poly.is_degenerate() {
        let center = verts.first().copied().unwrap_or_else(Point::origin);
        return InscribedDisk {
            disk: Disk { center: Center::Exact(center), radius: Real::Exact(Surd3::zero()) },
            unique_center: verts.len() <= 1,
            degenerate: true,
        };
    }
    if let Some(tri) = poly.as_triangle() {
        if let Some(disk) = exact_incircle(&tri) {
            return InscribedDisk { disk, unique_center: true, degenerate: false };
        }
        let [a, b, c] = tri.vertices().map(|p| p.cartesian());
        let la = dist(b, c);
        let lb = dist(c, a);
        let lc = dist(a, b);
        let per = la + lb + lc;
        let center = [
            (la * a[0] + lb * b[0] + lc * c[0]) / per,
            (la * a[1] + lb * b[1] + lc * c[1]) / per,
        ];
        let radius = 2.0 * tri.area().to_f64() / per;
        return InscribedDisk {
            disk: Disk { center: Center::Approx(center), radius: Real::Approx(radius) },
            unique_center: true,
            degenerate: false,
        };
    }
    let cheb = chebyshev_center(&poly.cartesian());
    InscribedDisk {
        disk: Disk { center: Center::Approx(cheb.center), radius: Real::Approx(cheb.radius) },
        unique_center: cheb.unique,
        degenerate: false,
    }
}

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    libm::hypot(p[0] - q[0], p[1] - q[1])
}

/// Perpendicular distances from `z` to the lines `(a,b)`, `(b,c)`, `(c,a)`.
///
/// Exact (as multiples of `√3`) whenever the corresponding side has
/// rational length, which holds for every gasket cell and certificate
/// triangle.
pub fn side_distances(z: &Point, tri: &Triangle) -> Result<[Real; 3]> {
    if point_in_triangle(z, tri) == Location::Outside {
        return Err(Error::PointOutsideTriangle);
    }
    Ok(tri.edges().map(|(p, q)| {
        let edge = q - p;
        let det = edge.det(&(*z - p)).abs();
        let len2 = edge.norm2();
        match sqrt_exact(&len2) {
            // |cross| / |edge| = (√3/2)|det| / len
            Some(len) => Real::Exact(Surd3::sqrt3_times(det / (len * int(2)))),
            None => Real::Approx(to_f64(&det) * SQRT3 * 0.5 / libm::sqrt(to_f64(&len2))),
        }
    }))
}
