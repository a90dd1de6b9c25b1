//! The Sierpinski IFS: corner maps, words, cells, stages and membership
//! witnesses.
//!
//! Membership in the gasket `E` is only ever asserted constructively: a
//! point is in `E` when it lies on a side of some cell `Δ_w`, since every
//! such side survives in the limit set. [`MembershipWitness`] records the
//! cell, the side and the affine parameter along it.
//!
//! Cell location works by pulling the query back through the corner maps
//! one letter at a time, so coordinates stay inside `Δ` and never grow
//! with depth.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{dyadic, int, is_dyadic, rat, Rational, Surd3};
use crate::geom::{point_in_triangle, Location, Point, Triangle};

pub const DEFAULT_LEVEL_CAP: u32 = 12;
/// Largest cap accepted: lattice coordinates at this level still fit `i64`
/// and their squared distances `i128`.
pub const MAX_LEVEL_CAP: u32 = 30;

/// Finite word over `{1, 2, 3}`; the empty word addresses `Δ` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|l| !(1..=3).contains(*l)) {
            return Err(Error::InvalidIndex(bad));
        }
        Ok(Word(letters))
    }

    /// `letter` repeated `n` times.
    pub fn repeat(letter: u8, n: usize) -> Result<Self> {
        Word::new(alloc::vec![letter; n])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn child(&self, letter: u8) -> Word {
        debug_assert!((1..=3).contains(&letter));
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        let mut out = alloc::vec![Word::empty()];
        for _ in 0..n {
            out = out.iter().flat_map(|w| (1..=3).map(move |j| w.child(j))).collect();
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                '3' => Ok(3),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

/// `φ_i(p) = (p + v_i) / 2`.
pub fn apply_map(i: u8, p: &Point) -> Result<Point> {
    Ok(p.midpoint(&Point::vertex(i)?))
}

fn map_unchecked(i: u8, p: &Point) -> Point {
    let half = rat(1, 2);
    match i {
        1 => Point::new(p.u * half, p.w * half),
        2 => Point::new((p.u + Rational::one()) * half, p.w * half),
        _ => Point::new(p.u * half, (p.w + Rational::one()) * half),
    }
}

fn unmap_unchecked(i: u8, p: &Point) -> Point {
    let two = int(2);
    match i {
        1 => Point::new(p.u * two, p.w * two),
        2 => Point::new(p.u * two - Rational::one(), p.w * two),
        _ => Point::new(p.u * two, p.w * two - Rational::one()),
    }
}

/// `φ_w = φ_{i1} ∘ ⋯ ∘ φ_{in}`: the rightmost letter acts first.
pub fn apply_word(w: &Word, p: &Point) -> Point {
    w.letters().iter().rev().fold(*p, |acc, &i| map_unchecked(i, &acc))
}

/// `φ_w⁻¹(p)`.
pub fn pull_back(w: &Word, p: &Point) -> Point {
    w.letters().iter().fold(*p, |acc, &i| unmap_unchecked(i, &acc))
}

/// Side of a triangle, oriented `start -> end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `v1 -> v2`
    S12,
    /// `v2 -> v3`
    S23,
    /// `v3 -> v1`
    S31,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::S12, Side::S23, Side::S31];

    pub fn index(self) -> u8 {
        match self {
            Side::S12 => 1,
            Side::S23 => 2,
            Side::S31 => 3,
        }
    }

    pub fn from_index(i: u8) -> Result<Side> {
        match i {
            1 => Ok(Side::S12),
            2 => Ok(Side::S23),
            3 => Ok(Side::S31),
            other => Err(Error::InvalidIndex(other)),
        }
    }

    /// Vertex indices `(start, end)`.
    pub fn endpoints(self) -> (u8, u8) {
        match self {
            Side::S12 => (1, 2),
            Side::S23 => (2, 3),
            Side::S31 => (3, 1),
        }
    }

    /// The side joining `v_i` and `v_j` (either order).
    pub fn joining(i: u8, j: u8) -> Result<Side> {
        match (i.min(j), i.max(j)) {
            (1, 2) => Ok(Side::S12),
            (2, 3) => Ok(Side::S23),
            (1, 3) => Ok(Side::S31),
            _ => Err(Error::InvalidIndex(i.max(j))),
        }
    }

    /// Point of `Δ` at parameter `t`.
    pub fn point_at(self, t: Rational) -> Point {
        let (s, e) = self.endpoints();
        vertex(s).lerp(&vertex(e), t)
    }

    /// Parameter of `p` if it lies on this side of `Δ`.
    fn parameter_of(self, p: &Point) -> Option<Rational> {
        let zero = Rational::zero();
        let one = Rational::one();
        let (on, t) = match self {
            Side::S12 => (p.w.is_zero(), p.u),
            Side::S23 => (p.u + p.w == one, p.w),
            Side::S31 => (p.u.is_zero(), one - p.w),
        };
        (on && t >= zero && t <= one).then_some(t)
    }
}

fn vertex(i: u8) -> Point {
    match i {
        1 => Point::v1(),
        2 => Point::v2(),
        _ => Point::v3(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessKind {
    /// `t ∈ {0, 1}`: a vertex of the cell.
    CellVertex,
    /// `t` a dyadic rational.
    DyadicSidePoint,
    /// Any rational `t ∈ [0, 1]`; the whole side lies in `E`.
    SidePoint,
}

impl WitnessKind {
    pub fn for_parameter(t: &Rational) -> Self {
        if t.is_zero() || t.is_one() {
            WitnessKind::CellVertex
        } else if is_dyadic(t) {
            WitnessKind::DyadicSidePoint
        } else {
            WitnessKind::SidePoint
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::CellVertex => "cell_vertex",
            WitnessKind::DyadicSidePoint => "dyadic_side_point",
            WitnessKind::SidePoint => "side_point",
        }
    }
}

/// Constructive evidence that a point lies in `E`: it sits at parameter `t`
/// on side `side` of the cell `Δ_word`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MembershipWitness {
    word: Word,
    side: Side,
    t: Rational,
}

impl MembershipWitness {
    pub fn new(word: Word, side: Side, t: Rational) -> Result<Self> {
        if t < Rational::zero() || t > Rational::one() {
            return Err(Error::Witness(format!("side parameter {t} outside [0, 1]")));
        }
        Ok(MembershipWitness { word, side, t })
    }

    pub fn kind(&self) -> WitnessKind {
        WitnessKind::for_parameter(&self.t)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn t(&self) -> Rational {
        self.t
    }

    /// The witnessed point `φ_word(side(t))`.
    pub fn point(&self) -> Point {
        apply_word(&self.word, &self.side.point_at(self.t))
    }

    /// Witness for `φ_prefix(point)`.
    pub fn push_forward(&self, prefix: &Word) -> MembershipWitness {
        MembershipWitness { word: prefix.concat(&self.word), side: self.side, t: self.t }
    }

    /// Witness for `φ_w⁻¹(point)`, provided the point lies in `Δ_w`.
    ///
    /// The witness is refined along `w` (a side of a cell splits into sides
    /// of its two corner children), then the prefix is stripped. A point
    /// of `Δ_w` reached from a different branch can only be a shared
    /// vertex, whose preimage is one of `v1, v2, v3`.
    pub fn pull_back(&self, w: &Word) -> Option<MembershipWitness> {
        if let Some(rest) = self.word.strip_prefix(w) {
            return Some(MembershipWitness { word: rest, side: self.side, t: self.t });
        }
        if w.starts_with(&self.word) {
            let half = rat(1, 2);
            let (a, b) = self.side.endpoints();
            let mut t = self.t;
            let mut ok = true;
            for &j in &w.letters()[self.word.len()..] {
                if j == a && t <= half {
                    t *= int(2);
                } else if j == b && t >= half {
                    t = t * int(2) - Rational::one();
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Some(MembershipWitness { word: Word::empty(), side: self.side, t });
            }
        }
        let pre = pull_back(w, &self.point());
        Side::ALL.into_iter().find_map(|s| {
            let (start, _) = s.endpoints();
            (vertex(start) == pre).then(|| MembershipWitness {
                word: Word::empty(),
                side: s,
                t: Rational::zero(),
            })
        })
    }
}

/// A point together with a checked membership witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WitnessedPoint {
    point: Point,
    witness: MembershipWitness,
}

impl WitnessedPoint {
    pub fn from_witness(witness: MembershipWitness) -> Self {
        WitnessedPoint { point: witness.point(), witness }
    }

    /// Pair a point with a witness, checking that the witness produces it.
    pub fn new(point: Point, witness: MembershipWitness) -> Result<Self> {
        if witness.point() != point {
            return Err(Error::Witness(format!(
                "witness on side {} of cell '{}' does not reproduce the point",
                witness.side.index(),
                witness.word
            )));
        }
        Ok(WitnessedPoint { point, witness })
    }

    /// Search for a witness of `p` down to `max_depth` levels.
    pub fn find(p: Point, max_depth: usize) -> Result<Self> {
        find_witness(&p, max_depth)
            .map(|witness| WitnessedPoint { point: p, witness })
            .ok_or_else(|| Error::Witness(format!("no side witness found for ({}, {}) within depth {max_depth}", p.u, p.w)))
    }

    pub fn vertex(i: u8) -> Result<Self> {
        let side = Side::from_index(i)?;
        Ok(WitnessedPoint::from_witness(MembershipWitness {
            word: Word::empty(),
            side,
            t: Rational::zero(),
        }))
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn witness(&self) -> &MembershipWitness {
        &self.witness
    }

    pub fn is_valid(&self) -> bool {
        self.witness.point() == self.point
    }
}

/// Find a side witness for `p` by descending through the cells containing it.
pub fn find_witness(p: &Point, max_depth: usize) -> Option<MembershipWitness> {
    if point_in_triangle(p, &Triangle::unit()) == Location::Outside {
        return None;
    }
    let mut q = *p;
    let mut word = Word::empty();
    for _ in 0..=max_depth {
        for s in Side::ALL {
            if let Some(t) = s.parameter_of(&q) {
                return Some(MembershipWitness { word, side: s, t });
            }
        }
        // off every side of Δ: at most one corner child can contain q
        let j = (1..=3).find(|&j| point_in_triangle(&q, &first_level_cell(j)).is_in_closed())?;
        q = unmap_unchecked(j, &q);
        word = word.child(j);
    }
    None
}

fn first_level_cell(j: u8) -> Triangle {
    Triangle::unit().map(|v| map_unchecked(j, v)).expect("corner cell is non-degenerate")
}

/// Construction triangle `Δ_w = φ_w(Δ)` of side `2^-|w|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub word: Word,
    pub triangle: Triangle,
    pub side: Rational,
}

pub fn cell(w: &Word) -> Cell {
    let triangle = Triangle::unit().map(|v| apply_word(w, v)).expect("similar image of Δ");
    Cell { word: w.clone(), triangle, side: dyadic(1, w.len() as u32) }
}

/// Stage `K_m` as its `3^m` cells in lexicographic word order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSet {
    pub level: u32,
    pub cells: Vec<Cell>,
}

impl StageSet {
    /// Sum of the cell areas, exact.
    pub fn total_area(&self) -> Surd3 {
        self.cells.iter().fold(Surd3::zero(), |acc, c| acc + c.triangle.area())
    }
}

/// `area(K_m) = (3/4)^m · √3/4`.
pub fn stage_area(m: u32) -> Surd3 {
    let ratio = rat(3, 4);
    let mut scale = Rational::one();
    for _ in 0..m {
        scale *= ratio;
    }
    Surd3::sqrt3_times(scale * rat(1, 4))
}

/// The `2^n + 1` dyadic points `k/2^n` along `side` of `Δ_w`.
pub fn side_dyadics(w: &Word, side: Side, n: u32) -> Vec<WitnessedPoint> {
    (0..=(1i128 << n))
        .map(|k| {
            WitnessedPoint::from_witness(MembershipWitness { word: w.clone(), side, t: dyadic(k, n) })
        })
        .collect()
}

/// All words `w` of length `n` with `x ∈ Δ_w` (closed), lexicographic.
///
/// Errors when `x` lies outside `Δ`.
pub fn locate_cells(x: &Point, n: usize) -> Result<Vec<Word>> {
    if point_in_triangle(x, &Triangle::unit()) == Location::Outside {
        return Err(Error::PointOutsideBase);
    }
    let cells = [first_level_cell(1), first_level_cell(2), first_level_cell(3)];
    let mut out = Vec::new();
    let mut stack: Vec<(Word, Point)> = alloc::vec![(Word::empty(), *x)];
    // depth-first, children pushed in reverse so output is lexicographic
    while let Some((w, q)) = stack.pop() {
        if w.len() == n {
            out.push(w);
            continue;
        }
        for j in (1..=3u8).rev() {
            if point_in_triangle(&q, &cells[j as usize - 1]).is_in_closed() {
                stack.push((w.child(j), unmap_unchecked(j, &q)));
            }
        }
    }
    Ok(out)
}

/// `p ∈ K_m`. Necessary for `p ∈ E`; never decides membership in `E` itself.
pub fn in_stage(p: &Point, m: usize) -> bool {
    if point_in_triangle(p, &Triangle::unit()) == Location::Outside {
        return false;
    }
    let cells = [first_level_cell(1), first_level_cell(2), first_level_cell(3)];
    let mut stack: Vec<(usize, Point)> = alloc::vec![(0, *p)];
    while let Some((depth, q)) = stack.pop() {
        if depth == m {
            return true;
        }
        for j in 1..=3u8 {
            if point_in_triangle(&q, &cells[j as usize - 1]).is_in_closed() {
                stack.push((depth + 1, unmap_unchecked(j, &q)));
            }
        }
    }
    false
}

/// Level-capped enumeration of stages and vertex samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gasket {
    level_cap: u32,
}

impl Default for Gasket {
    fn default() -> Self {
        Gasket { level_cap: DEFAULT_LEVEL_CAP }
    }
}

impl Gasket {
    pub fn with_level_cap(cap: u32) -> Result<Self> {
        if cap > MAX_LEVEL_CAP {
            return Err(Error::LevelCap { level: cap, cap: MAX_LEVEL_CAP });
        }
        Ok(Gasket { level_cap: cap })
    }

    pub fn level_cap(&self) -> u32 {
        self.level_cap
    }

    pub fn check_level(&self, level: u32) -> Result<()> {
        if level > self.level_cap {
            Err(Error::LevelCap { level, cap: self.level_cap })
        } else {
            Ok(())
        }
    }

    /// All `3^m` cells of `K_m`.
    pub fn stage(&self, m: u32) -> Result<StageSet> {
        self.check_level(m)?;
        let mut cells = Vec::with_capacity(3usize.pow(m));
        let mut stack: Vec<(Word, [Point; 3])> =
            alloc::vec![(Word::empty(), [Point::v1(), Point::v2(), Point::v3()])];
        let side = dyadic(1, m);
        while let Some((w, [a, b, c])) = stack.pop() {
            if w.len() == m as usize {
                let triangle = Triangle::new(a, b, c).expect("cells are non-degenerate");
                cells.push(Cell { word: w, triangle, side });
                continue;
            }
            let verts = [a, b, c];
            for j in (1..=3u8).rev() {
                let pj = verts[j as usize - 1];
                let child = verts.map(|p| p.midpoint(&pj));
                stack.push((w.child(j), child));
            }
        }
        Ok(StageSet { level: m, cells })
    }

    /// Deduplicated vertices of all level-`n` cells, as integer basis
    /// coordinates scaled by `2^n`, sorted.
    pub fn vertex_lattice(&self, n: u32) -> Result<Vec<(i64, i64)>> {
        self.check_level(n)?;
        let mut out = Vec::with_capacity(3 * 3usize.pow(n));
        for_each_lattice_cell(n, |tri| out.extend_from_slice(&tri));
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `E_n`: deduplicated level-`n` cell vertices, each witnessed by the
    /// lexicographically smallest cell having it as a vertex. Sorted by
    /// basis coordinates.
    pub fn vertex_sample(&self, n: u32) -> Result<Vec<WitnessedPoint>> {
        self.check_level(n)?;
        let mut first: BTreeMap<(i64, i64), (Word, Side)> = BTreeMap::new();
        let mut stack: Vec<(Word, [(i64, i64); 3])> = alloc::vec![(Word::empty(), root_lattice(n))];
        while let Some((w, verts)) = stack.pop() {
            if w.len() == n as usize {
                for (k, v) in verts.iter().enumerate() {
                    first.entry(*v).or_insert_with(|| (w.clone(), Side::ALL[k]));
                }
                continue;
            }
            for j in (1..=3u8).rev() {
                stack.push((w.child(j), child_lattice(&verts, j)));
            }
        }
        Ok(first
            .into_iter()
            .map(|((u, w), (word, side))| WitnessedPoint {
                point: Point::dyadic(u as i128, w as i128, n),
                witness: MembershipWitness { word, side, t: Rational::zero() },
            })
            .collect())
    }

    /// Sample point of `E_n` nearest to a Cartesian location; ties go to the
    /// smaller basis coordinates.
    pub fn nearest_sample_point(&self, target: [f64; 2], n: u32) -> Result<WitnessedPoint> {
        let sample = self.vertex_sample(n)?;
        let d2 = |p: &Point| {
            let c = p.cartesian();
            (c[0] - target[0]) * (c[0] - target[0]) + (c[1] - target[1]) * (c[1] - target[1])
        };
        let mut best = &sample[0];
        let mut best_d = d2(&best.point);
        for wp in &sample[1..] {
            let d = d2(&wp.point);
            if d < best_d {
                best = wp;
                best_d = d;
            }
        }
        Ok(best.clone())
    }
}

pub(crate) fn root_lattice(n: u32) -> [(i64, i64); 3] {
    let s = 1i64 << n;
    [(0, 0), (s, 0), (0, s)]
}

pub(crate) fn child_lattice(verts: &[(i64, i64); 3], j: u8) -> [(i64, i64); 3] {
    let pj = verts[j as usize - 1];
    verts.map(|p| ((p.0 + pj.0) / 2, (p.1 + pj.1) / 2))
}

/// Visit every level-`n` cell as integer vertices at scale `2^n`.
pub(crate) fn for_each_lattice_cell(n: u32, mut f: impl FnMut([(i64, i64); 3])) {
    fn rec(verts: [(i64, i64); 3], depth: u32, f: &mut impl FnMut([(i64, i64); 3])) {
        if depth == 0 {
            f(verts);
            return;
        }
        for j in 1..=3u8 {
            rec(child_lattice(&verts, j), depth - 1, f);
        }
    }
    rec(root_lattice(n), n, &mut f);
}
