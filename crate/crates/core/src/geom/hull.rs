use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{orient, ConvexPolygon, Point};
use crate::error::{Error, Result};

/// Andrew's monotone chain over any totally ordered point type.
///
/// `orient(a, b, c)` must return `Greater` for a counterclockwise turn.
/// Output is counterclockwise with collinear points dropped; all-collinear
/// input collapses to its two extreme points, a single point to itself.
pub(crate) fn monotone_chain<P, F>(mut pts: Vec<P>, orient: F) -> Vec<P>
where
    P: Copy + Ord,
    F: Fn(&P, &P, &P) -> Ordering,
{
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<P> = Vec::with_capacity(2 * pts.len());
    for p in pts.iter() {
        while hull.len() >= 2 && orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p) != Ordering::Greater {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p) != Ordering::Greater
        {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    if hull.len() == 2 && hull[0] == hull[1] {
        hull.pop();
    }
    hull
}

/// Exact convex hull of a finite point set.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(ConvexPolygon::from_ccw(monotone_chain(points.to_vec(), orient)))
}
