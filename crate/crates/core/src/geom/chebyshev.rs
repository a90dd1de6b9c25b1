//! Chebyshev center of a convex polygon as a 3-variable linear program.
//!
//! maximize ρ subject to  n_i · y + ρ ≤ n_i · p_i  for every edge i,
//! with `n_i` the outward unit normal of edge `p_i -> p_{i+1}`.
//! Coordinates are shifted to the vertex centroid so the origin is strictly
//! feasible and the slack basis starts the simplex; the free center is
//! split as `y = y⁺ - y⁻`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

const EPS: f64 = 1e-12;
const ACTIVE_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Chebyshev {
    pub center: [f64; 2],
    pub radius: f64,
    pub unique: bool,
}

/// `verts` must be a counterclockwise, strictly convex polygon with at
/// least three vertices.
pub(crate) fn chebyshev_center(verts: &[[f64; 2]]) -> Chebyshev {
    let m = verts.len();
    let n = m as f64;
    let origin = [
        verts.iter().map(|p| p[0]).sum::<f64>() / n,
        verts.iter().map(|p| p[1]).sum::<f64>() / n,
    ];
    // (normal, offset) with normal·z + ρ ≤ offset in shifted coordinates
    let constraints: Vec<([f64; 2], f64)> = (0..m)
        .map(|i| {
            let p = verts[i];
            let q = verts[(i + 1) % m];
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let len = libm::hypot(dx, dy);
            let normal = [dy / len, -dx / len];
            let offset = normal[0] * (p[0] - origin[0]) + normal[1] * (p[1] - origin[1]);
            (normal, offset)
        })
        .collect();

    let (z, radius) = solve(&constraints);
    let center = [origin[0] + z[0], origin[1] + z[1]];

    let scale = verts
        .iter()
        .map(|p| libm::fabs(p[0] - origin[0]).max(libm::fabs(p[1] - origin[1])))
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let mut angles: Vec<f64> = constraints
        .iter()
        .filter(|(nrm, off)| {
            let slack = off - (nrm[0] * z[0] + nrm[1] * z[1]) - radius;
            slack <= ACTIVE_TOL * scale
        })
        .map(|(nrm, _)| libm::atan2(nrm[1], nrm[0]))
        .collect();
    Chebyshev { center, radius, unique: normals_surround(&mut angles) }
}

/// True when the active outward normals are not contained in any closed
/// half-plane, i.e. the optimal center is pinned.
fn normals_surround(angles: &mut [f64]) -> bool {
    if angles.len() < 3 {
        return false;
    }
    angles.sort_by(f64::total_cmp);
    let mut max_gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    for w in angles.windows(2) {
        max_gap = max_gap.max(w[1] - w[0]);
    }
    max_gap < PI - ACTIVE_TOL
}

/// Dense tableau simplex with Bland's rule. Columns: y1⁺, y1⁻, y2⁺, y2⁻, ρ,
/// then one slack per constraint.
fn solve(constraints: &[([f64; 2], f64)]) -> ([f64; 2], f64) {
    let m = constraints.len();
    let vars = 5;
    let cols = vars + m + 1;
    let rhs = cols - 1;
    let mut t = vec![0.0f64; (m + 1) * cols];
    let mut basis: Vec<usize> = (0..m).map(|i| vars + i).collect();
    for (i, (nrm, off)) in constraints.iter().enumerate() {
        let row = &mut t[i * cols..(i + 1) * cols];
        row[0] = nrm[0];
        row[1] = -nrm[0];
        row[2] = nrm[1];
        row[3] = -nrm[1];
        row[4] = 1.0;
        row[vars + i] = 1.0;
        row[rhs] = off.max(0.0);
    }
    // objective row holds reduced costs of  max ρ
    t[m * cols + 4] = -1.0;

    for _ in 0..MAX_PIVOTS {
        let obj = &t[m * cols..];
        let Some(enter) = (0..rhs).find(|&j| obj[j] < -EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i * cols + enter];
            if a > EPS {
                let ratio = t[i * cols + rhs] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - EPS || (libm::fabs(ratio - lr) <= EPS && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        // a bounded polygon keeps the program bounded
        let Some((pr, _)) = leave else { break };
        pivot(&mut t, cols, m, pr, enter);
        basis[pr] = enter;
    }

    let mut x = [0.0f64; 5];
    for (i, &b) in basis.iter().enumerate() {
        if b < vars {
            x[b] = t[i * cols + rhs];
        }
    }
    ([x[0] - x[1], x[2] - x[3]], x[4])
}

fn pivot(t: &mut [f64], cols: usize, m: usize, pr: usize, pc: usize) {
    let p = t[pr * cols + pc];
    for j in 0..cols {
        t[pr * cols + j] /= p;
    }
    for i in 0..=m {
        if i == pr {
            continue;
        }
        let f = t[i * cols + pc];
        if f != 0.0 {
            for j in 0..cols {
                t[i * cols + j] -= f * t[pr * cols + j];
            }
        }
    }
}
