//! Exact geometry of the Sierpinski gasket and its thickness.
//!
//! Everything gasket-native lives in the triangular basis
//! `{(1, 0), (1/2, √3/2)}` with rational coefficients, so cell vertices,
//! midpoints and dyadic side points are exact and orientation / squared
//! distance tests never round. Cartesian floats are derived views.
//!
//! * [`geom`]: points, triangles, convex hulls, inscribed disks.
//! * [`gasket`]: the three corner maps, words, cells, stages and
//!   constructive membership witnesses.
//! * [`thickness`]: per-query certificate triangles, the sharp upper-bound
//!   witness and the brute-force sample estimator.
//! * [`sumset`]: Minkowski sums of witnessed samples and the many-summand
//!   interior bound.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

mod error;
pub mod exact;
pub mod gasket;
pub mod geom;
pub mod sumset;
pub mod thickness;

pub use error::{Error, Result};
pub use exact::{Rational, Surd3};
pub use gasket::{Cell, Gasket, MembershipWitness, Side, StageSet, WitnessKind, WitnessedPoint, Word};
pub use geom::{ConvexPolygon, Disk, InscribedDisk, Location, Point, Triangle};
pub use thickness::{Certificate, Corner, ThicknessReport};
