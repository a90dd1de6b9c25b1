//! CSV tables. Every field is a number or a `p/q` rational, so no quoting
//! is ever needed.

use std::fmt::Write;

use gasket_core::exact::format_rational;
use gasket_core::thickness::ScanEntry;
use gasket_core::Point;

pub const SCAN_HEADER: &str = "x_u,x_w,r,inradius,normalized,degenerate_flag";
pub const POINTS_HEADER: &str = "u,w,x,y";

pub fn scan_csv(entries: &[ScanEntry]) -> String {
    let mut out = String::with_capacity(64 * (entries.len() + 1));
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for e in entries {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_rational(&e.x.u),
            format_rational(&e.x.w),
            format_rational(&e.r),
            e.inradius,
            e.normalized,
            u8::from(e.degenerate)
        )
        .expect("writing to a String");
    }
    out
}

pub fn points_csv(points: &[Point]) -> String {
    let mut out = String::with_capacity(48 * (points.len() + 1));
    out.push_str(POINTS_HEADER);
    out.push('\n');
    for p in points {
        let [x, y] = p.cartesian();
        writeln!(out, "{},{},{x},{y}", format_rational(&p.u), format_rational(&p.w)).expect("writing to a String");
    }
    out
}
