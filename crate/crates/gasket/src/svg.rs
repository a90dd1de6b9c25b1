//! Deterministic SVG figures: fixed viewBox, fixed palette, six decimals.

use std::fmt::Write;

use gasket_core::geom::ConvexPolygon;
use gasket_core::thickness::Certificate;
use gasket_core::{Error, Point, StageSet, Triangle};

pub const DEFAULT_RENDER_CAP: u32 = 8;

const WIDTH: f64 = 1000.0;
const HEIGHT: f64 = 900.0;
const MARGIN: f64 = 60.0;

const FILL: &str = "#2b4c7e";
const OUTLINE: &str = "#1b1b1b";
const CELL: &str = "#3a7d44";
const BALL: &str = "#c0392b";
const CERT: &str = "#e67e22";

#[derive(Debug, Clone, PartialEq)]
pub enum RenderError {
    /// Stage level above the render cap.
    TooDeep { level: u32, cap: u32 },
    Core(Error),
}

impl std::fmt::Display for RenderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RenderError::TooDeep { level, cap } => {
                write!(f, "render level {level} exceeds render cap {cap}; try --level {cap} or lower")
            }
            RenderError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RenderError {}

impl From<Error> for RenderError {
    fn from(e: Error) -> Self {
        RenderError::Core(e)
    }
}

/// Affine map from Cartesian coordinates to the page, y pointing down.
struct Frame {
    scale: f64,
    ox: f64,
    oy: f64,
}

impl Frame {
    fn fit(bounds: [f64; 4]) -> Frame {
        let [x0, y0, x1, y1] = bounds;
        let scale = ((WIDTH - 2.0 * MARGIN) / (x1 - x0)).min((HEIGHT - 2.0 * MARGIN) / (y1 - y0));
        let ox = (WIDTH - scale * (x1 - x0)) / 2.0 - scale * x0;
        let oy = (HEIGHT + scale * (y1 - y0)) / 2.0 + scale * y0;
        Frame { scale, ox, oy }
    }

    fn unit() -> Frame {
        Frame::fit([0.0, 0.0, 1.0, gasket_core::exact::SQRT3 / 2.0])
    }

    fn page(&self, c: [f64; 2]) -> (f64, f64) {
        (self.ox + self.scale * c[0], self.oy - self.scale * c[1])
    }
}

struct Doc {
    body: String,
}

impl Doc {
    fn new(title: &str) -> Doc {
        let mut body = String::new();
        body.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        body.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 900\" width=\"1000\" height=\"900\">\n",
        );
        writeln!(body, "<title>{title}</title>").unwrap();
        body.push_str("<rect x=\"0\" y=\"0\" width=\"1000\" height=\"900\" fill=\"#ffffff\"/>\n");
        Doc { body }
    }

    fn polygon(&mut self, frame: &Frame, pts: &[[f64; 2]], attrs: &str) {
        self.body.push_str("<polygon points=\"");
        for (k, p) in pts.iter().enumerate() {
            let (x, y) = frame.page(*p);
            if k > 0 {
                self.body.push(' ');
            }
            write!(self.body, "{x:.6},{y:.6}").unwrap();
        }
        writeln!(self.body, "\" {attrs}/>").unwrap();
    }

    fn circle(&mut self, frame: &Frame, c: [f64; 2], r: f64, attrs: &str) {
        let (x, y) = frame.page(c);
        writeln!(self.body, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"{:.6}\" {attrs}/>", r * frame.scale).unwrap();
    }

    fn line(&mut self, frame: &Frame, a: [f64; 2], b: [f64; 2], attrs: &str) {
        let (x1, y1) = frame.page(a);
        let (x2, y2) = frame.page(b);
        writeln!(self.body, "<line x1=\"{x1:.6}\" y1=\"{y1:.6}\" x2=\"{x2:.6}\" y2=\"{y2:.6}\" {attrs}/>").unwrap();
    }

    fn label(&mut self, frame: &Frame, at: [f64; 2], dx: f64, dy: f64, text: &str) {
        let (x, y) = frame.page(at);
        writeln!(
            self.body,
            "<text x=\"{:.6}\" y=\"{:.6}\" font-family=\"sans-serif\" font-size=\"22\" fill=\"{OUTLINE}\">{text}</text>",
            x + dx,
            y + dy
        )
        .unwrap();
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn tri_points(t: &Triangle) -> Vec<[f64; 2]> {
    t.vertices().iter().map(Point::cartesian).collect()
}

/// All surviving cells of a stage, filled.
pub fn render_stage(stage: &StageSet, cap: u32) -> Result<String, RenderError> {
    if stage.level > cap {
        return Err(RenderError::TooDeep { level: stage.level, cap });
    }
    let frame = Frame::unit();
    let mut doc = Doc::new(&format!("stage {}: {} cells", stage.level, stage.cells.len()));
    doc.polygon(&frame, &tri_points(&Triangle::unit()), &format!("fill=\"none\" stroke=\"{OUTLINE}\" stroke-width=\"1\""));
    doc.body.push_str(&format!("<g class=\"cells\" fill=\"{FILL}\" stroke=\"none\">\n"));
    for c in &stage.cells {
        doc.polygon(&frame, &tri_points(&c.triangle), &format!("data-word=\"{}\"", c.word));
    }
    doc.body.push_str("</g>\n");
    Ok(doc.finish())
}

/// `Δ`, the chosen cell `Δ_w`, the ball `B(x, r)`, the triangle `Q` and its incircle.
pub fn render_certificate(cert: &Certificate) -> String {
    let frame = Frame::fit([-0.05, -0.05, 1.05, gasket_core::exact::SQRT3 / 2.0 + 0.05]);
    let mut doc = Doc::new(&format!("certificate: cell {}, r = {}", display_word(&cert.word), cert.r));
    doc.polygon(&frame, &tri_points(&Triangle::unit()), &format!("class=\"base\" fill=\"none\" stroke=\"{OUTLINE}\" stroke-width=\"2\""));
    let cell = gasket_core::gasket::cell(&cert.word);
    doc.polygon(
        &frame,
        &tri_points(&cell.triangle),
        &format!("class=\"cell\" data-word=\"{}\" fill=\"none\" stroke=\"{CELL}\" stroke-width=\"2\" stroke-dasharray=\"8 4\"", display_word(&cert.word)),
    );
    let x = cert.x.point().cartesian();
    let r = gasket_core::exact::to_f64(&cert.r);
    doc.circle(&frame, x, r, &format!("class=\"ball\" fill=\"none\" stroke=\"{BALL}\" stroke-width=\"2\""));
    doc.polygon(
        &frame,
        &tri_points(&cert.triangle),
        &format!("class=\"certificate\" fill=\"{CERT}\" fill-opacity=\"0.35\" stroke=\"{CERT}\" stroke-width=\"2\""),
    );
    doc.circle(
        &frame,
        cert.incircle.center.cartesian(),
        cert.incircle.radius.to_f64(),
        &format!("class=\"incircle\" fill=\"none\" stroke=\"{CERT}\" stroke-width=\"1\""),
    );
    doc.circle(&frame, x, 0.006, &format!("class=\"query\" fill=\"{BALL}\""));
    doc.label(&frame, x, 8.0, -8.0, "x");
    doc.finish()
}

/// The parallelogram `[v1, v2] + [v1, v3]` with its four labeled vertices.
pub fn render_parallelogram(poly: &ConvexPolygon, labels: &[(Point, &str)]) -> String {
    let verts: Vec<[f64; 2]> = poly.vertices().iter().map(Point::cartesian).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &verts {
        x0 = x0.min(p[0]);
        y0 = y0.min(p[1]);
        x1 = x1.max(p[0]);
        y1 = y1.max(p[1]);
    }
    let pad = 0.1;
    let frame = Frame::fit([x0 - pad, y0 - pad, x1 + pad, y1 + pad]);
    let mut doc = Doc::new("sum of two sides");
    doc.polygon(&frame, &verts, &format!("class=\"parallelogram\" fill=\"{FILL}\" fill-opacity=\"0.25\" stroke=\"{OUTLINE}\" stroke-width=\"2\""));
    doc.line(&frame, Point::v1().cartesian(), Point::v2().cartesian(), &format!("stroke=\"{CELL}\" stroke-width=\"3\""));
    doc.line(&frame, Point::v1().cartesian(), Point::v3().cartesian(), &format!("stroke=\"{BALL}\" stroke-width=\"3\""));
    for (p, text) in labels {
        let c = p.cartesian();
        doc.circle(&frame, c, 0.008, &format!("fill=\"{OUTLINE}\""));
        doc.label(&frame, c, 10.0, 24.0, text);
    }
    doc.finish()
}

fn display_word(w: &gasket_core::Word) -> String {
    if w.is_empty() {
        "(empty)".to_string()
    } else {
        w.to_string()
    }
}
