//! JSON views of the core types.
//!
//! Rationals are reduced `"p/q"` strings; anything carrying a `√3` is an
//! [`ExactJson`] triple. Field order is fixed, so output is byte-stable.

use gasket_core::exact::{format_rational, parse_rational, Rational};
use gasket_core::gasket::{Side, StageSet};
use gasket_core::sumset::{BoundResult, CoverageReport};
use gasket_core::thickness::{Certificate, ThicknessReport, UpperBoundWitness};
use gasket_core::{Cell, Error, MembershipWitness, Point, Surd3, Triangle, Word};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub u: String,
    pub w: String,
    pub x: f64,
    pub y: f64,
}

impl From<&Point> for PointJson {
    fn from(p: &Point) -> Self {
        let [x, y] = p.cartesian();
        PointJson { u: format_rational(&p.u), w: format_rational(&p.w), x, y }
    }
}

impl PointJson {
    pub fn to_point(&self) -> Result<Point, Error> {
        Ok(Point::new(parse_rational(&self.u)?, parse_rational(&self.w)?))
    }
}

/// `rational + sqrt3_coeff·√3`, plus its float value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactJson {
    pub rational: String,
    pub sqrt3_coeff: String,
    pub float: f64,
}

impl From<&Surd3> for ExactJson {
    fn from(s: &Surd3) -> Self {
        ExactJson {
            rational: format_rational(&s.rational),
            sqrt3_coeff: format_rational(&s.sqrt3_coeff),
            float: s.to_f64(),
        }
    }
}

impl ExactJson {
    pub fn to_surd(&self) -> Result<Surd3, Error> {
        Ok(Surd3 { rational: parse_rational(&self.rational)?, sqrt3_coeff: parse_rational(&self.sqrt3_coeff)? })
    }
}

pub fn side_name(s: Side) -> &'static str {
    match s {
        Side::S12 => "S12",
        Side::S23 => "S23",
        Side::S31 => "S31",
    }
}

pub fn parse_side(s: &str) -> Result<Side, Error> {
    match s {
        "S12" => Ok(Side::S12),
        "S23" => Ok(Side::S23),
        "S31" => Ok(Side::S31),
        other => Err(Error::Parse(format!("unknown side '{other}'"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub kind: String,
    pub word: String,
    pub side: String,
    pub t: String,
    pub point: PointJson,
}

impl From<&MembershipWitness> for WitnessJson {
    fn from(w: &MembershipWitness) -> Self {
        WitnessJson {
            kind: w.kind().name().to_string(),
            word: w.word().to_string(),
            side: side_name(w.side()).to_string(),
            t: format_rational(&w.t()),
            point: (&w.point()).into(),
        }
    }
}

impl WitnessJson {
    pub fn to_witness(&self) -> Result<MembershipWitness, Error> {
        let w = MembershipWitness::new(self.word.parse()?, parse_side(&self.side)?, parse_rational(&self.t)?)?;
        if w.kind().name() != self.kind || w.point() != self.point.to_point()? {
            return Err(Error::Witness(format!("witness fields disagree for word '{}'", self.word)));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellJson {
    pub word: String,
    pub side: String,
    pub vertices: [PointJson; 3],
}

impl From<&Cell> for CellJson {
    fn from(c: &Cell) -> Self {
        CellJson {
            word: c.word.to_string(),
            side: format_rational(&c.side),
            vertices: c.triangle.vertices().map(|v| (&v).into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageJson {
    pub level: u32,
    pub cell_count: usize,
    pub area: ExactJson,
    pub cells: Vec<CellJson>,
}

impl From<&StageSet> for StageJson {
    fn from(s: &StageSet) -> Self {
        StageJson {
            level: s.level,
            cell_count: s.cells.len(),
            area: (&s.total_area()).into(),
            cells: s.cells.iter().map(CellJson::from).collect(),
        }
    }
}

impl StageJson {
    /// Rebuild the stage, checking every cell against its word.
    pub fn to_stage(&self) -> Result<StageSet, Error> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let word: Word = c.word.parse()?;
                let cell = gasket_core::gasket::cell(&word);
                let [a, b, d] = [0, 1, 2].map(|k| c.vertices[k].to_point());
                let given = Triangle::new(a?, b?, d?)?;
                if !given.same_as(&cell.triangle) || parse_rational(&c.side)? != cell.side {
                    return Err(Error::Parse(format!("cell '{word}' does not match its word")));
                }
                Ok(cell)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        if cells.len() != self.cell_count || cells.iter().any(|c| c.word.len() != self.level as usize) {
            return Err(Error::Parse("stage header does not match its cells".into()));
        }
        Ok(StageSet { level: self.level, cells })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskJson {
    pub center: [f64; 2],
    pub center_exact: Option<PointJson>,
    pub radius: f64,
    pub radius_exact: Option<ExactJson>,
}

impl From<&gasket_core::Disk> for DiskJson {
    fn from(d: &gasket_core::Disk) -> Self {
        use gasket_core::geom::Center;
        DiskJson {
            center: d.center.cartesian(),
            center_exact: match &d.center {
                Center::Exact(p) => Some(p.into()),
                Center::Approx(_) => None,
            },
            radius: d.radius.to_f64(),
            radius_exact: d.radius.exact().as_ref().map(ExactJson::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub vertices: [PointJson; 3],
    pub side: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub x: PointJson,
    pub x_witness: WitnessJson,
    pub r: String,
    pub n: u32,
    pub word: String,
    pub corner: u8,
    pub x_normalized: PointJson,
    pub r_normalized: String,
    pub q: TriangleJson,
    pub incircle: DiskJson,
    pub witnesses: [WitnessJson; 3],
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            x: c.x.point().into(),
            x_witness: c.x.witness().into(),
            r: format_rational(&c.r),
            n: c.n,
            word: c.word.to_string(),
            corner: c.corner.index(),
            x_normalized: c.x_normalized.point().into(),
            r_normalized: format_rational(&c.r_normalized),
            q: TriangleJson { vertices: c.triangle.vertices().map(|v| (&v).into()), side: format_rational(&c.r) },
            incircle: (&c.incircle).into(),
            witnesses: [0, 1, 2].map(|k| (&c.vertex_witnesses[k]).into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperWitnessJson {
    pub x: PointJson,
    pub r: String,
    pub hull: Vec<PointJson>,
    pub inradius: ExactJson,
    pub thickness: ExactJson,
    pub equals_thickness: bool,
}

impl From<&UpperBoundWitness> for UpperWitnessJson {
    fn from(w: &UpperBoundWitness) -> Self {
        let tau = gasket_core::thickness::exact_thickness();
        UpperWitnessJson {
            x: w.x.point().into(),
            r: format_rational(&w.r),
            hull: w.hull.vertices().iter().map(PointJson::from).collect(),
            inradius: (&w.inradius).into(),
            thickness: (&tau).into(),
            equals_thickness: w.inradius == tau,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryJson {
    pub x: PointJson,
    pub r: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridJson {
    pub sample_level: u32,
    pub query_level: u32,
    pub radii: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanJson {
    pub exact_value: ExactJson,
    pub attained: bool,
    pub numeric_lower: Option<f64>,
    pub argmin: Option<QueryJson>,
    pub witness_upper: ExactJson,
    pub gap_to_exact: Option<f64>,
    pub degenerate_count: usize,
    pub entry_count: usize,
    pub grid: GridJson,
}

impl From<&ThicknessReport> for ScanJson {
    fn from(r: &ThicknessReport) -> Self {
        ScanJson {
            exact_value: (&r.exact_value).into(),
            attained: r.attained,
            numeric_lower: r.numeric_lower,
            argmin: r.argmin.as_ref().map(|(x, rad)| QueryJson { x: x.into(), r: format_rational(rad) }),
            witness_upper: (&r.witness_upper_exact).into(),
            gap_to_exact: r.numeric_lower.map(|v| r.exact_value.to_f64() - v),
            degenerate_count: r.degenerate_count,
            entry_count: r.entries.len(),
            grid: GridJson {
                sample_level: r.grid.sample_level,
                query_level: r.grid.query_level,
                radii: r.grid.radii.iter().map(format_rational).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub d: u32,
    pub c: f64,
    pub threshold: f64,
    pub n_min: u64,
}

impl BoundJson {
    pub fn new(d: u32, c: f64, b: &BoundResult) -> Self {
        BoundJson { d, c, threshold: b.threshold, n_min: b.n_min }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramJson {
    pub vertices: Vec<PointJson>,
    pub area: ExactJson,
    pub inradius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageJson {
    /// Sample density evidence, not a proof of interior.
    pub evidence_only: bool,
    pub disk: DiskJson,
    pub spacing: String,
    pub covered: bool,
    pub worst_gap: f64,
    pub nodes_checked: usize,
}

impl CoverageJson {
    pub fn new(disk: &gasket_core::Disk, spacing: &Rational, c: &CoverageReport) -> Self {
        CoverageJson {
            evidence_only: true,
            disk: disk.into(),
            spacing: format_rational(spacing),
            covered: c.covered,
            worst_gap: c.worst_gap,
            nodes_checked: c.nodes_checked,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumsetJson {
    pub n_terms: u32,
    pub sample_level: u32,
    pub point_count: usize,
    pub parallelogram: ParallelogramJson,
    pub coverage: CoverageJson,
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
