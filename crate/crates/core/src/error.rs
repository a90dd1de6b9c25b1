use alloc::string::String;

/// Errors raised by the exact geometry, gasket and thickness routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("degenerate triangle: vertices are collinear or coincide")]
    DegenerateTriangle,
    #[error("point outside triangle")]
    PointOutsideTriangle,
    #[error("point outside the base triangle")]
    PointOutsideBase,
    #[error("point not in gasket stage 1")]
    NotInStageOne,
    #[error("normalized range violated: r must lie in [1/2, 1], got {0}")]
    NormalizedRange(String),
    #[error("radius out of range: r must lie in (0, 1], got {0}")]
    RadiusRange(String),
    #[error("side length must be positive")]
    NonPositiveSide,
    #[error("level cap exceeded: level {level} > cap {cap}")]
    LevelCap { level: u32, cap: u32 },
    #[error("invalid word letter {0:?}: words use the alphabet 1, 2, 3")]
    InvalidLetter(char),
    #[error("invalid index {0}: expected 1, 2 or 3")]
    InvalidIndex(u8),
    #[error("membership witness error: {0}")]
    Witness(String),
    #[error("certificate invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty radius list")]
    EmptyRadii,
    #[error("thickness must be positive (the bound diverges at c <= 0), got {0}")]
    NonPositiveThickness(String),
    #[error("invalid bound query: {0}")]
    BoundQuery(String),
    #[error("sumset budget exceeded: {size} sums > budget {budget}; try sample level {suggested_level}")]
    Budget {
        size: u64,
        budget: u64,
        suggested_level: u32,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
