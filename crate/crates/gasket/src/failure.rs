use std::fmt;

use gasket_core::Error;
use serde::Serialize;

use crate::svg::RenderError;

/// Everything that ends a run with a nonzero exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad flags or values. Exit 2.
    Usage(String),
    /// Level cap, render cap, sum budget, or I/O. Exit 3.
    Resource(String),
    /// An exact invariant check failed. Exit 4.
    Invariant(String),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    exit_code: i32,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: ErrorBody<'a>,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Resource(_) => "resource",
            Failure::Invariant(_) => "invariant",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Invariant(m) => m,
        }
    }

    /// One-line machine-readable form for stderr.
    pub fn to_json(&self) -> String {
        let body = ErrorJson { error: ErrorBody { kind: self.kind(), exit_code: self.exit_code(), message: self.message() } };
        serde_json::to_string(&body).expect("plain data serializes")
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for Failure {}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LevelCap { .. } | Error::Budget { .. } => Failure::Resource(e.to_string()),
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<RenderError> for Failure {
    fn from(e: RenderError) -> Self {
        match e {
            RenderError::TooDeep { .. } => Failure::Resource(e.to_string()),
            RenderError::Core(inner) => inner.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Resource(format!("i/o: {e}"))
    }
}
