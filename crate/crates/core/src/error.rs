use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaceError {
    #[error("torus dimensions must be positive, got {rows}x{cols}")]
    InvalidDims { rows: u32, cols: u32 },
    #[error("step <{dx},{dy}> is not a lace step vector")]
    InvalidStep { dx: i32, dy: i32 },
    #[error("not a lace path: {0}")]
    InvalidPath(String),
    #[error("lace path height must be at least 1")]
    InvalidHeight,
    #[error("path height {path} does not match torus rows {rows}")]
    HeightMismatch { path: u32, rows: u32 },
    #[error("start column {col} out of range for {cols} columns")]
    ColumnOutOfRange { col: u32, cols: u32 },
    #[error("unknown action symbol {0:?}")]
    UnknownAction(char),
    #[error("grid {rows}x{cols} too large for the enumerator (at most {max} lattice points)")]
    GridTooLarge { rows: u32, cols: u32, max: usize },
}

/// Error raised while reading a ground file, with the 1-based line number.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `ground v1` header")]
    MissingHeader,
    #[error("missing `dims` line before arcs")]
    MissingDims,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{0}")]
    Lace(LaceError),
    #[error("coordinate ({row},{col}) outside {rows}x{cols}")]
    OutOfRange {
        row: i64,
        col: i64,
        rows: u32,
        cols: u32,
    },
    #[error("duplicate arc {0}")]
    DuplicateArc(String),
    #[error("duplicate dims line")]
    DuplicateDims,
}
