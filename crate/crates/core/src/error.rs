use std::fmt;

use thiserror::Error;

/// Syntax error in the entry grammar or the matrix text format.
///
/// `offset` is a byte offset into the text that was handed to the parser;
/// `row`/`col` locate the matrix entry when the failure is inside one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub row: Option<usize>,
    pub col: Option<usize>,
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn at_offset(offset: usize, message: impl Into<String>) -> Self {
        Self {
            row: None,
            col: None,
            offset,
            message: message.into(),
        }
    }

    pub fn zero_denominator(offset: usize) -> Self {
        Self::at_offset(offset, "zero denominator")
    }

    pub(crate) fn in_entry(mut self, row: usize, col: usize, base: usize) -> Self {
        self.row = Some(row);
        self.col = Some(col);
        self.offset += base;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.row, self.col) {
            (Some(r), Some(c)) => {
                write!(
                    f,
                    "{} at row {}, column {} (offset {})",
                    self.message, r, c, self.offset
                )
            }
            _ => write!(f, "{} at offset {}", self.message, self.offset),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix must be square and non-empty")]
    NotSquare,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },
    #[error("generator {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("at least one generator (or an explicit dimension) is required")]
    NoGenerators,
    #[error("group of order {order} is not a 2-group")]
    NotTwoGroup { order: usize },
    #[error("{n} does not divide the group order {order}")]
    NotDivisor { n: usize, order: usize },
    #[error("element index {0} out of range")]
    BadIndex(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("defining representation is reducible (character norm {norm})")]
    Reducible { norm: String },
    #[error("indicator sum {value} is not one of -1, 0, 1")]
    NonIntegral { value: String },
    #[error("ambiguous census: {candidates} dimension multisets fit")]
    AmbiguousCensus { candidates: usize },
    #[error("no dimension multiset fits the class/abelianization data")]
    NoCensus,
    #[error("element order {order} is unsupported (must divide 8)")]
    UnsupportedOrder { order: usize },
    #[error("eigenvalue multiplicity is not a non-negative integer")]
    NonIntegralMultiplicity,
    #[error("invariant form kind {form} contradicts indicator {indicator}")]
    InconsistentForm { form: String, indicator: i8 },
    #[error("representation block is not isotypic; cannot isolate an indicator")]
    NotIsotypic,
    #[error("blocks disagree on the structural invariant: {0:?}")]
    BlocksDisagree(Vec<i8>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error("label `{0}` has no assigned matrix")]
    UnassignedLabel(String),
    #[error("malformed word `{word}`: {reason}")]
    MalformedWord { word: String, reason: String },
    #[error("invalid table `{id}`: {reason}")]
    InvalidTable { id: String, reason: String },
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("unknown relation set `{0}`")]
    UnknownRelationSet(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("invalid data file `{file}`: {reason}")]
    Data { file: String, reason: String },
    #[error("{0}")]
    Search(String),
    #[error("unknown claim filter `{0}` (matches nothing)")]
    UnknownClaim(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
