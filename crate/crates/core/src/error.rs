use std::fmt;

/// Which statistical table a lookup was made against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// Studentised maximum modulus.
    Smm,
    /// Studentised range.
    Sr,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Smm => "smm",
            Distribution::Sr => "sr",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Smm => f.write_str("SMM"),
            Distribution::Sr => f.write_str("SR"),
        }
    }
}

impl std::str::FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "smm" => Ok(Distribution::Smm),
            "sr" => Ok(Distribution::Sr),
            other => Err(Error::InvalidParameter(format!(
                "unknown distribution `{other}` (expected smm or sr)"
            ))),
        }
    }
}

/// Table axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    K,
    D,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::K => f.write_str("k"),
            Axis::D => f.write_str("d"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("at least 2 measurements are required, got {count}")]
    TooFewMeasurements { count: usize },

    #[error("measurement {index} is not a finite number")]
    NonFiniteValue { index: usize },

    #[error("at least 2 taxa are required, got {count}")]
    TooFewTaxa { count: usize },

    #[error("taxon at position {index} has zero variance")]
    ZeroVariance { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{distribution} table has no values for {axis} = {value} (table starts at {floor})")]
    BelowTableRange {
        distribution: Distribution,
        axis: Axis,
        value: f64,
        floor: f64,
    },

    #[error("code {code} cannot be written as a single symbol (at most 62 states per character)")]
    TooManyStates { code: usize },

    #[error("no taxon has measurements for trait `{trait_name}`")]
    NoData { trait_name: String },

    #[error("trait `{name}`: {source}")]
    InTrait {
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("input is empty")]
    EmptyFile,

    #[error("line 1: header line contains no trait names")]
    EmptyHeader,

    #[error("line 1: trait name in column {column} is empty")]
    EmptyTraitName { column: usize },

    #[error("line 1: trait name `{name}` appears more than once")]
    DuplicateTrait { name: String },

    #[error("line {line}: expected {expected} tab-separated columns, found {found}")]
    ColumnCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: taxon name is empty")]
    EmptyTaxonName { line: usize },

    #[error("line {line}, column {column}: cannot parse `{text}` as a number")]
    UnparseableNumber {
        line: usize,
        column: usize,
        text: String,
    },

    #[error("input is not valid UTF-8 (byte offset {offset})")]
    InvalidUtf8 { offset: usize },

    #[error("anchor table line {line}: {message}")]
    TableFormat { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
