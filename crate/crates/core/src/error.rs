use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("forms {0} and {1} define the same line")]
    DuplicateLine(String, String),
    #[error("no form is proportional to x; change coordinates first")]
    MissingXLine,
    #[error("an arrangement needs at least {need} lines, got {got}")]
    TooFewLines { need: usize, got: usize },
    #[error("the zero linear form does not define a line")]
    ZeroForm,
    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),
    #[error("operands belong to different arrangements")]
    ArrangementMismatch,
    #[error("{0} does not lie in k[E]")]
    NotInT(String),
    #[error("{0} does not lie in S")]
    NotInS(String),
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("unsupported degree: {0}")]
    UnsupportedDegree(String),
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix {rows}x{cols} exceeds the cap of {cap} entries per side")]
    RankOverflow { rows: usize, cols: usize, cap: usize },
    #[error("condition fails: {0}")]
    ConditionFails(String),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error(
        "r = {0} is not supported here: the degree-0 description of the complex needs r >= 3 \
         and the small cases are a substantially harder computation that is not implemented"
    )]
    SmallArrangement(u32),
    #[error("relation {0} is not respected")]
    RelationFails(String),
    #[error("no rule for tensor {0}")]
    UncoveredShape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{element} is not a normal element ({reason})")]
    NotNormal { element: String, reason: NotNormalReason },
}

/// Why an element fails to be normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotNormalReason {
    /// Zero is not a normal element.
    Zero,
    /// The element has D or E support.
    #[serde(rename = "not-in-S")]
    NotInS,
    /// Some factor is not a product of rational lines through the origin.
    NonSplitFactor,
    /// The element splits into lines, one of which is not in the arrangement.
    ForeignLine,
}

impl std::fmt::Display for NotNormalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NotNormalReason::Zero => "zero",
            NotNormalReason::NotInS => "not-in-S",
            NotNormalReason::NonSplitFactor => "non-split-factor",
            NotNormalReason::ForeignLine => "foreign-line",
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
