use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("letter count must be in 1..={max}, got {0}", max = crate::algebra::MAX_LETTERS)]
    InvalidLetterCount(usize),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("letter y{index} out of range for {n} letters")]
    LetterOutOfRange { index: usize, n: usize },
    #[error("monomial {0:?} repeats a letter")]
    RepeatedLetter(Vec<usize>),
    #[error("context mismatch: {left:?} vs {right:?}")]
    ContextMismatch {
        left: AlgebraContext,
        right: AlgebraContext,
    },
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("generator x{index} at byte {position} out of range for {n} letters")]
    GeneratorOutOfRange {
        index: usize,
        n: usize,
        position: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator x{index} out of range for {n} letters")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("weight-{weight} residue over support {support:?} is not in the span of left-normed commutators: {residual}")]
    ResidueNotInLieSpan {
        weight: usize,
        support: Vec<usize>,
        residual: AlgebraElement,
    },
    #[error("collection did not terminate; residual {0}")]
    NonTermination(AlgebraElement),
    #[error("element order exceeds guard bound {0}")]
    OrderGuardExceeded(u64),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("unknown module {0:?}")]
    UnknownModule(String),
    #[error("invalid parameter for {name}: {message}")]
    InvalidParameter { name: String, message: String },
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("suspension by {shift} sends generator {generator} to negative degree")]
    DegreeUnderflow { generator: String, shift: i64 },
    #[error("iso test limited to 12 generators and 5 per degree, got {0}")]
    SizeGuard(usize),
    #[error("module fails its invariants: {0:?}")]
    Invalid(Vec<String>),
    #[error("map is not equivariant at generator {generator} ({operation})")]
    EquivarianceFailure {
        generator: String,
        operation: &'static str,
    },
    #[error("classification matched {0:?}; expected exactly one candidate")]
    AmbiguousClassification(Vec<&'static str>),
}
