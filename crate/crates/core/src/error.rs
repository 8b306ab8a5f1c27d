use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants are grouped loosely by the subsystem that produces them; pipeline
/// stages wrap upstream failures in [`Error::Stage`] so the caller can see
/// where a computation broke.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // -- local fields
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error("polynomial is not Eisenstein over the unramified subfield: {0}")]
    NotEisenstein(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("value is zero to working precision O(p^{0}); valuation is indeterminate")]
    IndeterminateValuation(String),
    #[error("division by an element that is zero to precision")]
    DivisionByZero,
    #[error("Frobenius is only defined on unramified fields")]
    NotUnramified,
    #[error("Teichmüller lift of zero requested")]
    TeichmullerOfZero,
    #[error("malformed p-adic literal `{literal}`: {reason}")]
    Literal { literal: String, reason: String },
    #[error("polynomial is not in 1 + T·L[T]: {0}")]
    NotUnitConstant(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    // -- linear algebra
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("Newton polygon has a slope exactly at the cut {0}")]
    SlopeAtCut(String),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("Frobenius degree {given} does not match unramified degree {expected}")]
    FrobeniusDegree { given: usize, expected: usize },

    // -- q-expansions
    #[error("q-precision {have} is too small (need at least {need})")]
    QPrecision { have: usize, need: usize },
    #[error("series is not p-depleted (a_{0} is nonzero)")]
    NotDepleted(usize),
    #[error("character error: {0}")]
    Character(String),
    #[error("{0} divides the level; use the U_p analogue")]
    PrimeDividesLevel(u64),

    // -- Hida theory
    #[error("basis error: {0}")]
    Basis(String),
    #[error("series is outside the span of the basis (residual valuation {0})")]
    OutsideSpan(String),
    #[error("eigensystem error: {0}")]
    Eigensystem(String),
    #[error("level trace {from} -> {to} unsupported without degeneracy data")]
    MissingDegeneracy { from: u64, to: u64 },

    // -- filtered (phi, N)-modules
    #[error("module data invalid: {0}")]
    Module(String),
    #[error("Bézout identity violated: {0}")]
    Bezout(String),
    #[error("trace is undefined for this polynomial: {0}")]
    TraceUndefined(String),
    #[error("splitting failed: {0}")]
    Splitting(String),
    #[error("unsupported: {0}")]
    Unsupported(String),

    // -- invariants and cusp calculus
    #[error("weights invalid: {0}")]
    Weights(String),
    #[error("{0}! is not invertible in the coefficient ring")]
    FactorialNotInvertible(usize),
    #[error("determinant is not invertible")]
    NonInvertibleDeterminant,
    #[error("structural failure: {0}")]
    Structural(String),

    // -- pipeline / ingestion
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("stage `{stage}`: {source}")]
    Stage {
        stage: &'static str,
        source: Box<Error>,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| Error::Stage {
            stage,
            source: Box::new(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
