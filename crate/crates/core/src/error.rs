use thiserror::Error;

/// Errors surfaced by the library. Every failure carries enough context to
/// be rendered verbatim in a report; none of them are recoverable mid-pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("family is not well-formed: {0}")]
    NotWellFormed(String),

    #[error("vertex {0} does not lie on a generic member")]
    NotOnSurface(usize),

    #[error("vertex {0} has weight 1 and is a smooth point of the ambient space")]
    SmoothPoint(usize),

    #[error("no monomial of degree {degree} is supported on coordinates ({i}, {j}); genericity assumption violated, flagged for manual review")]
    EmptyRestriction { i: usize, j: usize, degree: u64 },

    #[error("subset is not contained in the remaining singularities: {0}")]
    NotASingularity(String),

    #[error("malformed catalog at line {line}: {reason}")]
    Catalog { line: usize, reason: String },

    #[error("invalid branch data: {0}")]
    InvalidBranchData(String),

    #[error("missing assumption: {0}")]
    MissingAssumption(String),

    #[error("euler class `{0}` pairs to zero against every basis class")]
    DegenerateEulerClass(String),

    #[error("r = {0} outside the admissible range [5, 22]")]
    OutOfRange(i64),

    #[error("class has non-negative self-intersection {0}; it admits no nonzero anti-self-dual representative")]
    NonNegativeSquare(String),

    #[error("c2 = {0} is inadmissible; stable bundles require c2 >= 5")]
    InadmissibleC2(i64),

    #[error("no positive solution for t^2 (got {0}); requires c2 > e_orb")]
    NoPositiveSolution(String),

    #[error("divisor square sum is zero; t^2 is undefined")]
    ZeroDenominator,

    #[error("no simple-connectivity witness for {divisor} among the candidate classes (values: {values})")]
    NoWitness { divisor: String, values: String },

    #[error("parameter search exhausted bounds (k_max={k_max}, m_max={m_max}): {tried} pairs tried, {nakai_failures} Nakai failures, {witness_failures} witness failures, {prime_rejections} prime rejections")]
    SearchExhausted {
        k_max: u64,
        m_max: u64,
        tried: u64,
        nakai_failures: u64,
        witness_failures: u64,
        prime_rejections: u64,
    },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("pipeline stage `{stage}` failed: {source}")]
    Pipeline {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the pipeline stage it occurred in.
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Pipeline {
            stage,
            source: Box::new(self),
        }
    }

    /// Innermost stage name, if this error came out of a pipeline.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            Error::Pipeline { stage, .. } => Some(stage),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
