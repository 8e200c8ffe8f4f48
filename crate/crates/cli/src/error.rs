use planar_cayley::analyze::AnalyzeError;
use planar_cayley::classify::ClassifyError;
use planar_cayley::construct::{BallError, ConstructError};
use planar_cayley::embed::EmbedError;
use planar_cayley::PresentationError;
use thiserror::Error;

/// Every failure the command line reports, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not in catalogue: {0}")]
    NotInCatalogue(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("render error: {0}")]
    Render(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("oracle inconclusive: {0}")]
    OracleInconclusive(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::InvalidParams(_) => 2,
            CliError::NotInCatalogue(_) => 3,
            CliError::Inconclusive(_) => 4,
            CliError::Render(_) => 5,
            CliError::Verification(_) => 6,
            CliError::OracleInconclusive(_) => 7,
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<BallError> for CliError {
    fn from(e: BallError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::InvalidParams(s) => CliError::InvalidParams(s),
            ConstructError::ConstructionIncomplete { .. } => CliError::Verification(e.to_string()),
            ConstructError::OracleInconclusive(s) => CliError::OracleInconclusive(s),
        }
    }
}

impl From<AnalyzeError> for CliError {
    fn from(e: AnalyzeError) -> Self {
        match e {
            AnalyzeError::BallTooSmall(_) | AnalyzeError::NoSeparatorFound { .. } => {
                CliError::Inconclusive(e.to_string())
            }
            AnalyzeError::Precondition(_) | AnalyzeError::WrongType(_) => CliError::InvalidParams(e.to_string()),
        }
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::SpinConflict(_) => CliError::Verification(e.to_string()),
            EmbedError::WrongType(_) | EmbedError::Precondition(_) => CliError::InvalidParams(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotCubic(_) => CliError::InvalidParams(e.to_string()),
            ClassifyError::Inconclusive { attribute, detail } => {
                CliError::Inconclusive(format!("cannot decide {attribute}: {detail}"))
            }
            ClassifyError::Overflow(_) => CliError::OracleInconclusive(e.to_string()),
            ClassifyError::OracleInconclusive(s) => CliError::OracleInconclusive(s),
        }
    }
}
