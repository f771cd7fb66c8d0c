use involute_core::Error as CoreError;
use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("invalid problem file: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid problem: {0}")]
    Spec(String),

    #[error("{0}: {1}")]
    Io(String, std::io::Error),

    /// Already reported; carries only the exit code.
    #[error("{0}")]
    Exit(String, i32),
}

impl CliError {
    /// 2 unsupported/degenerate, 3 resonance, 4 convergence, 5 parse.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Resonant(_) | CoreError::NotUnique(_) => 3,
                CoreError::Convergence(_)
                | CoreError::ContractionNotGuaranteed { .. }
                | CoreError::Quadrature { .. } => 4,
                CoreError::Parse(_) | CoreError::Eval(_) => 5,
                CoreError::Domain(_)
                | CoreError::Unsupported(_)
                | CoreError::Degenerate(_)
                | CoreError::WrongCase { .. }
                | CoreError::CannotShoot(_)
                | CoreError::SingularTransform(_) => 2,
            },
            CliError::Json(_) | CliError::Spec(_) => 5,
            CliError::Io(..) => 1,
            CliError::Exit(_, code) => *code,
        }
    }
}

impl From<involute_core::expr::ParseError> for CliError {
    fn from(e: involute_core::expr::ParseError) -> Self {
        CliError::Core(e.into())
    }
}
