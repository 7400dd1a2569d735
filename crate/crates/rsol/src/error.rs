use rsol_core::boolean::BooleanError;
use rsol_core::formulas::{FormulaError, ParseError};
use rsol_core::structures::StructureError;

/// Command failures, each with its exit status.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("check failed: {0}")]
    Check(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("feasibility guard: {0}")]
    Feasibility(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Feasibility(_) => 4,
            Failure::Io(_) => 5,
        }
    }

    pub fn parse(msg: impl std::fmt::Display) -> Self {
        Failure::Parse(msg.to_string())
    }

    pub fn pre(msg: impl std::fmt::Display) -> Self {
        Failure::Precondition(msg.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Feasibility(m) => Failure::Feasibility(m),
            StructureError::Formula(f) => f.into(),
            e => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<BooleanError> for Failure {
    fn from(e: BooleanError) -> Self {
        match e {
            BooleanError::SizeGuard(_) | BooleanError::BudgetExhausted(_) | BooleanError::NotFinite => {
                Failure::Feasibility(e.to_string())
            }
            BooleanError::ClaimRefuted(_) | BooleanError::BoundViolated { .. } | BooleanError::NotExtremal(_) => {
                Failure::Check(e.to_string())
            }
            BooleanError::AvoidUnit => Failure::Precondition(e.to_string()),
        }
    }
}
