//! Command failures and their exit codes.

use gerbe_core::io::IoError;
use gerbe_core::{AlgebraError, CohomologyError, ExtensionError, GroupoidError, MoritaError, SizeBound};

/// Exit codes: 1 validation failure, 2 size bound, 3 parse error.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Bound(SizeBound),
    Parse(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Bound(_) => 2,
            Failure::Parse(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Invalid(m) => format!("validation failure: {m}"),
            Failure::Bound(b) => b.to_string(),
            Failure::Parse(m) => format!("ParseError: {m}"),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::SizeBound(b) => Failure::Bound(b),
            e if e.is_parse_error() => Failure::Parse(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<SizeBound> for Failure {
    fn from(b: SizeBound) -> Self {
        Failure::Bound(b)
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::SizeBound(b) => Failure::Bound(b),
            AlgebraError::OrderBound { order, limit } => {
                Failure::Bound(SizeBound { what: "group order".into(), size: order as u128, limit: limit as u128 })
            }
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<GroupoidError> for Failure {
    fn from(e: GroupoidError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<ExtensionError> for Failure {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::Algebra(a) => a.into(),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::SizeBound(b) => Failure::Bound(b),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<MoritaError> for Failure {
    fn from(e: MoritaError) -> Self {
        match e {
            MoritaError::Cohomology(c) => c.into(),
            MoritaError::Extension(x) => x.into(),
            MoritaError::TooLarge(n) => Failure::Bound(SizeBound {
                what: "bitorsor carrier".into(),
                size: n as u128,
                limit: gerbe_core::morita::MAX_ISOMORPHISM_CARRIER as u128,
            }),
            e => Failure::Invalid(e.to_string()),
        }
    }
}
