use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GroupViolation;
use crate::extension::CocycleReport;
use crate::groupoid::GroupoidViolation;

/// A search or assembly step would exceed a configured [`crate::Limits`] bound.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("size bound exceeded: {what} needs {size}, limit is {limit}")]
pub struct SizeBound {
    pub what: String,
    pub size: u128,
    pub limit: u128,
}

impl SizeBound {
    pub fn check(what: &str, size: u128, limit: u128) -> Result<(), SizeBound> {
        if size > limit {
            Err(SizeBound { what: what.to_string(), size, limit })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("not a group: {0:?}")]
    InvalidGroup(Vec<GroupViolation>),
    #[error("group order {order} exceeds the automorphism search bound {limit}")]
    OrderBound { order: usize, limit: usize },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("cohomology degree {0} is not supported")]
    Degree(usize),
    #[error(transparent)]
    SizeBound(#[from] SizeBound),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("groupoid axiom violated: {0:?}")]
    Invalid(GroupoidViolation),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("cover has no sets")]
    EmptyCover,
    #[error("object map is not surjective: object {0} has no preimage")]
    NotSurjective(usize),
    #[error("not a groupoid morphism: {0}")]
    NotMorphism(String),
    #[error("face degree {0} is out of range")]
    Degree(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("cocycle data does not define an extension ({} violations)", .report.violations.len())]
    InvalidCocycle { report: CocycleReport, witness: Option<GroupoidViolation> },
    #[error("malformed cocycle data: {0}")]
    Shape(String),
    #[error("no completion: first inconsistent tuple {tuple:?} at point {point}")]
    NoCompletion { tuple: Vec<usize>, point: usize },
    #[error("bad section: {0}")]
    BadSection(String),
    #[error("bad kernel trivialization: {0}")]
    BadTrivialization(String),
    #[error("not an extension: {0}")]
    NotExtension(String),
    #[error("outer action depends on the lift of base arrow {0}")]
    LiftDependent(usize),
    #[error("Out element {0} has no automorphism lift")]
    LiftFailure(usize),
    #[error("band is not trivializable")]
    NontrivialBand,
    #[error("not a central subgroup: {0}")]
    NotCentralSubgroup(String),
    #[error("isomorphism check failed: {0}")]
    IsomorphismFailed(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("degree {0} is not supported")]
    Degree(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error(transparent)]
    SizeBound(#[from] SizeBound),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoritaError {
    #[error("object map is not surjective")]
    NotSurjective,
    #[error("map is not a Morita morphism: {0}")]
    NotMorita(String),
    #[error("not a refinement: set {set} contains point {point} outside its image set")]
    NotARefinement { set: usize, point: usize },
    #[error("middle groupoids of the bitorsors differ")]
    MiddleMismatch,
    #[error("invalid bitorsor: {0}")]
    InvalidBitorsor(String),
    #[error("carrier of size {0} is too large for isomorphism search")]
    TooLarge(usize),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}
