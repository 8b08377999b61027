//! On-disk artifact formats. Every artifact is a JSON object with a
//! `kind` tag and a unique `name`; cross-references are by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coefficients::Coefficients;
use crate::groupoid::CoverMode;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Artifact {
    Group(GroupSpec),
    Cover(CoverSpec),
    Cocycle(CocycleSpec),
    Refinement(RefinementSpec),
    Map(MapSpec),
    Module(ModuleSpec),
}

impl Artifact {
    pub fn name(&self) -> &str {
        match self {
            Artifact::Group(s) => &s.name,
            Artifact::Cover(s) => &s.name,
            Artifact::Cocycle(s) => &s.name,
            Artifact::Refinement(s) => &s.name,
            Artifact::Map(s) => &s.name,
            Artifact::Module(s) => &s.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Group(_) => "group",
            Artifact::Cover(_) => "cover",
            Artifact::Cocycle(_) => "cocycle",
            Artifact::Refinement(_) => "refinement",
            Artifact::Map(_) => "map",
            Artifact::Module(_) => "module",
        }
    }
}

/// A Cayley table (row `a`, column `b` holds `a·b`, identity at 0), or a
/// built-in group: `Z<n>`, `S3`, `D<n>`, `Q8`, `V4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub name: String,
    pub points: usize,
    pub sets: Vec<Vec<usize>>,
    #[serde(default)]
    pub mode: CoverMode,
}

/// An automorphism given by its index in the sorted list of `Aut(G)` or as
/// an explicit permutation of the elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaValue {
    Index(usize),
    Perm(Vec<usize>),
}

/// Cocycle data. Keys are `"i,j"` / `"i,j,k"` (every point of the
/// intersection) or `"i,j,p"` / `"i,j,k,p"` (point `p` only; these win).
/// Missing values are the identity automorphism and the unit.
///
/// With `sorted` only `i < j` and `i < j < k` are read and the rest is
/// completed; otherwise the data is taken as given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSpec {
    pub name: String,
    pub group: String,
    pub cover: String,
    #[serde(default = "default_true")]
    pub sorted: bool,
    #[serde(default)]
    pub lambda: BTreeMap<String, LambdaValue>,
    #[serde(default)]
    pub g: BTreeMap<String, usize>,
}

fn default_true() -> bool {
    true
}

/// A refinement of `coarse` by `fine`: set `a` of `fine` maps to set
/// `sets[a]` of `coarse`, points by `points` (identity when absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementSpec {
    pub name: String,
    pub fine: String,
    pub coarse: String,
    pub sets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<usize>>,
}

/// An object map `J: P → objects`, used for pullbacks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub name: String,
    pub objects: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleAction {
    /// Every element acts by the identity.
    Trivial,
    /// Rank one, acting through the first nontrivial sign character.
    Sign,
    /// Rank one, element `g` acting by `scalars[g]`.
    Scalars(Vec<i64>),
    /// One integer matrix per element.
    Matrices(Vec<Vec<Vec<i64>>>),
}

/// A module over a group, or, without `group`, a trivial module to be
/// placed over whatever groupoid a command works with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub coeff: Coefficients,
    #[serde(default = "default_rank")]
    pub rank: usize,
    pub action: ModuleAction,
}

fn default_rank() -> usize {
    1
}

/// A file holds one artifact or a list of them.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArtifactFile {
    One(Artifact),
    Many(Vec<Artifact>),
}

impl ArtifactFile {
    pub fn into_vec(self) -> Vec<Artifact> {
        match self {
            ArtifactFile::One(a) => vec![a],
            ArtifactFile::Many(v) => v,
        }
    }
}
