//! JSON artifacts and a name-indexed workspace that resolves them into
//! library values.

pub mod spec;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

pub use spec::{
    Artifact, ArtifactFile, CocycleSpec, CoverSpec, GroupSpec, LambdaValue, MapSpec, ModuleAction, ModuleSpec,
    RefinementSpec,
};

use crate::algebra::{automorphism_structure, Automorphism, FiniteGroup, GroupModule};
use crate::coefficients::Coefficients;
use crate::config::Limits;
use crate::error::{AlgebraError, ExtensionError, GroupoidError, SizeBound};
use crate::extension::{fill_sorted, NonAbelianCocycle, SortedCocycleData};
use crate::groupoid::{CechGroupoid, CoverMode, CoverModel, FiniteGroupoid};
use crate::linalg::QMatrix;
use crate::morita::RefinementMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("duplicate artifact name {0:?}")]
    Duplicate(String),
    #[error("no {kind} named {name:?}")]
    Unresolved { kind: &'static str, name: String },
    #[error("{name}: {message}")]
    Invalid { name: String, message: String },
    #[error(transparent)]
    SizeBound(#[from] SizeBound),
}

impl IoError {
    fn invalid(name: &str, message: impl ToString) -> Self {
        IoError::Invalid { name: name.to_string(), message: message.to_string() }
    }

    /// Whether the input itself could not be read or understood, as
    /// opposed to being well formed but mathematically invalid.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            IoError::Read { .. } | IoError::Parse { .. } | IoError::Duplicate(_) | IoError::Unresolved { .. }
        )
    }
}

/// Parses the contents of one artifact file.
pub fn parse_artifacts(text: &str, path: &str) -> Result<Vec<Artifact>, IoError> {
    serde_json::from_str::<ArtifactFile>(text)
        .map(ArtifactFile::into_vec)
        .map_err(|e| IoError::Parse { path: path.to_string(), message: e.to_string() })
}

/// Built-in groups: `Z<n>`, `S3`, `D<n>` (order `2n`), `Q8`, `V4`.
pub fn builtin_group(name: &str) -> Option<FiniteGroup> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok()).filter(|&n| n >= 1);
    let g = match name {
        "S3" => FiniteGroup::symmetric3(),
        "Q8" => FiniteGroup::quaternion(),
        "V4" => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        _ => match num("Z") {
            Some(n) => FiniteGroup::cyclic(n),
            None => FiniteGroup::dihedral(num("D").filter(|&n| n >= 3)?),
        },
    };
    Some(g.with_name(name))
}

/// Built-in covers: `tetrahedron`, `circle`, `star<n>`.
pub fn builtin_cover(name: &str) -> Option<CoverModel> {
    match name {
        "tetrahedron" => Some(CoverModel::tetrahedron_boundary()),
        "circle" => Some(CoverModel::circle()),
        _ => name.strip_prefix("star").and_then(|s| s.parse().ok()).filter(|&n| n >= 1).map(CoverModel::star),
    }
}

/// Built-in rank one modules: `Q`, `Z/<m>` (trivial action) and
/// `sign-Q`, `sign-Z/<m>`.
pub fn builtin_module(name: &str) -> Option<ModuleSpec> {
    let (action, coeff) = match name.strip_prefix("sign-") {
        Some(rest) => (ModuleAction::Sign, rest),
        None => (ModuleAction::Trivial, name),
    };
    let coeff = match coeff {
        "Q" => Coefficients::Rational,
        _ => Coefficients::Mod(coeff.strip_prefix("Z/")?.parse().ok().filter(|&m: &u64| m >= 2)?),
    };
    Some(ModuleSpec { name: name.to_string(), group: None, coeff, rank: 1, action })
}

/// Loaded artifacts by name, with resolution into library values.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    artifacts: BTreeMap<String, Artifact>,
    /// Overrides the mode of every resolved cover.
    pub mode: Option<CoverMode>,
    pub limits: Limits,
}

impl Workspace {
    pub fn new(limits: Limits, mode: Option<CoverMode>) -> Self {
        Self { artifacts: BTreeMap::new(), mode, limits }
    }

    pub fn insert(&mut self, artifact: Artifact) -> Result<(), IoError> {
        let name = artifact.name().to_string();
        if self.artifacts.contains_key(&name) {
            return Err(IoError::Duplicate(name));
        }
        self.artifacts.insert(name, artifact);
        Ok(())
    }

    /// Reads a file and inserts its artifacts; returns their names in file
    /// order.
    pub fn load_file(&mut self, path: &Path) -> Result<Vec<String>, IoError> {
        let shown = path.display().to_string();
        let text =
            std::fs::read_to_string(path).map_err(|e| IoError::Read { path: shown.clone(), message: e.to_string() })?;
        let mut names = Vec::new();
        for a in parse_artifacts(&text, &shown)? {
            names.push(a.name().to_string());
            self.insert(a)?;
        }
        Ok(names)
    }

    pub fn get(&self, name: &str) -> Option<&Artifact> {
        self.artifacts.get(name)
    }

    pub fn artifacts(&self) -> impl Iterator<Item = &Artifact> {
        self.artifacts.values()
    }

    fn lookup<'a, T>(
        &'a self,
        name: &str,
        kind: &'static str,
        pick: impl Fn(&'a Artifact) -> Option<&'a T>,
    ) -> Result<&'a T, IoError> {
        self.artifacts.get(name).and_then(pick).ok_or_else(|| IoError::Unresolved { kind, name: name.to_string() })
    }

    /// A group by artifact name, falling back to the built-in names.
    pub fn group(&self, name: &str) -> Result<FiniteGroup, IoError> {
        let Some(Artifact::Group(spec)) = self.artifacts.get(name) else {
            return builtin_group(name).ok_or_else(|| IoError::Unresolved { kind: "group", name: name.to_string() });
        };
        match (&spec.table, &spec.builtin) {
            (Some(t), None) => FiniteGroup::validate(t)
                .map(|g| g.with_name(name))
                .map_err(|e| IoError::invalid(name, group_message(&e))),
            (None, Some(b)) => builtin_group(b)
                .map(|g| g.with_name(name))
                .ok_or_else(|| IoError::invalid(name, format!("unknown built-in group {b:?}"))),
            _ => Err(IoError::invalid(name, "a group needs exactly one of `table` and `builtin`")),
        }
    }

    /// A cover by artifact name or built-in name, with the workspace mode
    /// override applied.
    pub fn cover(&self, name: &str) -> Result<CoverModel, IoError> {
        let cover = match self.artifacts.get(name) {
            Some(Artifact::Cover(s)) => {
                CoverModel::new(s.points, s.sets.clone(), s.mode).map_err(|e| IoError::invalid(name, e))?
            }
            _ => builtin_cover(name).ok_or_else(|| IoError::Unresolved { kind: "cover", name: name.to_string() })?,
        };
        Ok(match self.mode {
            Some(m) => cover.with_mode(m),
            None => cover,
        })
    }

    pub fn cocycle_spec(&self, name: &str) -> Result<&CocycleSpec, IoError> {
        self.lookup(name, "cocycle", |a| match a {
            Artifact::Cocycle(s) => Some(s),
            _ => None,
        })
    }

    /// Resolves a cocycle, completing sorted data. Shape problems (bad
    /// keys, values out of range) are `Invalid`; the cocycle relations are
    /// not checked here.
    pub fn cocycle(&self, name: &str) -> Result<NonAbelianCocycle, IoError> {
        let spec = self.cocycle_spec(name)?;
        let group = Arc::new(self.group(&spec.group)?);
        let cover = self.cover(&spec.cover)?;
        let cech = Arc::new(CechGroupoid::new(&cover).map_err(|e| IoError::invalid(name, e))?);
        let values = CocycleValues::read(spec, &group, &self.limits, cover.mode)?;
        let d = if spec.sorted {
            let mut sorted = SortedCocycleData::default();
            for &(p, i, j) in &cech.arrows {
                if i < j {
                    sorted.lambda.insert((p, i, j), values.lambda(p, i, j, group.order()));
                }
            }
            for (p, i, j, k) in NonAbelianCocycle::trivial(group.clone(), cech.clone()).triples() {
                if i < j && j < k {
                    sorted.g.insert((p, i, j, k), values.g(p, i, j, k));
                }
            }
            fill_sorted(group.clone(), cech.clone(), &sorted).map_err(|e| IoError::invalid(name, e))?
        } else {
            let n = group.order();
            NonAbelianCocycle::from_fns(
                group.clone(),
                cech.clone(),
                |p, i, j| values.lambda(p, i, j, n),
                |p, i, j, k| values.g(p, i, j, k),
            )
            .map_err(|e| IoError::invalid(name, e))?
        };
        values.check_keys(name, &d, spec.sorted)?;
        Ok(d)
    }

    pub fn refinement(&self, name: &str) -> Result<(&RefinementSpec, RefinementMap), IoError> {
        let spec = self.lookup(name, "refinement", |a| match a {
            Artifact::Refinement(s) => Some(s),
            _ => None,
        })?;
        Ok((spec, RefinementMap { sets: spec.sets.clone(), points: spec.points.clone() }))
    }

    pub fn map(&self, name: &str) -> Result<&MapSpec, IoError> {
        self.lookup(name, "map", |a| match a {
            Artifact::Map(s) => Some(s),
            _ => None,
        })
    }

    /// A module by artifact name, falling back to the built-in names.
    pub fn module_spec(&self, name: &str) -> Result<ModuleSpec, IoError> {
        match self.artifacts.get(name) {
            Some(Artifact::Module(s)) => Ok(s.clone()),
            _ => builtin_module(name).ok_or_else(|| IoError::Unresolved { kind: "module", name: name.to_string() }),
        }
    }

    /// A module over `group` (the module's own group reference, if any,
    /// must name an equal group).
    pub fn group_module(&self, name: &str, group: &FiniteGroup) -> Result<GroupModule, IoError> {
        let spec = self.module_spec(name)?;
        if let Some(gname) = &spec.group {
            if self.group(gname)?.table_rows() != group.table_rows() {
                return Err(IoError::invalid(name, format!("module is over {gname}, not over the requested group")));
            }
        }
        let bad = |e: AlgebraError| IoError::invalid(name, e);
        match &spec.action {
            ModuleAction::Trivial => Ok(GroupModule::trivial(group, spec.rank, spec.coeff)),
            ModuleAction::Sign => {
                let chars = group.sign_characters();
                let sign =
                    chars.get(1).ok_or_else(|| IoError::invalid(name, "group has no nontrivial sign character"))?;
                Ok(GroupModule::from_sign(sign, spec.coeff))
            }
            ModuleAction::Scalars(s) => GroupModule::from_scalars(group, s, spec.coeff).map_err(bad),
            ModuleAction::Matrices(ms) => {
                let action = ms.iter().map(|m| QMatrix::from_i64(m)).collect();
                GroupModule::new(group, spec.rank, spec.coeff, action).map_err(bad)
            }
        }
    }

    /// A trivial module spec placed over an arbitrary groupoid.
    pub fn trivial_module_rank(&self, name: &str) -> Result<(usize, Coefficients), IoError> {
        let spec = self.module_spec(name)?;
        match spec.action {
            ModuleAction::Trivial => Ok((spec.rank, spec.coeff)),
            _ => Err(IoError::invalid(name, "only trivial modules can be placed over a groupoid")),
        }
    }
}

fn group_message(e: &AlgebraError) -> String {
    match e {
        AlgebraError::InvalidGroup(v) => {
            let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
            format!("not a group: {}", items.join(", "))
        }
        other => other.to_string(),
    }
}

/// Parsed cocycle values keyed by index tuple, with optional point.
struct CocycleValues {
    lambda_all: BTreeMap<(usize, usize), Automorphism>,
    lambda_at: BTreeMap<(usize, usize, usize), Automorphism>,
    g_all: BTreeMap<(usize, usize, usize), usize>,
    g_at: BTreeMap<(usize, usize, usize, usize), usize>,
}

fn parse_key(key: &str, len: usize, name: &str) -> Result<Vec<usize>, IoError> {
    let parts: Result<Vec<usize>, _> = key.split(',').map(|s| s.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == len || v.len() == len + 1 => Ok(v),
        _ => Err(IoError::invalid(name, format!("bad key {key:?}"))),
    }
}

impl CocycleValues {
    fn read(spec: &CocycleSpec, group: &FiniteGroup, limits: &Limits, mode: CoverMode) -> Result<Self, IoError> {
        let name = spec.name.as_str();
        let needs_aut = spec.lambda.values().any(|v| matches!(v, LambdaValue::Index(_)));
        let aut = if needs_aut {
            Some(automorphism_structure(group, limits).map_err(|e| match e {
                AlgebraError::SizeBound(b) => IoError::SizeBound(b),
                other => IoError::invalid(name, other),
            })?)
        } else {
            None
        };
        let mut out = Self {
            lambda_all: BTreeMap::new(),
            lambda_at: BTreeMap::new(),
            g_all: BTreeMap::new(),
            g_at: BTreeMap::new(),
        };
        let pointwise_key =
            |key: &str| IoError::invalid(name, format!("key {key:?} names a point, but the cover is nerve-constant"));
        for (key, v) in &spec.lambda {
            let idx = parse_key(key, 2, name)?;
            let f = match v {
                LambdaValue::Index(k) => aut
                    .as_ref()
                    .and_then(|a| a.reps.get(*k))
                    .cloned()
                    .ok_or_else(|| IoError::invalid(name, format!("automorphism index {k} out of range")))?,
                LambdaValue::Perm(p) => {
                    let f = Automorphism { perm: p.clone() };
                    if !f.is_automorphism_of(group) {
                        return Err(IoError::invalid(name, format!("lambda {key:?} is not an automorphism")));
                    }
                    f
                }
            };
            match idx[..] {
                [i, j] => out.lambda_all.insert((i, j), f),
                [i, j, p] if mode == CoverMode::Pointwise => out.lambda_at.insert((p, i, j), f),
                _ => return Err(pointwise_key(key)),
            };
        }
        for (key, &x) in &spec.g {
            if x >= group.order() {
                return Err(IoError::invalid(name, format!("g {key:?} = {x} is not a group element")));
            }
            let idx = parse_key(key, 3, name)?;
            match idx[..] {
                [i, j, k] => out.g_all.insert((i, j, k), x),
                [i, j, k, p] if mode == CoverMode::Pointwise => out.g_at.insert((p, i, j, k), x),
                _ => return Err(pointwise_key(key)),
            };
        }
        Ok(out)
    }

    fn lambda(&self, p: usize, i: usize, j: usize, n: usize) -> Automorphism {
        self.lambda_at
            .get(&(p, i, j))
            .or_else(|| self.lambda_all.get(&(i, j)))
            .cloned()
            .unwrap_or_else(|| Automorphism::identity(n))
    }

    fn g(&self, p: usize, i: usize, j: usize, k: usize) -> usize {
        self.g_at.get(&(p, i, j, k)).or_else(|| self.g_all.get(&(i, j, k))).copied().unwrap_or(0)
    }

    /// Every key must name an index tuple (and point) of the cover; sorted
    /// data only has keys with increasing indices.
    fn check_keys(&self, name: &str, d: &NonAbelianCocycle, sorted: bool) -> Result<(), IoError> {
        let cech = &d.cech;
        let check = |idx: &[usize], point: Option<usize>| -> Result<(), IoError> {
            let shown = idx.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            if sorted && !idx.windows(2).all(|w| w[0] < w[1]) {
                return Err(IoError::invalid(name, format!("sorted data has unsorted key ({shown})")));
            }
            let meet = cech.cover.intersection(idx);
            let ok = match point {
                Some(p) => meet.contains(&p),
                None => !meet.is_empty(),
            };
            if ok {
                Ok(())
            } else {
                let at = point.map(|p| format!(" at point {p}")).unwrap_or_default();
                Err(IoError::invalid(name, format!("({shown}){at} is not a simplex of the cover")))
            }
        };
        for &(i, j) in self.lambda_all.keys() {
            check(&[i, j], None)?;
        }
        for &(p, i, j) in self.lambda_at.keys() {
            check(&[i, j], Some(p))?;
        }
        for &(i, j, k) in self.g_all.keys() {
            check(&[i, j, k], None)?;
        }
        for &(p, i, j, k) in self.g_at.keys() {
            check(&[i, j, k], Some(p))?;
        }
        Ok(())
    }
}

impl From<GroupoidError> for IoError {
    fn from(e: GroupoidError) -> Self {
        IoError::invalid("groupoid", e)
    }
}

impl From<ExtensionError> for IoError {
    fn from(e: ExtensionError) -> Self {
        IoError::invalid("cocycle", e)
    }
}

/// Writes a cocycle back as a spec: sorted data, one entry per simplex in
/// nerve-constant mode, per point otherwise. Automorphisms are written as
/// permutations.
pub fn cocycle_to_spec(d: &NonAbelianCocycle, name: &str, group: &str, cover: &str) -> CocycleSpec {
    let nerve = d.cech.cover.mode == CoverMode::NerveConstant;
    let mut lambda = BTreeMap::new();
    let mut g = BTreeMap::new();
    for &(p, i, j) in &d.cech.arrows {
        let f = d.lambda(p, i, j);
        if i < j && !f.is_identity() {
            let key = if nerve { format!("{i},{j}") } else { format!("{i},{j},{p}") };
            lambda.insert(key, LambdaValue::Perm(f.perm.clone()));
        }
    }
    for (p, i, j, k) in d.triples() {
        let x = d.g(p, i, j, k);
        if i < j && j < k && x != 0 {
            let key = if nerve { format!("{i},{j},{k}") } else { format!("{i},{j},{k},{p}") };
            g.insert(key, x);
        }
    }
    CocycleSpec { name: name.into(), group: group.into(), cover: cover.into(), sorted: true, lambda, g }
}

/// The groupoid of a resolved cover, as a convenience for callers that
/// work with bare groupoids.
pub fn cech_groupoid(cover: &CoverModel) -> Result<FiniteGroupoid, IoError> {
    Ok(CechGroupoid::new(cover)?.groupoid)
}
