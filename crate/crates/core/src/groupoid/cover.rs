//! Finite covers, their nerves and Čech groupoids.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::groupoid::FiniteGroupoid;
use crate::error::GroupoidError;

/// Largest simplex dimension stored in a [`Nerve`].
pub const MAX_NERVE_DIM: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    /// Cocycle values may differ from point to point.
    #[default]
    Pointwise,
    /// One cocycle value per nerve simplex.
    #[serde(alias = "nerve")]
    NerveConstant,
}

impl fmt::Display for CoverMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverMode::Pointwise => "pointwise",
            CoverMode::NerveConstant => "nerve-constant",
        })
    }
}

/// Points `0..points` covered by the sets `U_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverModel {
    pub points: usize,
    pub sets: Vec<Vec<usize>>,
    #[serde(default)]
    pub mode: CoverMode,
}

impl CoverModel {
    /// Sorts and deduplicates each set, then checks that no set is empty
    /// and every point is covered.
    pub fn new(points: usize, sets: Vec<Vec<usize>>, mode: CoverMode) -> Result<Self, GroupoidError> {
        if sets.is_empty() {
            return Err(GroupoidError::EmptyCover);
        }
        let sets: Vec<Vec<usize>> =
            sets.into_iter().map(|s| s.into_iter().collect::<BTreeSet<_>>().into_iter().collect()).collect();
        let cover = Self { points, sets, mode };
        cover.validate()?;
        Ok(cover)
    }

    pub fn validate(&self) -> Result<(), GroupoidError> {
        let bad = |m: String| Err(GroupoidError::InvalidCover(m));
        if self.sets.is_empty() {
            return Err(GroupoidError::EmptyCover);
        }
        if self.points == 0 {
            return bad("no points".into());
        }
        let mut covered = vec![false; self.points];
        for (i, set) in self.sets.iter().enumerate() {
            if set.is_empty() {
                return bad(format!("set {i} is empty"));
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("set {i} is not strictly ascending"));
            }
            for &p in set {
                if p >= self.points {
                    return bad(format!("set {i} contains point {p} out of range"));
                }
                covered[p] = true;
            }
        }
        if let Some(p) = covered.iter().position(|c| !c) {
            return bad(format!("point {p} lies in no set"));
        }
        Ok(())
    }

    pub fn with_mode(mut self, mode: CoverMode) -> Self {
        self.mode = mode;
        self
    }

    /// `P = {0,1,2,3}`, `U_i = P ∖ {i}`; its nerve is the boundary of a
    /// tetrahedron.
    pub fn tetrahedron_boundary() -> Self {
        let sets = (0..4).map(|i| (0..4).filter(|&p| p != i).collect()).collect();
        Self::new(4, sets, CoverMode::NerveConstant).expect("valid cover")
    }

    /// Three sets on three points, pairwise meeting in one point, with no
    /// triple intersection.
    pub fn circle() -> Self {
        Self::new(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]], CoverMode::NerveConstant).expect("valid cover")
    }

    /// One point lying in `n` sets.
    pub fn star(n: usize) -> Self {
        Self::new(1, vec![vec![0]; n], CoverMode::NerveConstant).expect("valid cover")
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn contains(&self, set: usize, point: usize) -> bool {
        self.sets[set].binary_search(&point).is_ok()
    }

    /// Sets containing `p`, ascending.
    pub fn sets_at(&self, p: usize) -> Vec<usize> {
        (0..self.sets.len()).filter(|&i| self.contains(i, p)).collect()
    }

    /// Points in `U_{i_0} ∩ … ∩ U_{i_k}`; indices may repeat.
    pub fn intersection(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.points).filter(|&p| indices.iter().all(|&i| self.contains(i, p))).collect()
    }

    pub fn nerve(&self) -> Nerve {
        Nerve::new(self)
    }
}

/// Sorted index sets with nonempty common intersection, by dimension
/// `0..=MAX_NERVE_DIM`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nerve {
    pub vertices: usize,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl Nerve {
    pub fn new(cover: &CoverModel) -> Self {
        let mut simplices = vec![BTreeSet::new(); MAX_NERVE_DIM + 1];
        for p in 0..cover.points {
            let here = cover.sets_at(p);
            let mut stack: Vec<Vec<usize>> = here.iter().map(|&i| vec![i]).collect();
            while let Some(s) = stack.pop() {
                let last = *s.last().unwrap();
                for &j in here.iter().filter(|&&j| j > last) {
                    if s.len() <= MAX_NERVE_DIM {
                        let mut t = s.clone();
                        t.push(j);
                        stack.push(t);
                    }
                }
                simplices[s.len() - 1].insert(s);
            }
        }
        Self { vertices: cover.sets.len(), simplices: simplices.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    /// Simplices of dimension `k` (lists of `k+1` vertices), sorted.
    pub fn dim(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.dim(k).binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// Edges as `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.dim(1).iter().map(|e| (e[0], e[1])).collect()
    }
}

/// The Čech groupoid of a cover: objects `(p, i)` with `p ∈ U_i`, arrows
/// `(p, i, j)` with `p ∈ U_i ∩ U_j`, both in lexicographic order.
#[derive(Clone, Debug)]
pub struct CechGroupoid {
    pub cover: CoverModel,
    pub groupoid: FiniteGroupoid,
    pub objects: Vec<(usize, usize)>,
    pub arrows: Vec<(usize, usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    arrow_index: HashMap<(usize, usize, usize), usize>,
}

impl CechGroupoid {
    pub fn new(cover: &CoverModel) -> Result<Self, GroupoidError> {
        cover.validate()?;
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        for p in 0..cover.points {
            let here = cover.sets_at(p);
            for &i in &here {
                objects.push((p, i));
                for &j in &here {
                    arrows.push((p, i, j));
                }
            }
        }
        let object_index: HashMap<_, _> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let arrow_index: HashMap<_, _> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let src = arrows.iter().map(|&(p, i, _)| object_index[&(p, i)]).collect();
        let tgt = arrows.iter().map(|&(p, _, j)| object_index[&(p, j)]).collect();
        let unit = objects.iter().map(|&(p, i)| arrow_index[&(p, i, i)]).collect();
        let groupoid = FiniteGroupoid::new(objects.len(), src, tgt, unit, |a, b| {
            let (p, i, _) = arrows[a];
            let (_, _, k) = arrows[b];
            arrow_index[&(p, i, k)]
        })?;
        Ok(Self { cover: cover.clone(), groupoid, objects, arrows, object_index, arrow_index })
    }

    pub fn object(&self, p: usize, i: usize) -> Option<usize> {
        self.object_index.get(&(p, i)).copied()
    }

    pub fn arrow(&self, p: usize, i: usize, j: usize) -> Option<usize> {
        self.arrow_index.get(&(p, i, j)).copied()
    }
}
