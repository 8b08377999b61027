//! Modules over finite groupoids and their cohomology via the nerve.

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteGroup, GroupModule};
use crate::coefficients::{subquotient, Coefficients, CohomologyValue};
use crate::config::Limits;
use crate::error::{CohomologyError, SizeBound};
use crate::groupoid::{nerve_tuples, FiniteGroupoid, GroupoidMorphism, NerveLevel, MAX_TUPLE_DEGREE};
use crate::linalg::{QMatrix, SparseMatrix};

/// Which end of a composable tuple cochains live at: `src(x_1)` for the
/// left complex, `tgt(x_n)` for the right one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    #[default]
    Right,
}

/// A free module `V_o` over every object and, for every arrow
/// `x: s → t`, a matrix `act(x): V_t → V_s` (rank(s) × rank(t)), with
/// `act(x·y) = act(x)·act(y)` and units acting as identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidModule {
    pub base: FiniteGroupoid,
    pub coeff: Coefficients,
    pub ranks: Vec<usize>,
    pub act: Vec<QMatrix>,
}

impl GroupoidModule {
    pub fn new(
        base: FiniteGroupoid,
        coeff: Coefficients,
        ranks: Vec<usize>,
        act: Vec<QMatrix>,
    ) -> Result<Self, CohomologyError> {
        let m = Self { base, coeff, ranks, act };
        m.validate()?;
        Ok(m)
    }

    /// `V_o = R^rank` everywhere, every arrow acting by the identity.
    pub fn trivial(base: FiniteGroupoid, rank: usize, coeff: Coefficients) -> Self {
        let act = vec![QMatrix::identity(rank); base.n_arrows()];
        Self { ranks: vec![rank; base.n_objects()], base, coeff, act }
    }

    /// A group module on the one-object groupoid of the group.
    pub fn from_group_module(group: &FiniteGroup, module: &GroupModule) -> Self {
        Self {
            base: FiniteGroupoid::from_group(group),
            coeff: module.coeff,
            ranks: vec![module.rank],
            act: module.action.clone(),
        }
    }

    /// `act(x) = A_src·A_tgt⁻¹` for invertible matrices `A_o`.
    pub fn from_gauge(base: FiniteGroupoid, coeff: Coefficients, gauge: &[QMatrix]) -> Result<Self, CohomologyError> {
        let inverses = gauge
            .iter()
            .map(|a| a.inverse().ok_or_else(|| CohomologyError::InvalidModule("gauge matrix is singular".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let act = (0..base.n_arrows()).map(|x| gauge[base.src(x)].mul(&inverses[base.tgt(x)])).collect();
        Self::new(base.clone(), coeff, gauge.iter().map(QMatrix::rows).collect(), act)
    }

    /// `f*V` along a functor `f: from → self.base`.
    pub fn pullback(&self, from: &FiniteGroupoid, f: &GroupoidMorphism) -> Result<Self, CohomologyError> {
        f.check(from, &self.base).map_err(|e| CohomologyError::InvalidModule(e.to_string()))?;
        Ok(Self {
            base: from.clone(),
            coeff: self.coeff,
            ranks: f.objects.iter().map(|&o| self.ranks[o]).collect(),
            act: f.arrows.iter().map(|&a| self.act[a].clone()).collect(),
        })
    }

    pub fn validate(&self) -> Result<(), CohomologyError> {
        let bad = |m: String| Err(CohomologyError::InvalidModule(m));
        let b = &self.base;
        if let Coefficients::Mod(m) = self.coeff {
            if m < 2 {
                return bad(format!("modulus {m} is below 2"));
            }
        }
        if self.ranks.len() != b.n_objects() || self.act.len() != b.n_arrows() {
            return bad("one rank per object and one matrix per arrow are required".into());
        }
        for (x, mat) in self.act.iter().enumerate() {
            if mat.rows() != self.ranks[b.src(x)] || mat.cols() != self.ranks[b.tgt(x)] {
                return bad(format!("matrix of arrow {x} has the wrong shape"));
            }
            if matches!(self.coeff, Coefficients::Mod(_)) && !mat.is_integral() {
                return bad(format!("matrix of arrow {x} is not integral"));
            }
        }
        for o in 0..b.n_objects() {
            if !self.coeff.matrices_equal(&self.act[b.unit(o)], &QMatrix::identity(self.ranks[o])) {
                return bad(format!("unit of object {o} does not act trivially"));
            }
        }
        for x in 0..b.n_arrows() {
            for &y in b.out_arrows(b.tgt(x)) {
                if !self.coeff.matrices_equal(&self.act[x].mul(&self.act[y]), &self.act[b.mul(x, y)]) {
                    return bad(format!("act({x})·act({y}) ≠ act({x}·{y})"));
                }
            }
        }
        Ok(())
    }
}

/// Cochain layout on `X_n`: block offsets per tuple.
struct Layout {
    level: NerveLevel,
    anchor: Vec<usize>,
    offset: Vec<usize>,
    dim: usize,
}

impl Layout {
    fn new(module: &GroupoidModule, n: usize, side: Side) -> Result<Self, CohomologyError> {
        let level = nerve_tuples(&module.base, n).map_err(|_| CohomologyError::Degree(n))?;
        let anchor: Vec<usize> = (0..level.len())
            .map(|t| match side {
                Side::Left => level.left_anchor(&module.base, t),
                Side::Right => level.right_anchor(&module.base, t),
            })
            .collect();
        let mut offset = Vec::with_capacity(anchor.len());
        let mut dim = 0;
        for &o in &anchor {
            offset.push(dim);
            dim += module.ranks[o];
        }
        Ok(Self { level, anchor, offset, dim })
    }
}

fn add_block(d: &mut SparseMatrix, row: usize, col: usize, mat: &QMatrix, sign: i64) {
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            let v = mat.get(i, j);
            if !num_traits::Zero::is_zero(v) {
                d.add(row + i, col + j, &(v * crate::linalg::q(sign)));
            }
        }
    }
}

fn add_identity(d: &mut SparseMatrix, row: usize, col: usize, rank: usize, sign: i64) {
    for i in 0..rank {
        d.add(row + i, col + i, &crate::linalg::q(sign));
    }
}

fn differential(module: &GroupoidModule, lower: &Layout, upper: &Layout, side: Side) -> SparseMatrix {
    let b = &module.base;
    let n = upper.level.n;
    let mut d = SparseMatrix::zeros(upper.dim, lower.dim);
    for (t, x) in upper.level.tuples.iter().enumerate() {
        let row = upper.offset[t];
        let rank = module.ranks[upper.anchor[t]];
        for i in 0..=n {
            let face = upper.level.faces[i][t];
            let col = lower.offset[face];
            let sign = if i % 2 == 0 { 1 } else { -1 };
            match side {
                Side::Left if i == 0 => add_block(&mut d, row, col, &module.act[x[0]], sign),
                Side::Right if i == n => add_block(&mut d, row, col, &module.act[b.inv(x[n - 1])], sign),
                _ => add_identity(&mut d, row, col, rank, sign),
            }
        }
    }
    d
}

/// `∂: C^{n-1} → C^n` for `1 ≤ n ≤ 4`.
///
/// Left: `∂f(x) = act(x_1)·f(ε_0 x) + Σ_{i≥1} (−1)^i f(ε_i x)`.
/// Right: `∂f(x) = Σ_{i<n} (−1)^i f(ε_i x) + (−1)^n act(x_n)⁻¹·f(ε_n x)`.
pub fn groupoid_differential(module: &GroupoidModule, n: usize, side: Side) -> Result<SparseMatrix, CohomologyError> {
    if n == 0 || n > MAX_TUPLE_DEGREE {
        return Err(CohomologyError::Degree(n));
    }
    let lower = Layout::new(module, n - 1, side)?;
    let upper = Layout::new(module, n, side)?;
    Ok(differential(module, &lower, &upper, side))
}

pub fn groupoid_differential_left(module: &GroupoidModule, n: usize) -> Result<SparseMatrix, CohomologyError> {
    groupoid_differential(module, n, Side::Left)
}

pub fn groupoid_differential_right(module: &GroupoidModule, n: usize) -> Result<SparseMatrix, CohomologyError> {
    groupoid_differential(module, n, Side::Right)
}

/// `H^n` for `n ≤ 2`, computed one connected component at a time.
pub fn groupoid_cohomology(
    module: &GroupoidModule,
    n: usize,
    side: Side,
    limits: &Limits,
) -> Result<CohomologyValue, CohomologyError> {
    if n > 2 {
        return Err(CohomologyError::Degree(n));
    }
    module.validate()?;
    let mid = Layout::new(module, n, side)?;
    let up = Layout::new(module, n + 1, side)?;
    for l in [&mid, &up] {
        SizeBound::check("groupoid cochains", l.dim as u128, limits.max_cochain_dim as u128)?;
    }
    let next = differential(module, &mid, &up, side);
    let (prev, low) = if n == 0 {
        (SparseMatrix::zeros(mid.dim, 0), None)
    } else {
        let low = Layout::new(module, n - 1, side)?;
        (differential(module, &low, &mid, side), Some(low))
    };

    let labels = module.base.component_labels();
    let n_comp = labels.iter().max().map_or(0, |m| m + 1);
    let split = |l: &Layout| {
        let mut idx = vec![Vec::new(); n_comp];
        for (t, &o) in l.anchor.iter().enumerate() {
            idx[labels[o]].extend(l.offset[t]..l.offset[t] + module.ranks[o]);
        }
        idx
    };
    let mid_idx = split(&mid);
    let up_idx = split(&up);
    let low_idx = low.as_ref().map(split);
    let mut total = CohomologyValue::zero(module.coeff);
    for c in 0..n_comp {
        let next_c = next.submatrix(&up_idx[c], &mid_idx[c]);
        let prev_c = match &low_idx {
            Some(li) => prev.submatrix(&mid_idx[c], &li[c]),
            None => SparseMatrix::zeros(mid_idx[c].len(), 0),
        };
        total = total.direct_sum(&subquotient(&prev_c, &next_c, mid_idx[c].len(), module.coeff));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group_cohomology;
    use crate::linalg::AbelianGroup;

    #[test]
    fn pair_groupoid_right_differential() {
        let m = GroupoidModule::trivial(FiniteGroupoid::pair(2), 1, Coefficients::Rational);
        let d = groupoid_differential_right(&m, 1).unwrap();
        // arrows (0,0),(0,1),(1,0),(1,1): ∂f(x) = f(tgt x) − f(src x)
        let dense = d.to_dense();
        assert_eq!(dense, QMatrix::from_i64(&[vec![0, 0], vec![-1, 1], vec![1, -1], vec![0, 0]]));
        let d2 = groupoid_differential_right(&m, 2).unwrap();
        assert!(d2.mul(&d).is_zero());
        let h0 = groupoid_cohomology(&m, 0, Side::Right, &Limits::default()).unwrap();
        assert_eq!(h0, CohomologyValue::Rational { dim: 1 });
        let h1 = groupoid_cohomology(&m, 1, Side::Right, &Limits::default()).unwrap();
        assert!(h1.is_zero());
    }

    #[test]
    fn one_object_matches_group_cohomology() {
        let g = FiniteGroup::cyclic(2);
        let coeff = Coefficients::Mod(2);
        let module = GroupModule::trivial(&g, 1, coeff);
        let gm = GroupoidModule::from_group_module(&g, &module);
        for n in 0..=2 {
            let expect = group_cohomology(&g, &module, n, &Limits::default()).unwrap();
            for side in [Side::Left, Side::Right] {
                assert_eq!(groupoid_cohomology(&gm, n, side, &Limits::default()).unwrap(), expect);
            }
        }
        assert_eq!(expect_z2(), groupoid_cohomology(&gm, 2, Side::Left, &Limits::default()).unwrap());
    }

    fn expect_z2() -> CohomologyValue {
        CohomologyValue::Finite(AbelianGroup::from_cyclic(&[2]))
    }

    #[test]
    fn components_add_up() {
        let a = FiniteGroupoid::from_group(&FiniteGroup::cyclic(1));
        let u = FiniteGroupoid::disjoint_union(&a, &a);
        let m = GroupoidModule::trivial(u, 1, Coefficients::Rational);
        assert_eq!(
            groupoid_cohomology(&m, 0, Side::Left, &Limits::default()).unwrap(),
            CohomologyValue::Rational { dim: 2 }
        );
    }

    #[test]
    fn invalid_module_rejected() {
        let g = FiniteGroup::cyclic(2);
        let base = FiniteGroupoid::from_group(&g);
        let bad = GroupoidModule::new(
            base,
            Coefficients::Rational,
            vec![1],
            vec![QMatrix::scalar(crate::linalg::q(1)), QMatrix::scalar(crate::linalg::q(2))],
        );
        assert!(bad.is_err());
    }
}
