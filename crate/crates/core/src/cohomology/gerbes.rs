//! Classification of gerbes bound by a central band over a nerve: `Z(G)`
//! valued 2-cocycles on sorted triangles up to central coboundaries.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::cech::cech_cohomology;
use crate::algebra::FiniteGroup;
use crate::config::Limits;
use crate::error::{CohomologyError, SizeBound};
use crate::groupoid::Nerve;
use crate::linalg::AbelianGroup;

/// Result of [`classify_bound_gerbes`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GerbeClassification {
    /// Sorted elements of `Z(G)`.
    pub center: Vec<usize>,
    pub center_structure: AbelianGroup,
    /// `H²(nerve; Z(G))` from Smith forms.
    pub h2: AbelianGroup,
    /// Number of classes; equals `|h2|`.
    pub count: u64,
    /// Sorted triangles of the nerve, the domain of the representatives.
    pub triangles: Vec<Vec<usize>>,
    /// Lexicographically least cocycle of each class, in increasing order.
    /// `None` when enumeration would exceed the limits.
    pub representatives: Option<Vec<Vec<usize>>>,
    pub bound: Option<SizeBound>,
}

/// The group of central coboundaries `(δh)_ijk = h_jk·h_ik⁻¹·h_ij` on the
/// sorted triangles of a nerve.
#[derive(Clone, Debug)]
pub struct CentralCoboundaries {
    pub center: Vec<usize>,
    shifts: Vec<Vec<usize>>,
}

fn enumeration_size(base: usize, exponent: usize) -> u128 {
    (base as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX)
}

/// Odometer over `Z(G)^len` in lexicographic order of center positions.
fn for_each_function(center: &[usize], len: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = vec![0usize; len];
    let mut values = vec![center[0]; len];
    loop {
        f(&values);
        let mut k = len;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < center.len() {
                values[k] = center[digits[k]];
                break;
            }
            digits[k] = 0;
            values[k] = center[0];
        }
    }
}

impl CentralCoboundaries {
    pub fn new(nerve: &Nerve, group: &FiniteGroup, limits: &Limits) -> Result<Self, SizeBound> {
        let center = group.center();
        let edges = nerve.dim(1);
        SizeBound::check("central 1-cochains", enumeration_size(center.len(), edges.len()), limits.max_enum as u128)?;
        let faces: Vec<[usize; 3]> = nerve
            .dim(2)
            .iter()
            .map(|t| {
                let e = |a: usize, b: usize| nerve.index_of(&[t[a], t[b]]).expect("edge of a triangle");
                [e(1, 2), e(0, 2), e(0, 1)]
            })
            .collect();
        let mut seen = HashSet::new();
        let mut shifts = Vec::new();
        for_each_function(&center, edges.len(), |h| {
            let d: Vec<usize> =
                faces.iter().map(|&[jk, ik, ij]| group.product(&[h[jk], group.inv(h[ik]), h[ij]])).collect();
            if seen.insert(d.clone()) {
                shifts.push(d);
            }
        });
        Ok(Self { center, shifts })
    }

    /// Number of distinct coboundaries.
    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    fn key(&self, values: &[usize]) -> Vec<usize> {
        values.iter().map(|v| self.center.binary_search(v).unwrap_or(usize::MAX)).collect()
    }

    /// Lexicographically least element of the class of `values`.
    pub fn representative(&self, group: &FiniteGroup, values: &[usize]) -> Vec<usize> {
        self.shifts
            .iter()
            .map(|s| values.iter().zip(s).map(|(&g, &b)| group.mul(g, b)).collect::<Vec<_>>())
            .min_by_key(|v| self.key(v))
            .expect("the zero coboundary is always present")
    }
}

/// Canonical representative of a `Z(G)`-valued cocycle on sorted triangles.
pub fn central_class_representative(
    nerve: &Nerve,
    group: &FiniteGroup,
    values: &[usize],
    limits: &Limits,
) -> Result<Vec<usize>, SizeBound> {
    Ok(CentralCoboundaries::new(nerve, group, limits)?.representative(group, values))
}

/// Whether `values` (one per sorted triangle) satisfies
/// `g_ijl·g_jkl = g_ikl·g_ijk` on every sorted tetrahedron.
pub fn is_central_cocycle(nerve: &Nerve, group: &FiniteGroup, values: &[usize]) -> bool {
    nerve.dim(3).iter().all(|s| {
        let t = |a: usize, b: usize, c: usize| values[nerve.index_of(&[s[a], s[b], s[c]]).expect("face")];
        group.mul(t(0, 1, 3), t(1, 2, 3)) == group.mul(t(0, 2, 3), t(0, 1, 2))
    })
}

/// `H²(nerve; Z(G))` together with one representative per class when the
/// enumeration fits in `limits.max_enum`. Exceeding the bound is not an
/// error: the count is still returned and `bound` records why
/// representatives are missing.
pub fn classify_bound_gerbes(
    nerve: &Nerve,
    group: &FiniteGroup,
    limits: &Limits,
) -> Result<GerbeClassification, CohomologyError> {
    let center = group.center();
    let center_structure = group.abelian_invariants(&center);
    let mut factors: Vec<u64> = center_structure.torsion.clone();
    if factors.is_empty() {
        factors.push(1);
    }
    let h2 = cech_cohomology(nerve, &factors, 2)?;
    let count = h2.order().expect("finite coefficients");
    let triangles = nerve.dim(2).to_vec();
    let mut out = GerbeClassification {
        center: center.clone(),
        center_structure,
        h2,
        count,
        triangles,
        representatives: None,
        bound: None,
    };
    let check = SizeBound::check(
        "central 2-cochains",
        enumeration_size(center.len(), out.triangles.len()),
        limits.max_enum as u128,
    );
    let cob = match check.and_then(|_| CentralCoboundaries::new(nerve, group, limits)) {
        Ok(c) => c,
        Err(b) => {
            out.bound = Some(b);
            return Ok(out);
        }
    };
    let mut covered = HashSet::new();
    let mut reps = Vec::new();
    for_each_function(&center, out.triangles.len(), |g| {
        if covered.contains(g) || !is_central_cocycle(nerve, group, g) {
            return;
        }
        // first in lexicographic order, hence the least in its class
        reps.push(g.to_vec());
        for s in &cob.shifts {
            covered.insert(g.iter().zip(s).map(|(&a, &b)| group.mul(a, b)).collect::<Vec<_>>());
        }
    });
    debug_assert_eq!(reps.len() as u64, out.count);
    out.representatives = Some(reps);
    Ok(out)
}
