//! Non-abelian 2-cocycles `(λ_ij, g_ijk)` over a finite cover.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Automorphism, FiniteGroup};
use crate::error::ExtensionError;
use crate::groupoid::{CechGroupoid, CoverMode};

/// Cocycle data on the Čech groupoid of a cover.
///
/// `lambda` is indexed by Čech arrow `(p, i, j)`; `g` by composable pair
/// `((p, i, j), (p, j, k))` in lexicographic order, i.e. by the triple
/// `(p, i, j, k)`.
#[derive(Clone, Debug)]
pub struct NonAbelianCocycle {
    pub group: Arc<FiniteGroup>,
    pub cech: Arc<CechGroupoid>,
    lambda: Vec<Automorphism>,
    g: Vec<usize>,
}

impl PartialEq for NonAbelianCocycle {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group
            && self.cech.cover == other.cech.cover
            && self.lambda == other.lambda
            && self.g == other.g
    }
}

impl Eq for NonAbelianCocycle {}

/// Which relation a violation breaks: unit conventions, the λ relation or
/// the g relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CocycleTag {
    N,
    C1,
    C2,
}

impl fmt::Display for CocycleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CocycleViolation {
    pub tag: CocycleTag,
    pub indices: Vec<usize>,
    pub point: usize,
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "{} ({}) at point {}", self.tag, idx.join(","), self.point)
    }
}

/// Every violated relation, sorted by tag, indices, point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub violations: Vec<CocycleViolation>,
}

impl CocycleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl NonAbelianCocycle {
    pub fn trivial(group: Arc<FiniteGroup>, cech: Arc<CechGroupoid>) -> Self {
        let n = group.order();
        let lambda = vec![Automorphism::identity(n); cech.groupoid.n_arrows()];
        let g = vec![0; cech.groupoid.n_pairs()];
        Self { group, cech, lambda, g }
    }

    /// Builds the data from functions of `(p, i, j)` and `(p, i, j, k)`.
    pub fn from_fns(
        group: Arc<FiniteGroup>,
        cech: Arc<CechGroupoid>,
        lambda: impl Fn(usize, usize, usize) -> Automorphism,
        g: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Result<Self, ExtensionError> {
        let lambda: Vec<Automorphism> = cech.arrows.iter().map(|&(p, i, j)| lambda(p, i, j)).collect();
        let gv = pairs(&cech).map(|(p, i, j, k)| g(p, i, j, k)).collect();
        let d = Self { group, cech, lambda, g: gv };
        d.check_shape()?;
        Ok(d)
    }

    /// Builds the data from per-arrow and per-pair vectors in Čech order.
    pub fn from_parts(
        group: Arc<FiniteGroup>,
        cech: Arc<CechGroupoid>,
        lambda: Vec<Automorphism>,
        g: Vec<usize>,
    ) -> Result<Self, ExtensionError> {
        let d = Self { group, cech, lambda, g };
        d.check_shape()?;
        Ok(d)
    }

    fn check_shape(&self) -> Result<(), ExtensionError> {
        let gr = &self.cech.groupoid;
        if self.lambda.len() != gr.n_arrows() || self.g.len() != gr.n_pairs() {
            return Err(ExtensionError::Shape("data does not match the cover".into()));
        }
        for (a, f) in self.lambda.iter().enumerate() {
            if !f.is_automorphism_of(&self.group) {
                let (p, i, j) = self.cech.arrows[a];
                return Err(ExtensionError::Shape(format!("lambda({i},{j}) at point {p} is not an automorphism")));
            }
        }
        if let Some(pos) = self.g.iter().position(|&x| x >= self.group.order()) {
            return Err(ExtensionError::Shape(format!("g value {} out of range", self.g[pos])));
        }
        Ok(())
    }

    pub fn mode(&self) -> CoverMode {
        self.cech.cover.mode
    }

    pub fn lambda(&self, p: usize, i: usize, j: usize) -> &Automorphism {
        &self.lambda[self.cech.arrow(p, i, j).expect("admissible edge")]
    }

    pub fn g(&self, p: usize, i: usize, j: usize, k: usize) -> usize {
        self.g[self.pair(p, i, j, k)]
    }

    pub fn lambda_by_arrow(&self) -> &[Automorphism] {
        &self.lambda
    }

    pub fn g_by_pair(&self) -> &[usize] {
        &self.g
    }

    pub fn set_lambda(&mut self, p: usize, i: usize, j: usize, f: Automorphism) {
        let a = self.cech.arrow(p, i, j).expect("admissible edge");
        self.lambda[a] = f;
    }

    pub fn set_g(&mut self, p: usize, i: usize, j: usize, k: usize, x: usize) {
        let k = self.pair(p, i, j, k);
        self.g[k] = x;
    }

    fn pair(&self, p: usize, i: usize, j: usize, k: usize) -> usize {
        let a = self.cech.arrow(p, i, j).expect("admissible triple");
        let b = self.cech.arrow(p, j, k).expect("admissible triple");
        self.cech.groupoid.pair_index(a, b).unwrap()
    }

    /// Triples `(p, i, j, k)` with `p ∈ U_i ∩ U_j ∩ U_k`, in storage order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        pairs(&self.cech)
    }

    /// Whether every value depends only on the index tuple, not the point.
    pub fn is_nerve_constant(&self) -> bool {
        let mut lam: BTreeMap<(usize, usize), &Automorphism> = BTreeMap::new();
        for (a, &(_, i, j)) in self.cech.arrows.iter().enumerate() {
            if *lam.entry((i, j)).or_insert(&self.lambda[a]) != &self.lambda[a] {
                return false;
            }
        }
        let mut gs: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for (idx, (_, i, j, k)) in self.triples().enumerate() {
            if *gs.entry((i, j, k)).or_insert(self.g[idx]) != self.g[idx] {
                return false;
            }
        }
        true
    }
}

pub(crate) fn pairs(cech: &CechGroupoid) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
    let gr = &cech.groupoid;
    (0..gr.n_arrows()).flat_map(move |a| {
        let (p, i, j) = cech.arrows[a];
        gr.out_arrows(gr.tgt(a)).iter().map(move |&b| (p, i, j, cech.arrows[b].2))
    })
}

/// Checks the unit conventions `λ_ii = id`, `g_iij = g_ijj = 1`, the λ
/// relation `λ_ij∘λ_jk = λ_ik∘AD_{g_ijk}` and the g relation
/// `g_ijl·g_jkl = g_ikl·λ_kl⁻¹(g_ijk)` everywhere admissible.
pub fn validate_cocycle(d: &NonAbelianCocycle) -> CocycleReport {
    let grp = &d.group;
    let cover = &d.cech.cover;
    let inv_lambda: Vec<Automorphism> = d.lambda.iter().map(Automorphism::inverse).collect();
    let lam_inv = |p, i, j| &inv_lambda[d.cech.arrow(p, i, j).unwrap()];
    let conj: Vec<Automorphism> = grp.elements().map(|x| grp.conjugation(x)).collect();
    let mut violations = Vec::new();
    let mut push = |tag, indices: Vec<usize>, point| violations.push(CocycleViolation { tag, indices, point });
    for p in 0..cover.points {
        let here = cover.sets_at(p);
        for &i in &here {
            if !d.lambda(p, i, i).is_identity() {
                push(CocycleTag::N, vec![i, i], p);
            }
            for &j in &here {
                if d.g(p, i, i, j) != 0 {
                    push(CocycleTag::N, vec![i, i, j], p);
                }
                if i != j && d.g(p, i, j, j) != 0 {
                    push(CocycleTag::N, vec![i, j, j], p);
                }
            }
        }
        for &i in &here {
            for &j in &here {
                for &k in &here {
                    let gijk = d.g(p, i, j, k);
                    let lhs = d.lambda(p, i, j).compose(d.lambda(p, j, k));
                    let rhs = d.lambda(p, i, k).compose(&conj[gijk]);
                    if lhs != rhs {
                        push(CocycleTag::C1, vec![i, j, k], p);
                    }
                    for &l in &here {
                        let lhs = grp.mul(d.g(p, i, j, l), d.g(p, j, k, l));
                        let rhs = grp.mul(d.g(p, i, k, l), lam_inv(p, k, l).apply(gijk));
                        if lhs != rhs {
                            push(CocycleTag::C2, vec![i, j, k, l], p);
                        }
                    }
                }
            }
        }
    }
    violations.sort();
    CocycleReport { violations }
}

/// Sorted cocycle data: `λ` on `(p, i, j)` with `i < j` and `g` on
/// `(p, i, j, k)` with `i < j < k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SortedCocycleData {
    pub lambda: BTreeMap<(usize, usize, usize), Automorphism>,
    pub g: BTreeMap<(usize, usize, usize, usize), usize>,
}

impl SortedCocycleData {
    pub fn restrict(d: &NonAbelianCocycle) -> Self {
        let mut out = Self::default();
        for &(p, i, j) in &d.cech.arrows {
            if i < j {
                out.lambda.insert((p, i, j), d.lambda(p, i, j).clone());
            }
        }
        for (p, i, j, k) in d.triples() {
            if i < j && j < k {
                out.g.insert((p, i, j, k), d.g(p, i, j, k));
            }
        }
        out
    }
}

/// Like [`complete_cocycle`] but returns the filled-in data without
/// checking the cocycle relations.
pub fn fill_sorted(
    group: Arc<FiniteGroup>,
    cech: Arc<CechGroupoid>,
    sorted: &SortedCocycleData,
) -> Result<NonAbelianCocycle, ExtensionError> {
    fill(group, cech, sorted)
}

/// Fills in all ordered index tuples from sorted data using `λ_ii = id`,
/// `λ_ji = λ_ij⁻¹`, `g = 1` on tuples with a repeated index, and for
/// `i < j < k`, `g = g_ijk`:
/// `g_ikj = λ_jk(g)⁻¹`, `g_jik = g⁻¹`, `g_jki = λ_ij(λ_jk(g))`,
/// `g_kij = λ_jk(g)`, `g_kji = λ_ik(g)⁻¹`.
pub fn complete_cocycle(
    group: Arc<FiniteGroup>,
    cech: Arc<CechGroupoid>,
    sorted: &SortedCocycleData,
) -> Result<NonAbelianCocycle, ExtensionError> {
    let d = fill(group, cech, sorted)?;
    let report = validate_cocycle(&d);
    if let Some(v) = report.violations.first() {
        return Err(ExtensionError::NoCompletion { tuple: v.indices.clone(), point: v.point });
    }
    Ok(d)
}

fn fill(
    group: Arc<FiniteGroup>,
    cech: Arc<CechGroupoid>,
    sorted: &SortedCocycleData,
) -> Result<NonAbelianCocycle, ExtensionError> {
    let n = group.order();
    let missing = |what: String| ExtensionError::Shape(format!("sorted data is missing {what}"));
    let mut lambda = Vec::with_capacity(cech.arrows.len());
    for &(p, i, j) in &cech.arrows {
        let f = match i.cmp(&j) {
            std::cmp::Ordering::Equal => Automorphism::identity(n),
            std::cmp::Ordering::Less => {
                sorted.lambda.get(&(p, i, j)).cloned().ok_or_else(|| missing(format!("lambda({i},{j}) at {p}")))?
            }
            std::cmp::Ordering::Greater => sorted
                .lambda
                .get(&(p, j, i))
                .map(Automorphism::inverse)
                .ok_or_else(|| missing(format!("lambda({j},{i}) at {p}")))?,
        };
        lambda.push(f);
    }
    let lam = |p: usize, i: usize, j: usize| &lambda[cech.arrow(p, i, j).unwrap()];
    let mut g = Vec::with_capacity(cech.groupoid.n_pairs());
    for (p, i, j, k) in pairs(&cech) {
        if i == j || j == k || i == k {
            g.push(0);
            continue;
        }
        let mut s = [i, j, k];
        s.sort_unstable();
        let [a, b, c] = s;
        let x = *sorted.g.get(&(p, a, b, c)).ok_or_else(|| missing(format!("g({a},{b},{c}) at {p}")))?;
        let v = if (i, j, k) == (a, b, c) {
            x
        } else if (i, j, k) == (a, c, b) {
            group.inv(lam(p, b, c).apply(x))
        } else if (i, j, k) == (b, a, c) {
            group.inv(x)
        } else if (i, j, k) == (b, c, a) {
            lam(p, a, b).apply(lam(p, b, c).apply(x))
        } else if (i, j, k) == (c, a, b) {
            lam(p, b, c).apply(x)
        } else {
            group.inv(lam(p, a, c).apply(x))
        };
        g.push(v);
    }
    NonAbelianCocycle::from_parts(group, cech, lambda, g)
}

/// `λ' = λ∘AD_h`, `g'_ijk = h_ik⁻¹·g_ijk·λ_jk⁻¹(h_ij)·h_jk`, for a cochain
/// `h` given per Čech arrow with `h_ii = 1`.
pub fn twist_by_cochain(d: &NonAbelianCocycle, h: &[usize]) -> Result<NonAbelianCocycle, ExtensionError> {
    let grp = &d.group;
    let gr = &d.cech.groupoid;
    if h.len() != gr.n_arrows() || h.iter().any(|&x| x >= grp.order()) {
        return Err(ExtensionError::Shape("twisting cochain does not match the cover".into()));
    }
    if let Some(o) = (0..gr.n_objects()).find(|&o| h[gr.unit(o)] != 0) {
        let (p, i) = d.cech.objects[o];
        return Err(ExtensionError::Shape(format!("twisting cochain is not 1 on ({i},{i}) at point {p}")));
    }
    let lambda: Vec<Automorphism> = d.lambda.iter().zip(h).map(|(f, &x)| f.compose(&grp.conjugation(x))).collect();
    let mut g = Vec::with_capacity(d.g.len());
    for a in 0..gr.n_arrows() {
        for &b in gr.out_arrows(gr.tgt(a)) {
            let c = gr.mul(a, b);
            let x = d.g[gr.pair_index(a, b).unwrap()];
            let v = grp.product(&[grp.inv(h[c]), x, d.lambda[b].inverse().apply(h[a]), h[b]]);
            g.push(v);
        }
    }
    NonAbelianCocycle::from_parts(d.group.clone(), d.cech.clone(), lambda, g)
}

/// Pointwise inverse cochain; twisting by `h` and then by this returns
/// the original data.
pub fn inverse_cochain(group: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    h.iter().map(|&x| group.inv(x)).collect()
}

/// `λ' = α_i⁻¹∘λ_ij∘α_j`, `g'_ijk = α_k⁻¹(g_ijk)`, for automorphisms `α`
/// given per Čech object.
pub fn gauge_by_automorphisms(
    d: &NonAbelianCocycle,
    alpha: &[Automorphism],
) -> Result<NonAbelianCocycle, ExtensionError> {
    let gr = &d.cech.groupoid;
    if alpha.len() != gr.n_objects() || alpha.iter().any(|f| !f.is_automorphism_of(&d.group)) {
        return Err(ExtensionError::Shape("gauge does not match the cover".into()));
    }
    let alpha_inv: Vec<Automorphism> = alpha.iter().map(Automorphism::inverse).collect();
    let lambda =
        (0..gr.n_arrows()).map(|a| alpha_inv[gr.src(a)].compose(&d.lambda[a]).compose(&alpha[gr.tgt(a)])).collect();
    let mut g = Vec::with_capacity(d.g.len());
    for a in 0..gr.n_arrows() {
        for &b in gr.out_arrows(gr.tgt(a)) {
            g.push(alpha_inv[gr.tgt(b)].apply(d.g[gr.pair_index(a, b).unwrap()]));
        }
    }
    NonAbelianCocycle::from_parts(d.group.clone(), d.cech.clone(), lambda, g)
}
