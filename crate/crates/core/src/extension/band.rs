//! Outer action, band and band trivializations.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::cocycle::NonAbelianCocycle;
use super::extension::{GroupoidExtension, KernelTrivialization};
use crate::algebra::{AutStructure, Automorphism, FiniteGroup};
use crate::error::ExtensionError;
use crate::groupoid::{CoverMode, FiniteGroupoid};

/// `Out(G)`-valued data, one value per base arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCocycle {
    pub values: Vec<usize>,
}

impl BandCocycle {
    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Checks `λ̄(x)·λ̄(y) = λ̄(x·y)` on all composable pairs; this is the
    /// triple relation `λ̄_ij∘λ̄_jk∘λ̄_ki = 1` together with `λ̄_ji = λ̄_ij⁻¹`.
    pub fn check(&self, base: &FiniteGroupoid, out: &FiniteGroup) -> Result<(), (usize, usize)> {
        for a in 0..base.n_arrows() {
            for &b in base.out_arrows(base.tgt(a)) {
                if out.mul(self.values[a], self.values[b]) != self.values[base.mul(a, b)] {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}

/// `Ād(y) = proj(χ_s⁻¹∘AD_x∘χ_t)` for every base arrow `y: s → t`, checked
/// to be the same for all lifts `x` of `y`.
pub fn outer_action(
    e: &GroupoidExtension,
    group: &FiniteGroup,
    chi: &KernelTrivialization,
    aut: &AutStructure,
) -> Result<BandCocycle, ExtensionError> {
    chi.validate(e, group)?;
    let chi_inv = chi.inverse(e.total.n_arrows());
    let t = &e.total;
    let mut values = vec![usize::MAX; e.base.n_arrows()];
    for (x, &y) in e.phi.iter().enumerate() {
        let (s, tg) = (e.base.src(y), e.base.tgt(y));
        let perm: Vec<usize> = group
            .elements()
            .map(|g| chi_inv[t.mul(t.mul(x, chi.chi[tg][g]), t.inv(x))].expect("kernel element"))
            .collect();
        debug_assert!(chi.chi[s].iter().all(|&k| chi_inv[k].is_some()));
        let o = aut.project(&Automorphism { perm }).expect("conjugation is an automorphism");
        if values[y] == usize::MAX {
            values[y] = o;
        } else if values[y] != o {
            return Err(ExtensionError::LiftDependent(y));
        }
    }
    Ok(BandCocycle { values })
}

/// `λ̄ = proj∘λ` per Čech arrow.
pub fn band(d: &NonAbelianCocycle, aut: &AutStructure) -> BandCocycle {
    BandCocycle { values: d.lambda_by_arrow().iter().map(|f| aut.project(f).expect("automorphism")).collect() }
}

/// Where a band trivialization lives: one `η̄` per site, with `site[o]`
/// the site of base object `o`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sites {
    pub site: Vec<usize>,
    pub count: usize,
}

impl Sites {
    pub fn objects(base: &FiniteGroupoid) -> Self {
        Self { site: (0..base.n_objects()).collect(), count: base.n_objects() }
    }

    /// Per object in pointwise mode, per cover set (nerve vertex) in
    /// nerve-constant mode.
    pub fn for_cocycle(d: &NonAbelianCocycle) -> Self {
        match d.mode() {
            CoverMode::Pointwise => Self::objects(&d.cech.groupoid),
            CoverMode::NerveConstant => {
                Self { site: d.cech.objects.iter().map(|&(_, i)| i).collect(), count: d.cech.cover.n_sets() }
            }
        }
    }
}

/// An off-tree arrow whose loop has nontrivial holonomy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomyWitness {
    pub arrow: usize,
    /// Sites along the loop: the tree path from the arrow's source site to
    /// its target site; the arrow closes it.
    pub cycle: Vec<usize>,
    pub holonomy: usize,
    pub conjugacy_class: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandClass {
    Trivial { eta: Vec<usize> },
    Nontrivial { loops: Vec<HolonomyWitness> },
}

struct Forest {
    eta: Vec<usize>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    tree_arrows: BTreeSet<usize>,
}

/// Fixes `η̄ = 1` at one site per component and propagates along a BFS
/// tree using `λ̄(y) = η̄(s)·η̄(t)⁻¹`.
fn spanning_forest(b: &BandCocycle, base: &FiniteGroupoid, sites: &Sites, out: &FiniteGroup) -> Forest {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); sites.count];
    for y in 0..base.n_arrows() {
        adj[sites.site[base.src(y)]].push(y);
        adj[sites.site[base.tgt(y)]].push(y);
    }
    let mut eta = vec![usize::MAX; sites.count];
    let mut parent = vec![None; sites.count];
    let mut depth = vec![0; sites.count];
    let mut tree_arrows = BTreeSet::new();
    for root in 0..sites.count {
        if eta[root] != usize::MAX {
            continue;
        }
        eta[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &y in &adj[u] {
                let (s, t) = (sites.site[base.src(y)], sites.site[base.tgt(y)]);
                let v = b.values[y];
                let (w, val) = if s == u && eta[t] == usize::MAX {
                    (t, out.mul(out.inv(v), eta[s]))
                } else if t == u && eta[s] == usize::MAX {
                    (s, out.mul(v, eta[t]))
                } else {
                    continue;
                };
                eta[w] = val;
                parent[w] = Some(u);
                depth[w] = depth[u] + 1;
                tree_arrows.insert(y);
                queue.push_back(w);
            }
        }
    }
    Forest { eta, parent, depth, tree_arrows }
}

fn holonomy(
    b: &BandCocycle,
    base: &FiniteGroupoid,
    sites: &Sites,
    out: &FiniteGroup,
    eta: &[usize],
    y: usize,
) -> usize {
    let (s, t) = (sites.site[base.src(y)], sites.site[base.tgt(y)]);
    out.product(&[out.inv(eta[s]), b.values[y], eta[t]])
}

/// Some `η̄` with `λ̄(y) = η̄(site(src y))·η̄(site(tgt y))⁻¹` for all base
/// arrows, or `None`.
pub fn band_is_trivial(b: &BandCocycle, base: &FiniteGroupoid, sites: &Sites, out: &FiniteGroup) -> Option<Vec<usize>> {
    let forest = spanning_forest(b, base, sites, out);
    (0..base.n_arrows()).all(|y| holonomy(b, base, sites, out, &forest.eta, y) == 0).then_some(forest.eta)
}

/// Trivial with a trivialization, or the holonomy of every independent
/// loop (off-tree arrow, one per distinct site pair and value) that is
/// not 1.
pub fn band_class(b: &BandCocycle, base: &FiniteGroupoid, sites: &Sites, out: &FiniteGroup) -> BandClass {
    let forest = spanning_forest(b, base, sites, out);
    let mut loops = Vec::new();
    let mut seen = BTreeSet::new();
    for y in 0..base.n_arrows() {
        if forest.tree_arrows.contains(&y) {
            continue;
        }
        let (s, t) = (sites.site[base.src(y)], sites.site[base.tgt(y)]);
        let hol = holonomy(b, base, sites, out, &forest.eta, y);
        if hol == 0 || s > t {
            continue;
        }
        if !seen.insert((s, t, b.values[y])) {
            continue;
        }
        loops.push(HolonomyWitness {
            arrow: y,
            cycle: tree_path(&forest, s, t),
            holonomy: hol,
            conjugacy_class: out.conjugacy_class(hol),
        });
    }
    if loops.is_empty() && (0..base.n_arrows()).all(|y| holonomy(b, base, sites, out, &forest.eta, y) == 0) {
        BandClass::Trivial { eta: forest.eta }
    } else {
        if loops.is_empty() {
            // only reversed arrows failed; report them from their other end
            for y in 0..base.n_arrows() {
                let hol = holonomy(b, base, sites, out, &forest.eta, y);
                if hol != 0 {
                    let (s, t) = (sites.site[base.src(y)], sites.site[base.tgt(y)]);
                    loops.push(HolonomyWitness {
                        arrow: y,
                        cycle: tree_path(&forest, s, t),
                        holonomy: hol,
                        conjugacy_class: out.conjugacy_class(hol),
                    });
                    break;
                }
            }
        }
        BandClass::Nontrivial { loops }
    }
}

fn tree_path(forest: &Forest, mut a: usize, mut b: usize) -> Vec<usize> {
    let mut up = vec![a];
    let mut down = vec![b];
    while forest.depth[a] > forest.depth[b] {
        a = forest.parent[a].unwrap();
        up.push(a);
    }
    while forest.depth[b] > forest.depth[a] {
        b = forest.parent[b].unwrap();
        down.push(b);
    }
    while a != b {
        a = forest.parent[a].unwrap();
        b = forest.parent[b].unwrap();
        up.push(a);
        down.push(b);
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up
}
