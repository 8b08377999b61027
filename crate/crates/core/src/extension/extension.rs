//! Groupoid extensions `φ: X → Y` with group-bundle kernel.

use std::collections::HashMap;
use std::sync::Arc;

use super::cocycle::{validate_cocycle, NonAbelianCocycle};
use crate::algebra::{Automorphism, FiniteGroup};
use crate::error::{ExtensionError, GroupoidError};
use crate::groupoid::{CechGroupoid, FiniteGroupoid, GroupoidMorphism};

/// A surjective morphism `φ: total → base` that is the identity on
/// objects, with kernel fibers `φ⁻¹(unit_m)` that are groups.
#[derive(Clone, Debug)]
pub struct GroupoidExtension {
    pub total: FiniteGroupoid,
    pub base: FiniteGroupoid,
    pub phi: Vec<usize>,
    /// Arrows of `φ⁻¹(unit_m)` per object, ascending.
    pub kernel: Vec<Vec<usize>>,
    /// Set when the base is a Čech groupoid.
    pub cech: Option<Arc<CechGroupoid>>,
}

impl GroupoidExtension {
    /// Checks that `φ` is a morphism, surjective on arrows, and that each
    /// fiber `φ⁻¹(y)` is a free transitive right `K_{tgt(y)}`-set.
    pub fn new(
        total: FiniteGroupoid,
        base: FiniteGroupoid,
        phi: Vec<usize>,
        cech: Option<Arc<CechGroupoid>>,
    ) -> Result<Self, ExtensionError> {
        let bad = |m: String| Err(ExtensionError::NotExtension(m));
        if total.n_objects() != base.n_objects() {
            return bad("total and base have different objects".into());
        }
        let morphism = GroupoidMorphism { objects: (0..base.n_objects()).collect(), arrows: phi.clone() };
        morphism.check(&total, &base)?;
        let mut fibers = vec![Vec::new(); base.n_arrows()];
        for (x, &y) in phi.iter().enumerate() {
            fibers[y].push(x);
        }
        if let Some(y) = fibers.iter().position(Vec::is_empty) {
            return bad(format!("base arrow {y} has no lift"));
        }
        let kernel: Vec<Vec<usize>> = (0..base.n_objects()).map(|m| fibers[base.unit(m)].clone()).collect();
        for y in 0..base.n_arrows() {
            let k = &kernel[base.tgt(y)];
            if fibers[y].len() != k.len() {
                return bad(format!("fiber over arrow {y} has {} elements, kernel has {}", fibers[y].len(), k.len()));
            }
            // cancellation makes k ↦ x·k injective, so equal sizes give transitivity
            let x = fibers[y][0];
            let mut orbit: Vec<usize> = k.iter().map(|&kk| total.mul(x, kk)).collect();
            orbit.sort_unstable();
            if orbit != fibers[y] {
                return bad(format!("kernel does not act transitively on the fiber over {y}"));
            }
        }
        Ok(Self { total, base, phi, kernel, cech })
    }

    /// Arrows over the base arrow `y`, ascending.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.phi.len()).filter(|&x| self.phi[x] == y).collect()
    }
}

/// Isomorphisms `χ_m: G → K_m`, stored as `chi[m][g]` = arrow of the total
/// groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTrivialization {
    pub chi: Vec<Vec<usize>>,
}

impl KernelTrivialization {
    pub fn validate(&self, e: &GroupoidExtension, group: &FiniteGroup) -> Result<(), ExtensionError> {
        let bad = |m: String| Err(ExtensionError::BadTrivialization(m));
        if self.chi.len() != e.base.n_objects() {
            return bad("one map per object is required".into());
        }
        for (m, chi) in self.chi.iter().enumerate() {
            if chi.len() != group.order() {
                return bad(format!("map at object {m} has the wrong length"));
            }
            let mut image = chi.clone();
            image.sort_unstable();
            if image != e.kernel[m] {
                return bad(format!("map at object {m} is not a bijection onto the kernel"));
            }
            for a in group.elements() {
                for b in group.elements() {
                    if chi[group.mul(a, b)] != e.total.mul(chi[a], chi[b]) {
                        return bad(format!("map at object {m} is not a homomorphism"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `χ⁻¹` as a map from total arrows (kernel arrows only).
    pub fn inverse(&self, n_arrows: usize) -> Vec<Option<usize>> {
        let mut inv = vec![None; n_arrows];
        for chi in &self.chi {
            for (g, &x) in chi.iter().enumerate() {
                inv[x] = Some(g);
            }
        }
        inv
    }

    /// `χ'_m = χ_m ∘ β_m`.
    pub fn precompose(&self, beta: &[Automorphism]) -> Self {
        Self { chi: self.chi.iter().zip(beta).map(|(chi, b)| b.perm.iter().map(|&g| chi[g]).collect()).collect() }
    }
}

/// The extension defined by the product `(x_ij, g)(x_jk, h) = (x_ik, g_ijk·λ_jk⁻¹(g)·h)`
/// on arrows `(p, i, j, g)`, indexed `arrow · |G| + g`.
///
/// Success is decided by exhaustive verification of the groupoid axioms
/// with units `(p, i, i, 1)`; on failure the cocycle report is attached.
pub fn extension_from_cocycle(
    d: &NonAbelianCocycle,
) -> Result<(GroupoidExtension, KernelTrivialization), ExtensionError> {
    let grp = &d.group;
    let n = grp.order();
    let cech = &d.cech.groupoid;
    let lam_inv: Vec<Automorphism> = d.lambda_by_arrow().iter().map(Automorphism::inverse).collect();
    let gs = d.g_by_pair();
    let arrows = cech.n_arrows() * n;
    let src = (0..arrows).map(|x| cech.src(x / n)).collect();
    let tgt = (0..arrows).map(|x| cech.tgt(x / n)).collect();
    let unit = (0..cech.n_objects()).map(|o| cech.unit(o) * n).collect();
    let total = FiniteGroupoid::new(cech.n_objects(), src, tgt, unit, |x, y| {
        let (a, g) = (x / n, x % n);
        let (b, h) = (y / n, y % n);
        let gijk = gs[cech.pair_index(a, b).unwrap()];
        cech.mul(a, b) * n + grp.product(&[gijk, lam_inv[b].apply(g), h])
    });
    let total = match total {
        Ok(t) => t,
        Err(GroupoidError::Invalid(v)) => {
            return Err(ExtensionError::InvalidCocycle { report: validate_cocycle(d), witness: Some(v) })
        }
        Err(e) => return Err(e.into()),
    };
    let phi = (0..arrows).map(|x| x / n).collect();
    let e = GroupoidExtension::new(total, cech.clone(), phi, Some(d.cech.clone()))?;
    let chi = canonical_trivialization(d);
    Ok((e, chi))
}

/// `χ_m(g) = (unit_m, g)` for an extension built from cocycle data.
pub fn canonical_trivialization(d: &NonAbelianCocycle) -> KernelTrivialization {
    let n = d.group.order();
    let cech = &d.cech.groupoid;
    KernelTrivialization {
        chi: (0..cech.n_objects()).map(|o| (0..n).map(|g| cech.unit(o) * n + g).collect()).collect(),
    }
}

/// `ρ(y) = (y, 1)` for an extension built from cocycle data.
pub fn canonical_section(d: &NonAbelianCocycle) -> Vec<usize> {
    let n = d.group.order();
    (0..d.cech.groupoid.n_arrows()).map(|a| a * n).collect()
}

/// Reads off `λ_ij(g) = χ_i⁻¹(ρ(x_ij)·χ_j(g)·ρ(x_ij)⁻¹)` and
/// `g_ijk = χ_k⁻¹(ρ(x_ik)⁻¹·ρ(x_ij)·ρ(x_jk))`.
pub fn cocycle_from_extension(
    e: &GroupoidExtension,
    group: Arc<FiniteGroup>,
    section: &[usize],
    chi: &KernelTrivialization,
) -> Result<NonAbelianCocycle, ExtensionError> {
    let cech = e.cech.clone().ok_or_else(|| ExtensionError::NotExtension("base is not a Čech groupoid".into()))?;
    let base = &e.base;
    if section.len() != base.n_arrows() {
        return Err(ExtensionError::BadSection("one lift per base arrow is required".into()));
    }
    for (y, &x) in section.iter().enumerate() {
        if x >= e.phi.len() || e.phi[x] != y {
            return Err(ExtensionError::BadSection(format!("lift of arrow {y} does not lie over it")));
        }
    }
    if let Some(m) = (0..base.n_objects()).find(|&m| section[base.unit(m)] != e.total.unit(m)) {
        return Err(ExtensionError::BadSection(format!("lift of the unit at object {m} is not a unit")));
    }
    chi.validate(e, &group)?;
    let chi_inv = chi.inverse(e.total.n_arrows());
    let t = &e.total;
    let lambda: Vec<Automorphism> = (0..base.n_arrows())
        .map(|y| {
            let x = section[y];
            let (i, j) = (base.src(y), base.tgt(y));
            let perm = group
                .elements()
                .map(|g| chi_inv[t.mul(t.mul(x, chi.chi[j][g]), t.inv(x))].expect("kernel element"))
                .collect();
            debug_assert!(chi.chi[i].len() == group.order());
            Automorphism { perm }
        })
        .collect();
    let mut g = Vec::with_capacity(base.n_pairs());
    for a in 0..base.n_arrows() {
        for &b in base.out_arrows(base.tgt(a)) {
            let c = base.mul(a, b);
            let k = t.mul(t.inv(section[c]), t.mul(section[a], section[b]));
            g.push(chi_inv[k].expect("kernel element"));
        }
    }
    NonAbelianCocycle::from_parts(group, cech, lambda, g)
}

/// Checks that `f: E1 → E2` is an isomorphism of extensions: identity on
/// objects, a bijective functor on total arrows, and `φ_2∘f = φ_1`.
pub fn check_extension_isomorphism(
    e1: &GroupoidExtension,
    e2: &GroupoidExtension,
    f: &GroupoidMorphism,
) -> Result<(), ExtensionError> {
    let fail = |m: String| Err(ExtensionError::IsomorphismFailed(m));
    if e1.base != e2.base {
        return fail("bases differ".into());
    }
    if f.objects.iter().enumerate().any(|(o, &fo)| o != fo) {
        return fail("not the identity on objects".into());
    }
    f.check(&e1.total, &e2.total).map_err(|e| ExtensionError::IsomorphismFailed(e.to_string()))?;
    let mut hit = vec![false; e2.total.n_arrows()];
    for (x, &fx) in f.arrows.iter().enumerate() {
        if std::mem::replace(&mut hit[fx], true) {
            return fail(format!("arrow {fx} is hit twice"));
        }
        if e2.phi[fx] != e1.phi[x] {
            return fail(format!("arrow {x} changes its base arrow"));
        }
    }
    if hit.len() != f.arrows.len() {
        return fail("arrow counts differ".into());
    }
    Ok(())
}

/// `(p, i, j, g) ↦ (p, i, j, h_ij·g)` from `E(twist(d, h))` to `E(d)`.
pub fn twist_isomorphism(d: &NonAbelianCocycle, h: &[usize]) -> GroupoidMorphism {
    let n = d.group.order();
    let cech = &d.cech.groupoid;
    GroupoidMorphism {
        objects: (0..cech.n_objects()).collect(),
        arrows: (0..cech.n_arrows() * n).map(|x| (x / n) * n + d.group.mul(h[x / n], x % n)).collect(),
    }
}

/// `(p, i, j, g) ↦ (p, i, j, α_j(g))` from `E(gauge(d, α))` to `E(d)`.
pub fn gauge_isomorphism(d: &NonAbelianCocycle, alpha: &[Automorphism]) -> GroupoidMorphism {
    let n = d.group.order();
    let cech = &d.cech.groupoid;
    GroupoidMorphism {
        objects: (0..cech.n_objects()).collect(),
        arrows: (0..cech.n_arrows() * n).map(|x| (x / n) * n + alpha[cech.tgt(x / n)].apply(x % n)).collect(),
    }
}

/// Lookup from total arrow to `(base arrow, position in its fiber)`.
pub fn fiber_positions(e: &GroupoidExtension) -> HashMap<usize, (usize, usize)> {
    let mut seen = vec![0usize; e.base.n_arrows()];
    let mut out = HashMap::new();
    for (x, &y) in e.phi.iter().enumerate() {
        out.insert(x, (y, seen[y]));
        seen[y] += 1;
    }
    out
}
