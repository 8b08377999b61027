//! Central extensions: normalization to `Z(G)`-valued data, centrality
//! certificates and extensions induced from central data.

use std::collections::HashMap;
use std::sync::Arc;

use super::band::{band, band_is_trivial, outer_action, Sites};
use super::cocycle::{gauge_by_automorphisms, twist_by_cochain, validate_cocycle, NonAbelianCocycle};
use super::extension::{
    check_extension_isomorphism, cocycle_from_extension, extension_from_cocycle, gauge_isomorphism, twist_isomorphism,
    GroupoidExtension, KernelTrivialization,
};
use crate::algebra::{AutStructure, Automorphism, FiniteGroup};
use crate::error::ExtensionError;
use crate::groupoid::FiniteGroupoid;

/// Result of [`normalize_central`]: the normalized data and the gauge and
/// twist that produced it.
#[derive(Clone, Debug)]
pub struct NormalizedCentral {
    pub cocycle: NonAbelianCocycle,
    /// Automorphism gauge per Čech object.
    pub alpha: Vec<Automorphism>,
    /// Twisting cochain per Čech arrow.
    pub h: Vec<usize>,
}

/// Gauges by lifts of `η̄` (smallest Aut representative) so that every
/// `λ` becomes inner, `λ_ij = AD_{k_ij}`, then twists by `k⁻¹`. The result
/// has `λ = id` and `g` in `Z(G)`; the extensions before and after are
/// checked to be isomorphic.
pub fn normalize_central(
    d: &NonAbelianCocycle,
    aut: &AutStructure,
    eta: &[usize],
    sites: &Sites,
) -> Result<NormalizedCentral, ExtensionError> {
    let grp = &d.group;
    let gr = &d.cech.groupoid;
    if eta.len() != sites.count {
        return Err(ExtensionError::BadTrivialization("one band value per site is required".into()));
    }
    let mut alpha = Vec::with_capacity(gr.n_objects());
    for o in 0..gr.n_objects() {
        let out = eta[sites.site[o]];
        alpha.push(aut.lift_automorphism(out).ok_or(ExtensionError::LiftFailure(out))?.clone());
    }
    let gauged = gauge_by_automorphisms(d, &alpha)?;
    let conj: HashMap<Automorphism, usize> = grp.elements().rev().map(|x| (grp.conjugation(x), x)).collect();
    let mut h = Vec::with_capacity(gr.n_arrows());
    for (a, f) in gauged.lambda_by_arrow().iter().enumerate() {
        match conj.get(f) {
            Some(&k) => h.push(grp.inv(k)),
            None => {
                let (p, i, j) = d.cech.arrows[a];
                return Err(ExtensionError::BadTrivialization(format!(
                    "gauged lambda({i},{j}) at point {p} is not inner"
                )));
            }
        }
    }
    let normalized = twist_by_cochain(&gauged, &h)?;
    debug_assert!(normalized.lambda_by_arrow().iter().all(Automorphism::is_identity));

    let (e0, _) = extension_from_cocycle(d)?;
    let (e2, _) = extension_from_cocycle(&normalized)?;
    let iso = twist_isomorphism(&gauged, &h).then(&gauge_isomorphism(d, &alpha));
    check_extension_isomorphism(&e2, &e0, &iso)?;
    Ok(NormalizedCentral { cocycle: normalized, alpha, h })
}

/// Whether `E` is central for the given trivialization (`Ād ≡ 1`), with the
/// normalized `Z(G)`-valued cocycle as certificate.
#[derive(Clone, Debug)]
pub struct CentralityCertificate {
    pub central: bool,
    pub normalized: Option<NonAbelianCocycle>,
}

/// Extracts cocycle data with the section choosing the first lift of each
/// base arrow (units for units), checks `Ād ≡ 1` and normalizes.
pub fn is_central(
    e: &GroupoidExtension,
    group: Arc<FiniteGroup>,
    chi: &KernelTrivialization,
    aut: &AutStructure,
) -> Result<CentralityCertificate, ExtensionError> {
    let action = outer_action(e, &group, chi, aut)?;
    if !action.is_identity() {
        return Ok(CentralityCertificate { central: false, normalized: None });
    }
    let section = first_lift_section(e);
    let d = cocycle_from_extension(e, group, &section, chi)?;
    let sites = Sites::for_cocycle(&d);
    let b = band(&d, aut);
    let eta = band_is_trivial(&b, &d.cech.groupoid, &sites, &aut.out).ok_or(ExtensionError::NontrivialBand)?;
    let n = normalize_central(&d, aut, &eta, &sites)?;
    Ok(CentralityCertificate { central: true, normalized: Some(n.cocycle) })
}

/// For each base arrow, the unit if it is a unit, otherwise its smallest
/// lift. Base arrows `(p, i, j)` with equal `(i, j)` and equal fiber
/// structure get lifts at the same fiber position.
pub fn first_lift_section(e: &GroupoidExtension) -> Vec<usize> {
    let mut section = vec![usize::MAX; e.base.n_arrows()];
    for (x, &y) in e.phi.iter().enumerate() {
        if section[y] == usize::MAX {
            section[y] = x;
        }
    }
    for m in 0..e.base.n_objects() {
        section[e.base.unit(m)] = e.total.unit(m);
    }
    section
}

/// The quotient `(X̃ × G)/A` of the product of the `A`-extension defined by
/// `d` (λ = id, values in `A ⊆ Z(G)`) with `G`, under
/// `(x̃, g)·a = (x̃·a, a⁻¹g)`. Arrows are numbered by the smallest pair in
/// their orbit.
pub fn induced_from_central(
    d: &NonAbelianCocycle,
    subgroup: &[usize],
) -> Result<(GroupoidExtension, KernelTrivialization), ExtensionError> {
    let grp = &d.group;
    let n = grp.order();
    let center = grp.center();
    if !grp.is_subgroup(subgroup) || subgroup.iter().any(|a| !center.contains(a)) {
        return Err(ExtensionError::NotCentralSubgroup(format!("{subgroup:?} is not a subgroup of the center")));
    }
    let mut sub = subgroup.to_vec();
    sub.sort_unstable();
    if d.lambda_by_arrow().iter().any(|f| !f.is_identity()) {
        return Err(ExtensionError::NotCentralSubgroup("lambda is not the identity".into()));
    }
    if d.g_by_pair().iter().any(|x| sub.binary_search(x).is_err()) {
        return Err(ExtensionError::NotCentralSubgroup("g takes values outside the subgroup".into()));
    }
    let report = validate_cocycle(d);
    if !report.is_valid() {
        return Err(ExtensionError::InvalidCocycle { report, witness: None });
    }
    let cech = &d.cech.groupoid;
    let na = sub.len();
    // X̃: arrows (c, a) indexed c·|A| + position of a, product (c,a)(c',b) = (cc', g·a·b)
    let pos: HashMap<usize, usize> = sub.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let unit_pos = pos[&0];
    let xt_n = cech.n_arrows() * na;
    let xt = FiniteGroupoid::new(
        cech.n_objects(),
        (0..xt_n).map(|x| cech.src(x / na)).collect(),
        (0..xt_n).map(|x| cech.tgt(x / na)).collect(),
        (0..cech.n_objects()).map(|o| cech.unit(o) * na + unit_pos).collect(),
        |x, y| {
            let (c1, c2) = (x / na, y / na);
            let gv = d.g_by_pair()[cech.pair_index(c1, c2).unwrap()];
            cech.mul(c1, c2) * na + pos[&grp.product(&[gv, sub[x % na], sub[y % na]])]
        },
    )
    .map_err(|e| ExtensionError::NotExtension(format!("central data does not define an extension: {e}")))?;
    let kernel_at = |o: usize, a: usize| cech.unit(o) * na + pos[&a];

    // orbits of X̃ × G, pairs encoded x̃·|G| + g
    let pairs = xt_n * n;
    let mut orbit = vec![usize::MAX; pairs];
    let mut reps = Vec::new();
    for pr in 0..pairs {
        if orbit[pr] != usize::MAX {
            continue;
        }
        let (x, g) = (pr / n, pr % n);
        for &a in &sub {
            let xa = xt.mul(x, kernel_at(xt.tgt(x), a));
            orbit[xa * n + grp.mul(grp.inv(a), g)] = reps.len();
        }
        reps.push(pr);
    }
    if reps.len() * na != pairs {
        return Err(ExtensionError::NotExtension("diagonal action is not free".into()));
    }
    let total = FiniteGroupoid::new(
        cech.n_objects(),
        reps.iter().map(|&r| xt.src(r / n)).collect(),
        reps.iter().map(|&r| xt.tgt(r / n)).collect(),
        (0..cech.n_objects()).map(|o| orbit[xt.unit(o) * n]).collect(),
        |u, v| {
            let (r1, r2) = (reps[u], reps[v]);
            orbit[xt.mul(r1 / n, r2 / n) * n + grp.mul(r1 % n, r2 % n)]
        },
    )?;
    let phi: Vec<usize> = reps.iter().map(|&r| (r / n) / na).collect();
    let e = GroupoidExtension::new(total, cech.clone(), phi, Some(d.cech.clone()))?;
    let chi = KernelTrivialization {
        chi: (0..cech.n_objects()).map(|o| (0..n).map(|g| orbit[xt.unit(o) * n + g]).collect()).collect(),
    };
    chi.validate(&e, grp)?;
    Ok((e, chi))
}
