//! Inhomogeneous bar complex of a finite group with module coefficients.
//!
//! An n-cochain is a function `G^n → M`, stored as a vector indexed by
//! `tuple_index · rank + coordinate`, where tuples are read big-endian in
//! base `|G|`.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{ToPrimitive, Zero};

use super::group::FiniteGroup;
use super::module::GroupModule;
use crate::coefficients::{subquotient, Coefficients, CohomologyValue};
use crate::config::Limits;
use crate::error::{AlgebraError, SizeBound};
use crate::linalg::{q, QMatrix, SparseMatrix, Q};

/// Cocycles or coboundaries: a ℚ-basis, or every element over `Z/m`.
/// Vectors have length `|G| · rank`, entry `g · rank + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CochainFamily {
    Basis(Vec<Vec<Q>>),
    Elements(Vec<Vec<u64>>),
}

impl CochainFamily {
    /// Dimension over ℚ or number of elements over `Z/m`.
    pub fn size(&self) -> usize {
        match self {
            CochainFamily::Basis(b) => b.len(),
            CochainFamily::Elements(e) => e.len(),
        }
    }
}

pub fn cochain_dim(group: &FiniteGroup, module: &GroupModule, n: usize) -> u128 {
    (group.order() as u128).pow(n as u32) * module.rank as u128
}

fn decode(index: usize, n: usize, order: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    let mut x = index;
    for slot in t.iter_mut().rev() {
        *slot = x % order;
        x /= order;
    }
    t
}

fn encode(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

/// `d^n: C^n → C^{n+1}` as a `dim C^{n+1} × dim C^n` matrix, with
/// `(df)(g_1..g_{n+1}) = g_1·f(g_2..) + Σ (−1)^i f(..g_i g_{i+1}..) + (−1)^{n+1} f(g_1..g_n)`.
pub fn bar_differential(
    group: &FiniteGroup,
    module: &GroupModule,
    n: usize,
    limits: &Limits,
) -> Result<SparseMatrix, AlgebraError> {
    let size = cochain_dim(group, module, n + 1);
    SizeBound::check("bar cochains", size, limits.max_cochain_dim as u128)?;
    let order = group.order();
    let r = module.rank;
    let rows = size as usize;
    let cols = order.pow(n as u32) * r;
    let mut d = SparseMatrix::zeros(rows, cols);
    let sign = |k: usize| if k % 2 == 0 { q(1) } else { q(-1) };
    for t in 0..order.pow(n as u32 + 1) {
        let tuple = decode(t, n + 1, order);
        let first = encode(&tuple[1..], order);
        let act = module.act(tuple[0]);
        for c in 0..r {
            for c2 in 0..r {
                d.add(t * r + c, first * r + c2, act.get(c, c2));
            }
        }
        for i in 1..=n {
            let mut merged = tuple[..i - 1].to_vec();
            merged.push(group.mul(tuple[i - 1], tuple[i]));
            merged.extend_from_slice(&tuple[i + 1..]);
            let col = encode(&merged, order);
            for c in 0..r {
                d.add(t * r + c, col * r + c, &sign(i));
            }
        }
        let last = encode(&tuple[..n], order);
        for c in 0..r {
            d.add(t * r + c, last * r + c, &sign(n + 1));
        }
    }
    Ok(d)
}

/// `H^n(G, M)` for `n ≤ 3`.
pub fn group_cohomology(
    group: &FiniteGroup,
    module: &GroupModule,
    n: usize,
    limits: &Limits,
) -> Result<CohomologyValue, AlgebraError> {
    if n > 3 {
        return Err(AlgebraError::Degree(n));
    }
    let dim = group.order().pow(n as u32) * module.rank;
    let next = bar_differential(group, module, n, limits)?;
    let prev = if n == 0 { SparseMatrix::zeros(dim, 0) } else { bar_differential(group, module, n - 1, limits)? };
    Ok(subquotient(&prev, &next, dim, module.coeff))
}

/// All `F: G → M` with `F(gh) = F(g) + g·F(h)`.
pub fn z1_cocycles(group: &FiniteGroup, module: &GroupModule, limits: &Limits) -> Result<CochainFamily, AlgebraError> {
    match module.coeff {
        Coefficients::Rational => {
            let d1 = bar_differential(group, module, 1, limits)?;
            Ok(CochainFamily::Basis(d1.to_dense().kernel_basis()))
        }
        Coefficients::Mod(m) => {
            let gens = group.generating_set();
            let r = module.rank;
            let total = (m as u128).checked_pow((gens.len() * r) as u32).unwrap_or(u128::MAX);
            SizeBound::check("Z1 enumeration", total, limits.max_enum as u128)?;
            let mut out = BTreeSet::new();
            for code in 0..total as u64 {
                let mut rest = code;
                let values: Vec<Vec<u64>> = gens
                    .iter()
                    .map(|_| {
                        (0..r)
                            .map(|_| {
                                let v = rest % m;
                                rest /= m;
                                v
                            })
                            .collect()
                    })
                    .collect();
                if let Some(f) = extend_cocycle(group, module, m, &gens, &values) {
                    out.insert(f);
                }
            }
            Ok(CochainFamily::Elements(out.into_iter().collect()))
        }
    }
}

/// Extends generator values along `F(xs) = F(x) + x·F(s)`; returns the
/// flattened cocycle if the extension is consistent and satisfies the law.
fn extend_cocycle(
    group: &FiniteGroup,
    module: &GroupModule,
    m: u64,
    gens: &[usize],
    values: &[Vec<u64>],
) -> Option<Vec<u64>> {
    let r = module.rank;
    let mut f: Vec<Option<Vec<u64>>> = vec![None; group.order()];
    f[0] = Some(vec![0; r]);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, val) in gens.iter().zip(values) {
            let y = group.mul(x, s);
            let xs = apply_mod(module.act(x), val, m);
            let fy: Vec<u64> = f[x].as_ref().unwrap().iter().zip(&xs).map(|(a, b)| (a + b) % m).collect();
            match &f[y] {
                None => {
                    f[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(old) if *old != fy => return None,
                _ => {}
            }
        }
    }
    let flat: Vec<u64> = f.into_iter().flat_map(Option::unwrap).collect();
    is_z1_mod(group, module, m, &flat).then_some(flat)
}

pub(crate) fn apply_mod(mat: &QMatrix, v: &[u64], m: u64) -> Vec<u64> {
    let mi = m as i128;
    (0..mat.rows())
        .map(|i| {
            let s: i128 = (0..mat.cols())
                .map(|j| {
                    let a = mat.get(i, j).to_integer().to_i128().expect("small entry");
                    a * v[j] as i128
                })
                .sum();
            s.rem_euclid(mi) as u64
        })
        .collect()
}

fn is_z1_mod(group: &FiniteGroup, module: &GroupModule, m: u64, f: &[u64]) -> bool {
    let r = module.rank;
    let at = |g: usize| &f[g * r..(g + 1) * r];
    group.elements().all(|g| {
        group.elements().all(|h| {
            let gh = apply_mod(module.act(g), at(h), m);
            let rhs: Vec<u64> = at(g).iter().zip(&gh).map(|(a, b)| (a + b) % m).collect();
            at(group.mul(g, h)) == rhs.as_slice()
        })
    })
}

/// `{ g ↦ g·ξ − ξ : ξ ∈ M }`, the image of `d^0`.
pub fn b1_coboundaries(
    group: &FiniteGroup,
    module: &GroupModule,
    limits: &Limits,
) -> Result<CochainFamily, AlgebraError> {
    let r = module.rank;
    match module.coeff {
        Coefficients::Rational => {
            let d0 = bar_differential(group, module, 0, limits)?;
            Ok(CochainFamily::Basis(d0.to_dense().column_space_basis()))
        }
        Coefficients::Mod(m) => {
            let total = (m as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
            SizeBound::check("B1 enumeration", total, limits.max_enum as u128)?;
            let mut out = BTreeSet::new();
            for code in 0..total as u64 {
                let xi: Vec<u64> = (0..r).map(|c| code / m.pow(c as u32) % m).collect();
                let f: Vec<u64> = group
                    .elements()
                    .flat_map(|g| {
                        let gx = apply_mod(module.act(g), &xi, m);
                        gx.into_iter().zip(&xi).map(|(a, b)| (a + m - b) % m).collect::<Vec<_>>()
                    })
                    .collect();
                out.insert(f);
            }
            Ok(CochainFamily::Elements(out.into_iter().collect()))
        }
    }
}

/// Converts a cocycle for `F(gh) = F(g) + g·F(h)` into one for the
/// right-handed law `z(gh) = z(h) + h⁻¹·z(g)` via `z(g) = g⁻¹·F(g)`.
/// Coboundaries `g·ξ − ξ` become `ξ − g⁻¹·ξ`.
pub fn to_right_cocycle(group: &FiniteGroup, module: &GroupModule, f: &[Q]) -> Vec<Q> {
    let r = module.rank;
    group
        .elements()
        .flat_map(|g| {
            let v = module.act(group.inv(g)).apply(&f[g * r..(g + 1) * r]);
            match module.coeff {
                Coefficients::Rational => v,
                Coefficients::Mod(m) => v.into_iter().map(|x| reduce_q(&x, m)).collect(),
            }
        })
        .collect()
}

fn reduce_q(x: &Q, m: u64) -> Q {
    let mi = num_bigint::BigInt::from(m);
    let mut v = x.to_integer() % &mi;
    if v < num_bigint::BigInt::zero() {
        v += mi;
    }
    Q::from_integer(v)
}
