//! Independent brute-force oracles. None of these call into the library
//! beyond reading raw data.

use std::collections::{BTreeSet, HashMap, HashSet};

use gerbe_core::algebra::FiniteGroup;
use gerbe_core::extension::NonAbelianCocycle;
use gerbe_core::groupoid::{FiniteGroupoid, Nerve};

/// Whether the twisted product `(x_ij, a)(x_jk, b) = (x_ik, g_ijk·λ_jk⁻¹(a)·b)`
/// is associative with units `(x_ii, 1)`. Right multiplication by the third
/// factor cancels, so it is fixed to 1.
pub fn twisted_product_is_groupoid(d: &NonAbelianCocycle) -> bool {
    let grp = &d.group;
    let n = grp.order();
    let cover = &d.cech.cover;
    let mut inv: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
    for &(p, i, j) in &d.cech.arrows {
        let f = &d.lambda(p, i, j).perm;
        let mut r = vec![0; n];
        for (x, &y) in f.iter().enumerate() {
            r[y] = x;
        }
        inv.insert((p, i, j), r);
    }
    for p in 0..cover.points {
        let here = cover.sets_at(p);
        let li = |i: usize, j: usize, x: usize| inv[&(p, i, j)][x];
        for &i in &here {
            for &j in &here {
                for a in 0..n {
                    let left = grp.product(&[d.g(p, i, i, j), li(i, j, 0), a]);
                    let right = grp.mul(d.g(p, i, j, j), li(j, j, a));
                    if left != a || right != a {
                        return false;
                    }
                }
            }
        }
        for &i in &here {
            for &j in &here {
                for &k in &here {
                    for &l in &here {
                        for a in 0..n {
                            for b in 0..n {
                                let ab = grp.product(&[d.g(p, i, j, k), li(j, k, a), b]);
                                let lhs = grp.mul(d.g(p, i, k, l), li(k, l, ab));
                                let rhs = grp.product(&[d.g(p, i, j, l), li(j, l, a), d.g(p, j, k, l), li(k, l, b)]);
                                if lhs != rhs {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

fn next_perm(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every bijection of the elements that respects the table.
pub fn automorphisms(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = BTreeSet::new();
    loop {
        let hom = (0..n).all(|a| (0..n).all(|b| perm[g.mul(a, b)] == g.mul(perm[a], perm[b])));
        if hom {
            out.insert(perm.clone());
        }
        if !next_perm(&mut perm) {
            return out;
        }
    }
}

pub fn inner_automorphisms(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    (0..n).map(|x| (0..n).map(|a| g.product(&[x, a, g.inv(x)])).collect()).collect()
}

pub fn center(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    (0..n).filter(|&z| (0..n).all(|a| g.mul(z, a) == g.mul(a, z))).collect()
}

/// Calls `f` on every function `0..len → values`.
pub fn for_each_function(values: &[usize], len: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0; len];
    let mut cur: Vec<usize> = vec![values[0]; len];
    loop {
        f(&cur);
        let mut k = 0;
        loop {
            if k == len {
                return;
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                cur[k] = values[idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = values[0];
            k += 1;
        }
    }
}

/// `|H²(nerve; Z(G))|` as |central 2-cocycles| / |coboundaries of
/// central 1-cochains| on sorted simplices.
pub fn central_h2_order(nerve: &Nerve, g: &FiniteGroup) -> u64 {
    let z = center(g);
    let edges = nerve.dim(1);
    let tris = nerve.dim(2);
    let tets = nerve.dim(3);
    let tri = |s: &[usize]| tris.iter().position(|t| t == s).unwrap();
    let edge = |a: usize, b: usize| edges.iter().position(|e| e[0] == a && e[1] == b).unwrap();
    let mut cocycles = 0u64;
    for_each_function(&z, tris.len(), |f| {
        let ok = tets.iter().all(|s| {
            let v = |a, b, c| f[tri(&[s[a], s[b], s[c]])];
            g.mul(v(0, 1, 3), v(1, 2, 3)) == g.mul(v(0, 2, 3), v(0, 1, 2))
        });
        if ok {
            cocycles += 1;
        }
    });
    let mut boundaries = HashSet::new();
    for_each_function(&z, edges.len(), |h| {
        let b: Vec<usize> = tris
            .iter()
            .map(|t| g.product(&[h[edge(t[1], t[2])], g.inv(h[edge(t[0], t[2])]), h[edge(t[0], t[1])]]))
            .collect();
        boundaries.insert(b);
    });
    cocycles / boundaries.len() as u64
}

/// Whether `a·b⁻¹` is a central coboundary on the sorted triangles.
pub fn central_cohomologous(nerve: &Nerve, g: &FiniteGroup, a: &[usize], b: &[usize]) -> bool {
    let z = center(g);
    let edges = nerve.dim(1);
    let edge = |x: usize, y: usize| edges.iter().position(|e| e[0] == x && e[1] == y).unwrap();
    let diff: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| g.mul(x, g.inv(y))).collect();
    let mut found = false;
    for_each_function(&z, edges.len(), |h| {
        if found {
            return;
        }
        found = nerve
            .dim(2)
            .iter()
            .zip(&diff)
            .all(|(t, &v)| g.product(&[h[edge(t[1], t[2])], g.inv(h[edge(t[0], t[2])]), h[edge(t[0], t[1])]]) == v);
    });
    found
}

/// `|H^k(K; Z/m)[d]|`: classes killed by `d`, from all `Z/m`-cochains on
/// the listed simplices.
pub fn cech_torsion_count(simplices: &[Vec<Vec<usize>>], m: usize, k: usize, d: usize) -> u64 {
    let level = |j: usize| simplices.get(j).cloned().unwrap_or_default();
    let coboundary = |lower: &[Vec<usize>], upper: &[Vec<usize>], f: &[usize]| -> Vec<usize> {
        upper
            .iter()
            .map(|s| {
                let mut acc = 0i64;
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let pos = lower.iter().position(|t| *t == face).expect("closed under faces");
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    acc += sign * f[pos] as i64;
                }
                acc.rem_euclid(m as i64) as usize
            })
            .collect()
    };
    let values: Vec<usize> = (0..m).collect();
    let here = level(k);
    let up = level(k + 1);
    let mut boundaries: HashSet<Vec<usize>> = HashSet::new();
    if k == 0 {
        boundaries.insert(vec![0; here.len()]);
    } else {
        let down = level(k - 1);
        for_each_function(&values, down.len(), |h| {
            boundaries.insert(coboundary(&down, &here, h));
        });
    }
    let mut killed = 0u64;
    for_each_function(&values, here.len(), |f| {
        if coboundary(&here, &up, f).iter().all(|&x| x == 0) {
            let df: Vec<usize> = f.iter().map(|&x| x * d % m).collect();
            if boundaries.contains(&df) {
                killed += 1;
            }
        }
    });
    killed / boundaries.len() as u64
}

/// `ε_i` on a composable tuple, composing left to right; on a single
/// arrow the faces are its target and source.
pub fn face(g: &FiniteGroupoid, t: &[usize], i: usize) -> Vec<usize> {
    let n = t.len();
    if n == 1 {
        return vec![if i == 0 { g.tgt(t[0]) } else { g.src(t[0]) }];
    }
    let mut out = Vec::with_capacity(n - 1);
    for (k, &x) in t.iter().enumerate() {
        if (i == 0 && k == 0) || (i == n && k == n - 1) {
            continue;
        }
        if i > 0 && i < n && k == i {
            let last = out.pop().unwrap();
            out.push(g.compose(last, x).expect("composable"));
            continue;
        }
        out.push(x);
    }
    out
}
