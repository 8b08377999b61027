//! Subquotients `ker A / im B` of free `Z/m`-modules.
//!
//! `m` is split into prime powers; over each local ring `Z/p^e` a Smith
//! form is computed with reduced entries, so nothing grows.

use super::abelian::{factorize, AbelianGroup};

/// `ker(A) / im(B)` over `Z/m`, where `A` is `k × n`, `B` is `n × l` and
/// `A·B ≡ 0 (mod m)`. Entries may be any integers.
///
/// Panics if `A·B` is not zero modulo `m` (the caller assembles a complex).
pub fn subquotient_mod(a: &[Vec<i64>], b: &[Vec<i64>], n: usize, m: u64) -> AbelianGroup {
    assert!(m >= 2, "modulus must be at least 2");
    let mut orders = Vec::new();
    for (p, e) in factorize(m) {
        orders.extend(LocalRing::new(p, e).subquotient(a, b, n));
    }
    AbelianGroup::from_cyclic(&orders)
}

/// Same as [`subquotient_mod`] but only the size of `ker A` over `Z/m`.
pub fn kernel_mod(a: &[Vec<i64>], n: usize, m: u64) -> AbelianGroup {
    subquotient_mod(a, &vec![Vec::new(); n], n, m)
}

#[derive(Clone, Copy, Debug)]
struct LocalRing {
    p: u64,
    e: u32,
    q: u64,
}

impl LocalRing {
    fn new(p: u64, e: u32) -> Self {
        Self { p, e, q: p.pow(e) }
    }

    fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    /// p-adic valuation of a residue, `e` for zero.
    fn valuation(&self, mut x: u64) -> u32 {
        if x == 0 {
            return self.e;
        }
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn unit_inverse(&self, u: u64) -> u64 {
        let (mut old_r, mut r) = (u as i128, self.q as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let quot = old_r / r;
            (old_r, r) = (r, old_r - quot * r);
            (old_s, s) = (s, old_s - quot * s);
        }
        assert_eq!(old_r, 1, "not a unit");
        old_s.rem_euclid(self.q as i128) as u64
    }

    /// Diagonalizes `a` in place. Inverse column operations are applied
    /// as row operations to `y`, so afterwards `y = C⁻¹·y_original` where
    /// `a_new = R·a·C`. Returns the pivot valuations.
    fn diagonalize(&self, a: &mut [Vec<u64>], cols: usize, y: &mut [Vec<u64>]) -> Vec<u32> {
        let rows = a.len();
        let mut vals = Vec::new();
        for t in 0..rows.min(cols) {
            let mut best: Option<(usize, usize, u32)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    let v = self.valuation(x);
                    if v < self.e && best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
            let Some((pi, pj, v)) = best else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                y.swap(t, pj);
            }
            let pv = self.p.pow(v);
            let unit = self.unit_inverse(a[t][t] / pv);
            for x in a[t].iter_mut() {
                *x = self.mul(*x, unit);
            }
            debug_assert_eq!(a[t][t], pv);
            let pivot_row = a[t].clone();
            for row in a.iter_mut().skip(t + 1) {
                if row[t] == 0 {
                    continue;
                }
                let c = row[t] / pv;
                for (x, &pr) in row.iter_mut().zip(&pivot_row) {
                    *x = self.sub(*x, self.mul(c, pr));
                }
            }
            for j in t + 1..cols {
                let atj = a[t][j];
                if atj == 0 {
                    continue;
                }
                let c = atj / pv;
                for row in a.iter_mut() {
                    row[j] = self.sub(row[j], self.mul(c, row[t]));
                }
                let src = y[j].clone();
                for (x, s) in y[t].iter_mut().zip(src) {
                    *x = self.add(*x, self.mul(c, s));
                }
            }
            vals.push(v);
        }
        vals
    }

    /// Cyclic orders (powers of p, possibly 1) of `ker A / im B` over `Z/p^e`.
    fn subquotient(&self, a: &[Vec<i64>], b: &[Vec<i64>], n: usize) -> Vec<u64> {
        let mut am: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| self.reduce(x)).collect()).collect();
        let l = b.first().map_or(0, Vec::len);
        let mut y: Vec<Vec<u64>> = b.iter().map(|r| r.iter().map(|&x| self.reduce(x)).collect()).collect();
        assert_eq!(y.len(), n, "B must have n rows");
        let vals = self.diagonalize(&mut am, n, &mut y);

        // kernel coordinate i is cyclic of order p^w_i, generated by p^(e-w_i) e_i
        let w: Vec<u32> = (0..n).map(|i| vals.get(i).copied().unwrap_or(self.e)).collect();
        let mut rel = vec![vec![0u64; n + l]; n];
        for i in 0..n {
            rel[i][i] = self.p.pow(w[i]) % self.q;
            let shift = self.p.pow(self.e - w[i]);
            for c in 0..l {
                let yc = y[i][c];
                assert!(yc % shift == 0, "image is not contained in the kernel (A·B ≠ 0 mod m)");
                rel[i][n + c] = yc / shift;
            }
        }
        let mut dummy = vec![Vec::new(); n + l];
        let rvals = self.diagonalize(&mut rel, n + l, &mut dummy);
        (0..n).map(|i| self.p.pow(rvals.get(i).copied().unwrap_or(self.e))).collect()
    }
}
