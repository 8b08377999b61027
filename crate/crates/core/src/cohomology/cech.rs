//! Čech cochain complex of a nerve and its cohomology with coefficients
//! in a finitely generated abelian group.

use crate::error::CohomologyError;
use crate::groupoid::{Nerve, MAX_NERVE_DIM};
use crate::linalg::abelian::gcd;
use crate::linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use num_traits::ToPrimitive;

/// Free cochain groups `Z^{dims[k]}` with `diffs[k]: C^k → C^{k+1}`
/// stored as `dims[k+1] × dims[k]` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntComplex {
    pub dims: Vec<usize>,
    pub diffs: Vec<IntMatrix>,
}

impl IntComplex {
    /// Checks `d^{k+1}·d^k = 0` for all `k`.
    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// `d^k`, or a zero map when `k` is outside the stored range.
    pub fn diff(&self, k: isize) -> IntMatrix {
        let dim = |j: isize| if j < 0 { 0 } else { self.dims.get(j as usize).copied().unwrap_or(0) };
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            IntMatrix::zeros(dim(k + 1), dim(k))
        }
    }
}

/// `C^k` = integer functions on sorted k-simplices, with
/// `(df)(s_0..s_{k+1}) = Σ (−1)^i f(s_0..ŝ_i..s_{k+1})`.
pub fn cech_complex(nerve: &Nerve) -> IntComplex {
    let dims: Vec<usize> = (0..=MAX_NERVE_DIM).map(|k| nerve.dim(k).len()).collect();
    let mut diffs = Vec::new();
    for k in 0..MAX_NERVE_DIM {
        let mut d = IntMatrix::zeros(dims[k + 1], dims[k]);
        for (row, s) in nerve.dim(k + 1).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let col = nerve.index_of(&face).expect("nerve is closed under faces");
                d.add_to(row, col, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        diffs.push(d);
    }
    IntComplex { dims, diffs }
}

/// Invariant factors (including 1s) and rank of an integer matrix.
fn factors(m: &IntMatrix) -> Vec<u64> {
    smith_normal_form(m).invariant_factors().iter().map(|f| f.to_u64().expect("invariant factor fits in u64")).collect()
}

/// `H^k(C ⊗ A)` for `A = ⊕ Z/a` (`a = 0` meaning `Z`), by the universal
/// coefficient formula applied to the Smith forms of `d^{k-1}` and `d^k`.
pub fn complex_cohomology(complex: &IntComplex, coefficients: &[u64], k: usize) -> AbelianGroup {
    let prev = factors(&complex.diff(k as isize - 1));
    let next = factors(&complex.diff(k as isize));
    let n = complex.dims.get(k).copied().unwrap_or(0);
    let free = n - prev.len() - next.len();
    let mut orders = Vec::new();
    for &a in coefficients {
        orders.extend(std::iter::repeat_n(a, free));
        for &e in &prev {
            // H^k torsion: Z/e ⊗ A
            orders.push(if a == 0 { e } else { gcd(e, a) });
        }
        if a != 0 {
            // Tor(H^{k+1}, A)
            orders.extend(next.iter().map(|&f| gcd(f, a)));
        }
    }
    AbelianGroup::from_cyclic(&orders)
}

/// `H^k(nerve; A)` for `k ≤ 3`.
pub fn cech_cohomology(nerve: &Nerve, coefficients: &[u64], k: usize) -> Result<AbelianGroup, CohomologyError> {
    if k > 3 {
        return Err(CohomologyError::Degree(k));
    }
    Ok(complex_cohomology(&cech_complex(nerve), coefficients, k))
}
