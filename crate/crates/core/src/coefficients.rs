//! Coefficient rings for cohomology computations.

use std::fmt;

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{subquotient_mod, AbelianGroup, QMatrix, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Rational,
    Mod(u64),
}

impl Coefficients {
    /// Matrix equality in the coefficient ring.
    pub fn matrices_equal(&self, a: &QMatrix, b: &QMatrix) -> bool {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return false;
        }
        match *self {
            Coefficients::Rational => a == b,
            Coefficients::Mod(m) => {
                let m = BigInt::from(m);
                (0..a.rows()).all(|i| {
                    (0..a.cols()).all(|j| {
                        let d = a.get(i, j) - b.get(i, j);
                        d.is_integer() && (d.to_integer() % &m).is_zero()
                    })
                })
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "Q"),
            Coefficients::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// A cohomology group: a dimension over ℚ, or a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CohomologyValue {
    Rational { dim: usize },
    Finite(AbelianGroup),
}

impl CohomologyValue {
    pub fn is_zero(&self) -> bool {
        match self {
            CohomologyValue::Rational { dim } => *dim == 0,
            CohomologyValue::Finite(a) => a.is_trivial(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        match (self, other) {
            (CohomologyValue::Rational { dim: a }, CohomologyValue::Rational { dim: b }) => {
                CohomologyValue::Rational { dim: a + b }
            }
            (CohomologyValue::Finite(a), CohomologyValue::Finite(b)) => CohomologyValue::Finite(a.direct_sum(b)),
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn zero(coeff: Coefficients) -> Self {
        match coeff {
            Coefficients::Rational => CohomologyValue::Rational { dim: 0 },
            Coefficients::Mod(_) => CohomologyValue::Finite(AbelianGroup::trivial()),
        }
    }
}

impl fmt::Display for CohomologyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyValue::Rational { dim } => write!(f, "Q^{dim}"),
            CohomologyValue::Finite(a) => write!(f, "{a}"),
        }
    }
}

/// `ker(next) / im(prev)` on a space of dimension `n`; `prev: C^{k-1} → C^k`
/// and `next: C^k → C^{k+1}`. Mod-m entries must be integral.
pub fn subquotient(prev: &SparseMatrix, next: &SparseMatrix, n: usize, coeff: Coefficients) -> CohomologyValue {
    match coeff {
        Coefficients::Rational => CohomologyValue::Rational { dim: n - next.rank() - prev.rank() },
        Coefficients::Mod(m) => {
            let a = to_i64(next);
            let b = to_i64(prev);
            CohomologyValue::Finite(subquotient_mod(&a, &b, n, m))
        }
    }
}

fn to_i64(mat: &SparseMatrix) -> Vec<Vec<i64>> {
    use num_traits::ToPrimitive;
    (0..mat.rows())
        .map(|i| {
            let mut row = vec![0i64; mat.cols()];
            for (j, v) in mat.row_entries(i) {
                assert!(v.is_integer(), "mod-m differential has a non-integral entry");
                row[*j] = v.to_integer().to_i64().expect("entry fits in i64");
            }
            row
        })
        .collect()
}
