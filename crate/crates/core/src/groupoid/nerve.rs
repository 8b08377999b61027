//! Composable tuples `X_n` of a groupoid and their face maps.

use super::groupoid::FiniteGroupoid;
use crate::error::GroupoidError;

pub const MAX_TUPLE_DEGREE: usize = 4;

/// `X_n`: composable n-tuples of arrows in lexicographic order. For
/// `n = 0` each tuple is a single object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveLevel {
    pub n: usize,
    pub tuples: Vec<Vec<usize>>,
    /// `faces[i][t]` is the index of `ε_i(tuples[t])` in `X_{n-1}`.
    pub faces: Vec<Vec<usize>>,
}

impl NerveLevel {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).ok()
    }

    /// Object at which left cochains are anchored: `src(x_1)`.
    pub fn left_anchor(&self, g: &FiniteGroupoid, t: usize) -> usize {
        let tuple = &self.tuples[t];
        if self.n == 0 {
            tuple[0]
        } else {
            g.src(tuple[0])
        }
    }

    /// Object at which right cochains are anchored: `tgt(x_n)`.
    pub fn right_anchor(&self, g: &FiniteGroupoid, t: usize) -> usize {
        let tuple = &self.tuples[t];
        if self.n == 0 {
            tuple[0]
        } else {
            g.tgt(tuple[self.n - 1])
        }
    }
}

/// Applies `ε_i` to a composable n-tuple (`n ≥ 1`). For `n = 1` the result
/// is an object: `ε_0(x) = tgt(x)`, `ε_1(x) = src(x)`.
pub fn face(g: &FiniteGroupoid, tuple: &[usize], i: usize) -> Vec<usize> {
    let n = tuple.len();
    assert!(i <= n && n >= 1);
    if n == 1 {
        return vec![if i == 0 { g.tgt(tuple[0]) } else { g.src(tuple[0]) }];
    }
    if i == 0 {
        tuple[1..].to_vec()
    } else if i == n {
        tuple[..n - 1].to_vec()
    } else {
        let mut out = tuple[..i - 1].to_vec();
        out.push(g.mul(tuple[i - 1], tuple[i]));
        out.extend_from_slice(&tuple[i + 1..]);
        out
    }
}

/// Enumerates `X_n` for `n ≤ 4` with all face maps into `X_{n-1}`.
pub fn nerve_tuples(g: &FiniteGroupoid, n: usize) -> Result<NerveLevel, GroupoidError> {
    if n > MAX_TUPLE_DEGREE {
        return Err(GroupoidError::Degree(n));
    }
    let tuples = composable(g, n);
    let faces = if n == 0 {
        Vec::new()
    } else {
        let lower = composable(g, n - 1);
        (0..=n)
            .map(|i| {
                tuples
                    .iter()
                    .map(|t| {
                        let f = face(g, t, i);
                        lower.binary_search(&f).expect("face lands in the lower level")
                    })
                    .collect()
            })
            .collect()
    };
    Ok(NerveLevel { n, tuples, faces })
}

fn composable(g: &FiniteGroupoid, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return (0..g.n_objects()).map(|o| vec![o]).collect();
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    for a in 0..g.n_arrows() {
        stack.push(a);
        extend(g, n, &mut stack, &mut out);
        stack.pop();
    }
    out
}

fn extend(g: &FiniteGroupoid, n: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if stack.len() == n {
        out.push(stack.clone());
        return;
    }
    let t = g.tgt(*stack.last().unwrap());
    for &b in g.out_arrows(t) {
        stack.push(b);
        extend(g, n, stack, out);
        stack.pop();
    }
}

/// Checks `ε_i ∘ ε_j = ε_{j-1} ∘ ε_i` for all `i < j` on `upper = X_n`,
/// `lower = X_{n-1}`; returns the first failing `(i, j, tuple)`.
pub fn check_simplicial_identities(upper: &NerveLevel, lower: &NerveLevel) -> Result<(), (usize, usize, usize)> {
    let n = upper.n;
    assert_eq!(lower.n + 1, n);
    if n < 2 {
        return Ok(());
    }
    for j in 0..=n {
        for i in 0..j {
            for t in 0..upper.len() {
                if lower.faces[i][upper.faces[j][t]] != lower.faces[j - 1][upper.faces[i][t]] {
                    return Err((i, j, t));
                }
            }
        }
    }
    Ok(())
}
