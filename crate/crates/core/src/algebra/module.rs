use super::group::FiniteGroup;
use crate::coefficients::Coefficients;
use crate::error::AlgebraError;
use crate::linalg::{q, QMatrix};

/// A free module of finite rank over ℚ or `Z/m` with a left `G`-action.
/// For `Z/m` the matrices have integer entries, read modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModule {
    pub rank: usize,
    pub coeff: Coefficients,
    pub action: Vec<QMatrix>,
}

impl GroupModule {
    pub fn new(
        group: &FiniteGroup,
        rank: usize,
        coeff: Coefficients,
        action: Vec<QMatrix>,
    ) -> Result<Self, AlgebraError> {
        let module = Self { rank, coeff, action };
        module.validate(group)?;
        Ok(module)
    }

    pub fn trivial(group: &FiniteGroup, rank: usize, coeff: Coefficients) -> Self {
        Self { rank, coeff, action: vec![QMatrix::identity(rank); group.order()] }
    }

    /// Rank one, `g` acting by the sign `±1`.
    pub fn from_sign(sign: &[bool], coeff: Coefficients) -> Self {
        let action = sign.iter().map(|&s| QMatrix::scalar(q(if s { -1 } else { 1 }))).collect();
        Self { rank: 1, coeff, action }
    }

    /// Rank one, `g` acting by multiplication with `scalars[g]`.
    pub fn from_scalars(group: &FiniteGroup, scalars: &[i64], coeff: Coefficients) -> Result<Self, AlgebraError> {
        let action = scalars.iter().map(|&s| QMatrix::scalar(q(s))).collect();
        Self::new(group, 1, coeff, action)
    }

    /// The regular permutation module `ℚ[G]`, `g·e_h = e_{gh}`.
    pub fn regular(group: &FiniteGroup, coeff: Coefficients) -> Self {
        let n = group.order();
        let action = group
            .elements()
            .map(|g| {
                let mut m = QMatrix::zeros(n, n);
                for h in group.elements() {
                    m.set(group.mul(g, h), h, q(1));
                }
                m
            })
            .collect();
        Self { rank: n, coeff, action }
    }

    pub fn act(&self, g: usize) -> &QMatrix {
        &self.action[g]
    }

    pub fn validate(&self, group: &FiniteGroup) -> Result<(), AlgebraError> {
        let bad = |msg: String| Err(AlgebraError::InvalidModule(msg));
        if let Coefficients::Mod(m) = self.coeff {
            if m < 2 {
                return bad(format!("modulus {m} is below 2"));
            }
        }
        if self.action.len() != group.order() {
            return bad(format!("{} matrices for a group of order {}", self.action.len(), group.order()));
        }
        for (g, mat) in self.action.iter().enumerate() {
            if mat.rows() != self.rank || mat.cols() != self.rank {
                return bad(format!("matrix of element {g} is not {0}×{0}", self.rank));
            }
            if matches!(self.coeff, Coefficients::Mod(_)) && !mat.is_integral() {
                return bad(format!("matrix of element {g} is not integral"));
            }
        }
        if !self.equal(self.act(0), &QMatrix::identity(self.rank)) {
            return bad("identity does not act trivially".into());
        }
        for g in group.elements() {
            for h in group.elements() {
                if !self.equal(&self.act(g).mul(self.act(h)), self.act(group.mul(g, h))) {
                    return bad(format!("action({g})·action({h}) ≠ action({g}·{h})"));
                }
            }
        }
        Ok(())
    }

    /// Matrix equality in the coefficient ring.
    pub fn equal(&self, a: &QMatrix, b: &QMatrix) -> bool {
        self.coeff.matrices_equal(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_and_regular_modules_validate() {
        let s3 = FiniteGroup::symmetric3();
        let sign = &s3.sign_characters()[1];
        GroupModule::from_sign(sign, Coefficients::Rational).validate(&s3).unwrap();
        GroupModule::regular(&s3, Coefficients::Rational).validate(&s3).unwrap();
        GroupModule::regular(&s3, Coefficients::Mod(3)).validate(&s3).unwrap();
    }

    #[test]
    fn scalar_actions() {
        let z3 = FiniteGroup::cyclic(3);
        assert!(GroupModule::from_scalars(&z3, &[1, 2, 4], Coefficients::Mod(7)).is_ok());
        // 2 has order 2 modulo 3
        assert!(GroupModule::from_scalars(&z3, &[1, 2, 4], Coefficients::Mod(3)).is_err());
        assert!(GroupModule::from_scalars(&z3, &[1, 2, 4], Coefficients::Rational).is_err());
        assert!(GroupModule::from_scalars(&z3, &[1, 2], Coefficients::Mod(7)).is_err());
    }
}
