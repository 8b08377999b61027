//! Finite groups given by a multiplication table, with index 0 as the unit.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::linalg::AbelianGroup;

/// One failed group axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupViolation {
    NotSquare,
    OutOfRange { row: usize, col: usize },
    BadIdentity,
    NoInverse(usize),
    NonAssociative(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    name: Option<String>,
}

impl FiniteGroup {
    /// Checks every group axiom exhaustively and reports all that fail.
    pub fn validate(table: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let n = table.len();
        let mut violations = Vec::new();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::InvalidGroup(vec![GroupViolation::NotSquare]));
        }
        for (i, row) in table.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x >= n) {
                violations.push(GroupViolation::OutOfRange { row: i, col: j });
            }
        }
        if !violations.is_empty() {
            return Err(AlgebraError::InvalidGroup(violations));
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        if (0..n).any(|a| mul(0, a) != a || mul(a, 0) != a) {
            violations.push(GroupViolation::BadIdentity);
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| mul(a, b) == 0 && mul(b, a) == 0) {
                Some(b) => inverses[a] = b,
                None => violations.push(GroupViolation::NoInverse(a)),
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        violations.push(GroupViolation::NonAssociative(a, b, c));
                        break 'assoc;
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(Self { order: n, table: flat, inverses, name: None })
        } else {
            Err(AlgebraError::InvalidGroup(violations))
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::validate(&table).expect("cyclic group").with_name(format!("Z{n}"))
    }

    /// Group generated by permutations (composition `a·b = a∘b`, i.e. `b`
    /// first). Elements are indexed in lexicographic order of their
    /// permutation arrays, so the identity is 0.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Self {
        let degree = generators.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = g.iter().map(|&x| p[x]).collect();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                        index[&c]
                    })
                    .collect()
            })
            .collect();
        Self::validate(&table).expect("permutation group")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).with_name("S3")
    }

    /// Dihedral group of order `2n` acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&[rot, refl]).with_name(format!("D{n}"))
    }

    /// Quaternion group; elements `1, -1, i, -i, j, -j, k, -k` in that order.
    pub fn quaternion() -> Self {
        // unit index u in {1,i,j,k} = {0,1,2,3} with sign bit
        let decode = |x: usize| (x / 2, x % 2 == 1);
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, u) | (u, 0) => (u, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let table: Vec<Vec<usize>> = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let ((ua, sa), (ub, sb)) = (decode(a), decode(b));
                        let (u, s) = unit_mul(ua, ub);
                        2 * u + usize::from(s ^ sa ^ sb)
                    })
                    .collect()
            })
            .collect();
        Self::validate(&table).expect("quaternion group").with_name("Q8")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (n, m) = (a.order, b.order);
        let table: Vec<Vec<usize>> =
            (0..n * m).map(|x| (0..n * m).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect()).collect();
        Self::validate(&table).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `{ z : zg = gz for all g }`, ascending.
    pub fn center(&self) -> Vec<usize> {
        self.elements().filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// Inner automorphism `a ↦ g a g⁻¹`.
    pub fn conjugation(&self, g: usize) -> Automorphism {
        let gi = self.inv(g);
        Automorphism { perm: self.elements().map(|a| self.mul(self.mul(g, a), gi)).collect() }
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.elements().map(|g| self.conjugation(g).apply(a)).collect();
        set.into_iter().collect()
    }

    /// Subgroup generated by `gens`, ascending.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: repeatedly add the smallest element outside
    /// the current subgroup.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = self.generated_subgroup(&gens);
        while sub.len() < self.order {
            let next = self.elements().find(|x| sub.binary_search(x).is_err()).expect("missing element");
            gens.push(next);
            sub = self.generated_subgroup(&gens);
        }
        gens
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        set.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// Structure of an abelian subgroup, read off from how many elements
    /// are killed by each prime power.
    pub fn abelian_invariants(&self, subgroup: &[usize]) -> AbelianGroup {
        let n = subgroup.len() as u64;
        let mut cyclic = Vec::new();
        for (p, e) in crate::linalg::abelian::factorize(n) {
            // s_k = log_p |{x : x^(p^k) = 1}|
            let mut s = vec![0u32];
            for k in 1..=e {
                let pk = p.pow(k) as usize;
                let count = subgroup.iter().filter(|&&x| self.power(x, pk) == 0).count() as u64;
                s.push(count.ilog(p));
            }
            // number of factors of exponent >= k is s_k - s_(k-1)
            for k in 1..=e as usize {
                let at_least_k = s[k] - s[k - 1];
                let at_least_next = if k < e as usize { s[k + 1] - s[k] } else { 0 };
                for _ in 0..(at_least_k - at_least_next) {
                    cyclic.push(p.pow(k as u32));
                }
            }
        }
        AbelianGroup::from_cyclic(&cyclic)
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// All homomorphisms to `{±1}`, as sign vectors (`true` = -1). The
    /// trivial character comes first.
    pub fn sign_characters(&self) -> Vec<Vec<bool>> {
        let gens = self.generating_set();
        let mut out = Vec::new();
        for mask in 0u32..(1 << gens.len()) {
            let mut val: Vec<Option<bool>> = vec![None; self.order];
            val[0] = Some(false);
            let mut queue = VecDeque::from([0usize]);
            let mut ok = true;
            while let Some(x) = queue.pop_front() {
                for (k, &s) in gens.iter().enumerate() {
                    let y = self.mul(x, s);
                    let v = val[x].unwrap() ^ (mask >> k & 1 == 1);
                    match val[y] {
                        None => {
                            val[y] = Some(v);
                            queue.push_back(y);
                        }
                        Some(w) if w != v => ok = false,
                        _ => {}
                    }
                }
            }
            if ok {
                out.push(val.into_iter().map(Option::unwrap).collect());
            }
        }
        out
    }
}

/// A permutation of group elements; composed as functions
/// (`f.compose(g)` applies `g` first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Automorphism {
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.perm[a]
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&x| self.perm[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (a, &b) in self.perm.iter().enumerate() {
            perm[b] = a;
        }
        Automorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_automorphism_of(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        if self.perm.len() != n || self.perm[0] != 0 {
            return false;
        }
        let mut hit = vec![false; n];
        for &x in &self.perm {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        g.elements().all(|a| g.elements().all(|b| self.apply(g.mul(a, b)) == g.mul(self.apply(a), self.apply(b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_validates() {
        let g = FiniteGroup::validate(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn constant_row_is_rejected() {
        let err = FiniteGroup::validate(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        let AlgebraError::InvalidGroup(v) = err else { panic!() };
        assert!(!v.contains(&GroupViolation::BadIdentity));
        assert!(v.contains(&GroupViolation::NoInverse(1)));
    }

    #[test]
    fn non_square_and_range() {
        assert!(FiniteGroup::validate(&[vec![0, 1]]).is_err());
        let err = FiniteGroup::validate(&[vec![0, 2], vec![1, 0]]).unwrap_err();
        assert_eq!(err, AlgebraError::InvalidGroup(vec![GroupViolation::OutOfRange { row: 0, col: 1 }]));
    }

    #[test]
    fn s3_from_composition_table() {
        // all six permutations of three letters, composed directly
        let perms: Vec<Vec<usize>> =
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]];
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        let g = FiniteGroup::validate(&table).unwrap();
        assert_eq!(g, FiniteGroup::symmetric3().with_name("S3").clone_without_name());
        assert!(!g.is_abelian());
    }

    impl FiniteGroup {
        fn clone_without_name(&self) -> Self {
            Self { name: None, ..self.clone() }
        }
    }

    #[test]
    fn centers() {
        assert_eq!(FiniteGroup::cyclic(4).center(), vec![0, 1, 2, 3]);
        assert_eq!(FiniteGroup::symmetric3().center(), vec![0]);
        assert_eq!(FiniteGroup::quaternion().center(), vec![0, 1]);
        assert_eq!(FiniteGroup::dihedral(4).center().len(), 2);
    }

    #[test]
    fn conjugation_laws() {
        let g = FiniteGroup::symmetric3();
        for a in g.elements() {
            for b in g.elements() {
                let lhs = g.conjugation(a).compose(&g.conjugation(b));
                assert_eq!(lhs, g.conjugation(g.mul(a, b)));
            }
            assert!(g.conjugation(a).is_automorphism_of(&g));
        }
        let z = FiniteGroup::cyclic(5);
        assert!(z.elements().all(|a| z.conjugation(a).is_identity()));
        // (0 1) is element 2 in lexicographic order; it swaps the two 3-cycles
        let t = g.conjugation(2);
        assert_eq!(t.perm, vec![0, 5, 2, 4, 3, 1]);
    }

    #[test]
    fn abelian_invariants_of_small_groups() {
        let k = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(k.abelian_invariants(&k.elements().collect::<Vec<_>>()).torsion, vec![2, 2]);
        let z = FiniteGroup::cyclic(12);
        assert_eq!(z.abelian_invariants(&z.elements().collect::<Vec<_>>()).torsion, vec![12]);
        let q = FiniteGroup::quaternion();
        assert_eq!(q.abelian_invariants(&q.center()).torsion, vec![2]);
    }

    #[test]
    fn sign_characters() {
        assert_eq!(FiniteGroup::cyclic(2).sign_characters().len(), 2);
        assert_eq!(FiniteGroup::cyclic(3).sign_characters().len(), 1);
        let s3 = FiniteGroup::symmetric3().sign_characters();
        assert_eq!(s3.len(), 2);
        assert_eq!(s3[1].iter().filter(|&&s| s).count(), 3);
    }
}
