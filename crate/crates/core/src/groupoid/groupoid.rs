use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteGroup;
use crate::error::GroupoidError;

/// First failed groupoid axiom found by [`FiniteGroupoid::new`], in a fixed
/// check order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupoidViolation {
    ShapeMismatch(String),
    ObjectOutOfRange { arrow: usize },
    BadUnit { object: usize },
    CompositeOutOfRange { first: usize, second: usize },
    WrongEndpoints { first: usize, second: usize, composite: usize },
    UnitNotNeutral { object: usize, arrow: usize },
    NonAssociative(usize, usize, usize),
    NoInverse(usize),
}

/// A finite groupoid. Composition is written left to right: `a·b` is
/// defined iff `tgt(a) = src(b)`, and then runs from `src(a)` to `tgt(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    unit: Vec<usize>,
    inv: Vec<usize>,
    out_arrows: Vec<Vec<usize>>,
    pos_in_out: Vec<usize>,
    comp_offset: Vec<usize>,
    comp: Vec<usize>,
}

impl FiniteGroupoid {
    /// Builds a groupoid and verifies every axiom exhaustively. `compose`
    /// is only called on composable pairs. Inverses are found by search.
    pub fn new(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        unit: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupoidError> {
        let fail = |v| Err(GroupoidError::Invalid(v));
        let n_arrows = src.len();
        if tgt.len() != n_arrows || unit.len() != n_objects {
            return fail(GroupoidViolation::ShapeMismatch(format!(
                "{} sources, {} targets, {} units for {} objects",
                n_arrows,
                tgt.len(),
                unit.len(),
                n_objects
            )));
        }
        if let Some(a) = (0..n_arrows).find(|&a| src[a] >= n_objects || tgt[a] >= n_objects) {
            return fail(GroupoidViolation::ObjectOutOfRange { arrow: a });
        }
        if let Some(o) = (0..n_objects).find(|&o| unit[o] >= n_arrows || src[unit[o]] != o || tgt[unit[o]] != o) {
            return fail(GroupoidViolation::BadUnit { object: o });
        }
        let mut out_arrows = vec![Vec::new(); n_objects];
        let mut pos_in_out = vec![0; n_arrows];
        for a in 0..n_arrows {
            pos_in_out[a] = out_arrows[src[a]].len();
            out_arrows[src[a]].push(a);
        }
        let mut comp_offset = Vec::with_capacity(n_arrows);
        let mut comp = Vec::new();
        for a in 0..n_arrows {
            comp_offset.push(comp.len());
            for &b in &out_arrows[tgt[a]] {
                let c = compose(a, b);
                if c >= n_arrows {
                    return fail(GroupoidViolation::CompositeOutOfRange { first: a, second: b });
                }
                if src[c] != src[a] || tgt[c] != tgt[b] {
                    return fail(GroupoidViolation::WrongEndpoints { first: a, second: b, composite: c });
                }
                comp.push(c);
            }
        }
        let mut g = Self {
            n_objects,
            src,
            tgt,
            unit,
            inv: vec![usize::MAX; n_arrows],
            out_arrows,
            pos_in_out,
            comp_offset,
            comp,
        };
        for a in 0..n_arrows {
            let (s, t) = (g.src[a], g.tgt[a]);
            if g.mul(g.unit[s], a) != a {
                return fail(GroupoidViolation::UnitNotNeutral { object: s, arrow: a });
            }
            if g.mul(a, g.unit[t]) != a {
                return fail(GroupoidViolation::UnitNotNeutral { object: t, arrow: a });
            }
        }
        for a in 0..n_arrows {
            for &b in &g.out_arrows[g.tgt[a]] {
                let ab = g.mul(a, b);
                for &c in &g.out_arrows[g.tgt[b]] {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return fail(GroupoidViolation::NonAssociative(a, b, c));
                    }
                }
            }
        }
        for a in 0..n_arrows {
            let (s, t) = (g.src[a], g.tgt[a]);
            let found = g.out_arrows[t]
                .iter()
                .copied()
                .find(|&b| g.tgt[b] == s && g.mul(a, b) == g.unit[s] && g.mul(b, a) == g.unit[t]);
            match found {
                Some(b) => g.inv[a] = b,
                None => return fail(GroupoidViolation::NoInverse(a)),
            }
        }
        Ok(g)
    }

    /// A group as a groupoid with one object; arrow `g` is element `g`.
    pub fn from_group(group: &FiniteGroup) -> Self {
        let n = group.order();
        Self::new(1, vec![0; n], vec![0; n], vec![0], |a, b| group.mul(a, b)).expect("group is a groupoid")
    }

    /// Arrows are ordered pairs `(i, j)`, indexed `i·n + j`.
    pub fn pair(n: usize) -> Self {
        let src = (0..n * n).map(|a| a / n).collect();
        let tgt = (0..n * n).map(|a| a % n).collect();
        let unit = (0..n).map(|i| i * n + i).collect();
        Self::new(n, src, tgt, unit, |a, b| (a / n) * n + b % n).expect("pair groupoid")
    }

    /// Objects and arrows of `b` are shifted after those of `a`.
    pub fn disjoint_union(a: &Self, b: &Self) -> Self {
        let (no, na) = (a.n_objects, a.n_arrows());
        let src = a.src.iter().copied().chain(b.src.iter().map(|&o| o + no)).collect();
        let tgt = a.tgt.iter().copied().chain(b.tgt.iter().map(|&o| o + no)).collect();
        let unit = a.unit.iter().copied().chain(b.unit.iter().map(|&x| x + na)).collect();
        Self::new(
            no + b.n_objects,
            src,
            tgt,
            unit,
            |x, y| {
                if x < na {
                    a.mul(x, y)
                } else {
                    b.mul(x - na, y - na) + na
                }
            },
        )
        .expect("disjoint union")
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, a: usize) -> usize {
        self.src[a]
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.tgt[a]
    }

    pub fn unit(&self, o: usize) -> usize {
        self.unit[o]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit[self.src[a]] == a
    }

    /// Arrows with source `o`, ascending.
    pub fn out_arrows(&self, o: usize) -> &[usize] {
        &self.out_arrows[o]
    }

    /// Arrows from `s` to `t`, ascending.
    pub fn hom(&self, s: usize, t: usize) -> Vec<usize> {
        self.out_arrows[s].iter().copied().filter(|&a| self.tgt[a] == t).collect()
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        (self.tgt[a] == self.src[b]).then(|| self.comp[self.comp_offset[a] + self.pos_in_out[b]])
    }

    /// Position of the composable pair `(a, b)` in the lexicographic
    /// enumeration of composable pairs.
    pub fn pair_index(&self, a: usize, b: usize) -> Option<usize> {
        (self.tgt[a] == self.src[b]).then(|| self.comp_offset[a] + self.pos_in_out[b])
    }

    pub fn n_pairs(&self) -> usize {
        self.comp.len()
    }

    /// `a·b`; panics unless `tgt(a) = src(b)`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        assert_eq!(self.tgt[a], self.src[b], "arrows {a} and {b} are not composable");
        self.comp[self.comp_offset[a] + self.pos_in_out[b]]
    }

    /// Product of a composable word; `None` on an empty word.
    pub fn product(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        rest.iter().try_fold(first, |acc, &x| self.compose(acc, x))
    }

    /// Orbits of objects under the arrows, each ascending, ordered by
    /// their smallest object.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n_objects];
        let mut comps = Vec::new();
        for start in 0..self.n_objects {
            if label[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(o) = queue.pop_front() {
                for &a in &self.out_arrows[o] {
                    let t = self.tgt[a];
                    if label[t] == usize::MAX {
                        label[t] = id;
                        members.push(t);
                        queue.push_back(t);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    /// Component index of each object, matching [`Self::connected_components`].
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.n_objects];
        for (c, members) in self.connected_components().iter().enumerate() {
            for &o in members {
                label[o] = c;
            }
        }
        label
    }
}

/// A functor given on objects and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidMorphism {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl GroupoidMorphism {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        Self { objects: (0..g.n_objects()).collect(), arrows: (0..g.n_arrows()).collect() }
    }

    /// Checks functoriality exhaustively.
    pub fn check(&self, from: &FiniteGroupoid, to: &FiniteGroupoid) -> Result<(), GroupoidError> {
        let bad = |m: String| Err(GroupoidError::NotMorphism(m));
        if self.objects.len() != from.n_objects() || self.arrows.len() != from.n_arrows() {
            return bad("map sizes do not match the source groupoid".into());
        }
        if self.objects.iter().any(|&o| o >= to.n_objects()) || self.arrows.iter().any(|&a| a >= to.n_arrows()) {
            return bad("image out of range".into());
        }
        for a in 0..from.n_arrows() {
            let fa = self.arrows[a];
            if to.src(fa) != self.objects[from.src(a)] || to.tgt(fa) != self.objects[from.tgt(a)] {
                return bad(format!("arrow {a} does not respect source/target"));
            }
            for &b in from.out_arrows(from.tgt(a)) {
                if self.arrows[from.mul(a, b)] != to.mul(fa, self.arrows[b]) {
                    return bad(format!("composite of {a} and {b} is not preserved"));
                }
            }
        }
        for o in 0..from.n_objects() {
            if self.arrows[from.unit(o)] != to.unit(self.objects[o]) {
                return bad(format!("unit of object {o} is not preserved"));
            }
        }
        Ok(())
    }

    pub fn is_surjective_on_objects(&self, target_objects: usize) -> Result<(), usize> {
        let mut hit = vec![false; target_objects];
        for &o in &self.objects {
            hit[o] = true;
        }
        match hit.iter().position(|h| !h) {
            Some(o) => Err(o),
            None => Ok(()),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupoidMorphism) -> GroupoidMorphism {
        GroupoidMorphism {
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            arrows: self.arrows.iter().map(|&a| next.arrows[a]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid() {
        let g = FiniteGroupoid::pair(3);
        assert_eq!(g.n_arrows(), 9);
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2]]);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.compose(1, 5), Some(2));
        assert_eq!(g.compose(1, 1), None);
    }

    #[test]
    fn group_as_groupoid() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::symmetric3());
        assert_eq!((g.n_objects(), g.n_arrows()), (1, 6));
        let two = FiniteGroupoid::disjoint_union(&g, &FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        assert_eq!(two.connected_components(), vec![vec![0], vec![1]]);
        assert_eq!(two.inv(7), 7);
    }

    #[test]
    fn broken_associativity_is_reported() {
        // Z3 with one product changed: 1·1 = 0 instead of 2
        let z3 = FiniteGroup::cyclic(3);
        let err =
            FiniteGroupoid::new(
                1,
                vec![0; 3],
                vec![0; 3],
                vec![0],
                |a, b| {
                    if (a, b) == (1, 1) {
                        0
                    } else {
                        z3.mul(a, b)
                    }
                },
            )
            .unwrap_err();
        assert_eq!(err, GroupoidError::Invalid(GroupoidViolation::NonAssociative(1, 1, 2)));
    }

    #[test]
    fn morphism_check() {
        let g = FiniteGroupoid::pair(2);
        let id = GroupoidMorphism::identity(&g);
        id.check(&g, &g).unwrap();
        let swap = GroupoidMorphism { objects: vec![1, 0], arrows: vec![3, 2, 1, 0] };
        swap.check(&g, &g).unwrap();
        let bad = GroupoidMorphism { objects: vec![0, 0], arrows: vec![0, 1, 2, 3] };
        assert!(bad.check(&g, &g).is_err());
    }
}
