//! Bitorsors between finite groupoids, their composition and
//! isomorphism search.
//!
//! With left-to-right composition a left action `x·p` is defined when
//! `tgt(x)` is the left moment of `p` and moves `p` over `src(x)`; a right
//! action `p·y` is defined when `src(y)` is the right moment of `p` and
//! moves `p` over `tgt(y)`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::MoritaError;
use crate::extension::GroupoidExtension;
use crate::groupoid::{is_weak_equivalence, FiniteGroupoid, GroupoidMorphism};

/// Largest carrier accepted by [`find_isomorphism`].
pub const MAX_ISOMORPHISM_CARRIER: usize = 64;

const NONE: usize = usize::MAX;

/// A `left`–`right` bitorsor on the carrier `0..size`.
#[derive(Clone, Debug)]
pub struct Bitorsor {
    pub left: Arc<FiniteGroupoid>,
    pub right: Arc<FiniteGroupoid>,
    pub left_moment: Vec<usize>,
    pub right_moment: Vec<usize>,
    /// `left_act[x·size + p]`, `NONE` where undefined.
    left_act: Vec<usize>,
    /// `right_act[p·|right arrows| + y]`, `NONE` where undefined.
    right_act: Vec<usize>,
}

fn invalid(msg: String) -> MoritaError {
    MoritaError::InvalidBitorsor(msg)
}

impl Bitorsor {
    /// Tabulates both actions (the closures are only called where the
    /// action is defined) and checks every bitorsor axiom.
    pub fn new(
        left: Arc<FiniteGroupoid>,
        right: Arc<FiniteGroupoid>,
        left_moment: Vec<usize>,
        right_moment: Vec<usize>,
        left_act: impl Fn(usize, usize) -> usize,
        right_act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, MoritaError> {
        let size = left_moment.len();
        if right_moment.len() != size {
            return Err(invalid("moment maps have different domains".into()));
        }
        if left_moment.iter().any(|&o| o >= left.n_objects()) || right_moment.iter().any(|&o| o >= right.n_objects()) {
            return Err(invalid("moment out of range".into()));
        }
        let mut la = vec![NONE; left.n_arrows() * size];
        for x in 0..left.n_arrows() {
            for p in 0..size {
                if left.tgt(x) == left_moment[p] {
                    la[x * size + p] = left_act(x, p);
                }
            }
        }
        let nr = right.n_arrows();
        let mut ra = vec![NONE; size * nr];
        for p in 0..size {
            for &y in right.out_arrows(right_moment[p]) {
                ra[p * nr + y] = right_act(p, y);
            }
        }
        if la.iter().chain(&ra).any(|&q| q != NONE && q >= size) {
            return Err(invalid("action lands outside the carrier".into()));
        }
        let b = Self { left, right, left_moment, right_moment, left_act: la, right_act: ra };
        b.validate()?;
        Ok(b)
    }

    pub fn size(&self) -> usize {
        self.left_moment.len()
    }

    pub fn act_left(&self, x: usize, p: usize) -> Option<usize> {
        let q = self.left_act[x * self.size() + p];
        (q != NONE).then_some(q)
    }

    pub fn act_right(&self, p: usize, y: usize) -> Option<usize> {
        let q = self.right_act[p * self.right.n_arrows() + y];
        (q != NONE).then_some(q)
    }

    /// Action laws, moment compatibility, commuting actions, and both
    /// torsor conditions, all checked exhaustively.
    pub fn validate(&self) -> Result<(), MoritaError> {
        let (l, r) = (&*self.left, &*self.right);
        let n = self.size();
        for p in 0..n {
            let (f, g) = (self.left_moment[p], self.right_moment[p]);
            if self.act_left(l.unit(f), p) != Some(p) {
                return Err(invalid(format!("left unit does not fix {p}")));
            }
            if self.act_right(p, r.unit(g)) != Some(p) {
                return Err(invalid(format!("right unit does not fix {p}")));
            }
            for x in arrows_into(l, f) {
                let xp = self.act_left(x, p).expect("tabulated");
                if self.left_moment[xp] != l.src(x) || self.right_moment[xp] != g {
                    return Err(invalid(format!("left action of {x} on {p} breaks the moments")));
                }
                for w in arrows_into(l, l.src(x)) {
                    if self.act_left(w, xp) != self.act_left(l.mul(w, x), p) {
                        return Err(invalid(format!("left action is not associative at ({w}, {x}, {p})")));
                    }
                }
                for &y in r.out_arrows(g) {
                    let py = self.act_right(p, y).expect("tabulated");
                    if self.act_right(xp, y) != self.act_left(x, py) {
                        return Err(invalid(format!("actions do not commute at ({x}, {p}, {y})")));
                    }
                }
            }
            for &y in r.out_arrows(g) {
                let py = self.act_right(p, y).expect("tabulated");
                if self.right_moment[py] != r.tgt(y) || self.left_moment[py] != f {
                    return Err(invalid(format!("right action of {y} on {p} breaks the moments")));
                }
                for &z in r.out_arrows(r.tgt(y)) {
                    if self.act_right(py, z) != self.act_right(p, r.mul(y, z)) {
                        return Err(invalid(format!("right action is not associative at ({p}, {y}, {z})")));
                    }
                }
            }
        }
        // left torsor over the right objects: x ↦ x·p is a bijection onto the g-fiber of p
        self.torsor_check(
            &self.right_moment,
            r.n_objects(),
            |p| arrows_into(l, self.left_moment[p]).into_iter().map(|x| self.act_left(x, p).unwrap()).collect(),
            "left",
        )?;
        self.torsor_check(
            &self.left_moment,
            l.n_objects(),
            |p| r.out_arrows(self.right_moment[p]).iter().map(|&y| self.act_right(p, y).unwrap()).collect(),
            "right",
        )
    }

    fn torsor_check(
        &self,
        structure: &[usize],
        n_base: usize,
        orbit: impl Fn(usize) -> Vec<usize>,
        side: &str,
    ) -> Result<(), MoritaError> {
        let mut fibers = vec![Vec::new(); n_base];
        for (p, &m) in structure.iter().enumerate() {
            fibers[m].push(p);
        }
        if let Some(m) = fibers.iter().position(Vec::is_empty) {
            return Err(invalid(format!("{side} torsor: structure map misses object {m}")));
        }
        for p in 0..self.size() {
            let mut o = orbit(p);
            let len = o.len();
            o.sort_unstable();
            o.dedup();
            if o.len() != len {
                return Err(invalid(format!("{side} action is not free at {p}")));
            }
            if o != fibers[structure[p]] {
                return Err(invalid(format!("{side} action is not transitive on the fiber of {p}")));
            }
        }
        Ok(())
    }

    /// `Γ` acting on its own arrows from both sides.
    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        let n = g.n_arrows();
        let lm = (0..n).map(|a| g.src(a)).collect();
        let rm = (0..n).map(|a| g.tgt(a)).collect();
        let h = g.clone();
        Self::new(g.clone(), g, lm, rm, |x, a| h.mul(x, a), |a, y| h.mul(a, y)).expect("identity bitorsor")
    }

    /// `from_0 ×_{to_0} to_1` for a fully faithful, essentially surjective
    /// `f: from → to`: pairs `(o, y)` with `f(o) = src(y)` in lexicographic
    /// order, `x·(o, y) = (src x, f(x)·y)` and `(o, y)·y' = (o, y·y')`.
    pub fn from_morphism(
        from: Arc<FiniteGroupoid>,
        to: Arc<FiniteGroupoid>,
        f: &GroupoidMorphism,
    ) -> Result<Self, MoritaError> {
        is_weak_equivalence(&from, &to, f).map_err(|w| MoritaError::NotMorita(format!("{w:?}")))?;
        let mut carrier = Vec::new();
        for o in 0..from.n_objects() {
            for &y in to.out_arrows(f.objects[o]) {
                carrier.push((o, y));
            }
        }
        carrier.sort_unstable();
        let index: HashMap<(usize, usize), usize> = carrier.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let lm = carrier.iter().map(|c| c.0).collect();
        let rm = carrier.iter().map(|c| to.tgt(c.1)).collect();
        let (fr, t) = (from.clone(), to.clone());
        Self::new(
            from,
            to,
            lm,
            rm,
            |x, p| index[&(fr.src(x), t.mul(f.arrows[x], carrier[p].1))],
            |p, y| index[&(carrier[p].0, t.mul(carrier[p].1, y))],
        )
    }

    /// The same carrier with the sides exchanged: `y·p = p·y⁻¹`,
    /// `p·x = x⁻¹·p`.
    pub fn inverse(&self) -> Self {
        let (l, r) = (self.left.clone(), self.right.clone());
        Self::new(
            self.right.clone(),
            self.left.clone(),
            self.right_moment.clone(),
            self.left_moment.clone(),
            |y, p| self.act_right(p, r.inv(y)).expect("defined"),
            |p, x| self.act_left(l.inv(x), p).expect("defined"),
        )
        .expect("inverse of a bitorsor")
    }

    /// Orbits of the two-sided action, labeled by their smallest element.
    pub fn orbits(&self) -> Vec<usize> {
        self.orbits_under(|p| {
            let mut v: Vec<usize> = arrows_into(&self.left, self.left_moment[p])
                .into_iter()
                .map(|x| self.act_left(x, p).unwrap())
                .collect();
            v.extend(self.right.out_arrows(self.right_moment[p]).iter().map(|&y| self.act_right(p, y).unwrap()));
            v
        })
    }

    fn orbits_under(&self, step: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
        let mut label = vec![NONE; self.size()];
        for p in 0..self.size() {
            if label[p] != NONE {
                continue;
            }
            label[p] = p;
            let mut queue = VecDeque::from([p]);
            while let Some(u) = queue.pop_front() {
                for v in step(u) {
                    if label[v] == NONE {
                        label[v] = p;
                        queue.push_back(v);
                    }
                }
            }
        }
        label
    }
}

/// Arrows with target `o`, ascending.
fn arrows_into(g: &FiniteGroupoid, o: usize) -> Vec<usize> {
    let mut v: Vec<usize> = g.out_arrows(o).iter().map(|&a| g.inv(a)).collect();
    v.sort_unstable();
    v
}

/// `(B1 ×_{Γ'_0} B2)/Γ'_1` for `B1: Γ''–Γ'` and `B2: Γ'–Γ`; classes are
/// numbered by their smallest pair `(p, q)`.
pub fn compose_bitorsors(b1: &Bitorsor, b2: &Bitorsor) -> Result<Bitorsor, MoritaError> {
    if !Arc::ptr_eq(&b1.right, &b2.left) && *b1.right != *b2.left {
        return Err(MoritaError::MiddleMismatch);
    }
    let mid = &*b1.right;
    let mut pairs = Vec::new();
    for p in 0..b1.size() {
        for q in 0..b2.size() {
            if b1.right_moment[p] == b2.left_moment[q] {
                pairs.push((p, q));
            }
        }
    }
    let pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut class = vec![NONE; pairs.len()];
    let mut reps = Vec::new();
    for (k, &(p, q)) in pairs.iter().enumerate() {
        if class[k] != NONE {
            continue;
        }
        for &y in mid.out_arrows(b1.right_moment[p]) {
            let moved = (b1.act_right(p, y).unwrap(), b2.act_left(mid.inv(y), q).unwrap());
            class[pos[&moved]] = reps.len();
        }
        reps.push((p, q));
    }
    let lm = reps.iter().map(|&(p, _)| b1.left_moment[p]).collect();
    let rm = reps.iter().map(|&(_, q)| b2.right_moment[q]).collect();
    Bitorsor::new(
        b1.left.clone(),
        b2.right.clone(),
        lm,
        rm,
        |x, c| {
            let (p, q) = reps[c];
            class[pos[&(b1.act_left(x, p).unwrap(), q)]]
        },
        |c, y| {
            let (p, q) = reps[c];
            class[pos[&(p, b2.act_right(q, y).unwrap())]]
        },
    )
}

/// An equivariant bijection `a → b` preserving both moments, found by
/// propagating one choice per two-sided orbit and backtracking.
pub fn find_isomorphism(a: &Bitorsor, b: &Bitorsor) -> Result<Option<Vec<usize>>, MoritaError> {
    for s in [a.size(), b.size()] {
        if s > MAX_ISOMORPHISM_CARRIER {
            return Err(MoritaError::TooLarge(s));
        }
    }
    if a.size() != b.size() || *a.left != *b.left || *a.right != *b.right {
        return Ok(None);
    }
    let labels = a.orbits();
    let reps: Vec<usize> = (0..a.size()).filter(|&p| labels[p] == p).collect();
    let mut sigma = vec![NONE; a.size()];
    let mut used = vec![false; b.size()];
    Ok(extend(a, b, &reps, 0, &mut sigma, &mut used).then_some(sigma))
}

fn extend(a: &Bitorsor, b: &Bitorsor, reps: &[usize], k: usize, sigma: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&r) = reps.get(k) else {
        return true;
    };
    for c in 0..b.size() {
        if used[c] || b.left_moment[c] != a.left_moment[r] || b.right_moment[c] != a.right_moment[r] {
            continue;
        }
        let mut assigned = Vec::new();
        if propagate(a, b, r, c, sigma, used, &mut assigned) && extend(a, b, reps, k + 1, sigma, used) {
            return true;
        }
        for p in assigned {
            used[sigma[p]] = false;
            sigma[p] = NONE;
        }
    }
    false
}

fn propagate(
    a: &Bitorsor,
    b: &Bitorsor,
    r: usize,
    c: usize,
    sigma: &mut [usize],
    used: &mut [bool],
    assigned: &mut Vec<usize>,
) -> bool {
    let mut queue = VecDeque::from([(r, c)]);
    while let Some((p, q)) = queue.pop_front() {
        if sigma[p] != NONE {
            if sigma[p] != q {
                return false;
            }
            continue;
        }
        if used[q] || b.left_moment[q] != a.left_moment[p] || b.right_moment[q] != a.right_moment[p] {
            return false;
        }
        sigma[p] = q;
        used[q] = true;
        assigned.push(p);
        let l = &*a.left;
        for x in arrows_into(l, a.left_moment[p]) {
            queue.push_back((a.act_left(x, p).unwrap(), b.act_left(x, q).unwrap()));
        }
        for &y in a.right.out_arrows(a.right_moment[p]) {
            queue.push_back((a.act_right(p, y).unwrap(), b.act_right(q, y).unwrap()));
        }
    }
    true
}

/// A bitorsor between the total groupoids of two extensions whose kernel
/// orbits coincide.
#[derive(Clone, Debug)]
pub struct ExtensionBitorsor {
    pub bitorsor: Bitorsor,
    /// Kernel orbit of each carrier element, labeled by its smallest element.
    pub orbits: Vec<usize>,
}

/// Orbits of the left kernel action.
pub fn left_kernel_orbits(b: &Bitorsor, e: &GroupoidExtension) -> Vec<usize> {
    b.orbits_under(|p| e.kernel[b.left_moment[p]].iter().map(|&k| b.act_left(k, p).unwrap()).collect())
}

/// Orbits of the right kernel action.
pub fn right_kernel_orbits(b: &Bitorsor, e: &GroupoidExtension) -> Vec<usize> {
    b.orbits_under(|p| e.kernel[b.right_moment[p]].iter().map(|&k| b.act_right(p, k).unwrap()).collect())
}

impl ExtensionBitorsor {
    pub fn new(bitorsor: Bitorsor, left: &GroupoidExtension, right: &GroupoidExtension) -> Result<Self, MoritaError> {
        if *bitorsor.left != left.total || *bitorsor.right != right.total {
            return Err(invalid("bitorsor does not act by the total groupoids".into()));
        }
        let l = left_kernel_orbits(&bitorsor, left);
        let r = right_kernel_orbits(&bitorsor, right);
        if let Some(p) = (0..bitorsor.size()).find(|&p| l[p] != r[p]) {
            return Err(invalid(format!("kernel orbits differ at {p}")));
        }
        Ok(Self { bitorsor, orbits: l })
    }

    /// Composition of `self: E''–E'` with `other: E'–E`.
    pub fn compose(
        &self,
        other: &ExtensionBitorsor,
        left: &GroupoidExtension,
        right: &GroupoidExtension,
    ) -> Result<Self, MoritaError> {
        Self::new(compose_bitorsors(&self.bitorsor, &other.bitorsor)?, left, right)
    }
}
