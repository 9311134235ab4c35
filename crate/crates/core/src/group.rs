//! Finite groups as dense multiplication tables, with subgroups, left
//! transversals and double coset decompositions.
//!
//! Elements are indices `0..order`; the identity is always index 0. Every
//! deterministic choice (coset keys, representatives, generator sets) breaks
//! ties by least element index.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::GroupError;

/// An element of a [`FiniteGroup`], as an index into its table.
pub type Elem = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<Elem>>,
    inverse: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl FiniteGroup {
    /// Validates a multiplication table. `table[a][b]` is the index of `a·b`.
    pub fn from_table(table: Vec<Vec<Elem>>) -> Result<Arc<Self>, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: a, len: row.len(), order: n });
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::OutOfRange { a, b, value: v });
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        if identity != 0 {
            return Err(GroupError::IdentityNotZero { found: identity });
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == 0 && table[b][a] == 0)
                .ok_or(GroupError::NoInverse { element: a })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup { table, inverse, labels: None }))
    }

    /// Closure of permutation generators (0-based image lists). Element order
    /// is discovery order: identity first, then breadth-first products
    /// `x·g` in generator order, where `(p·q)(i) = p(q(i))`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Arc<Self>, GroupError> {
        Self::from_permutations_capped(gens, 4096)
    }

    /// Gives up with `TooLarge` once the closure passes `cap` elements.
    pub fn from_permutations_capped(gens: &[Vec<usize>], cap: usize) -> Result<Arc<Self>, GroupError> {
        let degree = gens.first().map_or(0, |g| g.len());
        for (k, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(GroupError::BadPermutation { index: k });
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y: Vec<usize> = g.iter().map(|&i| elems[x][i]).collect();
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(GroupError::TooLarge);
                    }
                    index.insert(y.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(y);
                }
            }
        }
        let table = elems
            .iter()
            .map(|p| {
                elems
                    .iter()
                    .map(|q| index[&q.iter().map(|&i| p[i]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    pub fn with_labels(self: Arc<Self>, labels: Vec<String>) -> Arc<Self> {
        let mut g = (*self).clone();
        g.labels = Some(labels);
        Arc::new(g)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// `tau · x · tau⁻¹`.
    #[inline]
    pub fn conj(&self, tau: Elem, x: Elem) -> Elem {
        self.mul(self.mul(tau, x), self.inv(tau))
    }

    pub fn table(&self) -> &[Vec<Elem>] {
        &self.table
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup consisting of every element.
    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), (0..self.order()).collect())
    }

    pub fn trivial(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), vec![0])
    }

    /// Closure of `gens` under multiplication (inverses follow by finiteness).
    pub fn subgroup(self: &Arc<Self>, gens: &[Elem]) -> Subgroup {
        let mut set = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup::from_sorted(self.clone(), set.into_iter().collect())
    }

    /// Validates an arbitrary element set as a subgroup.
    pub fn subgroup_from_elements(self: &Arc<Self>, elems: &[Elem]) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<Elem> = elems.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&e| e >= self.order()) {
            return Err(GroupError::OutOfRange { a: bad, b: 0, value: bad });
        }
        if !set.contains(&0) {
            return Err(GroupError::NotASubgroup { witness: 0 });
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup { witness: self.mul(a, b) });
                }
            }
        }
        Ok(Subgroup::from_sorted(self.clone(), set.into_iter().collect()))
    }

    // Standard inventory groups.

    pub fn cyclic(n: usize) -> Arc<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic group table")
    }

    /// Direct product with element `(a, b)` at index `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Arc<Self> {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product table")
    }

    pub fn symmetric3() -> Arc<Self> {
        Self::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).expect("S3")
    }

    /// Dihedral group of order 8 as symmetries of a square.
    pub fn dihedral8() -> Arc<Self> {
        Self::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).expect("D4")
    }

    /// Quaternion group, as the regular representation on 8 points.
    pub fn quaternion8() -> Arc<Self> {
        // 0=1 1=-1 2=i 3=-i 4=j 5=-j 6=k 7=-k; left multiplication by i and j.
        let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
        let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
        Self::from_permutations(&[i, j]).expect("Q8")
    }
}

/// A subgroup of a [`FiniteGroup`], stored as a sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<Elem>,
    position: Vec<Option<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    fn from_sorted(parent: Arc<FiniteGroup>, elements: Vec<Elem>) -> Self {
        let mut position = vec![None; parent.order()];
        for (i, &e) in elements.iter().enumerate() {
            position[e] = Some(i);
        }
        Subgroup { parent, elements, position }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.position.get(e).is_some_and(Option::is_some)
    }

    /// Position of `e` in the sorted element list.
    #[inline]
    pub fn position(&self, e: Elem) -> Option<usize> {
        self.position[e]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// `[other : self]`, assuming `self ≤ other`.
    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order() / self.order()
    }

    /// The subgroup `tau · self · tau⁻¹`.
    pub fn conjugate(&self, tau: Elem) -> Subgroup {
        let g = &self.parent;
        let mut elems: Vec<Elem> = self.elements.iter().map(|&x| g.conj(tau, x)).collect();
        elems.sort_unstable();
        Subgroup::from_sorted(g.clone(), elems)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elems = self.elements.iter().copied().filter(|&e| other.contains(e)).collect();
        Subgroup::from_sorted(self.parent.clone(), elems)
    }

    /// `self` is normalized by every element of `ambient`.
    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        ambient.elements.iter().all(|&t| self.conjugate(t) == *self)
    }

    /// Greedy generating set: repeatedly adds the least element not yet generated.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.parent.trivial();
        for &e in &self.elements {
            if !span.contains(e) {
                gens.push(e);
                span = self.parent.subgroup(&gens);
            }
        }
        gens
    }
}

/// Left transversal of `sub` in `ambient`: one representative per left coset
/// `σ·sub`, namely its least element. Cosets are ordered by that key, so the
/// coset `sub` itself is first with representative the identity.
#[derive(Clone, Debug)]
pub struct Transversal {
    ambient: Subgroup,
    sub: Subgroup,
    reps: Vec<Elem>,
    coset: Vec<Option<usize>>,
}

impl Transversal {
    pub fn new(ambient: &Subgroup, sub: &Subgroup) -> Transversal {
        let g = ambient.parent();
        let mut coset = vec![None; g.order()];
        let mut reps = Vec::new();
        for &s in ambient.elements() {
            if coset[s].is_some() {
                continue;
            }
            let k = reps.len();
            reps.push(s);
            for &h in sub.elements() {
                coset[g.mul(s, h)] = Some(k);
            }
        }
        Transversal { ambient: ambient.clone(), sub: sub.clone(), reps, coset }
    }

    /// The canonical coset order with caller-chosen representatives, one per
    /// coset in any order. `None` if `reps` is not a transversal.
    pub fn with_reps(ambient: &Subgroup, sub: &Subgroup, reps: &[Elem]) -> Option<Transversal> {
        let mut t = Transversal::new(ambient, sub);
        let mut chosen = vec![None; t.reps.len()];
        for &r in reps {
            if !ambient.contains(r) {
                return None;
            }
            let c = t.coset_of(r);
            if chosen[c].replace(r).is_some() {
                return None;
            }
        }
        t.reps = chosen.into_iter().collect::<Option<Vec<_>>>()?;
        Some(t)
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn sub(&self) -> &Subgroup {
        &self.sub
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the coset `σ·sub`.
    #[inline]
    pub fn coset_of(&self, sigma: Elem) -> usize {
        self.coset[sigma].expect("element outside the ambient subgroup")
    }

    /// `T(σ·sub)`.
    #[inline]
    pub fn rep_of(&self, sigma: Elem) -> Elem {
        self.reps[self.coset_of(sigma)]
    }

    pub fn is_normalized(&self) -> bool {
        self.reps[self.coset_of(0)] == 0
    }
}

/// Double cosets `C τ H` of `ambient`, with `D_τ = H ∩ τ⁻¹ C τ` per representative.
#[derive(Clone, Debug)]
pub struct DoubleCosetDecomposition {
    pub left: Subgroup,
    pub right: Subgroup,
    pub reps: Vec<Elem>,
    pub intersections: Vec<Subgroup>,
    /// Size of each double coset.
    pub sizes: Vec<usize>,
}

impl DoubleCosetDecomposition {
    pub fn new(ambient: &Subgroup, left: &Subgroup, right: &Subgroup) -> Self {
        let g = ambient.parent();
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut intersections = Vec::new();
        for &t in ambient.elements() {
            if seen[t] {
                continue;
            }
            let mut size = 0;
            for &c in left.elements() {
                for &h in right.elements() {
                    let x = g.mul(g.mul(c, t), h);
                    if !seen[x] {
                        seen[x] = true;
                        size += 1;
                    }
                }
            }
            reps.push(t);
            sizes.push(size);
            intersections.push(right.intersect(&left.conjugate(g.inv(t))));
        }
        DoubleCosetDecomposition { left: left.clone(), right: right.clone(), reps, intersections, sizes }
    }

    /// The same decomposition with the given representatives, in the order
    /// given. `None` unless they hit every double coset exactly once.
    pub fn with_reps(ambient: &Subgroup, left: &Subgroup, right: &Subgroup, reps: &[Elem]) -> Option<Self> {
        let base = Self::new(ambient, left, right);
        if reps.len() != base.reps.len() || !reps.iter().all(|&t| ambient.contains(t)) {
            return None;
        }
        let mut hit = vec![false; reps.len()];
        let mut sizes = Vec::new();
        for &t in reps {
            let k = base.coset_of(t);
            if std::mem::replace(&mut hit[k], true) {
                return None;
            }
            sizes.push(base.sizes[k]);
        }
        let g = ambient.parent();
        let intersections = reps.iter().map(|&t| right.intersect(&left.conjugate(g.inv(t)))).collect();
        Some(DoubleCosetDecomposition { left: left.clone(), right: right.clone(), reps: reps.to_vec(), intersections, sizes })
    }

    /// Index of the double coset containing `x`.
    pub fn coset_of(&self, x: Elem) -> usize {
        let g = self.left.parent();
        self.reps
            .iter()
            .position(|&t| {
                self.left
                    .elements()
                    .iter()
                    .any(|&c| self.right.contains(g.mul(g.inv(g.mul(c, t)), x)))
            })
            .expect("double cosets cover the group")
    }
}

pub fn left_transversal(ambient: &Subgroup, sub: &Subgroup) -> Transversal {
    Transversal::new(ambient, sub)
}

pub fn double_coset_reps(ambient: &Subgroup, left: &Subgroup, right: &Subgroup) -> DoubleCosetDecomposition {
    DoubleCosetDecomposition::new(ambient, left, right)
}

pub fn conjugate_subgroup(tau: Elem, h: &Subgroup) -> Subgroup {
    h.conjugate(tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_order_two() {
        assert_eq!(FiniteGroup::from_table(vec![vec![0]]).unwrap().order(), 1);
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse { element: 1 });
    }

    #[test]
    fn non_associative_table() {
        // A Latin square with identity 0 that is not a group (loop of order 5).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn s3_three_cycle_subgroup() {
        let s3 = FiniteGroup::symmetric3();
        // element 1 is the 3-cycle generator by discovery order
        assert_eq!(s3.element_order(1), 3);
        let c3 = s3.subgroup(&[1]);
        assert_eq!(c3.order(), 3);
        assert_eq!(s3.subgroup(&[]).elements(), &[0]);
        assert!(s3.subgroup(&(0..6).collect::<Vec<_>>()).is_whole());
        // exhaustive closure oracle
        let mut brute = BTreeSet::from([0]);
        loop {
            let next: BTreeSet<_> = brute.iter().flat_map(|&a| [a, s3.mul(a, 1)]).collect();
            if next == brute {
                break;
            }
            brute = next;
        }
        assert_eq!(c3.elements(), brute.into_iter().collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn transversals() {
        let s3 = FiniteGroup::symmetric3();
        let g = s3.whole();
        let c3 = s3.subgroup(&[1]);
        let t = Transversal::new(&g, &c3);
        assert_eq!(t.len(), 2);
        assert_eq!(t.rep_of(1), 0);
        assert!(t.is_normalized());
        assert_eq!(Transversal::new(&g, &g).reps(), &[0]);
        assert_eq!(Transversal::new(&g, &s3.trivial()).reps(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn double_cosets_s3() {
        let s3 = FiniteGroup::symmetric3();
        let g = s3.whole();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.subgroup(&[t]);
        let d = DoubleCosetDecomposition::new(&g, &h, &h);
        let mut sizes = d.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let one = DoubleCosetDecomposition::new(&g, &g, &h);
        assert_eq!(one.reps, vec![0]);
        let triv = DoubleCosetDecomposition::new(&g, &s3.trivial(), &s3.trivial());
        assert_eq!(triv.reps.len(), 6);
        assert!(triv.intersections.iter().all(|d| d.is_trivial()));
    }

    #[test]
    fn conjugating_a_transposition() {
        let s3 = FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        // recompute permutations by discovery to find (12), (23), (123)
        let perms = discover(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let idx = |p: Vec<usize>| perms.iter().position(|q| *q == p).unwrap();
        let t12 = idx(vec![1, 0, 2]);
        let t23 = idx(vec![0, 2, 1]);
        let c123 = idx(vec![1, 2, 0]);
        let h = s3.subgroup(&[t12]);
        assert_eq!(h.conjugate(c123), s3.subgroup(&[t23]));
    }

    fn discover(gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..gens[0].len()).collect();
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let y: Vec<usize> = g.iter().map(|&k| out[i][k]).collect();
                if !out.contains(&y) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    #[test]
    fn inventory_orders() {
        assert_eq!(FiniteGroup::dihedral8().order(), 8);
        let q8 = FiniteGroup::quaternion8();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
    }
}
