//! Finite modules over finite groups: an explicit moduli vector together with
//! an action by compatible integer matrices.

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::ModuleError;
use crate::finab::FinAb;
use crate::group::{Elem, Subgroup};
use crate::linalg::modn;

/// A `k×k` action matrix stored row-major.
pub type ActionMatrix = Vec<i64>;

#[derive(Clone)]
pub struct GModule {
    group: Subgroup,
    carrier: FinAb,
    action: Vec<ActionMatrix>,
    trivial: bool,
    fingerprint: u64,
}

impl PartialEq for GModule {
    fn eq(&self, o: &Self) -> bool {
        self.fingerprint == o.fingerprint
            && self.group == o.group
            && self.carrier == o.carrier
            && self.action == o.action
    }
}
impl Eq for GModule {}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GModule(moduli={:?}, |group|={})", self.carrier.moduli(), self.group.order())
    }
}

fn mat_mul(moduli: &[i64], a: &[i64], b: &[i64]) -> ActionMatrix {
    let k = moduli.len();
    let mut out = vec![0; k * k];
    for i in 0..k {
        for l in 0..k {
            let x = a[i * k + l];
            if x == 0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] += x * b[l * k + j];
            }
        }
        for j in 0..k {
            out[i * k + j] = modn(out[i * k + j], moduli[i]);
        }
    }
    out
}

fn identity_matrix(moduli: &[i64]) -> ActionMatrix {
    let k = moduli.len();
    let mut out = vec![0; k * k];
    for i in 0..k {
        out[i * k + i] = 1 % moduli[i];
    }
    out
}

/// Checks `A_ij·d_j ≡ 0 (mod d_i)` for a map between explicit moduli vectors.
pub(crate) fn compatible(target: &[i64], source: &[i64], a: &[i64]) -> Option<(usize, usize)> {
    let c = source.len();
    for (i, &di) in target.iter().enumerate() {
        for (j, &dj) in source.iter().enumerate() {
            if modn(a[i * c + j] * dj, di) != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

impl GModule {
    /// Builds a module from matrices on some elements of `group`; the rest of
    /// the action is completed multiplicatively.
    pub fn build(
        group: &Subgroup,
        moduli: Vec<i64>,
        action: &[(Elem, Vec<Vec<i64>>)],
    ) -> Result<Arc<GModule>, ModuleError> {
        if moduli.iter().any(|&d| d < 1) {
            return Err(ModuleError::BadModulus);
        }
        let k = moduli.len();
        let g = group.parent().clone();
        let mut given: Vec<(Elem, ActionMatrix)> = Vec::new();
        for (sigma, rows) in action {
            if !group.contains(*sigma) {
                return Err(ModuleError::NotActing { sigma: *sigma });
            }
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return Err(ModuleError::Shape {
                    rows: rows.len(),
                    cols: rows.first().map_or(0, |r| r.len()),
                    want_rows: k,
                    want_cols: k,
                });
            }
            let mut m = vec![0; k * k];
            for i in 0..k {
                for j in 0..k {
                    m[i * k + j] = modn(rows[i][j], moduli[i]);
                }
            }
            if let Some((i, j)) = compatible(&moduli, &moduli, &m) {
                return Err(ModuleError::IncompatibleMatrix { sigma: *sigma, i, j });
            }
            given.push((*sigma, m));
        }
        let mut table: Vec<Option<ActionMatrix>> = vec![None; group.order()];
        let id_pos = group.position(g.identity()).expect("subgroup contains identity");
        table[id_pos] = Some(identity_matrix(&moduli));
        for (sigma, m) in &given {
            if *sigma == g.identity() && *m != identity_matrix(&moduli) {
                return Err(ModuleError::NotHomomorphism { sigma: *sigma, rho: *sigma });
            }
        }
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            let ax = table[group.position(x).unwrap()].clone().unwrap();
            for (s, m) in &given {
                let y = g.mul(x, *s);
                let ay = mat_mul(&moduli, &ax, m);
                let py = group.position(y).unwrap();
                match &table[py] {
                    Some(prev) if *prev != ay => {
                        return Err(ModuleError::NotHomomorphism { sigma: x, rho: *s });
                    }
                    Some(_) => {}
                    None => {
                        table[py] = Some(ay);
                        queue.push_back(y);
                    }
                }
            }
        }
        for (p, t) in table.iter().enumerate() {
            if t.is_none() {
                return Err(ModuleError::IncompleteAction { missing: group.elements()[p] });
            }
        }
        // supplied matrices for non-generators must agree too
        for (s, m) in &given {
            if table[group.position(*s).unwrap()].as_ref() != Some(m) {
                return Err(ModuleError::NotHomomorphism { sigma: *s, rho: g.identity() });
            }
        }
        let action = table.into_iter().map(Option::unwrap).collect();
        Ok(Arc::new(Self::assemble(group.clone(), FinAb::new(moduli), action)))
    }

    fn assemble(group: Subgroup, carrier: FinAb, action: Vec<ActionMatrix>) -> GModule {
        let id = identity_matrix(carrier.moduli());
        let trivial = action.iter().all(|a| *a == id);
        let mut h = DefaultHasher::new();
        group.elements().hash(&mut h);
        carrier.moduli().hash(&mut h);
        action.hash(&mut h);
        GModule { group, carrier, action, trivial, fingerprint: h.finish() }
    }

    /// Full action table, already validated.
    pub(crate) fn from_action_unchecked(group: Subgroup, moduli: Vec<i64>, action: Vec<ActionMatrix>) -> Arc<GModule> {
        Arc::new(Self::assemble(group, FinAb::new(moduli), action))
    }

    pub fn trivial_action(group: &Subgroup, moduli: Vec<i64>) -> Arc<GModule> {
        let id = identity_matrix(&moduli);
        Arc::new(Self::assemble(group.clone(), FinAb::new(moduli), vec![id; group.order()]))
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn carrier(&self) -> &FinAb {
        &self.carrier
    }

    pub fn moduli(&self) -> &[i64] {
        self.carrier.moduli()
    }

    pub fn rank(&self) -> usize {
        self.carrier.rank()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.trivial
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn exponent(&self) -> i64 {
        self.carrier.exponent()
    }

    pub fn matrix(&self, sigma: Elem) -> Result<&ActionMatrix, ModuleError> {
        self.group.position(sigma).map(|p| &self.action[p]).ok_or(ModuleError::NotActing { sigma })
    }

    /// `σ·v`; panics if `σ` does not act.
    pub fn act(&self, sigma: Elem, v: &[i64]) -> Vec<i64> {
        if self.trivial {
            return v.to_vec();
        }
        let p = self.group.position(sigma).unwrap_or_else(|| panic!("element {sigma} does not act"));
        let a = &self.action[p];
        let k = self.rank();
        let d = self.moduli();
        (0..k)
            .map(|i| {
                let row = &a[i * k..(i + 1) * k];
                let s: i64 = row.iter().zip(v).map(|(x, y)| x * y).sum();
                modn(s, d[i])
            })
            .collect()
    }

    /// Same carrier, action restricted to `h`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Arc<GModule>, ModuleError> {
        if !h.is_subgroup_of(&self.group) {
            return Err(ModuleError::PreconditionViolation("restriction to a subgroup not contained in the acting group".into()));
        }
        let action = h.elements().iter().map(|&s| self.action[self.group.position(s).unwrap()].clone()).collect();
        Ok(Arc::new(Self::assemble(h.clone(), self.carrier.clone(), action)))
    }

    /// `τM`: a module over `τHτ⁻¹` with the same carrier, where `σ` acts as
    /// `τ⁻¹στ` does on `M`.
    pub fn conjugate(&self, tau: Elem) -> Arc<GModule> {
        let g = self.group.parent();
        let target = self.group.conjugate(tau);
        let ti = g.inv(tau);
        let action = target
            .elements()
            .iter()
            .map(|&s| self.action[self.group.position(g.mul(g.mul(ti, s), tau)).unwrap()].clone())
            .collect();
        Arc::new(Self::assemble(target, self.carrier.clone(), action))
    }

    /// Coordinate-wise tensor product; coordinate `(i, j)` has modulus
    /// `gcd(d_i, e_j)` and index `i·rank(other) + j`.
    pub fn tensor(&self, other: &GModule) -> Result<Arc<GModule>, ModuleError> {
        if self.group != other.group {
            return Err(ModuleError::GroupMismatch);
        }
        let (k, l) = (self.rank(), other.rank());
        let moduli: Vec<i64> = self
            .moduli()
            .iter()
            .flat_map(|&d| other.moduli().iter().map(move |&e| crate::linalg::gcd(d, e)))
            .collect();
        let kl = k * l;
        let action = (0..self.group.order())
            .map(|p| {
                let (a, b) = (&self.action[p], &other.action[p]);
                let mut m = vec![0; kl * kl];
                for i in 0..k {
                    for j in 0..l {
                        let row = i * l + j;
                        for r in 0..k {
                            for s in 0..l {
                                m[row * kl + r * l + s] = modn(a[i * k + r] * b[j * l + s], moduli[row]);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Arc::new(Self::assemble(self.group.clone(), FinAb::new(moduli), action)))
    }

    /// Direct sum; coordinates of `self` come first.
    pub fn direct_sum(&self, other: &GModule) -> Result<Arc<GModule>, ModuleError> {
        if self.group != other.group {
            return Err(ModuleError::GroupMismatch);
        }
        let (k, l) = (self.rank(), other.rank());
        let n = k + l;
        let mut moduli = self.moduli().to_vec();
        moduli.extend_from_slice(other.moduli());
        let action = (0..self.group.order())
            .map(|p| {
                let mut m = vec![0; n * n];
                for i in 0..k {
                    for j in 0..k {
                        m[i * n + j] = self.action[p][i * k + j];
                    }
                }
                for i in 0..l {
                    for j in 0..l {
                        m[(k + i) * n + k + j] = other.action[p][i * l + j];
                    }
                }
                m
            })
            .collect();
        Ok(Arc::new(Self::assemble(self.group.clone(), FinAb::new(moduli), action)))
    }

    /// The unit by which each element acts on a cyclic module `Z/n`.
    pub fn cyclic_units(&self) -> Result<Vec<i64>, ModuleError> {
        if self.rank() != 1 {
            return Err(ModuleError::NotCyclic);
        }
        let n = self.moduli()[0];
        let units: Vec<i64> = self.action.iter().map(|a| a[0]).collect();
        if units.iter().any(|&u| crate::linalg::gcd(u, n) != 1 && n > 1) {
            return Err(ModuleError::NotCyclic);
        }
        Ok(units)
    }

    /// `M^∨ = Hom(M, C)`. Coordinate `i` of the dual has modulus `d_i`; the
    /// vector `c` is the homomorphism `e_i ↦ c_i·(n/d_i)`.
    pub fn dual(&self, c: &GModule) -> Result<Arc<GModule>, ModuleError> {
        if self.group != c.group {
            return Err(ModuleError::GroupMismatch);
        }
        let units = c.cyclic_units()?;
        let n = c.moduli()[0];
        let e = self.exponent();
        if n % e != 0 {
            return Err(ModuleError::ExponentMismatch { exponent: e, n });
        }
        let g = self.group.parent();
        let k = self.rank();
        let d = self.moduli();
        let action = self
            .group
            .elements()
            .iter()
            .enumerate()
            .map(|(p, &s)| {
                let ai = &self.action[self.group.position(g.inv(s)).unwrap()];
                let u = units[p];
                let mut b = vec![0; k * k];
                // (σf)(e_j) = u_σ Σ_i A^{σ⁻¹}_ij f(e_i)
                for j in 0..k {
                    for i in 0..k {
                        let x = ai[i * k + j] * d[j];
                        debug_assert_eq!(x % d[i], 0);
                        b[j * k + i] = modn(u * (x / d[i]), d[j]);
                    }
                }
                b
            })
            .collect();
        Ok(Arc::new(Self::assemble(self.group.clone(), self.carrier.clone(), action)))
    }

    /// Fixed points `M^G` by enumeration.
    pub fn fixed_points(&self) -> Result<crate::finab::AbSubgroup, ModuleError> {
        let gens = self.group.generators();
        crate::finab::AbSubgroup::filter(&self.carrier, |x| gens.iter().all(|&s| self.act(s, x) == x))
            .map_err(|e| ModuleError::PreconditionViolation(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn minus_one_on_z4() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::build(&g.whole(), vec![4], &[(1, vec![vec![-1]])]).unwrap();
        assert_eq!(m.act(1, &[1]), vec![3]);
        assert_eq!(m.fixed_points().unwrap().order(), 2);
    }

    #[test]
    fn swapping_z2_and_z4_is_incompatible() {
        let g = FiniteGroup::cyclic(2);
        let err = GModule::build(&g.whole(), vec![2, 4], &[(1, vec![vec![0, 1], vec![1, 0]])]).unwrap_err();
        assert!(matches!(err, ModuleError::IncompatibleMatrix { sigma: 1, .. }));
    }

    #[test]
    fn non_homomorphism_detected() {
        let g = FiniteGroup::cyclic(2);
        // generator acting by 2 on Z/3 squares to 4 = 1, fine; by 2 on Z/5 squares to 4 ≠ 1
        assert!(GModule::build(&g.whole(), vec![3], &[(1, vec![vec![2]])]).is_ok());
        let err = GModule::build(&g.whole(), vec![5], &[(1, vec![vec![2]])]).unwrap_err();
        assert!(matches!(err, ModuleError::NotHomomorphism { .. }));
    }

    #[test]
    fn dual_of_z2_into_z4() {
        let g = FiniteGroup::cyclic(2);
        let c = GModule::trivial_action(&g.whole(), vec![4]);
        let m = GModule::trivial_action(&g.whole(), vec![2]);
        assert_eq!(m.dual(&c).unwrap().moduli(), &[2]);
        let big = GModule::trivial_action(&g.whole(), vec![8]);
        assert!(matches!(big.dual(&c), Err(ModuleError::ExponentMismatch { .. })));
    }

    #[test]
    fn conjugate_module_in_s3() {
        let g = FiniteGroup::symmetric3();
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let h = g.subgroup(&[t]);
        let m = GModule::build(&h, vec![3], &[(t, vec![vec![-1]])]).unwrap();
        let tau = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let cm = m.conjugate(tau);
        assert_eq!(cm.group(), &h.conjugate(tau));
        for &s in cm.group().elements() {
            let back = g.mul(g.mul(g.inv(tau), s), tau);
            assert_eq!(cm.matrix(s).unwrap(), m.matrix(back).unwrap());
        }
    }
}
