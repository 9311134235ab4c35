//! Equivariant homomorphisms and bilinear pairings between modules.

use std::sync::Arc;

use crate::error::ModuleError;
use crate::finab::AbSubgroup;
use crate::module::{compatible, GModule};
use crate::linalg::modn;

/// An equivariant map given by a `rank(target) × rank(source)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: Arc<GModule>,
    target: Arc<GModule>,
    matrix: Vec<i64>,
}

impl ModuleHom {
    pub fn new(source: &Arc<GModule>, target: &Arc<GModule>, rows: &[Vec<i64>]) -> Result<ModuleHom, ModuleError> {
        let (s, t) = (source.rank(), target.rank());
        if rows.len() != t || rows.iter().any(|r| r.len() != s) {
            return Err(ModuleError::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, |r| r.len()),
                want_rows: t,
                want_cols: s,
            });
        }
        let matrix: Vec<i64> = (0..t).flat_map(|i| (0..s).map(move |j| (i, j))).map(|(i, j)| modn(rows[i][j], target.moduli()[i])).collect();
        Self::from_flat(source, target, matrix)
    }

    pub(crate) fn from_flat(source: &Arc<GModule>, target: &Arc<GModule>, matrix: Vec<i64>) -> Result<ModuleHom, ModuleError> {
        if source.group() != target.group() {
            return Err(ModuleError::GroupMismatch);
        }
        let matrix: Vec<i64> = matrix
            .iter()
            .enumerate()
            .map(|(p, &x)| modn(x, target.moduli()[p / source.rank().max(1)]))
            .collect();
        if let Some((i, j)) = compatible(target.moduli(), source.moduli(), &matrix) {
            return Err(ModuleError::IncompatibleMatrix { sigma: source.group().parent().identity(), i, j });
        }
        let h = ModuleHom { source: source.clone(), target: target.clone(), matrix };
        for sigma in source.group().generators() {
            for b in 0..source.rank() {
                let mut e = source.carrier().zero();
                e[b] = 1;
                if h.apply(&source.act(sigma, &e)) != target.act(sigma, &h.apply(&e)) {
                    return Err(ModuleError::NotEquivariant { sigma, basis: b });
                }
            }
        }
        Ok(h)
    }

    pub fn identity(m: &Arc<GModule>) -> ModuleHom {
        let k = m.rank();
        let mut mat = vec![0; k * k];
        for i in 0..k {
            mat[i * k + i] = 1;
        }
        Self::from_flat(m, m, mat).expect("identity is equivariant")
    }

    pub fn zero(source: &Arc<GModule>, target: &Arc<GModule>) -> Result<ModuleHom, ModuleError> {
        Self::from_flat(source, target, vec![0; source.rank() * target.rank()])
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.source.rank() + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.target.rank()).map(|i| (0..self.source.rank()).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let s = self.source.rank();
        self.target
            .moduli()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let row = &self.matrix[i * s..(i + 1) * s];
                modn(row.iter().zip(v).map(|(a, b)| a * b).sum(), d)
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        if other.target != self.source {
            return Err(ModuleError::PreconditionViolation("composition of maps with mismatched modules".into()));
        }
        let (a, b, c) = (other.source.rank(), self.source.rank(), self.target.rank());
        let mut m = vec![0; c * a];
        for i in 0..c {
            for l in 0..b {
                let x = self.matrix[i * b + l];
                if x != 0 {
                    for j in 0..a {
                        m[i * a + j] += x * other.matrix[l * a + j];
                    }
                }
            }
        }
        Self::from_flat(&other.source, &self.target, m)
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        if self.source != other.source || self.target != other.target {
            return Err(ModuleError::PreconditionViolation("sum of maps with mismatched modules".into()));
        }
        Self::from_flat(&self.source, &self.target, self.matrix.iter().zip(&other.matrix).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> ModuleHom {
        Self::from_flat(&self.source, &self.target, self.matrix.iter().map(|a| a * k).collect()).expect("multiple of an equivariant map")
    }

    /// Same matrix, viewed over a subgroup of the acting group.
    pub fn restrict(&self, h: &crate::group::Subgroup) -> Result<ModuleHom, ModuleError> {
        Self::from_flat(&self.source.restrict(h)?, &self.target.restrict(h)?, self.matrix.clone())
    }

    pub fn image(&self) -> Result<AbSubgroup, ModuleError> {
        let cols: Vec<Vec<i64>> = (0..self.source.rank())
            .map(|j| {
                let mut e = self.source.carrier().zero();
                e[j] = 1;
                self.apply(&e)
            })
            .collect();
        AbSubgroup::span(self.target.carrier(), &cols).map_err(|e| ModuleError::PreconditionViolation(e.to_string()))
    }

    pub fn kernel(&self) -> Result<AbSubgroup, ModuleError> {
        AbSubgroup::filter(self.source.carrier(), |x| self.target.carrier().is_zero(&self.apply(x)))
            .map_err(|e| ModuleError::PreconditionViolation(e.to_string()))
    }

    pub fn is_injective(&self) -> Result<bool, ModuleError> {
        Ok(self.image()?.order() as u128 == self.source.carrier().order())
    }

    pub fn is_surjective(&self) -> Result<bool, ModuleError> {
        Ok(self.image()?.order() as u128 == self.target.carrier().order())
    }

    pub fn is_isomorphism(&self) -> Result<bool, ModuleError> {
        Ok(self.is_injective()? && self.is_surjective()?)
    }

    /// `f^∨ : N^∨ → M^∨`, `φ ↦ φ∘f`, for duals taken into the same cyclic `C`.
    pub fn dual(&self, c: &GModule) -> Result<ModuleHom, ModuleError> {
        let md = self.source.dual(c)?;
        let nd = self.target.dual(c)?;
        let (s, t) = (self.source.rank(), self.target.rank());
        let (d, e) = (self.source.moduli(), self.target.moduli());
        let mut m = vec![0; s * t];
        for i in 0..t {
            for j in 0..s {
                let x = self.matrix[i * s + j] * d[j];
                debug_assert_eq!(x % e[i], 0);
                m[j * t + i] = x / e[i];
            }
        }
        Self::from_flat(&nd, &md, m)
    }
}

/// A bilinear map `left × right → target`, given by its values on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    left: Arc<GModule>,
    right: Arc<GModule>,
    target: Arc<GModule>,
    table: Vec<Vec<i64>>,
}

impl Pairing {
    pub fn new(
        left: &Arc<GModule>,
        right: &Arc<GModule>,
        target: &Arc<GModule>,
        table: Vec<Vec<i64>>,
    ) -> Result<Pairing, ModuleError> {
        if left.group() != right.group() || left.group() != target.group() {
            return Err(ModuleError::GroupMismatch);
        }
        let (kl, kr) = (left.rank(), right.rank());
        if table.len() != kl * kr || table.iter().any(|v| v.len() != target.rank()) {
            return Err(ModuleError::Shape { rows: table.len(), cols: 0, want_rows: kl * kr, want_cols: target.rank() });
        }
        let table: Vec<Vec<i64>> = table.iter().map(|v| target.carrier().reduce(v)).collect();
        for i in 0..kl {
            for j in 0..kr {
                let v = &table[i * kr + j];
                let tc = target.carrier();
                if !tc.is_zero(&tc.scale(left.moduli()[i], v)) || !tc.is_zero(&tc.scale(right.moduli()[j], v)) {
                    return Err(ModuleError::IncompatibleMatrix { sigma: 0, i, j });
                }
            }
        }
        let p = Pairing { left: left.clone(), right: right.clone(), target: target.clone(), table };
        for sigma in left.group().generators() {
            for i in 0..kl {
                for j in 0..kr {
                    let mut a = left.carrier().zero();
                    a[i] = 1;
                    let mut b = right.carrier().zero();
                    b[j] = 1;
                    if p.eval(&left.act(sigma, &a), &right.act(sigma, &b)) != target.act(sigma, &p.eval(&a, &b)) {
                        return Err(ModuleError::NotEquivariant { sigma, basis: i * kr + j });
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn left(&self) -> &Arc<GModule> {
        &self.left
    }

    pub fn right(&self) -> &Arc<GModule> {
        &self.right
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn value(&self, i: usize, j: usize) -> &[i64] {
        &self.table[i * self.right.rank() + j]
    }

    pub fn eval(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let kr = self.right.rank();
        let t = self.target.rank();
        let mut acc = vec![0i64; t];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y;
                for (k, &v) in self.table[i * kr + j].iter().enumerate() {
                    acc[k] += xy * v;
                }
            }
        }
        self.target.carrier().reduce(&acc)
    }

    /// `M × M^∨ → C`, `⟨e_i, ε_j⟩ = δ_ij·n/d_i`.
    pub fn evaluation(m: &Arc<GModule>, c: &Arc<GModule>) -> Result<(Arc<GModule>, Pairing), ModuleError> {
        let md = m.dual(c)?;
        let n = c.moduli()[0];
        let k = m.rank();
        let table = (0..k * k).map(|p| if p / k == p % k { vec![n / m.moduli()[p / k]] } else { vec![0] }).collect();
        let p = Pairing::new(m, &md, c, table)?;
        Ok((md, p))
    }

    /// `M^∨ × M → C` with the arguments of the evaluation swapped.
    pub fn swapped(&self) -> Result<Pairing, ModuleError> {
        let (kl, kr) = (self.left.rank(), self.right.rank());
        let table = (0..kr * kl).map(|p| self.table[(p % kl) * kr + p / kl].clone()).collect();
        Pairing::new(&self.right, &self.left, &self.target, table)
    }

    /// `M × N → M ⊗ N`.
    pub fn tensor(m: &Arc<GModule>, n: &Arc<GModule>) -> Result<(Arc<GModule>, Pairing), ModuleError> {
        let t = m.tensor(n)?;
        let r = t.rank();
        let table = (0..r)
            .map(|p| {
                let mut v = vec![0; r];
                v[p] = 1;
                v
            })
            .collect();
        let p = Pairing::new(m, n, &t, table)?;
        Ok((t, p))
    }

    /// The pairing over a subgroup of the acting group.
    pub fn restrict(&self, h: &crate::group::Subgroup) -> Result<Pairing, ModuleError> {
        Pairing::new(&self.left.restrict(h)?, &self.right.restrict(h)?, &self.target.restrict(h)?, self.table.clone())
    }

    /// Checks that `m ↦ B(m, −)` is a bijection `left → Hom(right, target)`
    /// and likewise on the right, by enumeration.
    pub fn is_perfect(&self) -> Result<bool, ModuleError> {
        let lc = self.left.carrier();
        let rc = self.right.carrier();
        let err = |e: crate::error::CochainError| ModuleError::PreconditionViolation(e.to_string());
        if lc.order() != rc.order() {
            return Ok(false);
        }
        let rbasis: Vec<Vec<i64>> = (0..rc.rank()).map(|j| { let mut e = rc.zero(); e[j] = 1; e }).collect();
        let lbasis: Vec<Vec<i64>> = (0..lc.rank()).map(|j| { let mut e = lc.zero(); e[j] = 1; e }).collect();
        for x in lc.elements().map_err(err)? {
            if !lc.is_zero(&x) && rbasis.iter().all(|b| self.target.carrier().is_zero(&self.eval(&x, b))) {
                return Ok(false);
            }
        }
        for y in rc.elements().map_err(err)? {
            if !rc.is_zero(&y) && lbasis.iter().all(|a| self.target.carrier().is_zero(&self.eval(a, &y))) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn evaluation_pairing_is_perfect() {
        let g = FiniteGroup::cyclic(2);
        let c = GModule::build(&g.whole(), vec![4], &[(1, vec![vec![3]])]).unwrap();
        let m = GModule::build(&g.whole(), vec![2, 4], &[(1, vec![vec![1, 0], vec![2, 3]])]).unwrap();
        let (_, p) = Pairing::evaluation(&m, &c).unwrap();
        assert!(p.is_perfect().unwrap());
    }

    #[test]
    fn dual_of_composition() {
        let g = FiniteGroup::cyclic(2);
        let c = GModule::trivial_action(&g.whole(), vec![4]);
        let z2 = GModule::trivial_action(&g.whole(), vec![2]);
        let z4 = GModule::trivial_action(&g.whole(), vec![4]);
        let iota = ModuleHom::new(&z2, &z4, &[vec![2]]).unwrap();
        let pi = ModuleHom::new(&z4, &z2, &[vec![1]]).unwrap();
        assert!(pi.compose(&iota).unwrap().image().unwrap().order() == 1);
        let lhs = pi.compose(&iota).unwrap().dual(&c).unwrap();
        let rhs = iota.dual(&c).unwrap().compose(&pi.dual(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(iota.is_injective().unwrap() && pi.is_surjective().unwrap());
    }
}
