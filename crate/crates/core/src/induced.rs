//! Induced modules and the natural maps between induction, restriction and
//! conjugation.
//!
//! `Ind_H^G M` is stored as `[G:H]` blocks, one per coset of the canonical left
//! transversal; block `b` holds `[τ_b] ⊗ M`.

use std::sync::Arc;

use crate::error::ModuleError;
use crate::group::{Elem, Subgroup, Transversal};
use crate::hom::{ModuleHom, Pairing};
use crate::module::GModule;

#[derive(Clone, Debug)]
pub struct Induced {
    pub module: Arc<GModule>,
    pub base: Arc<GModule>,
    pub transversal: Transversal,
}

impl PartialEq for Induced {
    fn eq(&self, o: &Self) -> bool {
        self.module == o.module && self.base == o.base
    }
}

fn precondition(msg: &str) -> ModuleError {
    ModuleError::PreconditionViolation(msg.to_string())
}

impl Induced {
    pub fn new(ambient: &Subgroup, base: &Arc<GModule>) -> Result<Induced, ModuleError> {
        let h = base.group();
        if !h.is_subgroup_of(ambient) {
            return Err(precondition("H must be a subgroup of G"));
        }
        let t = Transversal::new(ambient, h);
        let g = ambient.parent();
        let k = base.rank();
        let nb = t.len();
        let n = nb * k;
        let moduli: Vec<i64> = (0..nb).flat_map(|_| base.moduli().iter().copied()).collect();
        let action = ambient
            .elements()
            .iter()
            .map(|&sigma| {
                let mut m = vec![0; n * n];
                for (b, &tb) in t.reps().iter().enumerate() {
                    let x = g.mul(sigma, tb);
                    let c = t.coset_of(x);
                    let hh = g.mul(g.inv(t.reps()[c]), x);
                    let a = base.matrix(hh).expect("h lies in H");
                    for r in 0..k {
                        for s in 0..k {
                            m[(c * k + r) * n + b * k + s] = a[r * k + s];
                        }
                    }
                }
                m
            })
            .collect();
        let module = GModule::from_action_unchecked(ambient.clone(), moduli, action);
        Ok(Induced { module, base: base.clone(), transversal: t })
    }

    pub fn blocks(&self) -> usize {
        self.transversal.len()
    }

    pub fn block_size(&self) -> usize {
        self.base.rank()
    }

    pub fn ambient(&self) -> &Subgroup {
        self.module.group()
    }

    pub fn sub(&self) -> &Subgroup {
        self.base.group()
    }

    /// `[σ] ⊗ m` as a vector of the induced module.
    pub fn elem(&self, sigma: Elem, m: &[i64]) -> Vec<i64> {
        let g = self.ambient().parent();
        let c = self.transversal.coset_of(sigma);
        let h = g.mul(g.inv(self.transversal.reps()[c]), sigma);
        let hm = self.base.act(h, m);
        let k = self.block_size();
        let mut v = vec![0; self.module.rank()];
        v[c * k..(c + 1) * k].copy_from_slice(&hm);
        v
    }

    pub fn component<'a>(&self, v: &'a [i64], b: usize) -> &'a [i64] {
        let k = self.block_size();
        &v[b * k..(b + 1) * k]
    }

    fn hom_from_basis(
        source: &Arc<GModule>,
        target: &Arc<GModule>,
        image: impl Fn(usize) -> Vec<i64>,
    ) -> Result<ModuleHom, ModuleError> {
        let (s, t) = (source.rank(), target.rank());
        let cols: Vec<Vec<i64>> = (0..s).map(image).collect();
        let mut flat = vec![0; s * t];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..t {
                flat[i * s + j] = c[i];
            }
        }
        let rows: Vec<Vec<i64>> = (0..t).map(|i| flat[i * s..(i + 1) * s].to_vec()).collect();
        ModuleHom::new(source, target, &rows)
    }

    /// `Ind(f)` for an `H`-map `f : M → N`, with `self` inducing `M`.
    pub fn induce_hom(&self, f: &ModuleHom, target: &Induced) -> Result<ModuleHom, ModuleError> {
        if f.source() != &self.base || f.target() != &target.base || self.ambient() != target.ambient() {
            return Err(precondition("induced map between mismatched modules"));
        }
        let (k, l) = (self.block_size(), target.block_size());
        Self::hom_from_basis(&self.module, &target.module, |j| {
            let (b, r) = (j / k, j % k);
            let mut e = self.base.carrier().zero();
            e[r] = 1;
            let fe = f.apply(&e);
            let mut v = vec![0; target.module.rank()];
            v[b * l..(b + 1) * l].copy_from_slice(&fe);
            v
        })
    }

    /// `i_1 : M → Res_H Ind M`, `m ↦ [1] ⊗ m`.
    pub fn i_1(&self) -> Result<ModuleHom, ModuleError> {
        let res = self.module.restrict(self.sub())?;
        Self::hom_from_basis(&self.base, &res, |j| {
            let mut e = self.base.carrier().zero();
            e[j] = 1;
            self.elem(self.ambient().parent().identity(), &e)
        })
    }

    /// `ν_1 : Res_H Ind M → M`, `[σ] ⊗ m ↦ σm` for `σ ∈ H`, else 0.
    pub fn nu_1(&self) -> Result<ModuleHom, ModuleError> {
        let res = self.module.restrict(self.sub())?;
        let k = self.block_size();
        Self::hom_from_basis(&res, &self.base, |j| {
            let (b, r) = (j / k, j % k);
            let mut e = self.base.carrier().zero();
            let tb = self.transversal.reps()[b];
            if self.sub().contains(tb) {
                e[r] = 1;
                self.base.act(tb, &e)
            } else {
                e
            }
        })
    }

    /// For a `G`-module `m`, the induced module of its restriction to `h`.
    pub fn of_restriction(m: &Arc<GModule>, h: &Subgroup) -> Result<Induced, ModuleError> {
        Induced::new(m.group(), &m.restrict(h)?)
    }

    /// `i : M → Ind Res M`, `m ↦ Σ_{σ∈G/H} [σ] ⊗ σ⁻¹m`; `self` must induce
    /// the restriction of the `G`-module `m`.
    pub fn i(&self, m: &Arc<GModule>) -> Result<ModuleHom, ModuleError> {
        self.check_restriction_of(m)?;
        let g = self.ambient().parent();
        Self::hom_from_basis(m, &self.module, |j| {
            let mut e = m.carrier().zero();
            e[j] = 1;
            let mut acc = vec![0; self.module.rank()];
            for &tb in self.transversal.reps() {
                let v = self.elem(tb, &m.act(g.inv(tb), &e));
                acc = self.module.carrier().add(&acc, &v);
            }
            acc
        })
    }

    /// `ν : Ind Res M → M`, `[σ] ⊗ m ↦ σm`.
    pub fn nu(&self, m: &Arc<GModule>) -> Result<ModuleHom, ModuleError> {
        self.check_restriction_of(m)?;
        let k = self.block_size();
        Self::hom_from_basis(&self.module, m, |j| {
            let (b, r) = (j / k, j % k);
            let mut e = m.carrier().zero();
            e[r] = 1;
            m.act(self.transversal.reps()[b], &e)
        })
    }

    fn check_restriction_of(&self, m: &Arc<GModule>) -> Result<(), ModuleError> {
        if m.group() != self.ambient() || *m.restrict(self.sub())? != *self.base {
            return Err(precondition("the induced module must come from the restriction of a G-module"));
        }
        Ok(())
    }

    /// `ρ_τ : Ind_H M → Ind_{τHτ⁻¹} τM`, `[σ] ⊗ m ↦ [στ⁻¹] ⊗ τ·m`.
    pub fn rho_tau(&self, tau: Elem) -> Result<(Induced, ModuleHom), ModuleError> {
        if !self.ambient().contains(tau) {
            return Err(precondition("τ must lie in G"));
        }
        let target = Induced::new(self.ambient(), &self.base.conjugate(tau))?;
        let g = self.ambient().parent();
        let k = self.block_size();
        let hom = Self::hom_from_basis(&self.module, &target.module, |j| {
            let (b, r) = (j / k, j % k);
            let mut e = self.base.carrier().zero();
            e[r] = 1;
            target.elem(g.mul(self.transversal.reps()[b], g.inv(tau)), &e)
        })?;
        Ok((target, hom))
    }
}

/// `c_τ : τ(Res_H M) → Res_{τHτ⁻¹} M`, `τ·m ↦ τm`, for a `G`-module `m`.
pub fn c_tau(m: &Arc<GModule>, h: &Subgroup, tau: Elem) -> Result<ModuleHom, ModuleError> {
    if !m.group().contains(tau) {
        return Err(precondition("τ must lie in G"));
    }
    let source = m.restrict(h)?.conjugate(tau);
    let target = m.restrict(&h.conjugate(tau))?;
    let a = m.matrix(tau)?.clone();
    let k = m.rank();
    let rows: Vec<Vec<i64>> = (0..k).map(|i| a[i * k..(i + 1) * k].to_vec()).collect();
    ModuleHom::new(&source, &target, &rows)
}

/// The pairing `t_M : Ind M × Ind M^∨ → C` together with the isomorphism
/// `Ind M^∨ → (Ind M)^∨` it induces. `c` is a cyclic `G`-module.
pub struct TIso {
    pub ind_m: Induced,
    pub ind_dual: Induced,
    pub dual_of_ind: Arc<GModule>,
    pub pairing: Pairing,
    pub map: ModuleHom,
}

pub fn t_iso(ambient: &Subgroup, m: &Arc<GModule>, c: &Arc<GModule>) -> Result<TIso, ModuleError> {
    if c.group() != ambient {
        return Err(ModuleError::GroupMismatch);
    }
    let ch = c.restrict(m.group())?;
    let md = m.dual(&ch)?;
    let ind_m = Induced::new(ambient, m)?;
    let ind_dual = Induced::new(ambient, &md)?;
    let dual_of_ind = ind_m.module.dual(c)?;
    let units = c.cyclic_units()?;
    let n = c.moduli()[0];
    let k = m.rank();
    let nb = ind_m.blocks();
    let rk = nb * k;
    let unit_of = |b: usize| units[ambient.position(ind_m.transversal.reps()[b]).unwrap()];
    let mut table = vec![vec![0]; rk * rk];
    for b in 0..nb {
        for r in 0..k {
            table[(b * k + r) * rk + b * k + r] = vec![unit_of(b) * (n / m.moduli()[r])];
        }
    }
    let pairing = Pairing::new(&ind_m.module, &ind_dual.module, c, table)?;
    let rows: Vec<Vec<i64>> = (0..rk).map(|i| (0..rk).map(|j| if i == j { unit_of(i / k) } else { 0 }).collect()).collect();
    let map = ModuleHom::new(&ind_dual.module, &dual_of_ind, &rows)?;
    Ok(TIso { ind_m, ind_dual, dual_of_ind, pairing, map })
}

/// `P : Ind M1 × Ind M2 → Ind(M1 ⊗ M2)`.
pub fn p_pairing(ambient: &Subgroup, m1: &Arc<GModule>, m2: &Arc<GModule>) -> Result<(Induced, Induced, Induced, Pairing), ModuleError> {
    let i1 = Induced::new(ambient, m1)?;
    let i2 = Induced::new(ambient, m2)?;
    let t = m1.tensor(m2)?;
    let it = Induced::new(ambient, &t)?;
    let (k, l) = (m1.rank(), m2.rank());
    let nb = i1.blocks();
    let (r1, r2) = (nb * k, nb * l);
    let mut table = vec![vec![0; it.module.rank()]; r1 * r2];
    for b in 0..nb {
        for r in 0..k {
            for s in 0..l {
                table[(b * k + r) * r2 + b * l + s][b * k * l + r * l + s] = 1;
            }
        }
    }
    let p = Pairing::new(&i1.module, &i2.module, &it.module, table)?;
    Ok((i1, i2, it, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn permutation_module_from_trivial_subgroup() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial_action(&g.trivial(), vec![2]);
        let ind = Induced::new(&g.whole(), &m).unwrap();
        assert_eq!(ind.module.moduli(), &[2, 2]);
        assert_eq!(ind.module.fixed_points().unwrap().order(), 2);
    }

    #[test]
    fn nu_after_i_is_index() {
        for g in [FiniteGroup::symmetric3(), FiniteGroup::cyclic(4)] {
            let h = g.subgroup(&[(1..g.order()).find(|&x| g.element_order(x) == 2).unwrap()]);
            let m = GModule::trivial_action(&g.whole(), vec![4]);
            let ind = Induced::of_restriction(&m, &h).unwrap();
            let composite = ind.nu(&m).unwrap().compose(&ind.i(&m).unwrap()).unwrap();
            let idx = h.index_in(&g.whole()) as i64;
            assert_eq!(composite, ModuleHom::identity(&m).scale(idx));
            let id1 = ind.nu_1().unwrap().compose(&ind.i_1().unwrap()).unwrap();
            assert_eq!(id1, ModuleHom::identity(&ind.base));
        }
    }

    #[test]
    fn t_iso_is_bijective() {
        let g = FiniteGroup::cyclic(4);
        let h = g.subgroup(&[2]);
        let c = GModule::trivial_action(&g.whole(), vec![2]);
        let m = GModule::trivial_action(&h, vec![2]);
        let t = t_iso(&g.whole(), &m, &c).unwrap();
        assert!(t.map.is_isomorphism().unwrap());
        assert!(t.pairing.is_perfect().unwrap());
    }
}
