//! Induction of decorated objects from a subgroup context and the
//! comparison of pairings across it.

use crate::context::{dual_decorated, selmer, DecoratedModule, DerivedContext};
use crate::ctp::ctp;
use crate::error::{ContextError, CtpError};
use crate::finab::AbSubgroup;
use crate::group_change::{self, ClassMap};
use crate::induced::{t_iso, Induced};
use crate::qz::QZ;
use crate::sequence::DecoratedSequence;

/// `shap_loc,v` for every base place, in base-place order.
pub fn local_shapiro(dc: &DerivedContext, ind: &Induced) -> Result<Vec<ClassMap>, ContextError> {
    let mut out = Vec::new();
    for (v, p) in dc.base.places.iter().enumerate() {
        let rs = group_change::restricted_shapiro(ind, &p.decomposition, 1)?;
        let taus: Vec<_> = dc.over.iter().filter(|(b, _)| *b == v).map(|(_, t)| *t).collect();
        if taus != rs.decomposition.reps {
            return Err(ContextError::ContextMismatch);
        }
        out.push(rs.forward);
    }
    Ok(out)
}

/// `(Ind M, shap_loc(W))`.
pub fn induce_decorated(dc: &DerivedContext, x: &DecoratedModule) -> Result<(Induced, DecoratedModule), ContextError> {
    let ind = Induced::new(&dc.base.ambient, &x.module)?;
    let maps = local_shapiro(dc, &ind)?;
    let mut conditions = Vec::new();
    for (v, sh) in maps.iter().enumerate() {
        let src = sh.source.finab();
        let ws: Vec<usize> = (0..dc.over.len()).filter(|&w| dc.over[w].0 == v).collect();
        let mut gens = Vec::new();
        let mut offset = 0;
        for (part, &w) in sh.source.parts.iter().zip(&ws) {
            for g in x.conditions[w].generators() {
                let mut e = vec![0; src.rank()];
                e[offset..offset + part.rank()].copy_from_slice(&g);
                gens.push(e);
            }
            offset += part.rank();
        }
        let wsum = AbSubgroup::span(&src, &gens)?;
        conditions.push(wsum.image(&sh.target.finab(), |c| sh.apply(c))?);
    }
    let d = DecoratedModule::new(&dc.base, ind.module.clone(), conditions)?;
    Ok((ind, d))
}

/// `Ind E` over the base context.
pub fn induce_sequence(dc: &DerivedContext, e: &DecoratedSequence) -> Result<(DecoratedSequence, [Induced; 3]), CtpError> {
    let (i1, d1) = induce_decorated(dc, &e.m1)?;
    let (i, d) = induce_decorated(dc, &e.m)?;
    let (i2, d2) = induce_decorated(dc, &e.m2)?;
    let iota = i1.induce_hom(&e.iota, &i)?;
    let pi = i.induce_hom(&e.pi, &i2)?;
    let seq = DecoratedSequence::new(&dc.base, d1, d, d2, iota, pi)?;
    Ok((seq, [i1, i, i2]))
}

/// `t(shap_loc(W^⊥)) = shap_loc(W)^⊥`.
pub fn duality_functor_holds(dc: &DerivedContext, x: &DecoratedModule) -> Result<bool, CtpError> {
    let (_, ind_x) = induce_decorated(dc, x)?;
    let xd = dual_decorated(&dc.derived, x)?;
    let (_, ind_xd) = induce_decorated(dc, &xd)?;
    let t = t_iso(&dc.base.ambient, &x.module, &dc.base.coefficient)?;
    let pushed = crate::extension::push_conditions(&dc.base, &t.map, &ind_xd.conditions)?;
    let perp = dual_decorated(&dc.base, &ind_x)?;
    Ok(pushed == perp.conditions)
}

/// `shap(Sel_K M) = Sel_F(Ind M)`.
pub fn selmer_shapiro_holds(dc: &DerivedContext, x: &DecoratedModule) -> Result<bool, CtpError> {
    let (ind, ind_x) = induce_decorated(dc, x)?;
    let sel_k = selmer(&dc.derived, x)?;
    let sel_f = selmer(&dc.base, &ind_x)?;
    let sh = group_change::shap(&ind, 1)?;
    Ok(sel_k.group.image(&sh.target.finab(), |c| sh.apply(c))? == sel_f.group)
}

/// Both sides of `CTP_{Ind E}(shap φ, t(shap ψ)) = CTP_E(φ, ψ)`.
#[derive(Clone, Debug)]
pub struct FieldChangeReport {
    pub phi: Vec<i64>,
    pub psi: Vec<i64>,
    pub over_k: QZ,
    pub over_f: QZ,
}

impl FieldChangeReport {
    pub fn holds(&self) -> bool {
        self.over_k == self.over_f
    }
}

pub struct InducedSetup {
    pub sequence: DecoratedSequence,
    pub shap_left: ClassMap,
    /// `t ∘ shap` on `H¹(H, M1^∨)`.
    pub shap_right: ClassMap,
}

pub fn induced_setup(dc: &DerivedContext, e: &DecoratedSequence) -> Result<InducedSetup, CtpError> {
    let (sequence, [_, _, i2]) = induce_sequence(dc, e)?;
    let shap_left = group_change::shap(&i2, 1)?;
    let t = t_iso(&dc.base.ambient, &e.m1.module, &dc.base.coefficient)?;
    let shap_right = group_change::induced_by(&t.map, 1)?.compose(&group_change::shap(&t.ind_dual, 1)?);
    Ok(InducedSetup { sequence, shap_left, shap_right })
}

pub fn field_change_ctp(dc: &DerivedContext, e: &DecoratedSequence, setup: &InducedSetup, phi: &[i64], psi: &[i64]) -> Result<FieldChangeReport, CtpError> {
    let over_k = ctp(&dc.derived, e, phi, psi, None)?.value;
    let over_f = ctp(&dc.base, &setup.sequence, &setup.shap_left.apply(phi), &setup.shap_right.apply(psi), None)?.value;
    Ok(FieldChangeReport { phi: phi.to_vec(), psi: psi.to_vec(), over_k, over_f })
}

/// `W_w = res_{w|v}(W_v)` on `M|_H`.
pub fn restrict_decorated(dc: &DerivedContext, x: &DecoratedModule) -> Result<DecoratedModule, ContextError> {
    let h = &dc.derived.ambient;
    let mut conditions = Vec::new();
    for (w, &(v, tau)) in dc.over.iter().enumerate() {
        let r = group_change::res_wv(&x.module, &dc.base.places[v].decomposition, &dc.derived.places[w].decomposition, tau, 1)?;
        conditions.push(x.conditions[v].image(&r.target.finab(), |c| r.apply(c))?);
    }
    DecoratedModule::new(&dc.derived, x.module.restrict(h)?, conditions)
}

/// `E` over `F` restricted to `H`, middle conditions restricted and the
/// ends strict.
pub fn restrict_sequence(dc: &DerivedContext, e: &DecoratedSequence) -> Result<DecoratedSequence, ContextError> {
    let h = &dc.derived.ambient;
    let m = restrict_decorated(dc, &e.m)?;
    DecoratedSequence::strict(&dc.derived, m, e.iota.restrict(h)?, e.pi.restrict(h)?)
}

/// `Σ_{w|v} cor_{w|v}(W_K) ⊆ W_F` at every `v`. `xf` and `xk` carry the
/// same underlying `G`-module.
pub fn cores_preserves(dc: &DerivedContext, xf: &DecoratedModule, xk: &DecoratedModule) -> Result<bool, ContextError> {
    for (w, &(v, tau)) in dc.over.iter().enumerate() {
        let c = group_change::cor_wv(&xf.module, &dc.base.places[v].decomposition, &dc.derived.places[w].decomposition, tau, 1)?;
        if !xk.conditions[w].image(&c.target.finab(), |x| c.apply(x))?.is_subset_of(&xf.conditions[v]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `res_{w|v}(W_F) ⊆ W_K` at every `w`.
pub fn res_preserves(dc: &DerivedContext, xf: &DecoratedModule, xk: &DecoratedModule) -> Result<bool, ContextError> {
    Ok(restrict_decorated(dc, xf)?.conditions.iter().zip(&xk.conditions).all(|(a, b)| a.is_subset_of(b)))
}

/// One outcome of the restriction/corestriction identities; `None` when
/// the hypothesis fails.
#[derive(Clone, Debug)]
pub struct AdjointnessReport {
    pub cores_hypothesis: bool,
    pub res_hypothesis: bool,
    /// `CTP_F(cor φ, ψ) = CTP_K(φ, res ψ)` on all generator pairs.
    pub part1: Option<bool>,
    /// `CTP_F(φ, cor ψ) = CTP_K(res φ, ψ)`.
    pub part2: Option<bool>,
    /// `CTP_K(res φ, res ψ) = [G:H]·CTP_F(φ, ψ)`.
    pub part3: Option<bool>,
    pub witness: Option<String>,
}

pub fn adjointness(dc: &DerivedContext, ef: &DecoratedSequence, ek: &DecoratedSequence) -> Result<AdjointnessReport, CtpError> {
    let (f, k) = (&dc.base, &dc.derived);
    let h = &k.ambient;
    let terms = [(&ef.m1, &ek.m1), (&ef.m, &ek.m), (&ef.m2, &ek.m2)];
    let mut cores_hypothesis = true;
    let mut res_hypothesis = true;
    for (xf, xk) in terms {
        if xk.module != xf.module.restrict(h)? {
            return Err(ContextError::ContextMismatch.into());
        }
        cores_hypothesis &= cores_preserves(dc, xf, xk)?;
        res_hypothesis &= res_preserves(dc, xf, xk)?;
    }
    let m1d = ctx_dual(f, &ef.m1.module)?;
    if ctx_dual(k, &ek.m1.module)? != m1d.restrict(h)? {
        return Err(ContextError::ContextMismatch.into());
    }
    let m2 = &ef.m2.module;
    let (cor2, res2) = (group_change::cores(m2, h, 1)?, group_change::res(m2, h, 1)?);
    let (cor1, res1) = (group_change::cores(&m1d, h, 1)?, group_change::res(&m1d, h, 1)?);
    let sel = |ctx, x| -> Result<Vec<Vec<i64>>, CtpError> { Ok(selmer(ctx, x)?.generators()) };
    let (sf2, sk2) = (sel(f, &ef.m2)?, sel(k, &ek.m2)?);
    let (sf1, sk1) = (sel(f, &dual_decorated(f, &ef.m1)?)?, sel(k, &dual_decorated(k, &ek.m1)?)?);
    let index = h.index_in(&f.ambient) as i64;
    let mut witness = None;
    let mut check = |label: &str, lhs: QZ, rhs: QZ, ok: &mut bool| {
        if lhs != rhs {
            *ok = false;
            witness.get_or_insert(format!("{label}: {lhs} != {rhs}"));
        }
    };
    let mut part1 = None;
    if cores_hypothesis {
        let mut ok = true;
        for phi in &sk2 {
            for psi in &sf1 {
                let lhs = ctp(f, ef, &cor2.apply(phi), psi, None)?.value;
                let rhs = ctp(k, ek, phi, &res1.apply(psi), None)?.value;
                check(&format!("part 1 at φ={phi:?} ψ={psi:?}"), lhs, rhs, &mut ok);
            }
        }
        part1 = Some(ok);
    }
    let mut part2 = None;
    if res_hypothesis {
        let mut ok = true;
        for phi in &sf2 {
            for psi in &sk1 {
                let lhs = ctp(f, ef, phi, &cor1.apply(psi), None)?.value;
                let rhs = ctp(k, ek, &res2.apply(phi), psi, None)?.value;
                check(&format!("part 2 at φ={phi:?} ψ={psi:?}"), lhs, rhs, &mut ok);
            }
        }
        part2 = Some(ok);
    }
    let mut part3 = None;
    if cores_hypothesis && res_hypothesis {
        let mut ok = true;
        for phi in &sf2 {
            for psi in &sf1 {
                let lhs = ctp(k, ek, &res2.apply(phi), &res1.apply(psi), None)?.value;
                let rhs = ctp(f, ef, phi, psi, None)?.value.times(index);
                check(&format!("part 3 at φ={phi:?} ψ={psi:?}"), lhs, rhs, &mut ok);
            }
        }
        part3 = Some(ok);
    }
    Ok(AdjointnessReport { cores_hypothesis, res_hypothesis, part1, part2, part3, witness })
}

fn ctx_dual(ctx: &crate::context::DualityContext, m: &std::sync::Arc<crate::module::GModule>) -> Result<std::sync::Arc<crate::module::GModule>, ContextError> {
    Ok(ctx.dual(m)?.0)
}
