//! Moving decomposition groups by conjugation, and the conjugation action
//! on Selmer groups over a normal subgroup.

use std::sync::Arc;

use crate::context::{dual_decorated, selmer, DecoratedModule, DerivedContext, DualityContext, InvMap, Place};
use crate::ctp::ctp;
use crate::error::{ContextError, CtpError};
use crate::group::Elem;
use crate::group_change::{self, ClassMap};
use crate::module::GModule;
use crate::sequence::DecoratedSequence;
use crate::cohomology::CohomologyGroup;

/// Replaces each `(G_v, I_v)` by `(τ_v⁻¹G_vτ_v, τ_v⁻¹I_vτ_v)`, with the
/// invariant transported along conjugation.
pub fn conjugate_context(ctx: &DualityContext, taus: &[Elem]) -> Result<DualityContext, ContextError> {
    if taus.len() != ctx.places.len() || taus.iter().any(|&t| !ctx.ambient.contains(t)) {
        return Err(ContextError::PreconditionViolation("one conjugating element in G per place".into()));
    }
    let g = &ctx.group;
    let c = &ctx.coefficient;
    let mut places = Vec::new();
    for (p, &tau) in ctx.places.iter().zip(taus) {
        let ti = g.inv(tau);
        let gv = p.decomposition.conjugate(ti);
        let back = group_change::conj_in(c, &gv, tau, 2)?;
        let h2 = CohomologyGroup::compute(&c.restrict(&gv)?, 2)?;
        let values = back.columns.iter().map(|x| p.inv.eval_coords(x)).collect();
        places.push(Place::from_inv(&p.name, gv, p.inertia.conjugate(ti), InvMap { h2, values }));
    }
    DualityContext::new(ctx.ambient.clone(), c.clone(), places)
}

/// `conj_loc` at every place.
pub fn conjugation_maps(ctx: &DualityContext, m: &Arc<GModule>, taus: &[Elem]) -> Result<Vec<ClassMap>, ContextError> {
    let g = &ctx.group;
    let mut out = Vec::new();
    for (p, &tau) in ctx.places.iter().zip(taus) {
        out.push(group_change::conj_in(m, &p.decomposition, g.inv(tau), 1)?);
    }
    Ok(out)
}

pub fn conjugate_decorated(ctx: &DualityContext, moved: &DualityContext, x: &DecoratedModule, taus: &[Elem]) -> Result<DecoratedModule, ContextError> {
    let maps = conjugation_maps(ctx, &x.module, taus)?;
    let conditions = x
        .conditions
        .iter()
        .zip(&maps)
        .map(|(w, c)| w.image(&c.target.finab(), |y| c.apply(y)))
        .collect::<Result<_, _>>()?;
    DecoratedModule::new(moved, x.module.clone(), conditions)
}

pub fn conjugate_sequence(ctx: &DualityContext, moved: &DualityContext, e: &DecoratedSequence, taus: &[Elem]) -> Result<DecoratedSequence, ContextError> {
    DecoratedSequence::new(
        moved,
        conjugate_decorated(ctx, moved, &e.m1, taus)?,
        conjugate_decorated(ctx, moved, &e.m, taus)?,
        conjugate_decorated(ctx, moved, &e.m2, taus)?,
        e.iota.clone(),
        e.pi.clone(),
    )
}

/// `CTP_E = CTP_{E'}` on Selmer generators, where `E'` lives on the
/// conjugated context. Returns the first disagreement.
pub fn embedding_independence(ctx: &DualityContext, e: &DecoratedSequence, taus: &[Elem]) -> Result<Option<String>, CtpError> {
    let moved = conjugate_context(ctx, taus)?;
    let e2 = conjugate_sequence(ctx, &moved, e, taus)?;
    let s2 = selmer(ctx, &e.m2)?;
    let s1 = selmer(ctx, &dual_decorated(ctx, &e.m1)?)?;
    if s2.group != selmer(&moved, &e2.m2)?.group || s1.group != selmer(&moved, &dual_decorated(&moved, &e2.m1)?)?.group {
        return Ok(Some("Selmer groups move under conjugation".into()));
    }
    for phi in s2.generators() {
        for psi in s1.generators() {
            let a = ctp(ctx, e, &phi, &psi, None)?.value;
            let b = ctp(&moved, &e2, &phi, &psi, None)?.value;
            if a != b {
                return Ok(Some(format!("φ={phi:?} ψ={psi:?}: {a} != {b}")));
            }
        }
    }
    Ok(None)
}

/// For `τ ∈ G` and each derived place `w`, the place `w'` with
/// `G_{w'} = σ G_w σ⁻¹` for `σ = hτ`, `h ∈ H`.
pub fn place_permutation(dc: &DerivedContext, tau: Elem) -> Result<Vec<(usize, Elem)>, ContextError> {
    let g = &dc.base.group;
    let h = &dc.derived.ambient;
    let mut out = Vec::new();
    for &(v, tw) in &dc.over {
        let gv = &dc.base.places[v].decomposition;
        let z = g.mul(tw, g.inv(tau));
        let found = dc.over.iter().enumerate().filter(|(_, (b, _))| *b == v).find_map(|(w2, &(_, t2))| {
            gv.elements().iter().find_map(|&a| {
                let hh = g.mul(g.inv(g.mul(a, t2)), z);
                h.contains(hh).then(|| (w2, g.mul(hh, tau)))
            })
        });
        out.push(found.ok_or_else(|| ContextError::PreconditionViolation("double cosets do not cover G".into()))?);
    }
    Ok(out)
}

/// `τ W = W` for a decorated module over the derived context whose
/// underlying module is the restriction of the `G`-module `lift`.
pub fn galois_stable(dc: &DerivedContext, x: &DecoratedModule, lift: &Arc<GModule>, tau: Elem) -> Result<bool, ContextError> {
    let perm = place_permutation(dc, tau)?;
    for (w, &(w2, sigma)) in perm.iter().enumerate() {
        let gw = &dc.derived.places[w].decomposition;
        if gw.conjugate(sigma) != dc.derived.places[w2].decomposition {
            return Err(ContextError::PreconditionViolation("place permutation does not match decomposition groups".into()));
        }
        let c = group_change::conj_in(lift, gw, sigma, 1)?;
        if x.conditions[w].image(&c.target.finab(), |y| c.apply(y))? != x.conditions[w2] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `CTP_E(τφ, τψ) = CTP_E(φ, ψ)` for `H` normal in `G` and Galois-stable
/// conditions. `None` when `H` is not normal or some condition is not
/// stable under `τ`.
pub fn galois_invariance(dc: &DerivedContext, e: &DecoratedSequence, lifts: [&Arc<GModule>; 3], tau: Elem) -> Result<Option<Option<String>>, CtpError> {
    let k = &dc.derived;
    let h = &k.ambient;
    if !h.is_normal_in(&dc.base.ambient) {
        return Ok(None);
    }
    for (x, l) in [&e.m1, &e.m, &e.m2].into_iter().zip(lifts) {
        if x.module != l.restrict(h)? {
            return Err(ContextError::ContextMismatch.into());
        }
        if !galois_stable(dc, x, l, tau)? {
            return Ok(None);
        }
    }
    let m1d = l_dual(dc, lifts[0])?;
    let act2 = group_change::conj_in(lifts[2], h, tau, 1)?;
    let act1 = group_change::conj_in(&m1d, h, tau, 1)?;
    let s2 = selmer(k, &e.m2)?;
    let s1 = selmer(k, &dual_decorated(k, &e.m1)?)?;
    for phi in s2.generators() {
        for psi in s1.generators() {
            let a = ctp(k, e, &phi, &psi, None)?.value;
            let b = ctp(k, e, &act2.apply(&phi), &act1.apply(&psi), None)?.value;
            if a != b {
                return Ok(Some(Some(format!("φ={phi:?} ψ={psi:?}: {a} != {b}"))));
            }
        }
    }
    Ok(Some(None))
}

fn l_dual(dc: &DerivedContext, m: &Arc<GModule>) -> Result<Arc<GModule>, ContextError> {
    let d = dc.base.dual(m)?.0;
    if d.restrict(&dc.derived.ambient)? != dc.derived.dual(&m.restrict(&dc.derived.ambient)?)?.0 {
        return Err(ContextError::ContextMismatch);
    }
    Ok(d)
}
