//! Short exact sequences of decorated modules.

use std::sync::Arc;

use crate::context::{dual_decorated, unramified_conditions, DecoratedModule, DualityContext};
use crate::error::ContextError;
use crate::finab::AbSubgroup;
use crate::group_change;
use crate::hom::ModuleHom;
use crate::module::GModule;

/// `0 → M1 →ι M →π M2 → 0` with local conditions on every term, a
/// set-theoretic section of `π` and a table inverting `ι` on its image.
#[derive(Clone, Debug)]
pub struct DecoratedSequence {
    pub m1: DecoratedModule,
    pub m: DecoratedModule,
    pub m2: DecoratedModule,
    pub iota: ModuleHom,
    pub pi: ModuleHom,
    /// `section[encode(x)]` is the least-index preimage of `x ∈ M2`.
    pub section: Vec<Vec<i64>>,
    /// `iota_inverse[encode(y)]` for `y ∈ ι(M1)`.
    pub iota_inverse: Vec<Option<Vec<i64>>>,
}

fn not_exact(msg: String) -> ContextError {
    ContextError::NotExact(msg)
}

impl DecoratedSequence {
    pub fn new(
        ctx: &DualityContext,
        m1: DecoratedModule,
        m: DecoratedModule,
        m2: DecoratedModule,
        iota: ModuleHom,
        pi: ModuleHom,
    ) -> Result<DecoratedSequence, ContextError> {
        if iota.source() != &m1.module || iota.target() != &m.module || pi.source() != &m.module || pi.target() != &m2.module {
            return Err(ContextError::ContextMismatch);
        }
        if !iota.is_injective()? {
            return Err(not_exact("ι is not injective".into()));
        }
        if !pi.is_surjective()? {
            return Err(not_exact("π is not surjective".into()));
        }
        if iota.image()? != pi.kernel()? {
            return Err(not_exact("im ι ≠ ker π".into()));
        }
        let mc = m.module.carrier().clone();
        let m2c = m2.module.carrier().clone();
        let mut section: Vec<Option<Vec<i64>>> = vec![None; m2c.order() as usize];
        for x in mc.elements()? {
            let k = m2c.encode(&pi.apply(&x)) as usize;
            if section[k].is_none() {
                section[k] = Some(x);
            }
        }
        let section = section.into_iter().map(|s| s.expect("π is surjective")).collect();
        let mut iota_inverse = vec![None; mc.order() as usize];
        for x in m1.module.carrier().elements()? {
            let k = mc.encode(&iota.apply(&x)) as usize;
            iota_inverse[k] = Some(x);
        }
        let seq = DecoratedSequence { m1, m, m2, iota, pi, section, iota_inverse };
        seq.check_conditions(ctx)?;
        Ok(seq)
    }

    /// `ι⁻¹(W_v) = W1_v` and `π(W_v) = W2_v` at every place.
    pub fn check_conditions(&self, ctx: &DualityContext) -> Result<(), ContextError> {
        for (v, p) in ctx.places.iter().enumerate() {
            let (iv, pv) = self.local_maps(ctx, v)?;
            let pre = ctx.local_h1(&self.m1.module, v)?.finab().whole().preimage(|x| iv.apply(x), &self.m.conditions[v]);
            if pre != self.m1.conditions[v] {
                return Err(not_exact(format!("ι⁻¹(W) ≠ W1 at place {}", p.name)));
            }
            let img = self.m.conditions[v].image(&pv.target.finab(), |x| pv.apply(x))?;
            if img != self.m2.conditions[v] {
                return Err(not_exact(format!("π(W) ≠ W2 at place {}", p.name)));
            }
        }
        Ok(())
    }

    /// `ι_*` and `π_*` on `H¹(G_v, −)`.
    pub fn local_maps(&self, ctx: &DualityContext, v: usize) -> Result<(group_change::ClassMap, group_change::ClassMap), ContextError> {
        let gv = &ctx.places[v].decomposition;
        Ok((
            group_change::induced_by(&self.iota.restrict(gv)?, 1)?,
            group_change::induced_by(&self.pi.restrict(gv)?, 1)?,
        ))
    }

    /// Strict conditions transported from `W` on the middle term.
    pub fn strict(ctx: &DualityContext, m: DecoratedModule, iota: ModuleHom, pi: ModuleHom) -> Result<DecoratedSequence, ContextError> {
        let mut w1 = Vec::new();
        let mut w2 = Vec::new();
        for v in 0..ctx.places.len() {
            let gv = &ctx.places[v].decomposition;
            let iv = group_change::induced_by(&iota.restrict(gv)?, 1)?;
            let pv = group_change::induced_by(&pi.restrict(gv)?, 1)?;
            w1.push(iv.source.finab().whole().preimage(|x| iv.apply(x), &m.conditions[v]));
            w2.push(m.conditions[v].image(&pv.target.finab(), |x| pv.apply(x))?);
        }
        let m1 = DecoratedModule::new(ctx, iota.source().clone(), w1)?;
        let m2 = DecoratedModule::new(ctx, pi.target().clone(), w2)?;
        DecoratedSequence::new(ctx, m1, m, m2, iota, pi)
    }

    /// Unramified conditions on every term; fails with `NotExact` when these
    /// are not compatible.
    pub fn unramified(ctx: &DualityContext, iota: ModuleHom, pi: ModuleHom) -> Result<DecoratedSequence, ContextError> {
        let m1 = unramified_conditions(ctx, iota.source())?;
        let m = unramified_conditions(ctx, iota.target())?;
        let m2 = unramified_conditions(ctx, pi.target())?;
        DecoratedSequence::new(ctx, m1, m, m2, iota, pi)
    }

    /// `E^∨ = [0 → M2^∨ → M^∨ → M1^∨ → 0]` with orthogonal conditions.
    pub fn dual(&self, ctx: &DualityContext) -> Result<DecoratedSequence, ContextError> {
        let c = &ctx.coefficient;
        let d1 = dual_decorated(ctx, &self.m1)?;
        let d = dual_decorated(ctx, &self.m)?;
        let d2 = dual_decorated(ctx, &self.m2)?;
        let pd = self.pi.dual(c)?;
        let id = self.iota.dual(c)?;
        DecoratedSequence::new(ctx, d2, d, d1, pd, id)
    }

    pub fn dual_outer_left(&self, ctx: &DualityContext) -> Result<(Arc<GModule>, crate::hom::Pairing), ContextError> {
        ctx.dual(&self.m1.module)
    }

    pub fn conditions_preserved(
        ctx: &DualityContext,
        f: &ModuleHom,
        from: &DecoratedModule,
        to: &DecoratedModule,
    ) -> Result<bool, ContextError> {
        for v in 0..ctx.places.len() {
            let fv = group_change::induced_by(&f.restrict(&ctx.places[v].decomposition)?, 1)?;
            let img = from.conditions[v].image(&fv.target.finab(), |x| fv.apply(x))?;
            if !img.is_subset_of(&to.conditions[v]) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A subgroup given by generator classes, for building decorated modules.
pub fn span(h: &crate::cohomology::CohomologyGroup, gens: &[Vec<i64>]) -> Result<AbSubgroup, ContextError> {
    Ok(AbSubgroup::span(&h.finab(), gens)?)
}
