//! Pushouts, pullbacks and Baer sums of decorated sequences, and the
//! cyclotomic-style sequences built from them.

use std::sync::Arc;

use crate::context::{DecoratedModule, DualityContext};
use crate::error::{ContextError, CtpError, ModuleError};
use crate::finab::AbSubgroup;
use crate::group_change;
use crate::hom::ModuleHom;
use crate::module::GModule;
use crate::sequence::DecoratedSequence;
use crate::subquotient::{basis, quotient, submodule, ModuleSubquotient};

/// `f_*(W)` at every place.
pub fn push_conditions(ctx: &DualityContext, f: &ModuleHom, w: &[AbSubgroup]) -> Result<Vec<AbSubgroup>, ContextError> {
    let mut out = Vec::new();
    for (v, wv) in w.iter().enumerate() {
        let fv = group_change::induced_by(&f.restrict(&ctx.places[v].decomposition)?, 1)?;
        out.push(wv.image(&fv.target.finab(), |x| fv.apply(x))?);
    }
    Ok(out)
}

/// `f_*⁻¹(W)` at every place.
pub fn pull_conditions(ctx: &DualityContext, f: &ModuleHom, w: &[AbSubgroup]) -> Result<Vec<AbSubgroup>, ContextError> {
    let mut out = Vec::new();
    for (v, wv) in w.iter().enumerate() {
        let fv = group_change::induced_by(&f.restrict(&ctx.places[v].decomposition)?, 1)?;
        out.push(fv.source.finab().whole().preimage(|x| fv.apply(x), wv));
    }
    Ok(out)
}

fn sum_conditions(a: &[AbSubgroup], b: &[AbSubgroup]) -> Result<Vec<AbSubgroup>, ContextError> {
    a.iter().zip(b).map(|(x, y)| Ok(x.sum(y)?)).collect()
}

fn meet_conditions(a: &[AbSubgroup], b: &[AbSubgroup]) -> Vec<AbSubgroup> {
    a.iter().zip(b).map(|(x, y)| x.intersect(y)).collect()
}

/// Inclusions and projections of `A ⊕ B`.
pub struct DirectSum {
    pub module: Arc<GModule>,
    pub in1: ModuleHom,
    pub in2: ModuleHom,
    pub pr1: ModuleHom,
    pub pr2: ModuleHom,
}

pub fn direct_sum(a: &Arc<GModule>, b: &Arc<GModule>) -> Result<DirectSum, ModuleError> {
    let s = a.direct_sum(b)?;
    let (k, l) = (a.rank(), b.rank());
    let unit = |i: usize, j: usize| i64::from(i == j);
    let in1: Vec<Vec<i64>> = (0..k + l).map(|i| (0..k).map(|j| unit(i, j)).collect()).collect();
    let in2: Vec<Vec<i64>> = (0..k + l).map(|i| (0..l).map(|j| unit(i, j + k)).collect()).collect();
    let pr1: Vec<Vec<i64>> = (0..k).map(|i| (0..k + l).map(|j| unit(i, j)).collect()).collect();
    let pr2: Vec<Vec<i64>> = (0..l).map(|i| (0..k + l).map(|j| unit(i + k, j)).collect()).collect();
    Ok(DirectSum {
        in1: ModuleHom::new(a, &s, &in1)?,
        in2: ModuleHom::new(b, &s, &in2)?,
        pr1: ModuleHom::new(&s, a, &pr1)?,
        pr2: ModuleHom::new(&s, b, &pr2)?,
        module: s,
    })
}

/// `(f, g): A → B ⊕ C`.
fn pair_into(ds: &DirectSum, f: &ModuleHom, g: &ModuleHom) -> Result<ModuleHom, ModuleError> {
    ds.in1.compose(f)?.add(&ds.in2.compose(g)?)
}

/// `f + g` on `A ⊕ B → C`.
fn sum_out(ds: &DirectSum, f: &ModuleHom, g: &ModuleHom) -> Result<ModuleHom, ModuleError> {
    f.compose(&ds.pr1)?.add(&g.compose(&ds.pr2)?)
}

pub fn hom_from_columns(source: &Arc<GModule>, target: &Arc<GModule>, cols: &[Vec<i64>]) -> Result<ModuleHom, ModuleError> {
    let rows: Vec<Vec<i64>> = (0..target.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    ModuleHom::new(source, target, &rows)
}

/// A sequence together with its morphism from or to the original.
pub struct Transported {
    pub sequence: DecoratedSequence,
    /// The middle map of the morphism of sequences (`M → P` for a pushout,
    /// `Q → M` for a pullback).
    pub middle: ModuleHom,
}

/// The pushout along `g: M1 → N`, with `W_P = ι'_*(W_N) + h_*(W_M)`.
pub fn pushout(ctx: &DualityContext, e: &DecoratedSequence, g: &ModuleHom, n: &DecoratedModule) -> Result<Transported, CtpError> {
    if g.source() != &e.m1.module || g.target() != &n.module {
        return Err(CtpError::NotComposable("g must map M1 to the decorated module N".into()));
    }
    let ds = direct_sum(&n.module, &e.m.module)?;
    let rel_map = pair_into(&ds, g, &e.iota.scale(-1))?;
    let rel: Vec<Vec<i64>> = basis(&e.m1.module).iter().map(|x| rel_map.apply(x)).collect();
    let p = quotient(&ds.module, &rel)?;
    let proj = p.projection()?;
    let iota2 = proj.compose(&ds.in1)?;
    let h = proj.compose(&ds.in2)?;
    let pi_cols: Vec<Vec<i64>> = p.lifts.iter().map(|x| e.pi.apply(&ds.pr2.apply(x))).collect();
    let pi2 = hom_from_columns(&p.module, &e.m2.module, &pi_cols)?;
    let w = sum_conditions(&push_conditions(ctx, &iota2, &n.conditions)?, &push_conditions(ctx, &h, &e.m.conditions)?)?;
    let mid = DecoratedModule::new(ctx, p.module.clone(), w)?;
    let sequence = DecoratedSequence::new(ctx, n.clone(), mid, e.m2.clone(), iota2, pi2)?;
    Ok(Transported { sequence, middle: h })
}

/// The pullback along `h: N → M2`, with `W_Q = q_M⁻¹(W_M) ∩ q_N⁻¹(W_N)`.
pub fn pullback(ctx: &DualityContext, e: &DecoratedSequence, h: &ModuleHom, n: &DecoratedModule) -> Result<Transported, CtpError> {
    if h.target() != &e.m2.module || h.source() != &n.module {
        return Err(CtpError::NotComposable("h must map the decorated module N to M2".into()));
    }
    let ds = direct_sum(&e.m.module, &n.module)?;
    let diff = sum_out(&ds, &e.pi, &h.scale(-1))?;
    let q = submodule(&ds.module, &diff.kernel()?.generators())?;
    let incl = q.inclusion()?;
    let qm = ds.pr1.compose(&incl)?;
    let qn = ds.pr2.compose(&incl)?;
    let into = pair_into(&ds, &e.iota, &ModuleHom::zero(&e.m1.module, &n.module)?)?;
    let iota_cols = basis(&e.m1.module)
        .iter()
        .map(|x| q.project(&into.apply(x)).ok_or_else(|| ModuleError::PreconditionViolation("ι(M1) outside the fibre product".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let iota2 = hom_from_columns(&e.m1.module, &q.module, &iota_cols)?;
    let w = meet_conditions(&pull_conditions(ctx, &qm, &e.m.conditions)?, &pull_conditions(ctx, &qn, &n.conditions)?);
    let mid = DecoratedModule::new(ctx, q.module.clone(), w)?;
    let sequence = DecoratedSequence::new(ctx, e.m1.clone(), mid, n.clone(), iota2, qn)?;
    Ok(Transported { sequence, middle: qm })
}

/// `[M1 →−ι M →π M2]`, the negative in the extension group.
pub fn negate(ctx: &DualityContext, e: &DecoratedSequence) -> Result<DecoratedSequence, CtpError> {
    Ok(DecoratedSequence::new(ctx, e.m1.clone(), e.m.clone(), e.m2.clone(), e.iota.scale(-1), e.pi.clone())?)
}

fn sum_decorated(ctx: &DualityContext, a: &DecoratedModule, b: &DecoratedModule) -> Result<(DirectSum, DecoratedModule), CtpError> {
    let ds = direct_sum(&a.module, &b.module)?;
    let w = meet_conditions(&pull_conditions(ctx, &ds.pr1, &a.conditions)?, &pull_conditions(ctx, &ds.pr2, &b.conditions)?);
    let d = DecoratedModule::new(ctx, ds.module.clone(), w)?;
    Ok((ds, d))
}

/// `E ⊕ E'`.
pub fn sequence_sum(ctx: &DualityContext, e: &DecoratedSequence, f: &DecoratedSequence) -> Result<DecoratedSequence, CtpError> {
    let (s1, d1) = sum_decorated(ctx, &e.m1, &f.m1)?;
    let (s, d) = sum_decorated(ctx, &e.m, &f.m)?;
    let (s2, d2) = sum_decorated(ctx, &e.m2, &f.m2)?;
    let iota = pair_into(&s, &e.iota.compose(&s1.pr1)?, &f.iota.compose(&s1.pr2)?)?;
    let pi = pair_into(&s2, &e.pi.compose(&s.pr1)?, &f.pi.compose(&s.pr2)?)?;
    Ok(DecoratedSequence::new(ctx, d1, d, d2, iota, pi)?)
}

/// The Baer sum of two extensions of `M2` by `M1`: pull back `E ⊕ E'` along
/// the diagonal of `M2`, then push out along the sum map of `M1`.
pub fn baer_sum(ctx: &DualityContext, e: &DecoratedSequence, f: &DecoratedSequence) -> Result<DecoratedSequence, CtpError> {
    if e.m1 != f.m1 || e.m2 != f.m2 {
        return Err(CtpError::NotComposable("Baer sum needs equal end terms with equal local conditions".into()));
    }
    let both = sequence_sum(ctx, e, f)?;
    let s2 = direct_sum(&e.m2.module, &f.m2.module)?;
    let id2 = ModuleHom::identity(&e.m2.module);
    let diag = pair_into(&s2, &id2, &id2)?;
    let pulled = pullback(ctx, &both, &diag, &e.m2)?.sequence;
    let s1 = direct_sum(&e.m1.module, &f.m1.module)?;
    let id1 = ModuleHom::identity(&e.m1.module);
    let add = sum_out(&s1, &id1, &id1)?;
    Ok(pushout(ctx, &pulled, &add, &e.m1)?.sequence)
}

/// `E − E'`.
pub fn baer_difference(ctx: &DualityContext, e: &DecoratedSequence, f: &DecoratedSequence) -> Result<DecoratedSequence, CtpError> {
    baer_sum(ctx, e, &negate(ctx, f)?)
}

/// Checks that `C[m]` is `Z/m` with trivial action (`μ_m` is rational).
pub fn check_roots_of_unity(ctx: &DualityContext, m: i64) -> Result<(), ModuleError> {
    let n = ctx.exponent();
    if n % m != 0 {
        return Err(ModuleError::ExponentMismatch { exponent: m, n });
    }
    let units = ctx.coefficient.cyclic_units()?;
    if units.iter().any(|&u| (u - 1).rem_euclid(m) != 0) {
        return Err(ModuleError::PreconditionViolation(format!("the action on C[{m}] is not trivial")));
    }
    Ok(())
}

/// `(1/m)Z/Z` as `Z/m` with trivial action.
pub fn z_mod(ctx: &DualityContext, m: i64) -> Arc<GModule> {
    GModule::trivial_action(&ctx.ambient, vec![m])
}

/// `μ_m ⊆ C`, realized as the dual of `Z/m`.
pub fn mu(ctx: &DualityContext, m: i64) -> Result<Arc<GModule>, ModuleError> {
    if ctx.exponent() % m != 0 {
        return Err(ModuleError::ExponentMismatch { exponent: m, n: ctx.exponent() });
    }
    z_mod(ctx, m).dual(&ctx.coefficient)
}

/// `E(a, b) = [0 → Z/a →·b Z/ab → Z/b → 0]` with unramified conditions.
pub fn cyclotomic_family(ctx: &DualityContext, a: i64, b: i64) -> Result<DecoratedSequence, CtpError> {
    check_roots_of_unity(ctx, a * b)?;
    let (za, zab, zb) = (z_mod(ctx, a), z_mod(ctx, a * b), z_mod(ctx, b));
    let iota = ModuleHom::new(&za, &zab, &[vec![b]])?;
    let pi = ModuleHom::new(&zab, &zb, &[vec![1]])?;
    Ok(DecoratedSequence::unramified(ctx, iota, pi)?)
}

/// `g_m: Z/m → μ_m`, the identity in coordinates.
pub fn g_morphism(ctx: &DualityContext, m: i64) -> Result<ModuleHom, CtpError> {
    check_roots_of_unity(ctx, m)?;
    Ok(ModuleHom::new(&z_mod(ctx, m), &mu(ctx, m)?, &[vec![1]])?)
}

/// `E_n`: the pushout of `E(n, n)` along `g_n`.
pub fn e_n(ctx: &DualityContext, n: i64) -> Result<DecoratedSequence, CtpError> {
    let e = cyclotomic_family(ctx, n, n)?;
    let g = g_morphism(ctx, n)?;
    let target = crate::context::dual_decorated(ctx, &e.m1)?;
    Ok(pushout(ctx, &e, &g, &target)?.sequence)
}

/// `E_n − E_n^∨`.
pub fn m_n_sequence(ctx: &DualityContext, n: i64) -> Result<DecoratedSequence, CtpError> {
    let e = e_n(ctx, n)?;
    let d = e.dual(ctx)?;
    baer_difference(ctx, &e, &d)
}

/// `m`-torsion of every term, with conditions pulled back along the
/// inclusions.
pub fn torsion_sequence(ctx: &DualityContext, e: &DecoratedSequence, m: i64) -> Result<DecoratedSequence, CtpError> {
    Ok(torsion_parts(ctx, e, m)?.0)
}

/// `E[m]` with the three torsion submodules it was cut out by.
pub fn torsion_parts(ctx: &DualityContext, e: &DecoratedSequence, m: i64) -> Result<(DecoratedSequence, [ModuleSubquotient; 3]), CtpError> {
    let tors = |x: &DecoratedModule| -> Result<(DecoratedModule, ModuleSubquotient), CtpError> {
        let mult = ModuleHom::identity(&x.module).scale(m);
        let sub = submodule(&x.module, &mult.kernel()?.generators())?;
        let w = pull_conditions(ctx, &sub.inclusion()?, &x.conditions)?;
        Ok((DecoratedModule::new(ctx, sub.module.clone(), w)?, sub))
    };
    let (t1, s1) = tors(&e.m1)?;
    let (t, s) = tors(&e.m)?;
    let (t2, s2) = tors(&e.m2)?;
    let restrict = |f: &ModuleHom, src: &ModuleSubquotient, dst: &ModuleSubquotient| -> Result<ModuleHom, CtpError> {
        let cols = src
            .lifts
            .iter()
            .map(|x| dst.project(&f.apply(x)).ok_or_else(|| CtpError::NotComposable("map does not preserve torsion".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(hom_from_columns(&src.module, &dst.module, &cols)?)
    };
    let iota = restrict(&e.iota, &s1, &s)?;
    let pi = restrict(&e.pi, &s, &s2)?;
    Ok((DecoratedSequence::new(ctx, t1, t, t2, iota, pi)?, [s1, s, s2]))
}

/// Inverse of an isomorphism, by tabulation.
pub fn invert(f: &ModuleHom) -> Result<ModuleHom, CtpError> {
    let src = f.source().carrier().clone();
    let tgt = f.target().carrier().clone();
    let mut table = vec![None; tgt.order() as usize];
    for x in src.elements()? {
        let k = tgt.encode(&f.apply(&x)) as usize;
        table[k] = Some(x);
    }
    let cols = basis(f.target())
        .iter()
        .map(|y| table[tgt.encode(y) as usize].clone().ok_or_else(|| CtpError::NotComposable("map is not invertible".into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(hom_from_columns(f.target(), f.source(), &cols)?)
}
