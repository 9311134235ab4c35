//! The shipped example contexts and sequences.

use std::sync::Arc;

use crate::cochain::Cochain;
use crate::cohomology::CohomologyGroup;
use crate::context::{derive_subgroup_context, DecoratedModule, DerivedContext, DualityContext, InvMap, Place};
use crate::error::{ContextError, CtpError};
use crate::extension::cyclotomic_family;
use crate::finab::AbSubgroup;
use crate::hom::ModuleHom;
use crate::sequence::DecoratedSequence;
use crate::group::{FiniteGroup, Subgroup};
use crate::module::GModule;
use crate::qz::QZ;

/// A place whose invariant takes the listed values on the basis classes of
/// `H²(G_v, C)`.
pub fn place_with_values(name: &str, c: &Arc<GModule>, gv: Subgroup, iv: Subgroup, values: Vec<QZ>) -> Result<Place, ContextError> {
    let h2 = CohomologyGroup::compute(&c.restrict(&gv)?, 2)?;
    if values.len() != h2.rank() {
        return Err(ContextError::InvInconsistent { place: name.into(), detail: format!("{} values for H² of rank {}", values.len(), h2.rank()) });
    }
    Ok(Place::from_inv(name, gv, iv, InvMap { h2, values }))
}

/// `G = Z/2` acting trivially on `C = Z/2`, two split places with
/// `inv = 1/2` on the nonzero class.
pub fn seed_context() -> DualityContext {
    let g = FiniteGroup::cyclic(2);
    let c = GModule::trivial_action(&g.whole(), vec![2]);
    let places = ["v1", "v2"]
        .iter()
        .map(|n| place_with_values(n, &c, g.whole(), g.trivial(), vec![QZ::new(1, 2)]).unwrap())
        .collect();
    DualityContext::new(g.whole(), c, places).unwrap()
}

/// The seed context with its second place removed; reciprocity fails.
pub fn broken_context() -> DualityContext {
    let mut ctx = seed_context();
    ctx.places.truncate(1);
    ctx
}

/// The 1-cochain `σ ↦ χ(σ)` into a trivial cyclic module.
pub fn character(m: &Arc<GModule>, chi: impl Fn(usize) -> i64) -> Cochain {
    Cochain::from_fn(m, 1, |a| vec![chi(a[0])]).expect("degree 1")
}

/// `χ₁ ∪ χ₂` for characters into a trivial cyclic module.
pub fn cup_of_characters(m: &Arc<GModule>, c1: impl Fn(usize) -> i64, c2: impl Fn(usize) -> i64) -> Cochain {
    Cochain::from_fn(m, 2, |a| vec![c1(a[0]) * c2(a[1])]).expect("degree 2")
}

/// The carry cocycle of a character `χ: G → Z/n` with values in `Z/n`.
pub fn carry(m: &Arc<GModule>, n: i64, chi: impl Fn(usize) -> i64) -> Cochain {
    Cochain::from_fn(m, 2, |a| {
        let (x, y) = (chi(a[0]).rem_euclid(n), chi(a[1]).rem_euclid(n));
        vec![i64::from(x + y >= n)]
    })
    .expect("degree 2")
}

/// `G = Z/4 × Z/4 = ⟨F⟩ × ⟨I⟩` acting trivially on `C = Z/4`, two places
/// with decomposition group `G`. The first has inertia `⟨I⟩`, the second
/// `⟨2F + I⟩`. The invariant is `±1/4` on `χ_F ∪ χ_I` and vanishes on both
/// carry classes. Global unramified characters form `Z/2`, generated by
/// `χ_F mod 2`, which has no unramified lift to `Z/4`.
pub fn cyclotomic_context() -> DualityContext {
    let z4 = FiniteGroup::cyclic(4);
    let g = FiniteGroup::direct_product(&z4, &z4);
    let c = GModule::trivial_action(&g.whole(), vec![4]);
    let chi_f = |s: usize| (s / 4) as i64;
    let chi_i = |s: usize| (s % 4) as i64;
    let pairs = |sign: i64| {
        vec![
            (carry(&c, 4, chi_f), QZ::ZERO),
            (carry(&c, 4, chi_i), QZ::ZERO),
            (cup_of_characters(&c, chi_f, chi_i), QZ::new(sign, 4)),
        ]
    };
    let places = vec![
        Place::new("v1", g.whole(), g.subgroup(&[1]), &c, pairs(1)).unwrap(),
        Place::new("v2", g.whole(), g.subgroup(&[9]), &c, pairs(-1)).unwrap(),
    ];
    DualityContext::new(g.whole(), c, places).unwrap()
}

/// `[0 → Z/2 → (Z/2)² → Z/2 → 0]` split, `ι(x) = (x, 0)`, `π(x, y) = y`,
/// with `W_v` on the middle term spanned by `w[v]` (coordinates in the
/// local `H¹`) and strict conditions on the ends.
pub fn twisted_split_sequence(ctx: &DualityContext, w: &[Vec<i64>]) -> Result<DecoratedSequence, CtpError> {
    let g = &ctx.ambient;
    let m1 = GModule::trivial_action(g, vec![2]);
    let m = GModule::trivial_action(g, vec![2, 2]);
    let iota = ModuleHom::new(&m1, &m, &[vec![1], vec![0]])?;
    let pi = ModuleHom::new(&m, &m1, &[vec![0, 1]])?;
    let mut conditions = Vec::new();
    for (v, gen) in w.iter().enumerate() {
        let fa = ctx.local_h1(&m, v)?.finab();
        conditions.push(AbSubgroup::span(&fa, std::slice::from_ref(gen))?);
    }
    let dm = DecoratedModule::new(ctx, m, conditions)?;
    Ok(DecoratedSequence::strict(ctx, dm, iota, pi)?)
}

/// The twisted split sequence on the seed context.
pub fn seed_sequence() -> (DualityContext, DecoratedSequence) {
    let ctx = seed_context();
    let e = twisted_split_sequence(&ctx, &[vec![0, 1], vec![1, 1]]).expect("seed sequence");
    (ctx, e)
}

/// A base context, a subgroup, and a sequence over the derived context.
#[derive(Clone, Debug)]
pub struct FieldChangeFamily {
    pub name: &'static str,
    pub derived: DerivedContext,
    pub sequence: DecoratedSequence,
}

fn two_split_places(g: &Arc<FiniteGroup>, values: Vec<QZ>) -> DualityContext {
    let c = GModule::trivial_action(&g.whole(), vec![2]);
    let places = ["v1", "v2"]
        .iter()
        .map(|n| place_with_values(n, &c, g.whole(), g.trivial(), values.clone()).unwrap())
        .collect();
    DualityContext::new(g.whole(), c, places).unwrap()
}

fn family(name: &'static str, base: DualityContext, h: Subgroup, seq: impl Fn(&DualityContext) -> Result<DecoratedSequence, CtpError>) -> FieldChangeFamily {
    let derived = derive_subgroup_context(&base, &h).expect("derived context");
    let sequence = seq(&derived.derived).expect("family sequence");
    FieldChangeFamily { name, derived, sequence }
}

/// Index 2: the cyclotomic context over `H = ⟨F, 2I⟩` with `E(2, 2)`.
pub fn index_two_cyclotomic() -> FieldChangeFamily {
    let base = cyclotomic_context();
    let h = base.group.subgroup(&[4, 2]);
    family("index2-cyclotomic", base, h, |k| cyclotomic_family(k, 2, 2))
}

/// Index 2: `Z/2 × Z/4` over its Klein four subgroup.
pub fn index_two_klein() -> FieldChangeFamily {
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let g = FiniteGroup::direct_product(&z2, &z4);
    let base = two_split_places(&g, vec![QZ::ZERO, QZ::new(1, 2), QZ::ZERO]);
    let h = g.subgroup(&[2, 4]);
    family("index2-klein", base, h, |k| twisted_split_sequence(k, &[vec![0, 1, 0, 0], vec![1, 1, 1, 0]]))
}

/// Index 3: `Z/6` over `Z/2`.
pub fn index_three_cyclic() -> FieldChangeFamily {
    let g = FiniteGroup::cyclic(6);
    let base = two_split_places(&g, vec![QZ::new(1, 2)]);
    let h = g.subgroup(&[3]);
    family("index3-cyclic", base, h, |k| twisted_split_sequence(k, &[vec![0, 1], vec![1, 1]]))
}

/// Index 3: `S3` over a transposition.
pub fn index_three_symmetric() -> FieldChangeFamily {
    let g = FiniteGroup::symmetric3();
    let base = two_split_places(&g, vec![QZ::new(1, 2)]);
    let t = (0..g.order()).find(|&x| g.element_order(x) == 2).expect("transposition");
    let h = g.subgroup(&[t]);
    family("index3-symmetric", base, h, |k| twisted_split_sequence(k, &[vec![0, 1], vec![1, 1]]))
}

pub fn field_change_families() -> Vec<FieldChangeFamily> {
    vec![index_two_cyclotomic(), index_two_klein(), index_three_cyclic(), index_three_symmetric()]
}

/// `S3` acting trivially on `Z/2`, places at two different transposition
/// subgroups, unramified, `inv = 1/2`.
pub fn s3_context() -> DualityContext {
    let g = FiniteGroup::symmetric3();
    let c = GModule::trivial_action(&g.whole(), vec![2]);
    let ts: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) == 2).collect();
    let places = vec![
        place_with_values("v1", &c, g.subgroup(&[ts[0]]), g.trivial(), vec![QZ::new(1, 2)]).unwrap(),
        place_with_values("v2", &c, g.subgroup(&[ts[1]]), g.trivial(), vec![QZ::new(1, 2)]).unwrap(),
    ];
    DualityContext::new(g.whole(), c, places).unwrap()
}

pub fn s3_sequence() -> (DualityContext, DecoratedSequence) {
    let ctx = s3_context();
    let e = twisted_split_sequence(&ctx, &[vec![0, 1], vec![1, 1]]).expect("s3 sequence");
    (ctx, e)
}

/// `D8` over an index-two Klein subgroup, with conditions stable under
/// conjugation by `D8`. The terms are restrictions of trivial `D8`-modules.
pub fn galois_dihedral() -> FieldChangeFamily {
    let g = FiniteGroup::dihedral8();
    let base = two_split_places(&g, vec![QZ::ZERO, QZ::new(1, 2), QZ::ZERO]);
    let h = g.subgroup(&[2, 3, 7]);
    family("galois-dihedral", base, h, |k| twisted_split_sequence(k, &[vec![0, 1, 0, 1], vec![1, 1, 1, 1]]))
}

/// A named sequence on a named context.
#[derive(Clone, Debug)]
pub struct ShippedSequence {
    pub name: String,
    pub ctx: DualityContext,
    pub sequence: DecoratedSequence,
}

fn shipped(name: impl Into<String>, ctx: &DualityContext, sequence: DecoratedSequence) -> ShippedSequence {
    ShippedSequence { name: name.into(), ctx: ctx.clone(), sequence }
}

/// Every sequence the suites run on: the seed sequence, the cyclotomic
/// sequences `E(a, b)`, `E_2`, `M_2` and `D(m)`, the `S3` sequence, and
/// both sides of each field-change family.
pub fn shipped_sequences() -> Vec<ShippedSequence> {
    let mut out = Vec::new();
    let (sctx, se) = seed_sequence();
    out.push(shipped("seed/twisted", &sctx, se));
    let c = cyclotomic_context();
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        out.push(shipped(format!("cyclotomic/E({a},{b})"), &c, cyclotomic_family(&c, a, b).expect("E(a,b)")));
    }
    out.push(shipped("cyclotomic/E_2", &c, crate::extension::e_n(&c, 2).expect("E_2")));
    out.push(shipped("cyclotomic/M_2", &c, crate::extension::m_n_sequence(&c, 2).expect("M_2")));
    for m in [1, 2] {
        out.push(shipped(format!("cyclotomic/D({m})"), &c, crate::identities::d_sequence(&c, 2, m).expect("D(m)")));
    }
    let (s3, s3e) = s3_sequence();
    out.push(shipped("s3/twisted", &s3, s3e));
    for fam in field_change_families().into_iter().chain([galois_dihedral()]) {
        let setup = crate::fieldchange::induced_setup(&fam.derived, &fam.sequence).expect("induced sequence");
        out.push(shipped(format!("{}/K", fam.name), &fam.derived.derived, fam.sequence));
        out.push(shipped(format!("{}/Ind", fam.name), &fam.derived.base, setup.sequence));
    }
    out
}

/// A named morphism of shipped-style sequences.
#[derive(Clone, Debug)]
pub struct ShippedMorphism {
    pub name: String,
    pub ctx: DualityContext,
    pub source: DecoratedSequence,
    pub target: DecoratedSequence,
    pub morphism: crate::identities::SequenceMorphism,
}

fn pushout_morphism(name: &str, ctx: &DualityContext, e: &DecoratedSequence, g: &ModuleHom, n: &DecoratedModule) -> Result<ShippedMorphism, CtpError> {
    let t = crate::extension::pushout(ctx, e, g, n)?;
    let mor = crate::identities::SequenceMorphism::new(ctx, e, &t.sequence, g.clone(), t.middle.clone(), ModuleHom::identity(&e.m2.module))?;
    Ok(ShippedMorphism { name: name.into(), ctx: ctx.clone(), source: e.clone(), target: t.sequence, morphism: mor })
}

fn pullback_morphism(name: &str, ctx: &DualityContext, e: &DecoratedSequence, h: &ModuleHom, n: &DecoratedModule) -> Result<ShippedMorphism, CtpError> {
    let t = crate::extension::pullback(ctx, e, h, n)?;
    let mor = crate::identities::SequenceMorphism::new(ctx, &t.sequence, e, ModuleHom::identity(&e.m1.module), t.middle.clone(), h.clone())?;
    Ok(ShippedMorphism { name: name.into(), ctx: ctx.clone(), source: t.sequence, target: e.clone(), morphism: mor })
}

fn scalar_morphism(name: &str, ctx: &DualityContext, e: &DecoratedSequence, k: i64) -> Result<ShippedMorphism, CtpError> {
    let s = |m: &Arc<GModule>| ModuleHom::identity(m).scale(k);
    let mor = crate::identities::SequenceMorphism::new(ctx, e, e, s(&e.m1.module), s(&e.m.module), s(&e.m2.module))?;
    Ok(ShippedMorphism { name: name.into(), ctx: ctx.clone(), source: e.clone(), target: e.clone(), morphism: mor })
}

/// Pushouts and pullbacks along zero and identity maps, the pushout
/// `E(2,2) → E_2` along `g_2`, scalar endomorphisms, and the inclusion
/// `D(1) → D(2)`.
pub fn shipped_morphisms() -> Result<Vec<ShippedMorphism>, CtpError> {
    let mut out = Vec::new();
    let (sctx, se) = seed_sequence();
    let c = cyclotomic_context();
    let e22 = cyclotomic_family(&c, 2, 2)?;
    let (s3, s3e) = s3_sequence();
    for (label, ctx, e) in [("seed", &sctx, &se), ("cyclotomic/E(2,2)", &c, &e22), ("s3", &s3, &s3e)] {
        let zero1 = ModuleHom::zero(&e.m1.module, &e.m1.module)?;
        let zero2 = ModuleHom::zero(&e.m2.module, &e.m2.module)?;
        out.push(pushout_morphism(&format!("{label}/pushout-zero"), ctx, e, &zero1, &e.m1)?);
        out.push(pushout_morphism(&format!("{label}/pushout-identity"), ctx, e, &ModuleHom::identity(&e.m1.module), &e.m1)?);
        out.push(pullback_morphism(&format!("{label}/pullback-zero"), ctx, e, &zero2, &e.m2)?);
        out.push(pullback_morphism(&format!("{label}/pullback-identity"), ctx, e, &ModuleHom::identity(&e.m2.module), &e.m2)?);
    }
    let g2 = crate::extension::g_morphism(&c, 2)?;
    let mu2 = crate::context::dual_decorated(&c, &e22.m1)?;
    out.push(pushout_morphism("cyclotomic/E(2,2)->E_2", &c, &e22, &g2, &mu2)?);
    out.push(scalar_morphism("cyclotomic/E(1,2)*3", &c, &cyclotomic_family(&c, 1, 2)?, 3)?);
    out.push(scalar_morphism("cyclotomic/E(2,2)*3", &c, &e22, 3)?);
    let (da, dm, mor) = crate::identities::d_inclusion(&c, 2, 1, 2)?;
    out.push(ShippedMorphism { name: "cyclotomic/D(1)->D(2)".into(), ctx: c.clone(), source: da, target: dm, morphism: mor });
    Ok(out)
}

/// Matching sequences over `F` and over the subgroup for the restriction
/// and corestriction identities.
pub fn restriction_pairs() -> Result<Vec<(String, DerivedContext, DecoratedSequence, DecoratedSequence)>, CtpError> {
    let mut out = Vec::new();
    for fam in field_change_families().into_iter().chain([galois_dihedral()]) {
        let dc = fam.derived;
        let choices: Vec<(String, DecoratedSequence)> = match fam.name {
            "index2-cyclotomic" => vec![("E(2,2)".into(), cyclotomic_family(&dc.base, 2, 2)?)],
            "index2-klein" | "galois-dihedral" => [
                vec![vec![0, 1, 0, 0], vec![1, 1, 1, 0]],
                vec![vec![0, 0, 0, 1], vec![0, 1, 0, 1]],
                vec![vec![0, 0, 1, 1], vec![1, 0, 0, 1]],
            ]
            .into_iter()
            .map(|w| Ok((format!("twisted{w:?}"), twisted_split_sequence(&dc.base, &w)?)))
            .collect::<Result<_, CtpError>>()?,
            _ => vec![("twisted".into(), twisted_split_sequence(&dc.base, &[vec![0, 1], vec![1, 1]])?)],
        };
        for (label, ef) in choices {
            let ek = crate::fieldchange::restrict_sequence(&dc, &ef)?;
            out.push((format!("{}/{label}", fam.name), dc.clone(), ef, ek));
        }
    }
    Ok(out)
}

/// Sequences on contexts over `Z/2` for the exhaustive oracle: the twisted
/// split sequence for every choice of nonzero local generators.
pub fn order_two_sequences() -> Vec<ShippedSequence> {
    let ctx = seed_context();
    let gens = [vec![0, 1], vec![1, 0], vec![1, 1]];
    let mut out = Vec::new();
    for a in &gens {
        for b in &gens {
            if let Ok(e) = twisted_split_sequence(&ctx, &[a.clone(), b.clone()]) {
                out.push(shipped(format!("seed/twisted{a:?}{b:?}"), &ctx, e));
            }
        }
    }
    out
}
