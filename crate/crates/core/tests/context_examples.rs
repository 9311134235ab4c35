//! Duality contexts, Selmer groups and pairing values on small examples,
//! checked by summation or by listing every legal transcript.

use std::sync::Arc;

use ctpair::context::{derive_subgroup_context, full_conditions, orthogonal_complement, selmer, unramified_conditions, DualityContext};
use ctpair::ctp::{ctp, ctp_matrix};
use ctpair::fixtures::{broken_context, place_with_values, seed_context, seed_sequence};
use ctpair::group::FiniteGroup;
use ctpair::hom::{ModuleHom, Pairing};
use ctpair::module::GModule;
use ctpair::oracle::exhaustive_ctp;
use ctpair::qz::QZ;
use ctpair::sequence::DecoratedSequence;
use ctpair::verify::pairing::rechoice_witness;
use ctpair::{group_change, CohomologyGroup};

#[test]
fn seed_reciprocity() {
    assert_eq!(seed_context().reciprocity_witness().unwrap(), None);
    let w = broken_context().reciprocity_witness().unwrap().expect("one place cannot balance");
    assert_eq!(w.class, vec![1]);
    assert_eq!(w.sum, QZ::new(1, 2));
}

#[test]
fn seed_unramified_conditions_and_selmer() {
    let ctx = seed_context();
    let m = GModule::trivial_action(&ctx.ambient, vec![2]);
    let x = unramified_conditions(&ctx, &m).unwrap();
    for w in &x.conditions {
        assert_eq!(w.order(), 2);
    }
    let perp = orthogonal_complement(&ctx, &x).unwrap();
    let back = orthogonal_complement(&ctx, &ctpair::context::DecoratedModule::new(&ctx, m.clone(), perp).unwrap()).unwrap();
    assert_eq!(back, x.conditions);
    let s = selmer(&ctx, &x).unwrap();
    assert_eq!(s.order(), 2);
    assert_eq!(s.h1.order(), 2);
}

/// Sums the invariants over places by hand.
fn reciprocity_by_summation(ctx: &DualityContext) -> bool {
    let h2 = CohomologyGroup::compute(&ctx.coefficient, 2).unwrap();
    h2.finab().elements().unwrap().iter().all(|x| {
        let sum: QZ = ctx
            .places
            .iter()
            .map(|p| {
                let r = h2.representative(x).unwrap().restrict(&p.decomposition).unwrap();
                p.inv.eval(&r).unwrap()
            })
            .sum();
        sum.is_zero()
    })
}

fn z4_context() -> DualityContext {
    let g = FiniteGroup::cyclic(4);
    let c = GModule::trivial_action(&g.whole(), vec![4]);
    let places = vec![
        place_with_values("v1", &c, g.whole(), g.trivial(), vec![QZ::new(1, 4)]).unwrap(),
        place_with_values("v2", &c, g.whole(), g.trivial(), vec![QZ::new(-1, 4)]).unwrap(),
    ];
    DualityContext::new(g.whole(), c, places).unwrap()
}

#[test]
fn derived_context_over_an_index_two_subgroup() {
    let ctx = z4_context();
    assert!(reciprocity_by_summation(&ctx));
    let g = ctx.group.clone();
    let h = g.subgroup(&[2]);
    let dc = derive_subgroup_context(&ctx, &h).unwrap();
    // One double coset per place since G_v = G.
    assert_eq!(dc.derived.places.len(), 2);
    let values: Vec<Vec<QZ>> = dc.derived.places.iter().map(|p| p.inv.values.clone()).collect();
    assert_eq!(values[0].len(), 1);
    assert_eq!(values[0][0] + values[1][0], QZ::ZERO);
    assert!(reciprocity_by_summation(&dc.derived));
    // inv_w ∘ res = inv_v ∘ cor ∘ res = 2 inv_v.
    let res = group_change::res(&ctx.coefficient, &h, 2).unwrap();
    for (p, v) in dc.derived.places.iter().zip([QZ::new(1, 2), QZ::new(-1, 2)]) {
        assert_eq!(p.inv.eval_coords(&res.apply(&[1])), v);
    }
}

#[test]
fn derived_context_extremes() {
    let ctx = z4_context();
    let g = ctx.group.clone();
    let same = derive_subgroup_context(&ctx, &g.whole()).unwrap();
    assert_eq!(same.derived.places.len(), ctx.places.len());
    for (a, b) in same.derived.places.iter().zip(&ctx.places) {
        assert_eq!(a.decomposition, b.decomposition);
        assert_eq!(a.inv.values, b.inv.values);
    }
    let trivial = derive_subgroup_context(&ctx, &g.trivial()).unwrap();
    // G_v = G leaves a single double coset over each place.
    assert_eq!(trivial.derived.places.len(), 2);
    assert!(trivial.derived.places.iter().all(|p| p.decomposition.order() == 1));
}

/// `0 → Z/2 → Z/4 → Z/2 → 0` on the seed context. Unramified conditions are
/// not exact here since `I_v = 1` and `π_*` kills `H¹(G_v, Z/4)`; the
/// conditions are transported from all of `H¹` on the middle term.
fn seed_nonsplit() -> (DualityContext, DecoratedSequence) {
    let ctx = seed_context();
    let g = &ctx.ambient;
    let m1 = GModule::trivial_action(g, vec![2]);
    let m = GModule::trivial_action(g, vec![4]);
    let iota = ModuleHom::new(&m1, &m, &[vec![2]]).unwrap();
    let pi = ModuleHom::new(&m, &m1, &[vec![1]]).unwrap();
    assert!(DecoratedSequence::unramified(&ctx, iota.clone(), pi.clone()).is_err());
    let full = full_conditions(&ctx, &m).unwrap();
    let e = DecoratedSequence::strict(&ctx, full, iota, pi).unwrap();
    (ctx, e)
}

#[test]
fn oracle_agrees_on_seed_sequences() {
    for (ctx, e) in [seed_sequence(), seed_nonsplit()] {
        let setup = ctpair::ctp::CtpSetup::new(&ctx, &e).unwrap();
        for phi in setup.sel_m2.group.elements() {
            for psi in setup.sel_dual.group.elements() {
                let o = exhaustive_ctp(&ctx, &e, phi, psi).unwrap();
                assert_eq!(o.values.len(), 1, "several values at {phi:?} {psi:?}");
                assert!(o.transcripts > 0);
                let v = ctp(&ctx, &e, phi, psi, None).unwrap().value;
                assert_eq!(o.values.iter().next(), Some(&v));
                assert!(v == QZ::ZERO || v == QZ::new(1, 2));
            }
        }
    }
}

#[test]
fn images_of_the_middle_selmer_group_pair_to_zero() {
    for (ctx, e) in [seed_sequence(), seed_nonsplit()] {
        let sel_m = selmer(&ctx, &e.m).unwrap();
        let h_m2 = CohomologyGroup::compute(&e.m2.module, 1).unwrap();
        let setup = ctpair::ctp::CtpSetup::new(&ctx, &e).unwrap();
        for x in sel_m.group.elements() {
            let pushed = sel_m.h1.representative(x).unwrap().map(&e.pi).unwrap();
            let phi = h_m2.class_of(&pushed).unwrap();
            for psi in setup.sel_dual.group.elements() {
                assert_eq!(ctp(&ctx, &e, &phi, psi, None).unwrap().value, QZ::ZERO);
            }
        }
    }
    // The kernel comparison needs `M^∨`, and `Z/4` has none over `C = Z/2`.
    let (ctx, e) = seed_sequence();
    assert!(ctp_matrix(&ctx, &e).unwrap().kernels_match());
}

#[test]
fn broken_context_gives_inconsistent_values() {
    let (ctx, e) = ctpair::verify::pairing::broken_sequence().unwrap();
    assert!(rechoice_witness(&ctx, &e, 20, 0).unwrap().is_some());
    let (ctx, e) = seed_sequence();
    assert!(rechoice_witness(&ctx, &e, 20, 0).unwrap().is_none());
}

fn double_dual_is_iso(m: &Arc<GModule>, c: &Arc<GModule>) -> bool {
    let (d, ev) = Pairing::evaluation(m, c).unwrap();
    let (dd, _) = Pairing::evaluation(&d, c).unwrap();
    let ms = m.carrier().elements().unwrap();
    let ds = d.carrier().elements().unwrap();
    // m ↦ (ψ ↦ ψ(m)) is injective and both sides have the same size.
    let injective = ms.iter().all(|x| m.carrier().is_zero(x) || ds.iter().any(|y| ev.eval(x, y).iter().any(|&v| v != 0)));
    injective && dd.carrier().order() == m.carrier().order()
}

#[test]
fn double_dual() {
    let z2 = FiniteGroup::cyclic(2);
    let groups = [z2.clone(), FiniteGroup::cyclic(4), FiniteGroup::direct_product(&z2, &z2), FiniteGroup::symmetric3()];
    for g in groups {
        let w = g.whole();
        let c = GModule::trivial_action(&w, vec![4]);
        for moduli in [vec![2], vec![4], vec![2, 4]] {
            assert!(double_dual_is_iso(&GModule::trivial_action(&w, moduli), &c));
        }
        if let Some(&s) = w.generators().iter().find(|&&s| g.element_order(s) % 2 == 0) {
            let action: Vec<_> = w.generators().iter().map(|&t| (t, vec![vec![if t == s { -1 } else { 1 }]])).collect();
            if let Ok(sign) = GModule::build(&w, vec![4], &action) {
                assert!(double_dual_is_iso(&sign, &c));
            }
        }
    }
}

#[test]
fn field_change_families_agree() {
    use ctpair::fieldchange::{induced_setup, selmer_shapiro_holds};
    for fam in ctpair::fixtures::field_change_families() {
        let dc = &fam.derived;
        let e = &fam.sequence;
        let setup = induced_setup(dc, e).unwrap();
        assert!(selmer_shapiro_holds(dc, &e.m2).unwrap(), "{}", fam.name);
        let k = ctpair::ctp::CtpSetup::new(&dc.derived, e).unwrap();
        let mut nonzero = 0;
        for phi in k.sel_m2.group.elements() {
            for psi in k.sel_dual.group.elements() {
                let over_k = ctp(&dc.derived, e, phi, psi, None).unwrap().value;
                let (p, q) = (setup.shap_left.apply(phi), setup.shap_right.apply(psi));
                for seed in [None, Some(1), Some(2)] {
                    let over_f = ctp(&dc.base, &setup.sequence, &p, &q, seed).unwrap().value;
                    assert_eq!(over_k, over_f, "{} at {phi:?} {psi:?}", fam.name);
                }
                nonzero += usize::from(!over_k.is_zero());
            }
        }
        println!("{}: {nonzero} nonzero values", fam.name);
    }
}
