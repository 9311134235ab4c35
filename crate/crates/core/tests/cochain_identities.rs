use std::sync::Arc;

use ctpair::cochain::Cochain;
use ctpair::group::{FiniteGroup, Subgroup, Transversal};
use ctpair::hom::Pairing;
use ctpair::induced::Induced;
use ctpair::module::GModule;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn inventory() -> Vec<Arc<FiniteGroup>> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        FiniteGroup::symmetric3(),
    ]
}

/// A module of exponent 4 with a nontrivial action through a sign character
/// when one exists.
fn sign_module(g: &Subgroup) -> Arc<GModule> {
    let gens = g.generators();
    let action: Vec<_> = gens
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, vec![vec![if i == 0 && g.parent().element_order(s) % 2 == 0 { -1 } else { 1 }]]))
        .collect();
    GModule::build(g, vec![4], &action).unwrap_or_else(|_| GModule::trivial_action(g, vec![4]))
}

#[test]
fn d_squared_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for g in inventory() {
        let m = sign_module(&g.whole());
        for n in 0..3 {
            let f = Cochain::random(&m, n, &mut rng).unwrap();
            assert!(f.coboundary().unwrap().coboundary().unwrap().is_zero());
        }
    }
}

#[test]
fn conjugation_homotopy_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for g in inventory() {
        let m = sign_module(&g.whole());
        for tau in 0..g.order() {
            for n in 0..3 {
                let f = Cochain::random(&m, n, &mut rng).unwrap();
                let lhs = f.conjugate_in(tau, &m).unwrap().sub(&f).unwrap();
                let mut rhs = f.coboundary().unwrap().homotopy(tau).unwrap().unwrap();
                if let Some(h) = f.homotopy(tau).unwrap() {
                    rhs = rhs.add(&h.coboundary().unwrap()).unwrap();
                }
                assert_eq!(lhs, rhs, "|G|={} tau={tau} n={n}", g.order());
            }
        }
    }
}

#[test]
fn leibniz_and_homotopy_cup() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in inventory() {
        let m = sign_module(&g.whole());
        let (_, b) = Pairing::tensor(&m, &m).unwrap();
        for k in 0..=2 {
            for j in 0..=(3 - k).min(2) {
                let f = Cochain::random(&m, k, &mut rng).unwrap();
                let h = Cochain::random(&m, j, &mut rng).unwrap();
                let lhs = f.cup(&h, &b).unwrap().coboundary().unwrap();
                let t1 = f.coboundary().unwrap().cup(&h, &b).unwrap();
                let t2 = f.cup(&h.coboundary().unwrap(), &b).unwrap().scale(if k % 2 == 0 { 1 } else { -1 });
                assert_eq!(lhs, t1.add(&t2).unwrap());
                if k + j == 0 {
                    continue;
                }
                for tau in 0..g.order() {
                    let lhs = f.cup(&h, &b).unwrap().homotopy(tau).unwrap().unwrap();
                    let tg = h.conjugate_in(tau, &m).unwrap();
                    let zero = Cochain::zero(b.target(), k + j - 1).unwrap();
                    let a = match f.homotopy(tau).unwrap() {
                        Some(hf) => hf.cup(&tg, &b).unwrap(),
                        None => zero.clone(),
                    };
                    let c = match h.homotopy(tau).unwrap() {
                        Some(hh) => f.cup(&hh, &b).unwrap().scale(if k % 2 == 0 { 1 } else { -1 }),
                        None => zero.clone(),
                    };
                    assert_eq!(lhs, a.add(&c).unwrap(), "|G|={} k={k} j={j} tau={tau}", g.order());
                }
            }
        }
    }
}

#[test]
fn corestriction_matches_homogeneous_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = FiniteGroup::symmetric3();
    let m = GModule::trivial_action(&g.whole(), vec![4]);
    for h in [g.subgroup(&[1]), g.subgroup(&[3]), g.trivial()] {
        let t = Transversal::new(&g.whole(), &h);
        let mh = m.restrict(&h).unwrap();
        for n in 0..3 {
            let f = Cochain::random(&mh, n, &mut rng).unwrap();
            let cor = f.corestrict(&t, &m).unwrap();
            // homogeneous route: extend F along π(σ) = σ T(σ⁻¹H) and sum s·F̃(s⁻¹·)
            let hf = f.to_homogeneous().unwrap();
            let pi = |s: usize| g.mul(s, t.rep_of(g.inv(s)));
            let big = Cochain::from_fn(&m, n + 1, |x| {
                let mut acc = vec![0];
                for &s in t.reps() {
                    let args: Vec<usize> = x.iter().map(|&y| pi(g.mul(g.inv(s), y))).collect();
                    let v = m.act(s, hf.value(&args));
                    acc = m.carrier().add(&acc, &v);
                }
                acc
            })
            .unwrap();
            let oracle = ctpair::cochain::Homogeneous { table: big }.to_inhomogeneous().unwrap();
            assert_eq!(cor, oracle);
        }
    }
}

#[test]
fn shapiro_left_inverse_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = FiniteGroup::symmetric3();
    let t2 = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
    let h = g.subgroup(&[t2]);
    let m = GModule::build(&h, vec![4], &[(t2, vec![vec![-1]])]).unwrap();
    let ind = Induced::new(&g.whole(), &m).unwrap();
    let t = Transversal::new(&g.whole(), &h);
    for n in 0..3 {
        let f = Cochain::random(&m, n, &mut rng).unwrap();
        let sh = f.shapiro(&t, &ind).unwrap();
        assert_eq!(sh.coboundary().unwrap(), f.coboundary().unwrap().shapiro(&t, &ind).unwrap());
        for &tau in t.reps() {
            let back = sh
                .restrict(&h.conjugate(tau))
                .unwrap()
                .conjugate_in(g.inv(tau), &ind.module)
                .unwrap()
                .map(&ind.nu_1().unwrap())
                .unwrap();
            assert_eq!(back, f, "tau={tau} n={n}");
        }
    }
}
