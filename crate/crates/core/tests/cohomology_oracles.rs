//! Cohomology orders against counts of cocycles and coboundaries obtained by
//! listing every cochain, with no linear algebra involved.

use std::collections::HashSet;
use std::sync::Arc;

use ctpair::cochain::Cochain;
use ctpair::cohomology::{solve, CohomologyGroup, Solve};
use ctpair::group::FiniteGroup;
use ctpair::linalg::gcd;
use ctpair::module::GModule;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 1 << 16;

/// Every cochain of degree `n`, or `None` past the cap.
fn all_cochains(m: &Arc<GModule>, n: usize) -> Option<Vec<Cochain>> {
    let tuples = m.group().order().pow(n as u32);
    let per: Vec<i64> = m.moduli().to_vec();
    let size = per.iter().map(|&d| d as u64).product::<u64>().checked_pow(tuples as u32)?;
    if size > CAP {
        return None;
    }
    let mut out = Vec::with_capacity(size as usize);
    for mut k in 0..size {
        let mut flat = Vec::with_capacity(tuples * per.len());
        for _ in 0..tuples {
            for &d in &per {
                flat.push((k % d as u64) as i64);
                k /= d as u64;
            }
        }
        out.push(Cochain::from_flat(m, n, &flat).unwrap());
    }
    Some(out)
}

/// `|Z^n| / |B^n|` by enumeration.
fn brute_order(m: &Arc<GModule>, n: usize) -> Option<u128> {
    let cochains = all_cochains(m, n)?;
    let z = cochains.iter().filter(|c| c.coboundary().unwrap().is_zero()).count() as u128;
    let b = if n == 0 {
        1
    } else {
        let prev = all_cochains(m, n - 1)?;
        prev.iter().map(|c| c.coboundary().unwrap().data().to_vec()).collect::<HashSet<_>>().len() as u128
    };
    assert_eq!(z % b, 0);
    Some(z / b)
}

fn groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let z2 = FiniteGroup::cyclic(2);
    vec![
        ("Z2", z2.clone()),
        ("Z3", FiniteGroup::cyclic(3)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("V4", FiniteGroup::direct_product(&z2, &z2)),
        ("Z6", FiniteGroup::cyclic(6)),
        ("S3", FiniteGroup::symmetric3()),
    ]
}

#[test]
fn small_cases_by_enumeration() {
    let z2 = FiniteGroup::cyclic(2);
    let m = GModule::trivial_action(&z2.whole(), vec![2]);
    assert_eq!(all_cochains(&m, 1).unwrap().len(), 4);
    assert_eq!(all_cochains(&m, 2).unwrap().len(), 16);
    assert_eq!(brute_order(&m, 1), Some(2));
    assert_eq!(brute_order(&m, 2), Some(2));
    let z3 = FiniteGroup::cyclic(3);
    assert_eq!(brute_order(&GModule::trivial_action(&z3.whole(), vec![2]), 1), Some(1));
    let sign = GModule::build(&z2.whole(), vec![4], &[(1, vec![vec![-1]])]).unwrap();
    assert_eq!(brute_order(&sign, 0), Some(2));
}

#[test]
fn snf_orders_match_enumeration() {
    let mut checked = 0;
    for (name, g) in groups() {
        let whole = g.whole();
        let mut mods = vec![GModule::trivial_action(&whole, vec![2]), GModule::trivial_action(&whole, vec![3])];
        // Z/4 twisted by the first generator of even order, when there is one.
        if let Some(&s) = whole.generators().iter().find(|&&s| g.element_order(s) % 2 == 0) {
            let action: Vec<_> = whole.generators().iter().map(|&t| (t, vec![vec![if t == s { -1 } else { 1 }]])).collect();
            if let Ok(m) = GModule::build(&whole, vec![4], &action) {
                mods.push(m);
            }
        }
        for m in &mods {
            for n in 0..=2 {
                if let Some(b) = brute_order(m, n) {
                    let h = CohomologyGroup::compute(m, n).unwrap();
                    assert_eq!(h.order(), b, "{name} moduli {:?} n={n}", m.moduli());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 30, "only {checked} cases were small enough");
}

/// `H^n(Z/m, Z/k) = Z/gcd(m, k)` for `n ≥ 1` with trivial action.
#[test]
fn cyclic_groups_with_trivial_coefficients() {
    for m in 1..=6 {
        let g = FiniteGroup::cyclic(m);
        for k in [2, 3, 4, 6] {
            let a = GModule::trivial_action(&g.whole(), vec![k]);
            for n in 1..=3 {
                let h = CohomologyGroup::compute(&a, n).unwrap();
                assert_eq!(h.order(), gcd(m as i64, k) as u128, "m={m} k={k} n={n}");
            }
        }
    }
}

#[test]
fn nontrivial_one_cochain_is_a_cocycle() {
    let z2 = FiniteGroup::cyclic(2);
    let m = GModule::trivial_action(&z2.whole(), vec![2]);
    let f = Cochain::from_values(&m, 1, &[vec![0], vec![1]]).unwrap();
    assert!(f.coboundary().unwrap().is_zero());
    let h1 = CohomologyGroup::compute(&m, 1).unwrap();
    assert_eq!(h1.class_of(&f).unwrap(), vec![1]);
}

#[test]
fn solving_coboundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (_, g) in groups() {
        let m = GModule::trivial_action(&g.whole(), vec![4]);
        for n in 0..2 {
            let f = Cochain::random(&m, n, &mut rng).unwrap();
            let omega = f.coboundary().unwrap();
            match solve(&omega).unwrap() {
                Solve::Solution(x) => assert_eq!(x.coboundary().unwrap(), omega),
                Solve::Obstruction(c) => panic!("coboundary reported as class {c:?}"),
            }
        }
    }
    let z2 = FiniteGroup::cyclic(2);
    let m = GModule::trivial_action(&z2.whole(), vec![2]);
    let h2 = CohomologyGroup::compute(&m, 2).unwrap();
    assert_eq!(solve(&h2.representatives()[0]).unwrap(), Solve::Obstruction(vec![1]));
}

#[test]
fn homotopy_vanishes_in_degree_zero() {
    let g = FiniteGroup::cyclic(4);
    let m = GModule::trivial_action(&g.whole(), vec![4]);
    let f = Cochain::from_values(&m, 0, &[vec![3]]).unwrap();
    for tau in 0..4 {
        assert!(f.homotopy(tau).unwrap().is_none());
    }
}
