use std::sync::Arc;

use ctpair::finab::{AbSubgroup, FinAb};
use ctpair::group::FiniteGroup;
use ctpair::hom::Pairing;
use ctpair::io::{cochain_literal, parse_cochain_str};
use ctpair::linalg::{Diagonalization, ZnMatrix};
use ctpair::module::GModule;
use ctpair::qz::QZ;
use ctpair::{group_change, Cochain, CohomologyGroup};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(k: usize) -> Arc<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2);
    match k % 5 {
        0 => z2,
        1 => FiniteGroup::cyclic(3),
        2 => FiniteGroup::cyclic(4),
        3 => FiniteGroup::direct_product(&z2, &z2),
        _ => FiniteGroup::symmetric3(),
    }
}

/// `Z/4` with the first even-order generator acting by `-1`, or trivial `Z/4`.
fn module(g: &Arc<FiniteGroup>, twisted: bool) -> Arc<GModule> {
    let w = g.whole();
    if twisted {
        if let Some(&s) = w.generators().iter().find(|&&s| g.element_order(s) % 2 == 0) {
            let action: Vec<_> = w.generators().iter().map(|&t| (t, vec![vec![if t == s { -1 } else { 1 }]])).collect();
            if let Ok(m) = GModule::build(&w, vec![4], &action) {
                return m;
            }
        }
    }
    GModule::trivial_action(&w, vec![4])
}

fn qz() -> impl Strategy<Value = QZ> {
    (-50i64..50, 1i64..13).prop_map(|(a, b)| QZ::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qz_is_a_group(a in qz(), b in qz(), c in qz()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a + QZ::ZERO, a);
        prop_assert_eq!(a - a, QZ::ZERO);
        prop_assert_eq!(a.times(a.den()), QZ::ZERO);
        prop_assert!(a.num() >= 0 && a.num() < a.den());
        let shown: QZ = a.to_string().parse().unwrap();
        prop_assert_eq!(shown, a);
    }

    #[test]
    fn coboundary_squares_to_zero(k in 0usize..5, twisted: bool, n in 0usize..3, seed: u64) {
        let m = module(&group(k), twisted);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Cochain::random(&m, n, &mut rng).unwrap();
        prop_assert!(f.coboundary().unwrap().coboundary().unwrap().is_zero());
    }

    #[test]
    fn leibniz(k in 0usize..5, p in 0usize..2, q in 0usize..2, seed: u64) {
        let g = group(k);
        let m = GModule::trivial_action(&g.whole(), vec![4]);
        let (_, b) = Pairing::tensor(&m, &m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Cochain::random(&m, p, &mut rng).unwrap();
        let c = Cochain::random(&m, q, &mut rng).unwrap();
        let lhs = a.cup(&c, &b).unwrap().coboundary().unwrap();
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let rhs = a.coboundary().unwrap().cup(&c, &b).unwrap().add(&a.cup(&c.coboundary().unwrap(), &b).unwrap().scale(sign)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn literal_round_trip(k in 0usize..5, twisted: bool, n in 0usize..3, seed: u64) {
        let m = module(&group(k), twisted);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Cochain::random(&m, n, &mut rng).unwrap();
        let back = parse_cochain_str(&m, n, &cochain_literal(&f).to_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn cores_after_res(k in 0usize..5, twisted: bool, n in 0usize..3, pick: usize) {
        let g = group(k);
        let m = module(&g, twisted);
        // Cyclic subgroups, which include the whole group except for V4.
        let h = &g.subgroup(&[pick % g.order()]);
        let index = (g.order() / h.order()) as i64;
        let r = group_change::res(&m, h, n).unwrap();
        let c = group_change::cores(&m, h, n).unwrap();
        prop_assert!(c.compose(&r).is_multiple_of_identity(index));
    }

    #[test]
    fn span_is_closed(moduli in prop::collection::vec(2i64..7, 1..4), raw in prop::collection::vec(prop::collection::vec(0i64..7, 3), 0..4)) {
        let fa = FinAb::new(moduli.clone());
        let gens: Vec<Vec<i64>> = raw.iter().map(|v| fa.reduce(&v[..moduli.len()])).collect();
        let s = AbSubgroup::span(&fa, &gens).unwrap();
        for g in &gens {
            prop_assert!(s.contains(g));
        }
        let elems: Vec<Vec<i64>> = s.elements().cloned().collect();
        for a in &elems {
            for b in &elems {
                prop_assert!(s.contains(&fa.sub(a, b)));
            }
        }
        prop_assert_eq!(fa.order() % s.order() as u128, 0);
        prop_assert_eq!(AbSubgroup::span(&fa, &s.generators()).unwrap(), s);
    }

    #[test]
    fn diagonal_solve(n in prop::sample::select(vec![2i64, 3, 4, 6, 8]), rows in 1usize..4, cols in 1usize..4, seed: u64) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let columns: Vec<Vec<i64>> = (0..cols).map(|_| (0..rows).map(|_| rng.gen_range(0..n)).collect()).collect();
        let x = ZnMatrix::from_columns(n, rows, &columns);
        let b: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..n)).collect();
        let d = Diagonalization::new(x.clone(), true);
        let brute = (0..(n as u64).pow(cols as u32)).any(|mut k| {
            let z: Vec<i64> = (0..cols).map(|_| { let e = (k % n as u64) as i64; k /= n as u64; e }).collect();
            x.mul_vec(&z) == b
        });
        match d.solve(&b) {
            Some(z) => prop_assert_eq!(x.mul_vec(&z), b),
            None => prop_assert!(!brute),
        }
    }

    #[test]
    fn class_of_representatives(k in 0usize..5, twisted: bool, n in 0usize..3, seed: u64) {
        let m = module(&group(k), twisted);
        let h = CohomologyGroup::compute(&m, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords: Vec<i64> = h.orders().iter().map(|&o| rand::Rng::gen_range(&mut rng, 0..o)).collect();
        let r = h.representative(&coords).unwrap();
        let moved = if n == 0 { r.clone() } else { r.add(&Cochain::random(&m, n - 1, &mut rng).unwrap().coboundary().unwrap()).unwrap() };
        prop_assert_eq!(h.class_of(&moved).unwrap(), coords);
    }
}
