use std::sync::Arc;

use ctpair::cohomology::CohomologyGroup;
use ctpair::group::{FiniteGroup, Subgroup};
use ctpair::group_change::{cores, res, restricted_shapiro, shap, shap_inverse};
use ctpair::induced::Induced;
use ctpair::module::GModule;

fn subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let s = g.subgroup(&[a, b]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

#[test]
fn cores_after_res_is_index() {
    for g in [FiniteGroup::cyclic(4), FiniteGroup::symmetric3(), FiniteGroup::quaternion8()] {
        let m = GModule::trivial_action(&g.whole(), vec![4]);
        for h in subgroups(&g) {
            for n in 0..3 {
                let r = res(&m, &h, n).unwrap();
                let c = cores(&m, &h, n).unwrap();
                assert!(c.compose(&r).is_multiple_of_identity(h.index_in(&g.whole()) as i64));
            }
        }
    }
}

#[test]
fn shapiro_isomorphisms() {
    let g = FiniteGroup::symmetric3();
    for h in subgroups(&g) {
        let m = GModule::trivial_action(&h, vec![2]);
        let ind = Induced::new(&g.whole(), &m).unwrap();
        for n in 0..3 {
            let s = shap(&ind, n).unwrap();
            let si = shap_inverse(&ind, n).unwrap();
            assert!(si.compose(&s).is_identity(), "n={n} |H|={}", h.order());
            assert!(s.is_bijective().unwrap());
            for c in subgroups(&g) {
                let rs = restricted_shapiro(&ind, &c, n).unwrap();
                assert!(rs.inverse.compose(&rs.forward).is_identity());
                assert!(rs.forward.compose(&rs.inverse).is_identity());
            }
        }
    }
    let z4 = FiniteGroup::cyclic(4);
    let h = z4.subgroup(&[2]);
    let m = GModule::trivial_action(&h, vec![2]);
    let ind = Induced::new(&z4.whole(), &m).unwrap();
    let rs = restricted_shapiro(&ind, &h, 1).unwrap();
    assert_eq!(rs.forward.source.order(), 4);
    assert_eq!(CohomologyGroup::compute(&ind.module.restrict(&h).unwrap(), 1).unwrap().order(), 4);
}
