//! The groups and modules the map suites run over.

use std::sync::Arc;

use crate::group::{FiniteGroup, Subgroup};
use crate::module::GModule;

/// Z/2, Z/3, Z/4, Z/2×Z/2, Z/6, S3, D4 (order 8) and Q8, in that order,
/// keeping those of order at most `max_order`.
pub fn groups(max_order: usize) -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let all: Vec<(&'static str, fn() -> Arc<FiniteGroup>)> = vec![
        ("Z2", || FiniteGroup::cyclic(2)),
        ("Z3", || FiniteGroup::cyclic(3)),
        ("Z4", || FiniteGroup::cyclic(4)),
        ("V4", || FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))),
        ("Z6", || FiniteGroup::cyclic(6)),
        ("S3", FiniteGroup::symmetric3),
        ("D4", FiniteGroup::dihedral8),
        ("Q8", FiniteGroup::quaternion8),
    ];
    let orders = [2, 3, 4, 4, 6, 6, 8, 8];
    all.into_iter().zip(orders).filter(|&(_, o)| o <= max_order).map(|((n, f), _)| (n, f())).collect()
}

/// Every subgroup, ordered by size then elements. Groups here are small
/// enough that every subgroup is generated by two elements.
pub fn subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let s = g.subgroup(&[a, b]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements().cmp(y.elements())));
    out
}

/// Short label for a subgroup: its order and element list.
pub fn subgroup_label(s: &Subgroup) -> String {
    let e: Vec<String> = s.elements().iter().map(|x| x.to_string()).collect();
    format!("<{}>", e.join(","))
}

/// The first index-two subgroup, if any.
pub fn sign_kernel(s: &Subgroup) -> Option<Subgroup> {
    let g = s.parent();
    subgroups(g).into_iter().find(|k| k.is_subgroup_of(s) && k.order() * 2 == s.order())
}

fn character_module(s: &Subgroup, k: &Subgroup, modulus: i64) -> Arc<GModule> {
    let action: Vec<_> = s.elements().iter().map(|&x| (x, vec![vec![if k.contains(x) { 1 } else { -1 }]])).collect();
    GModule::build(s, vec![modulus], &action).expect("a sign character gives a module")
}

/// Modules of exponent at most 4 over `s`: trivial Z/2 and Z/4, Z/4
/// twisted by a sign character when one exists, and Z/3 (trivial and
/// twisted) when 3 divides `|s|`.
pub fn modules(s: &Subgroup) -> Vec<(String, Arc<GModule>)> {
    let mut out = vec![
        ("Z/2".to_string(), GModule::trivial_action(s, vec![2])),
        ("Z/4".to_string(), GModule::trivial_action(s, vec![4])),
    ];
    let k = sign_kernel(s);
    if let Some(k) = &k {
        out.push(("Z/4(sign)".to_string(), character_module(s, k, 4)));
    }
    if s.order() % 3 == 0 {
        out.push(("Z/3".to_string(), GModule::trivial_action(s, vec![3])));
        if let Some(k) = &k {
            out.push(("Z/3(sign)".to_string(), character_module(s, k, 3)));
        }
    }
    out
}
