//! Cochain identities and group-change diagrams over the group inventory.
//!
//! Diagram checks compose maps whose source and target cohomology were
//! computed separately and compare the resulting matrices. For groups of
//! order at most 6 the same diagrams are also pushed through at the cochain
//! level, and the difference of the two routes is looked up in an
//! enumerated set of coboundaries.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::inventory::{groups, modules, subgroup_label, subgroups};
use super::{run_case, CaseReport, CheckResult, Outcome, VerifyOptions};
use crate::cochain::Cochain;
use crate::cohomology::CohomologyGroup;
use crate::error::CochainError;
use crate::finab::FinAb;
use crate::group::{DoubleCosetDecomposition, FiniteGroup, Subgroup, Transversal};
use crate::group_change::{
    cores, res, restricted_shapiro, restricted_shapiro_cochain, restricted_shapiro_inverse_cochain,
    restricted_shapiro_with, shap, shap_inverse, ClassMap, CohomSum, MapKind,
};
use crate::hom::{ModuleHom, Pairing};
use crate::induced::{p_pairing, Induced};
use crate::module::GModule;

/// Random cochains per case in the homotopy suite.
pub const HOMOTOPY_TRIALS: usize = 50;
/// Random cochains per degree for the cochain-level Shapiro identities.
pub const SHAPIRO_TRIALS: usize = 10;
/// Largest group order for which the exhaustive cross-check runs.
pub const EXHAUSTIVE_MAX_ORDER: usize = 6;
/// Largest cochain group that is enumerated.
pub const EXHAUSTIVE_CAP: u128 = 1 << 16;
pub const MAX_DEGREE: usize = 2;
pub const MAX_INDEX: usize = 4;

/// A seeded generator that depends on the case name, so cases do not share
/// random streams and can be rerun alone.
pub fn case_rng(seed: u64, case: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in case.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn conjugation_relation<R: Rng>(m: &Arc<GModule>, rng: &mut R) -> CheckResult {
    let g = m.group().clone();
    for &tau in g.elements() {
        for n in 0..=MAX_DEGREE {
            for trial in 0..HOMOTOPY_TRIALS {
                let f = Cochain::random(m, n, rng)?;
                let lhs = f.conjugate_in(tau, m)?.sub(&f)?;
                let mut rhs = f.coboundary()?.homotopy(tau)?.expect("degree at least one");
                if let Some(h) = f.homotopy(tau)? {
                    rhs = rhs.add(&h.coboundary()?)?;
                }
                if lhs != rhs {
                    return Ok(Outcome::Fail(format!("tau={tau} n={n} trial={trial} f={:?}", f.data())));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cup_relation<R: Rng>(m: &Arc<GModule>, m2: &Arc<GModule>, rng: &mut R) -> CheckResult {
    let (t, b) = Pairing::tensor(m, m2)?;
    for &tau in m.group().elements() {
        for k in 0..=MAX_DEGREE {
            for j in 0..=MAX_DEGREE {
                if k + j == 0 || k + j > 3 {
                    continue;
                }
                let zero = Cochain::zero(&t, k + j - 1)?;
                for trial in 0..HOMOTOPY_TRIALS {
                    let f = Cochain::random(m, k, rng)?;
                    let h = Cochain::random(m2, j, rng)?;
                    let lhs = f.cup(&h, &b)?.homotopy(tau)?.expect("positive degree");
                    let tg = h.conjugate_in(tau, m2)?;
                    let a = match f.homotopy(tau)? {
                        Some(hf) => hf.cup(&tg, &b)?,
                        None => zero.clone(),
                    };
                    let c = match h.homotopy(tau)? {
                        Some(hh) => f.cup(&hh, &b)?.scale(sign(k)),
                        None => zero.clone(),
                    };
                    if lhs != a.add(&c)? {
                        return Ok(Outcome::Fail(format!("tau={tau} k={k} j={j} trial={trial}")));
                    }
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn leibniz<R: Rng>(m: &Arc<GModule>, rng: &mut R) -> CheckResult {
    let (_, b) = Pairing::tensor(m, m)?;
    for n in 0..=MAX_DEGREE {
        for trial in 0..HOMOTOPY_TRIALS {
            let f = Cochain::random(m, n, rng)?;
            if !f.coboundary()?.coboundary()?.is_zero() {
                return Ok(Outcome::Fail(format!("d∘d ≠ 0: n={n} trial={trial}")));
            }
        }
    }
    for k in 0..=MAX_DEGREE {
        for j in 0..=(3 - k).min(MAX_DEGREE) {
            for trial in 0..HOMOTOPY_TRIALS {
                let f = Cochain::random(m, k, rng)?;
                let h = Cochain::random(m, j, rng)?;
                let lhs = f.cup(&h, &b)?.coboundary()?;
                let rhs = f.coboundary()?.cup(&h, &b)?.add(&f.cup(&h.coboundary()?, &b)?.scale(sign(k)))?;
                if lhs != rhs {
                    return Ok(Outcome::Fail(format!("Leibniz: k={k} j={j} trial={trial}")));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

/// The conjugation homotopy relation and its cup-product companion, plus
/// `d∘d = 0` and the Leibniz rule, for every inventory group and module.
pub fn homotopy(opts: &VerifyOptions) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for (gname, g) in groups(opts.max_order) {
        let whole = g.whole();
        let mods = modules(&whole);
        let z2 = GModule::trivial_action(&whole, vec![2]);
        for (mname, m) in &mods {
            let case = format!("{gname}/{mname}/conjugation-homotopy");
            let mut rng = case_rng(opts.seed, &case);
            out.push(run_case("homotopy", case, || conjugation_relation(m, &mut rng)));
            let mut partners = vec![(mname.as_str(), m)];
            if mname != "Z/2" {
                partners.push(("Z/2", &z2));
            }
            for (m2name, m2) in partners {
                let case = format!("{gname}/{mname}⊗{m2name}/homotopy-cup");
                let mut rng = case_rng(opts.seed, &case);
                out.push(run_case("homotopy", case, || cup_relation(m, m2, &mut rng)));
            }
            let case = format!("{gname}/{mname}/leibniz");
            let mut rng = case_rng(opts.seed, &case);
            out.push(run_case("homotopy", case, || leibniz(m, &mut rng)));
        }
    }
    out
}

/// `cores ∘ res = [G:H]·id` on `H^n(G, M)` for every subgroup and degree.
pub fn cores_res(opts: &VerifyOptions) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for (gname, g) in groups(opts.max_order) {
        let whole = g.whole();
        for (mname, m) in modules(&whole) {
            for h in subgroups(&g) {
                let case = format!("{gname}/{}/{mname}", subgroup_label(&h));
                out.push(run_case("cores-res", case, || {
                    let idx = h.index_in(&whole) as i64;
                    for n in 0..=MAX_DEGREE {
                        let c = cores(&m, &h, n)?.compose(&res(&m, &h, n)?);
                        if !c.is_multiple_of_identity(idx) {
                            return Ok(Outcome::Fail(format!("n={n}: cores∘res has columns {:?}", c.columns)));
                        }
                    }
                    Ok(Outcome::Pass)
                }));
            }
        }
    }
    out
}

type Op<'a> = Box<dyn Fn(&[Cochain]) -> Result<Vec<Cochain>, CochainError> + 'a>;

/// A map on cohomology together with the cochain operation inducing it.
struct Step<'a> {
    map: ClassMap,
    op: Op<'a>,
}

fn hsum(mods: &[Arc<GModule>], n: usize) -> Result<CohomSum, CochainError> {
    Ok(CohomSum { parts: mods.iter().map(|m| CohomologyGroup::compute(m, n)).collect::<Result<_, _>>()? })
}

fn h1(m: &Arc<GModule>, n: usize) -> Result<CohomSum, CochainError> {
    hsum(std::slice::from_ref(m), n)
}

impl<'a> Step<'a> {
    fn new(
        source: CohomSum,
        target: CohomSum,
        op: impl Fn(&[Cochain]) -> Result<Vec<Cochain>, CochainError> + 'a,
    ) -> Result<Step<'a>, CochainError> {
        let map = ClassMap::from_cochain_map(MapKind::Composite, source, target, &op)?;
        Ok(Step { map, op: Box::new(op) })
    }

    /// A library map paired with the cochain operation it is built from.
    fn lib(map: ClassMap, op: impl Fn(&[Cochain]) -> Result<Vec<Cochain>, CochainError> + 'a) -> Step<'a> {
        Step { map, op: Box::new(op) }
    }

    fn restrict(m: &Arc<GModule>, k: &Subgroup, n: usize) -> Result<Step<'a>, CochainError> {
        let k = k.clone();
        Ok(Step::lib(res(m, &k, n)?, move |c| Ok(vec![c[0].restrict(&k)?])))
    }

    fn map_by(f: &ModuleHom, n: usize) -> Result<Step<'a>, CochainError> {
        let f = f.clone();
        Step::new(h1(f.source(), n)?, h1(f.target(), n)?, move |c| Ok(vec![c[0].map(&f)?]))
    }

    /// Corestriction from `h` to the acting group of the module `m`.
    fn cores(m: &Arc<GModule>, h: &Subgroup, n: usize) -> Result<Step<'a>, CochainError> {
        let t = Transversal::new(m.group(), h);
        let m2 = m.clone();
        Ok(Step::lib(cores(m, h, n)?, move |c| Ok(vec![c[0].corestrict(&t, &m2)?])))
    }

    fn shap(ind: &'a Induced, n: usize) -> Result<Step<'a>, CochainError> {
        let t = Transversal::new(ind.ambient(), ind.sub());
        Ok(Step::lib(shap(ind, n)?, move |c| Ok(vec![c[0].shapiro(&t, ind)?])))
    }

    fn shap_inverse(ind: &'a Induced, n: usize) -> Result<Step<'a>, CochainError> {
        let nu1 = ind.nu_1()?;
        Ok(Step::lib(shap_inverse(ind, n)?, move |c| Ok(vec![c[0].restrict(ind.sub())?.map(&nu1)?])))
    }

    fn conjugate(m: &Arc<GModule>, tau: usize, n: usize) -> Result<Step<'a>, CochainError> {
        Step::new(h1(m, n)?, h1(&m.conjugate(tau), n)?, move |c| Ok(vec![c[0].conjugate(tau)?]))
    }
}

/// Enumerated coboundaries and brute-force cohomology orders per module.
#[derive(Default)]
struct Exhaustive {
    boundaries: HashMap<(u64, Vec<usize>, usize), Option<HashSet<Vec<i64>>>>,
    orders_checked: HashSet<(u64, Vec<usize>, usize)>,
    comparisons: usize,
}

fn cochain_space(m: &Arc<GModule>, deg: usize) -> Result<FinAb, CochainError> {
    let tuples = Cochain::zero(m, deg)?.tuples();
    Ok(FinAb::new((0..tuples).flat_map(|_| m.moduli().iter().copied()).collect()))
}

impl Exhaustive {
    fn key(m: &Arc<GModule>, deg: usize) -> (u64, Vec<usize>, usize) {
        (m.fingerprint(), m.group().elements().to_vec(), deg)
    }

    fn boundary_set(&mut self, m: &Arc<GModule>, deg: usize) -> Result<Option<&HashSet<Vec<i64>>>, CochainError> {
        let key = Self::key(m, deg);
        if !self.boundaries.contains_key(&key) {
            let set = if deg == 0 {
                Some(HashSet::from([Cochain::zero(m, 0)?.data().to_vec()]))
            } else {
                let space = cochain_space(m, deg - 1)?;
                if space.order() > EXHAUSTIVE_CAP {
                    None
                } else {
                    let mut set = HashSet::new();
                    for k in 0..space.order() {
                        let c = Cochain::from_flat(m, deg - 1, &space.decode(k))?;
                        set.insert(c.coboundary()?.data().to_vec());
                    }
                    Some(set)
                }
            };
            self.boundaries.insert(key.clone(), set);
        }
        Ok(self.boundaries[&key].as_ref())
    }

    /// Compares `|H^n|` with `|Z^n| / |B^n|` counted by enumeration.
    fn check_order(&mut self, h: &CohomologyGroup) -> Result<Option<String>, CochainError> {
        let (m, deg) = (h.module().clone(), h.degree());
        let key = Self::key(&m, deg);
        if self.orders_checked.contains(&key) {
            return Ok(None);
        }
        let space = cochain_space(&m, deg)?;
        if space.order() > EXHAUSTIVE_CAP {
            return Ok(None);
        }
        let Some(b) = self.boundary_set(&m, deg)?.map(|s| s.len() as u128) else {
            return Ok(None);
        };
        let mut z = 0u128;
        for k in 0..space.order() {
            if Cochain::from_flat(&m, deg, &space.decode(k))?.is_cocycle()? {
                z += 1;
            }
        }
        self.orders_checked.insert(key);
        if z != b * h.order() {
            return Ok(Some(format!("|Z^{deg}| = {z}, |B^{deg}| = {b}, but |H^{deg}| computed as {}", h.order())));
        }
        Ok(None)
    }

    fn compare(&mut self, name: &str, a: &[Step], b: &[Step], source: &CohomSum) -> Result<Option<String>, CochainError> {
        let target = a.last().or(b.last()).map_or(source, |s| &s.map.target).clone();
        for part in source.parts.iter().chain(&target.parts) {
            if let Some(w) = self.check_order(part)? {
                return Ok(Some(format!("{name}: {w}")));
            }
        }
        for e in source.basis() {
            let reps = source.representative(&e)?;
            let run = |steps: &[Step]| -> Result<Vec<Cochain>, CochainError> {
                let mut x = reps.clone();
                for s in steps {
                    x = (s.op)(&x)?;
                }
                Ok(x)
            };
            let (xa, xb) = (run(a)?, run(b)?);
            for (p, (ca, cb)) in xa.iter().zip(&xb).enumerate() {
                let diff = ca.sub(cb)?;
                let found = self.boundary_set(diff.module(), diff.degree())?.map(|set| set.contains(diff.data()));
                if let Some(found) = found {
                    self.comparisons += 1;
                    if !found {
                        return Ok(Some(format!(
                            "{name}: basis class {e:?}, component {p}: the two routes differ by a non-coboundary"
                        )));
                    }
                }
            }
        }
        Ok(None)
    }
}

fn identity_map(s: &CohomSum) -> ClassMap {
    ClassMap { kind: MapKind::Composite, source: s.clone(), target: s.clone(), columns: s.basis() }
}

fn compose_all(steps: &[Step], source: &CohomSum) -> ClassMap {
    steps.iter().fold(identity_map(source), |acc, s| s.map.compose(&acc))
}

/// Runs both routes of a diagram starting at `source`.
struct Diagrams {
    exhaustive: Option<Exhaustive>,
}

impl Diagrams {
    fn commutes(&mut self, name: &str, a: &[Step], b: &[Step]) -> Result<Option<String>, CochainError> {
        let source = a.first().or(b.first()).expect("a route is nonempty").map.source.clone();
        let (ma, mb) = (compose_all(a, &source), compose_all(b, &source));
        if ma.target.orders() != mb.target.orders() || ma.source.orders() != mb.source.orders() {
            return Ok(Some(format!("{name}: the routes have different shapes")));
        }
        if !ma.same_values(&mb) {
            return Ok(Some(format!("{name}: columns {:?} vs {:?}", ma.columns, mb.columns)));
        }
        match &mut self.exhaustive {
            Some(ex) => ex.compare(name, a, b, &source),
            None => Ok(None),
        }
    }
}

type Witness = Result<Option<String>, CochainError>;

fn first_failure(checks: impl IntoIterator<Item = Witness>) -> Witness {
    for c in checks {
        if let Some(w) = c? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The Shapiro cochain map is a chain map, respects cup products through
/// `P`, and has the left inverse.
fn cochain_shapiro<R: Rng>(g: &Arc<FiniteGroup>, m: &Arc<GModule>, rng: &mut R) -> Witness {
    let ind = Induced::new(&g.whole(), m)?;
    let h = ind.sub().clone();
    let t = Transversal::new(&g.whole(), &h);
    let nu1 = ind.nu_1()?;
    let z2 = GModule::trivial_action(&h, vec![2]);
    let mut pairs = vec![(m.clone(), p_pairing(&g.whole(), m, m)?)];
    pairs.push((z2.clone(), p_pairing(&g.whole(), m, &z2)?));
    for n in 0..=MAX_DEGREE {
        for trial in 0..SHAPIRO_TRIALS {
            let f = Cochain::random(m, n, rng)?;
            let sh = f.shapiro(&t, &ind)?;
            if sh.coboundary()? != f.coboundary()?.shapiro(&t, &ind)? {
                return Ok(Some(format!("chain map: n={n} trial={trial}")));
            }
            for &tau in t.reps() {
                let back = sh.restrict(&h.conjugate(tau))?.conjugate_in(g.inv(tau), &ind.module)?.map(&nu1)?;
                if back != f {
                    return Ok(Some(format!("left inverse: n={n} tau={tau} trial={trial}")));
                }
            }
            for (m2, (_, i2, it, p)) in &pairs {
                let (_, b) = Pairing::tensor(m, m2)?;
                for j in 0..=MAX_DEGREE.min(3 - n.min(3)) {
                    let g2 = Cochain::random(m2, j, rng)?;
                    let lhs = f.cup(&g2, &b)?.shapiro(&t, it)?;
                    let rhs = sh.cup(&g2.shapiro(&t, i2)?, p)?;
                    if lhs != rhs {
                        return Ok(Some(format!("cup product: k={n} j={j} trial={trial}")));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Representatives `cτ` of `C_1\G/H` refining the decomposition `dc` of
/// `C\G/H`, with the index of the `τ` each one came from.
fn refine(g: &Subgroup, dc: &DoubleCosetDecomposition, c1: &Subgroup) -> (DoubleCosetDecomposition, Vec<usize>) {
    let base = DoubleCosetDecomposition::new(g, c1, &dc.right);
    let grp = g.parent();
    let mut seen = vec![false; base.reps.len()];
    let (mut reps, mut from) = (Vec::new(), Vec::new());
    for (i, &tau) in dc.reps.iter().enumerate() {
        for &c in dc.left.elements() {
            let eps = grp.mul(c, tau);
            let k = base.coset_of(eps);
            if !seen[k] {
                seen[k] = true;
                reps.push(eps);
                from.push(i);
            }
        }
    }
    let refined = DoubleCosetDecomposition::with_reps(g, c1, &dc.right, &reps).expect("cτ meet every double coset once");
    (refined, from)
}

/// The diagrams that only need an `H`-module: Shapiro decompositions,
/// the `ρ_τ` square, and the restricted Shapiro diagrams for every `C`.
fn h_module_diagrams(d: &mut Diagrams, g: &Arc<FiniteGroup>, m: &Arc<GModule>, n: usize) -> Witness {
    let whole = g.whole();
    let ind = Induced::new(&whole, m)?;
    let h = ind.sub().clone();
    let mut w = first_failure([
        d.commutes("shap = cores∘i_1", &[Step::shap(&ind, n)?], &[Step::map_by(&ind.i_1()?, n)?, Step::cores(&ind.module, &h, n)?]),
        d.commutes(
            "shap⁻¹ = ν_1∘res",
            &[Step::shap_inverse(&ind, n)?],
            &[Step::restrict(&ind.module, &h, n)?, Step::map_by(&ind.nu_1()?, n)?],
        ),
        d.commutes("shap⁻¹∘shap = id", &[Step::shap(&ind, n)?, Step::shap_inverse(&ind, n)?], &[]),
        d.commutes("shap∘shap⁻¹ = id", &[Step::shap_inverse(&ind, n)?, Step::shap(&ind, n)?], &[]),
    ])?;
    if w.is_some() {
        return Ok(w);
    }
    let rho: Vec<(usize, Induced, ModuleHom)> =
        whole.elements().iter().map(|&tau| ind.rho_tau(tau).map(|(i, f)| (tau, i, f))).collect::<Result<_, _>>()?;
    for (tau, ind2, rho_map) in &rho {
        w = d.commutes(
            &format!("conjugation square tau={tau}"),
            &[Step::shap(&ind, n)?, Step::map_by(rho_map, n)?],
            &[Step::conjugate(m, *tau, n)?, Step::shap(ind2, n)?],
        )?;
        if w.is_some() {
            return Ok(w);
        }
    }
    for c in subgroups(g) {
        let rs = restricted_shapiro(&ind, &c, n)?;
        let dc = rs.decomposition.clone();
        let d_mods: Vec<Arc<GModule>> = dc.intersections.iter().map(|s| m.restrict(s)).collect::<Result<_, _>>()?;
        let src = hsum(&d_mods, n)?;
        let ic = ind.module.restrict(&c)?;
        let fwd = |rs: &crate::group_change::RestrictedShapiro| {
            let dc = rs.decomposition.clone();
            let ind = &ind;
            Step::lib(rs.forward.clone(), move |fs| Ok(vec![restricted_shapiro_cochain(ind, &dc, fs)?]))
        };
        let inv = {
            let dc = dc.clone();
            let ind = &ind;
            Step::lib(rs.inverse.clone(), move |fs| restricted_shapiro_inverse_cochain(ind, &dc, &fs[0]))
        };
        let label = subgroup_label(&c);
        w = first_failure([
            d.commutes(&format!("restricted shap round trip C={label}"), &[fwd(&rs), inv], &[]),
            d.commutes(
                &format!("restricted shap inverse C={label}"),
                &[Step::shap(&ind, n)?, Step::restrict(&ind.module, &c, n)?],
                &[
                    Step::new(h1(m, n)?, src.clone(), {
                        let ds = dc.intersections.clone();
                        move |f| ds.iter().map(|s| f[0].restrict(s)).collect()
                    })?,
                    fwd(&rs),
                ],
            ),
        ])?;
        if w.is_some() {
            return Ok(w);
        }
        for c1 in subgroups(g).into_iter().filter(|s| s.is_subgroup_of(&c)) {
            let (dc1, from) = refine(&whole, &dc, &c1);
            let rs1 = restricted_shapiro_with(&ind, dc1.clone(), n)?;
            let d1_mods: Vec<Arc<GModule>> = dc1.intersections.iter().map(|s| m.restrict(s)).collect::<Result<_, _>>()?;
            let src1 = hsum(&d1_mods, n)?;
            let refine_step = Step::new(src.clone(), src1.clone(), {
                let (ds, from) = (dc1.intersections.clone(), from.clone());
                move |fs| ds.iter().zip(&from).map(|(s, &i)| fs[i].restrict(s)).collect()
            })?;
            let label1 = subgroup_label(&c1);
            w = d.commutes(
                &format!("restricted shap change of C C={label} C1={label1}"),
                &[fwd(&rs), Step::restrict(&ic, &c1, n)?],
                &[refine_step, fwd(&rs1)],
            )?;
            if w.is_some() {
                return Ok(w);
            }
            if !c1.is_normal_in(&c) {
                continue;
            }
            // D_{1τ} for the original τ, then copy into every ε over τ.
            let g_ = whole.parent().clone();
            let dtau: Vec<Subgroup> = dc.reps.iter().map(|&t| h.intersect(&c1.conjugate(g_.inv(t)))).collect();
            let dt_mods: Vec<Arc<GModule>> = dtau.iter().map(|s| m.restrict(s)).collect::<Result<_, _>>()?;
            let mid = hsum(&dt_mods, n)?;
            let down = Step::new(src.clone(), mid.clone(), {
                let ds = dtau.clone();
                move |fs| ds.iter().zip(fs).map(|(s, f)| f.restrict(s)).collect()
            })?;
            if dc1.intersections.iter().zip(&from).any(|(s, &i)| *s != dtau[i]) {
                return Ok(Some(format!("restricted shap on inertia C={label} C1={label1}: D_1ε ≠ D_1τ")));
            }
            let copy = Step::new(mid.clone(), src1.clone(), {
                let from = from.clone();
                move |fs| Ok(from.iter().map(|&i| fs[i].clone()).collect())
            })?;
            let hook = fwd(&rs1).map.compose(&copy.map);
            if hook.kernel()?.order() != 1 {
                return Ok(Some(format!("restricted shap on inertia C={label} C1={label1}: bottom map is not injective")));
            }
            w = d.commutes(
                &format!("restricted shap on inertia C={label} C1={label1}"),
                &[fwd(&rs), Step::restrict(&ic, &c1, n)?],
                &[down, copy, fwd(&rs1)],
            )?;
            if w.is_some() {
                return Ok(w);
            }
        }
    }
    Ok(None)
}

/// The diagrams specific to a `G`-module: corestriction and restriction
/// through Shapiro, globally and place by place.
fn g_module_diagrams(d: &mut Diagrams, m: &Arc<GModule>, h: &Subgroup, n: usize) -> Witness {
    let g = m.group().clone();
    let grp = g.parent().clone();
    let ind = Induced::of_restriction(m, h)?;
    let (i, nu) = (ind.i(m)?, ind.nu(m)?);
    let w = first_failure([
        d.commutes("cores = ν∘shap", &[Step::cores(m, h, n)?], &[Step::shap(&ind, n)?, Step::map_by(&nu, n)?]),
        d.commutes(
            "res = shap⁻¹∘i",
            &[Step::restrict(m, h, n)?],
            &[Step::map_by(&i, n)?, Step::shap_inverse(&ind, n)?],
        ),
    ])?;
    if w.is_some() {
        return Ok(w);
    }
    for c in subgroups(g.parent()) {
        let rs = restricted_shapiro(&ind, &c, n)?;
        let dc = rs.decomposition.clone();
        let mc = m.restrict(&c)?;
        let w_mods: Vec<Arc<GModule>> = dc.intersections.iter().map(|s| m.restrict(s)).collect::<Result<_, _>>()?;
        let src = hsum(&w_mods, n)?;
        let sum_cor = Step::new(src.clone(), h1(&mc, n)?, {
            let (dc, m, mc) = (dc.clone(), m.clone(), mc.clone());
            move |fs| {
                let mut acc = Cochain::zero(&mc, n)?;
                for ((&tau, gw), f) in dc.reps.iter().zip(&dc.intersections).zip(fs) {
                    let t = Transversal::new(&dc.left, &gw.conjugate(tau));
                    acc = acc.add(&f.conjugate_in(tau, &m)?.corestrict(&t, &mc)?)?;
                }
                Ok(vec![acc])
            }
        })?;
        let sum_res = Step::new(h1(&mc, n)?, src.clone(), {
            let (dc, m, grp) = (dc.clone(), m.clone(), grp.clone());
            move |f| {
                dc.reps
                    .iter()
                    .zip(&dc.intersections)
                    .map(|(&tau, gw)| f[0].restrict(&gw.conjugate(tau))?.conjugate_in(grp.inv(tau), &m))
                    .collect()
            }
        })?;
        // the library's place maps agree with the components used here
        for (j, (&tau, gw)) in dc.reps.iter().zip(&dc.intersections).enumerate() {
            let lib = crate::group_change::cor_wv(m, &c, gw, tau, n)?;
            let off: usize = src.parts[..j].iter().map(|p| p.rank()).sum();
            let ours = &sum_cor.map.columns[off..off + src.parts[j].rank()];
            if lib.columns != ours {
                return Ok(Some(format!("cor_wv component {j} disagrees with the summed corestriction")));
            }
        }
        let dc2 = dc.clone();
        let fwd = Step::lib(rs.forward.clone(), {
            let ind = &ind;
            move |fs| Ok(vec![restricted_shapiro_cochain(ind, &dc2, fs)?])
        });
        let inv = Step::lib(rs.inverse.clone(), {
            let (ind, dc) = (&ind, dc.clone());
            move |fs| restricted_shapiro_inverse_cochain(ind, &dc, &fs[0])
        });
        let label = subgroup_label(&c);
        let w = first_failure([
            d.commutes(&format!("Σcor = ν∘shap_loc C={label}"), &[sum_cor], &[fwd, Step::map_by(&nu.restrict(&c)?, n)?]),
            d.commutes(&format!("⊕res = shap_loc⁻¹∘i C={label}"), &[sum_res], &[Step::map_by(&i.restrict(&c)?, n)?, inv]),
        ])?;
        if w.is_some() {
            return Ok(w);
        }
    }
    Ok(None)
}

/// Cochain-level Shapiro identities and the group-change diagrams for all `(G, H, C)` with
/// `[G:H] ≤ 4` and degrees up to 2.
pub fn group_change(opts: &VerifyOptions) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for (gname, g) in groups(opts.max_order) {
        let whole = g.whole();
        let mut diagrams = Diagrams { exhaustive: (g.order() <= EXHAUSTIVE_MAX_ORDER).then(Exhaustive::default) };
        for h in subgroups(&g).into_iter().filter(|h| h.index_in(&whole) <= MAX_INDEX) {
            let hl = subgroup_label(&h);
            for (mname, m) in modules(&h) {
                let case = format!("{gname}/H={hl}/{mname}/cochain-shapiro");
                let mut rng = case_rng(opts.seed, &case);
                out.push(run_case("group-change", case, || Ok(cochain_shapiro(&g, &m, &mut rng)?.into())));
                let case = format!("{gname}/H={hl}/{mname}/shapiro-diagrams");
                out.push(run_case("group-change", case, || {
                    Ok(first_failure((0..=MAX_DEGREE).map(|n| {
                        h_module_diagrams(&mut diagrams, &g, &m, n).map(|w| w.map(|w| format!("n={n}: {w}")))
                    }))?
                    .into())
                }));
            }
            for (mname, m) in modules(&whole) {
                let case = format!("{gname}/H={hl}/{mname}/corestriction-diagrams");
                out.push(run_case("group-change", case, || {
                    Ok(first_failure((0..=MAX_DEGREE).map(|n| {
                        g_module_diagrams(&mut diagrams, &m, &h, n).map(|w| w.map(|w| format!("n={n}: {w}")))
                    }))?
                    .into())
                }));
            }
        }
        if let Some(ex) = &diagrams.exhaustive {
            let k = ex.comparisons;
            out.push(run_case("group-change", format!("{gname}/exhaustive-cross-check"), || {
                Ok(if k == 0 {
                    Outcome::Fail("no comparison was small enough to enumerate".into())
                } else {
                    Outcome::Pass
                })
            }));
        }
    }
    out
}

/// Number of cochain-level comparisons and brute-force order checks the
/// group-change suite performs for one group.
pub fn exhaustive_coverage(g: &Arc<FiniteGroup>) -> Result<(usize, usize), CochainError> {
    let whole = g.whole();
    let mut d = Diagrams { exhaustive: Some(Exhaustive::default()) };
    for h in subgroups(g).into_iter().filter(|h| h.index_in(&whole) <= MAX_INDEX) {
        for (_, m) in modules(&h) {
            for n in 0..=MAX_DEGREE {
                h_module_diagrams(&mut d, g, &m, n)?;
            }
        }
    }
    let ex = d.exhaustive.expect("enabled above");
    Ok((ex.comparisons, ex.orders_checked.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_over_z2() -> (Arc<GModule>, Subgroup) {
        let g = FiniteGroup::cyclic(4);
        (GModule::trivial_action(&g.whole(), vec![4]), g.subgroup(&[2]))
    }

    #[test]
    fn wrong_matrix_is_reported() {
        let (m, h) = z4_over_z2();
        let mut d = Diagrams { exhaustive: None };
        let route = [Step::restrict(&m, &h, 1).unwrap(), Step::cores(&m, &h, 1).unwrap()];
        // cores∘res is 2·id on H¹(Z/4, Z/4) = Z/4, so claiming it is the
        // identity must fail.
        let w = d.commutes("cores∘res = id", &route, &[]).unwrap();
        assert!(w.unwrap().starts_with("cores∘res = id: columns"));
    }

    #[test]
    fn wrong_cochain_route_is_caught_by_enumeration() {
        let (m, _) = z4_over_z2();
        let h = h1(&m, 1).unwrap();
        let generator = h.parts[0].representatives()[0].clone();
        // Same matrix as the identity, but the cochain operation adds a
        // cocycle that is not a coboundary.
        let shifted = Step::lib(identity_map(&h), move |c| Ok(vec![c[0].add(&generator)?]));
        let honest = Step::lib(identity_map(&h), |c| Ok(c.to_vec()));
        let mut d = Diagrams { exhaustive: Some(Exhaustive::default()) };
        let w = d.commutes("shifted", &[shifted], &[honest]).unwrap();
        assert!(w.unwrap().contains("differ by a non-coboundary"));

        let mut d = Diagrams { exhaustive: None };
        let shifted_again = Step::lib(identity_map(&h), {
            let g = h.parts[0].representatives()[0].clone();
            move |c| Ok(vec![c[0].add(&g)?])
        });
        let honest = Step::lib(identity_map(&h), |c| Ok(c.to_vec()));
        assert_eq!(d.commutes("shifted", &[shifted_again], &[honest]).unwrap(), None);
    }

    #[test]
    fn exhaustive_check_covers_small_groups() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric3()] {
            let (comparisons, orders) = exhaustive_coverage(&g).unwrap();
            assert!(comparisons > 0 && orders > 0);
        }
    }

    #[test]
    fn case_rng_depends_on_seed_and_case() {
        let a: u64 = case_rng(0, "x").gen();
        assert_eq!(a, case_rng(0, "x").gen::<u64>());
        assert_ne!(a, case_rng(1, "x").gen::<u64>());
        assert_ne!(a, case_rng(0, "y").gen::<u64>());
    }
}
