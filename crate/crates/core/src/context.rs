//! Duality contexts: a finite group with a cyclic coefficient module and a
//! list of places, each carrying decomposition and inertia subgroups and an
//! invariant map on `H²(G_v, C)`.

use std::sync::Arc;

use crate::cochain::Cochain;
use crate::cohomology::CohomologyGroup;
use crate::error::{CochainError, ContextError};
use crate::finab::{AbSubgroup, FinAb};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::group_change::{self, ClassMap};
use crate::hom::Pairing;
use crate::module::GModule;
use crate::qz::QZ;

/// A homomorphism `H²(G_v, C) → Q/Z` given by its values on basis classes.
#[derive(Clone, Debug)]
pub struct InvMap {
    pub h2: Arc<CohomologyGroup>,
    pub values: Vec<QZ>,
}

impl InvMap {
    /// Solves for the unique functional matching `(cocycle, value)` pairs,
    /// which must span `H²`.
    pub fn from_pairs(h2: Arc<CohomologyGroup>, pairs: &[(Cochain, QZ)], place: &str) -> Result<InvMap, ContextError> {
        let bad = |detail: String| ContextError::InvInconsistent { place: place.to_string(), detail };
        let mut classes = Vec::new();
        for (i, (c, _)) in pairs.iter().enumerate() {
            match h2.class_of(c) {
                Ok(x) => classes.push(x),
                Err(CochainError::NotACocycle) => return Err(bad(format!("entry {i} is not a 2-cocycle"))),
                Err(e) => return Err(bad(format!("entry {i}: {e}"))),
            }
        }
        let fa = h2.finab();
        let span = AbSubgroup::span(&fa, &classes)?;
        if span.order() as u128 != fa.order() {
            return Err(bad(format!("the listed classes generate a subgroup of order {} in H² of order {}", span.order(), fa.order())));
        }
        // enumerate functionals: value on basis i is k_i / h_i
        let orders = h2.orders().to_vec();
        let choices = FinAb::new(orders.clone());
        for ks in choices.elements()? {
            let values: Vec<QZ> = ks.iter().zip(&orders).map(|(&k, &h)| QZ::new(k, h)).collect();
            let f = InvMap { h2: h2.clone(), values };
            if classes.iter().zip(pairs).all(|(x, (_, v))| f.eval_coords(x) == *v) {
                return Ok(f);
            }
        }
        Err(bad("no homomorphism H² → Q/Z takes the listed values".into()))
    }

    pub fn eval_coords(&self, x: &[i64]) -> QZ {
        x.iter().zip(&self.values).map(|(&c, &v)| v.times(c)).sum()
    }

    pub fn eval(&self, c: &Cochain) -> Result<QZ, CochainError> {
        Ok(self.eval_coords(&self.h2.class_of(c)?))
    }
}

#[derive(Clone, Debug)]
pub struct Place {
    pub name: String,
    pub decomposition: Subgroup,
    pub inertia: Subgroup,
    pub inv: InvMap,
    /// The generating pairs as supplied.
    pub inv_pairs: Vec<(Cochain, QZ)>,
}

impl Place {
    pub fn new(
        name: &str,
        decomposition: Subgroup,
        inertia: Subgroup,
        coefficient: &Arc<GModule>,
        inv_pairs: Vec<(Cochain, QZ)>,
    ) -> Result<Place, ContextError> {
        if !inertia.is_subgroup_of(&decomposition) {
            return Err(ContextError::PreconditionViolation(format!("place {name}: inertia is not contained in the decomposition group")));
        }
        let cv = coefficient.restrict(&decomposition)?;
        if inv_pairs.iter().any(|(c, _)| c.module() != &cv || c.degree() != 2) {
            return Err(ContextError::InvInconsistent {
                place: name.to_string(),
                detail: "invariant data must be 2-cochains on the decomposition group valued in C".into(),
            });
        }
        let h2 = CohomologyGroup::compute(&cv, 2)?;
        let inv = InvMap::from_pairs(h2, &inv_pairs, name)?;
        Ok(Place { name: name.to_string(), decomposition, inertia, inv, inv_pairs })
    }

    /// The same place with the invariant map given directly on basis classes.
    pub fn from_inv(name: &str, decomposition: Subgroup, inertia: Subgroup, inv: InvMap) -> Place {
        let inv_pairs = inv.h2.representatives().iter().cloned().zip(inv.values.iter().copied()).collect();
        Place { name: name.to_string(), decomposition, inertia, inv, inv_pairs }
    }
}

#[derive(Clone, Debug)]
pub struct DualityContext {
    pub group: Arc<FiniteGroup>,
    /// The ambient acting group; the whole of `group` for a top-level context,
    /// a subgroup for a derived one.
    pub ambient: Subgroup,
    pub coefficient: Arc<GModule>,
    pub places: Vec<Place>,
}

/// A reciprocity failure: a global class whose invariants do not sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityWitness {
    pub class: Vec<i64>,
    pub sum: QZ,
}

impl DualityContext {
    pub fn new(ambient: Subgroup, coefficient: Arc<GModule>, places: Vec<Place>) -> Result<DualityContext, ContextError> {
        if coefficient.group() != &ambient {
            return Err(ContextError::PreconditionViolation("the coefficient module must live on the ambient group".into()));
        }
        coefficient.cyclic_units()?;
        for p in &places {
            if !p.decomposition.is_subgroup_of(&ambient) {
                return Err(ContextError::PreconditionViolation(format!("place {}: decomposition group outside G", p.name)));
            }
        }
        Ok(DualityContext { group: ambient.parent().clone(), ambient, coefficient, places })
    }

    pub fn exponent(&self) -> i64 {
        self.coefficient.moduli()[0]
    }

    /// `Σ_v inv_v(res c) = 0` on a basis of `H²(G, C)`.
    pub fn reciprocity_witness(&self) -> Result<Option<ReciprocityWitness>, ContextError> {
        let h2 = CohomologyGroup::compute(&self.coefficient, 2)?;
        let res: Vec<ClassMap> = self
            .places
            .iter()
            .map(|p| group_change::res(&self.coefficient, &p.decomposition, 2))
            .collect::<Result<_, _>>()?;
        for j in 0..h2.rank() {
            let mut e = vec![0; h2.rank()];
            e[j] = 1;
            let sum: QZ = self.places.iter().zip(&res).map(|(p, r)| p.inv.eval_coords(&r.apply(&e))).sum();
            if !sum.is_zero() {
                return Ok(Some(ReciprocityWitness { class: e, sum }));
            }
        }
        Ok(None)
    }

    pub fn place_index(&self, name: &str) -> Option<usize> {
        self.places.iter().position(|p| p.name == name)
    }

    /// `H¹(G_v, M)` for a module on the ambient group.
    pub fn local_h1(&self, m: &Arc<GModule>, v: usize) -> Result<Arc<CohomologyGroup>, ContextError> {
        Ok(CohomologyGroup::compute(&m.restrict(&self.places[v].decomposition)?, 1)?)
    }

    pub fn dual(&self, m: &Arc<GModule>) -> Result<(Arc<GModule>, Pairing), ContextError> {
        Ok(Pairing::evaluation(m, &self.coefficient)?)
    }

    /// Matrix of `(x, y) ↦ inv_v(x ∪ y)` on basis classes of `H¹(G_v, M)` and
    /// `H¹(G_v, M^∨)`.
    pub fn local_pairing(&self, m: &Arc<GModule>, v: usize) -> Result<LocalPairing, ContextError> {
        let place = &self.places[v];
        let (_, ev) = self.dual(m)?;
        let ev = ev.restrict(&place.decomposition)?;
        let left = CohomologyGroup::compute(ev.left(), 1)?;
        let right = CohomologyGroup::compute(ev.right(), 1)?;
        let mut values = vec![vec![QZ::ZERO; right.rank()]; left.rank()];
        for (i, a) in left.representatives().iter().enumerate() {
            for (j, b) in right.representatives().iter().enumerate() {
                values[i][j] = place.inv.eval(&a.cup(b, &ev)?)?;
            }
        }
        Ok(LocalPairing { left, right, values })
    }
}

/// The cup-then-invariant pairing at one place.
#[derive(Clone, Debug)]
pub struct LocalPairing {
    pub left: Arc<CohomologyGroup>,
    pub right: Arc<CohomologyGroup>,
    pub values: Vec<Vec<QZ>>,
}

impl LocalPairing {
    pub fn eval(&self, x: &[i64], y: &[i64]) -> QZ {
        let mut acc = QZ::ZERO;
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                acc = acc + self.values[i][j].times(a * b);
            }
        }
        acc
    }

    /// Elements of `H¹(M^∨)` orthogonal to all of `w`.
    pub fn right_orthogonal(&self, w: &AbSubgroup) -> Result<AbSubgroup, CochainError> {
        let gens = w.generators();
        AbSubgroup::filter(&self.right.finab(), |y| gens.iter().all(|x| self.eval(x, y).is_zero()))
    }

    /// Elements of `H¹(M)` orthogonal to all of `w ⊆ H¹(M^∨)`.
    pub fn left_orthogonal(&self, w: &AbSubgroup) -> Result<AbSubgroup, CochainError> {
        let gens = w.generators();
        AbSubgroup::filter(&self.left.finab(), |x| gens.iter().all(|y| self.eval(x, y).is_zero()))
    }

    pub fn is_perfect(&self) -> Result<bool, CochainError> {
        let l = self.left.finab();
        let r = self.right.finab();
        Ok(l.order() == r.order()
            && self.right_orthogonal(&l.whole())?.order() == 1
            && self.left_orthogonal(&r.whole())?.order() == 1)
    }
}

/// A module with a local condition `W_v ⊆ H¹(G_v, M)` at every place, in the
/// class coordinates of the cached cohomology group.
#[derive(Clone, Debug)]
pub struct DecoratedModule {
    pub module: Arc<GModule>,
    pub conditions: Vec<AbSubgroup>,
}

impl PartialEq for DecoratedModule {
    fn eq(&self, o: &Self) -> bool {
        self.module == o.module && self.conditions == o.conditions
    }
}

impl DecoratedModule {
    pub fn new(ctx: &DualityContext, module: Arc<GModule>, conditions: Vec<AbSubgroup>) -> Result<DecoratedModule, ContextError> {
        if conditions.len() != ctx.places.len() {
            return Err(ContextError::PreconditionViolation("one local condition per place is required".into()));
        }
        for (v, w) in conditions.iter().enumerate() {
            if w.ambient() != &ctx.local_h1(&module, v)?.finab() {
                return Err(ContextError::PreconditionViolation(format!("condition at place {} is not a subgroup of H¹(G_v, M)", ctx.places[v].name)));
            }
        }
        Ok(DecoratedModule { module, conditions })
    }

    /// Conditions given by generating cocycles.
    pub fn from_cocycles(ctx: &DualityContext, module: Arc<GModule>, gens: &[Vec<Cochain>]) -> Result<DecoratedModule, ContextError> {
        let mut conditions = Vec::new();
        for (v, gs) in gens.iter().enumerate() {
            let h1 = ctx.local_h1(&module, v)?;
            let classes = gs.iter().map(|c| h1.class_of(c)).collect::<Result<Vec<_>, _>>()?;
            conditions.push(AbSubgroup::span(&h1.finab(), &classes)?);
        }
        DecoratedModule::new(ctx, module, conditions)
    }
}

/// `W_v = ker(H¹(G_v, M) → H¹(I_v, M))`.
pub fn unramified_conditions(ctx: &DualityContext, m: &Arc<GModule>) -> Result<DecoratedModule, ContextError> {
    let mut conditions = Vec::new();
    for p in &ctx.places {
        let mv = m.restrict(&p.decomposition)?;
        conditions.push(group_change::res(&mv, &p.inertia, 1)?.kernel()?);
    }
    DecoratedModule::new(ctx, m.clone(), conditions)
}

/// Everything (`W_v = H¹`) or nothing (`W_v = 0`) at every place.
pub fn full_conditions(ctx: &DualityContext, m: &Arc<GModule>) -> Result<DecoratedModule, ContextError> {
    let conditions = (0..ctx.places.len()).map(|v| Ok(ctx.local_h1(m, v)?.finab().whole())).collect::<Result<_, ContextError>>()?;
    DecoratedModule::new(ctx, m.clone(), conditions)
}

pub fn zero_conditions(ctx: &DualityContext, m: &Arc<GModule>) -> Result<DecoratedModule, ContextError> {
    let conditions = (0..ctx.places.len()).map(|v| Ok(ctx.local_h1(m, v)?.finab().zero_subgroup())).collect::<Result<_, ContextError>>()?;
    DecoratedModule::new(ctx, m.clone(), conditions)
}

/// `W^⊥_v ⊆ H¹(G_v, M^∨)`.
pub fn orthogonal_complement(ctx: &DualityContext, x: &DecoratedModule) -> Result<Vec<AbSubgroup>, ContextError> {
    (0..ctx.places.len())
        .map(|v| Ok(ctx.local_pairing(&x.module, v)?.right_orthogonal(&x.conditions[v])?))
        .collect()
}

/// `(M^∨, W^⊥)`.
pub fn dual_decorated(ctx: &DualityContext, x: &DecoratedModule) -> Result<DecoratedModule, ContextError> {
    let (md, _) = ctx.dual(&x.module)?;
    let perp = orthogonal_complement(ctx, x)?;
    DecoratedModule::new(ctx, md, perp)
}

/// Global restriction maps `H¹(G, M) → H¹(G_v, M)`.
pub fn localizations(ctx: &DualityContext, m: &Arc<GModule>) -> Result<Vec<ClassMap>, ContextError> {
    ctx.places.iter().map(|p| Ok(group_change::res(m, &p.decomposition, 1)?)).collect()
}

/// `Sel(M, W) ⊆ H¹(G, M)` in class coordinates of `H¹(G, M)`.
pub fn selmer(ctx: &DualityContext, x: &DecoratedModule) -> Result<Selmer, ContextError> {
    let h1 = CohomologyGroup::compute(&x.module, 1)?;
    let loc = localizations(ctx, &x.module)?;
    let group = AbSubgroup::filter(&h1.finab(), |c| loc.iter().zip(&x.conditions).all(|(r, w)| w.contains(&r.apply(c))))?;
    Ok(Selmer { h1, group })
}

#[derive(Clone, Debug)]
pub struct Selmer {
    pub h1: Arc<CohomologyGroup>,
    pub group: AbSubgroup,
}

impl Selmer {
    pub fn generators(&self) -> Vec<Vec<i64>> {
        self.group.generators()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Per-place outcome of a context validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationItem {
    pub check: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Reciprocity, and at full strictness local-duality perfectness for each
/// listed module.
pub fn validate_context(ctx: &DualityContext, modules: &[(String, Arc<GModule>)], strict: bool) -> Result<Vec<ValidationItem>, ContextError> {
    let mut out = Vec::new();
    for p in &ctx.places {
        out.push(ValidationItem { check: format!("inv well defined at {}", p.name), passed: true, witness: None });
    }
    let w = ctx.reciprocity_witness()?;
    out.push(ValidationItem {
        check: "reciprocity".into(),
        passed: w.is_none(),
        witness: w.map(|w| format!("class {:?} of H²(G, C) has invariant sum {}", w.class, w.sum)),
    });
    if strict {
        for (name, m) in modules {
            for (v, p) in ctx.places.iter().enumerate() {
                let perfect = match ctx.dual(m) {
                    Ok(_) => ctx.local_pairing(m, v)?.is_perfect()?,
                    Err(_) => continue,
                };
                out.push(ValidationItem {
                    check: format!("local duality for {name} at {}", p.name),
                    passed: perfect,
                    witness: (!perfect).then(|| "cup-then-inv pairing has a nonzero radical".to_string()),
                });
            }
        }
    }
    Ok(out)
}

/// The context obtained by passing to a subgroup `H` (a finite extension of
/// the base field): places `w = (v, τ_w)` over each `v` from the double cosets
/// `G_v \ G / H`, with `G_w = H ∩ τ_w⁻¹G_vτ_w`, `I_w = H ∩ τ_w⁻¹I_vτ_w` and
/// `inv_w = inv_v ∘ cor_{w|v}`.
#[derive(Clone, Debug)]
pub struct DerivedContext {
    pub base: DualityContext,
    pub derived: DualityContext,
    /// For each derived place: (index of `v`, `τ_w`).
    pub over: Vec<(usize, Elem)>,
}

pub fn derive_subgroup_context(ctx: &DualityContext, h: &Subgroup) -> Result<DerivedContext, ContextError> {
    if !h.is_subgroup_of(&ctx.ambient) {
        return Err(ContextError::PreconditionViolation("H must be a subgroup of G".into()));
    }
    let g = ctx.group.clone();
    let ch = ctx.coefficient.restrict(h)?;
    let mut places = Vec::new();
    let mut over = Vec::new();
    for (vi, p) in ctx.places.iter().enumerate() {
        let dc = crate::group::DoubleCosetDecomposition::new(&ctx.ambient, &p.decomposition, h);
        for (&tau, g_w) in dc.reps.iter().zip(&dc.intersections) {
            let ti = g.inv(tau);
            let i_w = h.intersect(&p.inertia.conjugate(ti));
            let cor = group_change::cor_wv(&ctx.coefficient, &p.decomposition, g_w, tau, 2)?;
            let values = cor.columns.iter().map(|c| p.inv.eval_coords(c)).collect();
            let h2 = CohomologyGroup::compute(&ch.restrict(g_w)?, 2)?;
            let inv = InvMap { h2, values };
            places.push(Place::from_inv(&format!("{}/{}", p.name, tau), g_w.clone(), i_w, inv));
            over.push((vi, tau));
        }
    }
    let derived = DualityContext::new(h.clone(), ch, places)?;
    Ok(DerivedContext { base: ctx.clone(), derived, over })
}
