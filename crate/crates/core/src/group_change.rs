//! Restriction, corestriction, conjugation and Shapiro maps on cohomology
//! classes, computed by applying the cochain-level operations to chosen
//! representatives.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cochain::Cochain;
use crate::cohomology::CohomologyGroup;
use crate::error::{CochainError, ModuleError};
use crate::finab::FinAb;
use crate::group::{DoubleCosetDecomposition, Elem, Subgroup, Transversal};
use crate::hom::ModuleHom;
use crate::induced::Induced;
use crate::linalg::modn;
use crate::module::GModule;

/// Coboundary perturbations used to spot-check that a map is well defined.
pub const WELL_DEFINEDNESS_CHECKS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Res,
    Cores,
    Conj,
    Shap,
    ShapInverse,
    ShapRestricted,
    ShapRestrictedInverse,
    CorWv,
    ResWv,
    Induced,
    Composite,
}

/// A direct sum of cohomology groups of one degree.
#[derive(Clone, Debug)]
pub struct CohomSum {
    pub parts: Vec<Arc<CohomologyGroup>>,
}

impl CohomSum {
    pub fn single(h: Arc<CohomologyGroup>) -> CohomSum {
        CohomSum { parts: vec![h] }
    }

    pub fn orders(&self) -> Vec<i64> {
        self.parts.iter().flat_map(|p| p.orders().iter().copied()).collect()
    }

    pub fn finab(&self) -> FinAb {
        FinAb::new(self.orders())
    }

    pub fn order(&self) -> u128 {
        self.parts.iter().map(|p| p.order()).product()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for p in &self.parts {
            off.push(off.last().unwrap() + p.rank());
        }
        off
    }

    /// Splits class coordinates into per-part coordinates.
    pub fn split(&self, coords: &[i64]) -> Vec<Vec<i64>> {
        let off = self.offsets();
        (0..self.parts.len()).map(|i| coords[off[i]..off[i + 1]].to_vec()).collect()
    }

    /// Representative cochains of a class, one per part.
    pub fn representative(&self, coords: &[i64]) -> Result<Vec<Cochain>, CochainError> {
        self.parts.iter().zip(self.split(coords)).map(|(p, c)| p.representative(&c)).collect()
    }

    pub fn class_of(&self, cochains: &[Cochain]) -> Result<Vec<i64>, CochainError> {
        if cochains.len() != self.parts.len() {
            return Err(CochainError::Mismatch);
        }
        let mut out = Vec::new();
        for (p, c) in self.parts.iter().zip(cochains) {
            out.extend(p.class_of(c)?);
        }
        Ok(out)
    }

    pub fn basis(&self) -> Vec<Vec<i64>> {
        let r = self.orders().len();
        (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                e
            })
            .collect()
    }
}

/// A homomorphism between sums of cohomology groups, stored by the images of
/// the basis classes.
#[derive(Clone, Debug)]
pub struct ClassMap {
    pub kind: MapKind,
    pub source: CohomSum,
    pub target: CohomSum,
    /// `columns[j]` = class of the image of basis class `j`.
    pub columns: Vec<Vec<i64>>,
}

impl ClassMap {
    /// Builds the map induced by a cochain-level operation, spot-checking
    /// independence of representatives.
    pub fn from_cochain_map(
        kind: MapKind,
        source: CohomSum,
        target: CohomSum,
        f: impl Fn(&[Cochain]) -> Result<Vec<Cochain>, CochainError>,
    ) -> Result<ClassMap, CochainError> {
        let mut columns = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for e in source.basis() {
            let reps = source.representative(&e)?;
            let col = target.class_of(&f(&reps)?)?;
            for _ in 0..WELL_DEFINEDNESS_CHECKS {
                let perturbed = reps
                    .iter()
                    .map(|r| r.add(&Cochain::random_coboundary(r.module(), r.degree(), &mut rng)?))
                    .collect::<Result<Vec<_>, _>>()?;
                if target.class_of(&f(&perturbed)?)? != col {
                    return Err(CochainError::NotWellDefined(format!(
                        "{kind:?} depends on the representative of basis class {e:?}"
                    )));
                }
            }
            columns.push(col);
        }
        Ok(ClassMap { kind, source, target, columns })
    }

    pub fn apply(&self, coords: &[i64]) -> Vec<i64> {
        let orders = self.target.orders();
        let mut out = vec![0; orders.len()];
        for (c, col) in coords.iter().zip(&self.columns) {
            for (o, &x) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        out.iter().zip(&orders).map(|(&x, &d)| modn(x, d)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ClassMap) -> ClassMap {
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        ClassMap { kind: MapKind::Composite, source: other.source.clone(), target: self.target.clone(), columns }
    }

    pub fn is_identity(&self) -> bool {
        self.source.orders() == self.target.orders()
            && self.columns.iter().enumerate().all(|(j, c)| c.iter().enumerate().all(|(i, &x)| x == (i == j) as i64))
    }

    /// `self = k·id` on a group equal to its target.
    pub fn is_multiple_of_identity(&self, k: i64) -> bool {
        let orders = self.target.orders();
        self.source.orders() == orders
            && self.columns.iter().enumerate().all(|(j, c)| {
                c.iter().enumerate().all(|(i, &x)| x == if i == j { modn(k, orders[i]) } else { 0 })
            })
    }

    pub fn same_values(&self, other: &ClassMap) -> bool {
        self.columns == other.columns
    }

    pub fn image(&self) -> Result<crate::finab::AbSubgroup, CochainError> {
        crate::finab::AbSubgroup::span(&self.target.finab(), &self.columns)
    }

    pub fn kernel(&self) -> Result<crate::finab::AbSubgroup, CochainError> {
        let tf = self.target.finab();
        crate::finab::AbSubgroup::filter(&self.source.finab(), |x| tf.is_zero(&self.apply(x)))
    }

    pub fn is_bijective(&self) -> Result<bool, CochainError> {
        Ok(self.source.order() == self.target.order() && self.image()?.order() as u128 == self.target.order())
    }
}

fn single(m: &Arc<GModule>, n: usize) -> Result<CohomSum, CochainError> {
    Ok(CohomSum::single(CohomologyGroup::compute(m, n)?))
}

/// `res : H^n(S, M) → H^n(K, M)`.
pub fn res(m: &Arc<GModule>, k: &Subgroup, n: usize) -> Result<ClassMap, CochainError> {
    let mk = m.restrict(k)?;
    ClassMap::from_cochain_map(MapKind::Res, single(m, n)?, single(&mk, n)?, |c| Ok(vec![c[0].restrict(k)?]))
}

/// `cores : H^n(H, Res M) → H^n(G, M)` through the canonical transversal.
pub fn cores(m: &Arc<GModule>, h: &Subgroup, n: usize) -> Result<ClassMap, CochainError> {
    let mh = m.restrict(h)?;
    let t = Transversal::new(m.group(), h);
    ClassMap::from_cochain_map(MapKind::Cores, single(&mh, n)?, single(m, n)?, |c| Ok(vec![c[0].corestrict(&t, m)?]))
}

/// Conjugation `H^n(S, M) → H^n(τSτ⁻¹, τM)`.
pub fn conj(m: &Arc<GModule>, tau: Elem, n: usize) -> Result<ClassMap, CochainError> {
    let tm = m.conjugate(tau);
    ClassMap::from_cochain_map(MapKind::Conj, single(m, n)?, single(&tm, n)?, |c| Ok(vec![c[0].conjugate(tau)?]))
}

/// Conjugation composed with `c_τ`: `H^n(S, Res M) → H^n(τSτ⁻¹, Res M)`
/// for a module `m` over a group containing `S` and `τ`.
pub fn conj_in(m: &Arc<GModule>, s: &Subgroup, tau: Elem, n: usize) -> Result<ClassMap, CochainError> {
    let ms = m.restrict(s)?;
    let mt = m.restrict(&s.conjugate(tau))?;
    ClassMap::from_cochain_map(MapKind::Conj, single(&ms, n)?, single(&mt, n)?, |c| Ok(vec![c[0].conjugate_in(tau, m)?]))
}

/// Post-composition with a module map.
pub fn induced_by(f: &ModuleHom, n: usize) -> Result<ClassMap, CochainError> {
    ClassMap::from_cochain_map(MapKind::Induced, single(f.source(), n)?, single(f.target(), n)?, |c| Ok(vec![c[0].map(f)?]))
}

/// `shap : H^n(H, M) → H^n(G, Ind M)`.
pub fn shap(ind: &Induced, n: usize) -> Result<ClassMap, CochainError> {
    let t = Transversal::new(ind.ambient(), ind.sub());
    ClassMap::from_cochain_map(MapKind::Shap, single(&ind.base, n)?, single(&ind.module, n)?, |c| Ok(vec![c[0].shapiro(&t, ind)?]))
}

/// `shap⁻¹ = ν_1 ∘ res : H^n(G, Ind M) → H^n(H, M)`.
pub fn shap_inverse(ind: &Induced, n: usize) -> Result<ClassMap, CochainError> {
    let nu1 = ind.nu_1()?;
    let h = ind.sub().clone();
    ClassMap::from_cochain_map(MapKind::ShapInverse, single(&ind.module, n)?, single(&ind.base, n)?, |c| {
        Ok(vec![c[0].restrict(&h)?.map(&nu1)?])
    })
}

/// The restricted Shapiro isomorphism `⊕_τ H^n(D_τ, M) → H^n(C, Ind M)`
/// with its inverse and the double-coset data.
#[derive(Clone, Debug)]
pub struct RestrictedShapiro {
    pub decomposition: DoubleCosetDecomposition,
    pub forward: ClassMap,
    pub inverse: ClassMap,
}

pub fn restricted_shapiro(ind: &Induced, c: &Subgroup, n: usize) -> Result<RestrictedShapiro, CochainError> {
    if !c.is_subgroup_of(ind.ambient()) {
        return Err(ModuleError::PreconditionViolation("C must be a subgroup of G".into()).into());
    }
    restricted_shapiro_with(ind, DoubleCosetDecomposition::new(ind.ambient(), c, ind.sub()), n)
}

/// As [`restricted_shapiro`] with caller-chosen double coset representatives.
pub fn restricted_shapiro_with(ind: &Induced, dc: DoubleCosetDecomposition, n: usize) -> Result<RestrictedShapiro, CochainError> {
    let c = dc.left.clone();
    let target = single(&ind.module.restrict(&c)?, n)?;
    let mut parts = Vec::new();
    for d in &dc.intersections {
        parts.push(CohomologyGroup::compute(&ind.base.restrict(d)?, n)?);
    }
    let source = CohomSum { parts };
    let forward = ClassMap::from_cochain_map(MapKind::ShapRestricted, source.clone(), target.clone(), |fs| {
        Ok(vec![restricted_shapiro_cochain(ind, &dc, fs)?])
    })?;
    let inverse = ClassMap::from_cochain_map(MapKind::ShapRestrictedInverse, target, source, |fs| {
        restricted_shapiro_inverse_cochain(ind, &dc, &fs[0])
    })?;
    Ok(RestrictedShapiro { decomposition: dc, forward, inverse })
}

/// Cochain form of the restricted Shapiro map: `Σ_τ cores ∘ conj_τ ∘ i_1`.
pub fn restricted_shapiro_cochain(ind: &Induced, dc: &DoubleCosetDecomposition, fs: &[Cochain]) -> Result<Cochain, CochainError> {
    let n = fs.first().map(|f| f.degree()).ok_or(CochainError::Mismatch)?;
    let im = &ind.module;
    let cmod = im.restrict(&dc.left)?;
    let i1 = ind.i_1()?;
    let mut acc = Cochain::zero(&cmod, n)?;
    for ((&tau, d), f) in dc.reps.iter().zip(&dc.intersections).zip(fs) {
        let lifted = f.map(&i1.restrict(d)?)?;
        let conj = lifted.conjugate_in(tau, im)?;
        let t = Transversal::new(&dc.left, &d.conjugate(tau));
        acc = acc.add(&conj.corestrict(&t, &cmod)?)?;
    }
    Ok(acc)
}

/// Cochain form of the inverse: components `ν_1 ∘ conj_{τ⁻¹} ∘ res`.
pub fn restricted_shapiro_inverse_cochain(
    ind: &Induced,
    dc: &DoubleCosetDecomposition,
    f: &Cochain,
) -> Result<Vec<Cochain>, CochainError> {
    let g = ind.ambient().parent().clone();
    let nu1 = ind.nu_1()?;
    dc.reps
        .iter()
        .zip(&dc.intersections)
        .map(|(&tau, d)| {
            let r = f.restrict(&d.conjugate(tau))?;
            r.conjugate_in(g.inv(tau), &ind.module)?.map(&nu1.restrict(d)?)
        })
        .collect()
}

/// `cor_{w|v} = cores ∘ conj_{τ_w} : H^n(G_w, M) → H^n(G_v, M)` for a
/// `G`-module `m`, with `G_w = H ∩ τ⁻¹G_vτ`.
pub fn cor_wv(m: &Arc<GModule>, g_v: &Subgroup, g_w: &Subgroup, tau: Elem, n: usize) -> Result<ClassMap, CochainError> {
    let src = m.restrict(g_w)?;
    let conj_group = g_w.conjugate(tau);
    if !conj_group.is_subgroup_of(g_v) {
        return Err(ModuleError::PreconditionViolation("τ G_w τ⁻¹ must lie in G_v".into()).into());
    }
    let mv = m.restrict(g_v)?;
    let t = Transversal::new(g_v, &conj_group);
    ClassMap::from_cochain_map(MapKind::CorWv, single(&src, n)?, single(&mv, n)?, |c| {
        Ok(vec![c[0].conjugate_in(tau, m)?.corestrict(&t, &mv)?])
    })
}

/// `res_{w|v} = conj_{τ_w⁻¹} ∘ res : H^n(G_v, M) → H^n(G_w, M)`.
pub fn res_wv(m: &Arc<GModule>, g_v: &Subgroup, g_w: &Subgroup, tau: Elem, n: usize) -> Result<ClassMap, CochainError> {
    let g = m.group().parent().clone();
    let mv = m.restrict(g_v)?;
    let mw = m.restrict(g_w)?;
    let conj_group = g_w.conjugate(tau);
    ClassMap::from_cochain_map(MapKind::ResWv, single(&mv, n)?, single(&mw, n)?, |c| {
        Ok(vec![c[0].restrict(&conj_group)?.conjugate_in(g.inv(tau), m)?])
    })
}
