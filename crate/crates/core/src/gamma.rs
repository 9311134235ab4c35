//! The explicit model of the central term of `E_n − E_n^∨` and its
//! alternating pairing `γ_n`.

use std::sync::Arc;

use crate::context::DualityContext;
use crate::error::CtpError;
use crate::extension::{direct_sum, hom_from_columns, m_n_sequence, mu, z_mod};
use crate::finab::FinAb;
use crate::hom::ModuleHom;
use crate::identities::{naturality, SequenceMorphism};
use crate::module::GModule;
use crate::sequence::DecoratedSequence;
use crate::subquotient::ModuleSubquotient;

/// `{(x, y) ∈ μ_{n²} ⊕ Z/n² : y ≡ x mod n} / ⟨(n, n)⟩` with
/// `ι(a) = (na, 0)` and `π(x, y) = y mod n`.
pub struct ExplicitMn {
    pub n: i64,
    pub sub: ModuleSubquotient,
    pub iota: ModuleHom,
    pub pi: ModuleHom,
}

pub fn explicit_m_n(ctx: &DualityContext, n: i64) -> Result<ExplicitMn, CtpError> {
    let n2 = n * n;
    let a = direct_sum(&mu(ctx, n2)?, &z_mod(ctx, n2))?;
    let sub = ModuleSubquotient::new(&a.module, &[vec![1, 1], vec![0, n]], &[vec![n, n]])?;
    let mun = mu(ctx, n)?;
    let iota_col = sub.project(&[n, 0]).ok_or_else(|| CtpError::NotComposable("μ_n is not inside the model".into()))?;
    let iota = hom_from_columns(&mun, &sub.module, &[iota_col])?;
    let pi_cols: Vec<Vec<i64>> = sub.lifts.iter().map(|l| vec![l[1].rem_euclid(n)]).collect();
    let pi = hom_from_columns(&sub.module, &z_mod(ctx, n), &pi_cols)?;
    Ok(ExplicitMn { n, sub, iota, pi })
}

impl ExplicitMn {
    /// `γ_n` as a pairing on lifts: `((x, y), (x', y')) ↦ x y' − y x'` in
    /// `C`.
    pub fn pairing(&self, ctx: &DualityContext, u: &[i64], w: &[i64]) -> i64 {
        let c = ctx.exponent();
        let scale = c / (self.n * self.n);
        (u[0] * w[1] - u[1] * w[0]).rem_euclid(c) * scale % c
    }

    fn lift(&self, coords: &[i64]) -> Vec<i64> {
        let k = self.sub.ambient.rank();
        let mut out = vec![0; k];
        for (l, &c) in self.sub.lifts.iter().zip(coords) {
            for (o, &x) in out.iter_mut().zip(l) {
                *o += c * x;
            }
        }
        out
    }

    fn elements(&self) -> Result<Vec<Vec<i64>>, CtpError> {
        Ok(FinAb::new(self.sub.module.moduli().to_vec()).elements()?)
    }

    fn pair_classes(&self, ctx: &DualityContext, u: &[i64], w: &[i64]) -> i64 {
        self.pairing(ctx, &self.lift(u), &self.lift(w))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaReport {
    /// The formula vanishes when either argument is a relation.
    pub well_defined: bool,
    pub alternating: bool,
    pub nondegenerate: bool,
    /// `γ(ι a)(m) = ⟨a, π m⟩`.
    pub left_compatible: bool,
    /// `γ(m)(ι a) = −⟨a, π m⟩`.
    pub right_compatible: bool,
    /// An isomorphism to the Baer central term commuting with `ι` and `π`.
    pub isomorphism: Option<Vec<Vec<i64>>>,
    /// `(Id, γ, −1)` is a morphism of decorated sequences into the dual,
    /// and naturality holds along it.
    pub morphism: Option<bool>,
}

impl GammaReport {
    pub fn passes(&self) -> bool {
        self.well_defined
            && self.alternating
            && self.nondegenerate
            && self.left_compatible
            && self.right_compatible
            && self.isomorphism.is_some()
            && self.morphism == Some(true)
    }
}

pub fn check_gamma(ctx: &DualityContext, n: i64) -> Result<GammaReport, CtpError> {
    let x = explicit_m_n(ctx, n)?;
    let c = ctx.exponent();
    let mut r = GammaReport::default();
    let rel = [n, n];
    let sgens = [vec![1, 1], vec![0, n]];
    r.well_defined = sgens.iter().all(|s| x.pairing(ctx, &rel, s) == 0 && x.pairing(ctx, s, &rel) == 0);
    let els = x.elements()?;
    r.alternating = els.iter().all(|u| x.pair_classes(ctx, u, u) == 0);
    r.nondegenerate = els.iter().all(|u| u.iter().all(|&v| v == 0) || els.iter().any(|w| x.pair_classes(ctx, u, w) != 0));
    let (_, ev) = ctx.dual(&z_mod(ctx, n))?;
    let mun = FinAb::new(mu(ctx, n)?.moduli().to_vec()).elements()?;
    let (mut left, mut right) = (true, true);
    for a in &mun {
        let ia = x.iota.apply(a);
        for u in &els {
            let e = ev.eval(&x.pi.apply(u), a)[0];
            left &= x.pair_classes(ctx, &ia, u) == e.rem_euclid(c);
            right &= x.pair_classes(ctx, u, &ia) == (-e).rem_euclid(c);
        }
    }
    r.left_compatible = left;
    r.right_compatible = right;
    let e = m_n_sequence(ctx, n)?;
    let Some(phi) = find_isomorphism(&x, &e)? else {
        return Ok(r);
    };
    r.isomorphism = Some(phi.rows());
    r.morphism = Some(gamma_morphism(ctx, &x, &e, &phi)?);
    Ok(r)
}

/// An isomorphism `model → M_n` with `φ ι' = ι` and `π φ = π'`, by search.
fn find_isomorphism(x: &ExplicitMn, e: &DecoratedSequence) -> Result<Option<ModuleHom>, CtpError> {
    let target = &e.m.module;
    if x.iota.source() != &e.m1.module || x.pi.target() != &e.m2.module {
        return Ok(None);
    }
    let cands = FinAb::new(target.moduli().to_vec()).elements()?;
    let r = x.sub.module.rank();
    let mut idx = vec![0usize; r];
    loop {
        let cols: Vec<Vec<i64>> = idx.iter().map(|&i| cands[i].clone()).collect();
        if let Ok(f) = hom_from_columns(&x.sub.module, target, &cols) {
            if f.is_isomorphism()? && f.compose(&x.iota)? == e.iota && e.pi.compose(&f)? == x.pi {
                return Ok(Some(f));
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < cands.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Transports `γ` to `M_n → M_n^∨` and checks `(Id, γ, −1)` against the
/// dual sequence.
fn gamma_morphism(ctx: &DualityContext, x: &ExplicitMn, e: &DecoratedSequence, phi: &ModuleHom) -> Result<bool, CtpError> {
    let ed = e.dual(ctx)?;
    let (md, ev) = ctx.dual(&e.m.module)?;
    let inv = crate::extension::invert(phi)?;
    let duals = FinAb::new(md.moduli().to_vec()).elements()?;
    let basis: Vec<Vec<i64>> = (0..e.m.module.rank()).map(|i| unit(e.m.module.rank(), i)).collect();
    let mut cols = Vec::new();
    for u in &basis {
        let pu = inv.apply(u);
        let z = duals.iter().find(|z| basis.iter().all(|w| ev.eval(w, z)[0] == x.pair_classes(ctx, &pu, &inv.apply(w))));
        match z {
            Some(z) => cols.push(z.clone()),
            None => return Ok(false),
        }
    }
    let gamma = match hom_from_columns(&e.m.module, &md, &cols) {
        Ok(g) => g,
        Err(_) => return Ok(false),
    };
    let f1 = identity_between(&e.m1.module, &ed.m1.module)?;
    let f2 = identity_between(&e.m2.module, &ed.m2.module)?.scale(-1);
    match SequenceMorphism::new(ctx, e, &ed, f1, gamma, f2) {
        Ok(mor) => Ok(naturality(ctx, e, &ed, &mor)?.is_none()),
        Err(CtpError::NotComposable(_)) => Ok(false),
        Err(err) => Err(err),
    }
}

fn unit(k: usize, i: usize) -> Vec<i64> {
    (0..k).map(|j| i64::from(i == j)).collect()
}

fn identity_between(a: &Arc<GModule>, b: &Arc<GModule>) -> Result<ModuleHom, CtpError> {
    let k = a.rank();
    Ok(ModuleHom::new(a, b, &(0..k).map(|i| unit(k, i)).collect::<Vec<_>>())?)
}
