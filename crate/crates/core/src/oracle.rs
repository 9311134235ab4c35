//! Exhaustive evaluation of the pairing over every legal transcript, for
//! very small groups. Nothing here goes through the Smith-form solver: legal
//! sets are enumerated cochain by cochain.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::cochain::Cochain;
use crate::cohomology::CohomologyGroup;
use crate::context::{dual_decorated, DualityContext};
use crate::ctp::{iota_pullback, section_of};
use crate::error::{CochainError, CtpError};
use crate::finab::FinAb;
use crate::module::GModule;
use crate::qz::QZ;
use crate::sequence::DecoratedSequence;

/// Refuse enumerations with more cochains than this.
pub const ORACLE_CAP: u128 = 1 << 16;

#[derive(Clone, Debug)]
pub struct OracleReport {
    /// Every value reached by some legal transcript.
    pub values: BTreeSet<QZ>,
    pub transcripts: u128,
}

fn all_cochains(m: &Arc<GModule>, deg: usize) -> Result<Vec<Cochain>, CochainError> {
    let tuples = Cochain::zero(m, deg)?.tuples();
    let moduli: Vec<i64> = (0..tuples).flat_map(|_| m.moduli().iter().copied()).collect();
    let fa = FinAb::new(moduli);
    if fa.order() > ORACLE_CAP {
        return Err(CochainError::TooLarge { size: fa.order() });
    }
    fa.elements()?.iter().map(|x| Cochain::from_flat(m, deg, x)).collect()
}

fn coboundaries(m: &Arc<GModule>, deg: usize) -> Result<Vec<Cochain>, CochainError> {
    if deg == 0 {
        return Ok(vec![Cochain::zero(m, 0)?]);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in all_cochains(m, deg - 1)? {
        let d = c.coboundary()?;
        if seen.insert(d.data().to_vec()) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Every cocycle whose class is `coords`.
fn class_members(h: &CohomologyGroup, coords: &[i64]) -> Result<Vec<Cochain>, CochainError> {
    let r = h.representative(coords)?;
    coboundaries(h.module(), h.degree())?.iter().map(|b| r.add(b)).collect()
}

/// `γ ↦ inv_v(γ)` tabulated on every 2-cocycle of `G_v`.
fn inv_table(ctx: &DualityContext, v: usize) -> Result<HashMap<Vec<i64>, QZ>, CochainError> {
    let inv = &ctx.places[v].inv;
    let b2 = coboundaries(inv.h2.module(), 2)?;
    let mut table = HashMap::new();
    for k in inv.h2.finab().elements()? {
        let r = inv.h2.representative(&k)?;
        let val = inv.eval_coords(&k);
        for b in &b2 {
            table.insert(r.add(b)?.data().to_vec(), val);
        }
    }
    Ok(table)
}

/// Enumerates all `(φ̄, ψ̄, f, ε, (φ̄_{v,M})_v)` and collects the values.
pub fn exhaustive_ctp(ctx: &DualityContext, e: &DecoratedSequence, phi: &[i64], psi: &[i64]) -> Result<OracleReport, CtpError> {
    let (dual_module, pairing) = ctx.dual(&e.m1.module)?;
    let d1 = dual_decorated(ctx, &e.m1)?;
    let h_m2 = CohomologyGroup::compute(&e.m2.module, 1)?;
    let h_d = CohomologyGroup::compute(&d1.module, 1)?;
    let phis = class_members(&h_m2, phi)?;
    let psis = class_members(&h_d, psi)?;
    let shifts: Vec<Cochain> = all_cochains(&e.m1.module, 1)?.iter().map(|c| c.map(&e.iota)).collect::<Result<_, _>>()?;
    let mut eps_by_boundary: HashMap<Vec<i64>, Vec<Cochain>> = HashMap::new();
    for eps in all_cochains(&ctx.coefficient, 2)? {
        eps_by_boundary.entry(eps.coboundary()?.data().to_vec()).or_default().push(eps);
    }
    let invs = (0..ctx.places.len()).map(|v| inv_table(ctx, v)).collect::<Result<Vec<_>, _>>()?;
    // W_v as a set of cocycles
    let mut wcoc = Vec::new();
    for v in 0..ctx.places.len() {
        let h = ctx.local_h1(&e.m.module, v)?;
        let mut set = Vec::new();
        for w in e.m.conditions[v].elements() {
            set.extend(class_members(&h, w)?);
        }
        wcoc.push(set);
    }
    let _ = dual_module;

    let mut values = BTreeSet::new();
    let mut transcripts: u128 = 0;
    for phi_bar in &phis {
        // local lifts depend only on φ̄
        let mut lifts = Vec::new();
        for (v, place) in ctx.places.iter().enumerate() {
            let pv = e.pi.restrict(&place.decomposition)?;
            let target = phi_bar.restrict(&place.decomposition)?;
            let mut ok = Vec::new();
            for l in &wcoc[v] {
                if l.map(&pv)? == target {
                    ok.push(l.clone());
                }
            }
            if ok.is_empty() {
                return Err(CtpError::LocalLiftObstruction { place: place.name.clone() });
            }
            lifts.push(ok);
        }
        let base = section_of(e, phi_bar)?;
        for psi_bar in &psis {
            for shift in &shifts {
                let f = base.add(shift)?;
                let omega = iota_pullback(e, &f.coboundary()?)?.cup(psi_bar, &pairing)?;
                let Some(epss) = eps_by_boundary.get(omega.data()) else {
                    return Err(CtpError::EpsilonObstruction { class: Vec::new() });
                };
                for eps in epss {
                    let mut sums: BTreeSet<QZ> = [QZ::ZERO].into();
                    let mut count: u128 = 1;
                    for (v, place) in ctx.places.iter().enumerate() {
                        let gv = &place.decomposition;
                        let fv = f.restrict(gv)?;
                        let pv = pairing.restrict(gv)?;
                        let psi_v = psi_bar.restrict(gv)?;
                        let eps_v = eps.restrict(gv)?;
                        let mut local = BTreeSet::new();
                        for l in &lifts[v] {
                            let gamma = iota_pullback(e, &fv.sub(l)?)?.cup(&psi_v, &pv)?.sub(&eps_v)?;
                            match invs[v].get(gamma.data()) {
                                Some(&x) => local.insert(x),
                                None => return Err(CochainError::NotACocycle.into()),
                            };
                        }
                        count *= lifts[v].len() as u128;
                        sums = sums.iter().flat_map(|&s| local.iter().map(move |&x| s + x)).collect();
                    }
                    transcripts += count;
                    values.extend(sums);
                }
            }
        }
    }
    Ok(OracleReport { values, transcripts })
}
