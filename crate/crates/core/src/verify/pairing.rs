//! Suites about the pairing itself, run on the shipped fixtures.
//!
//! The group-order bound of [`VerifyOptions`] applies to the map suites'
//! inventory only; every shipped fixture is always checked.

use std::sync::Arc;

use rand::Rng;

use super::maps::case_rng;
use super::{run_case, CaseReport, Outcome, VerifyOptions};
use crate::context::{dual_decorated, full_conditions, selmer, zero_conditions, DualityContext};
use crate::ctp::{ctp_matrix, ctp_with, CtpSetup};
use crate::error::CtpError;
use crate::fixtures::{self, ShippedSequence};
use crate::group::Elem;
use crate::identities::test_elements;
use crate::module::GModule;
use crate::sequence::DecoratedSequence;

/// Re-choices per `(φ, ψ)` in the well-definedness suite.
pub const RECHOICES: usize = 20;
/// Random conjugation tuples per context for embedding independence.
pub const CONJUGATION_TUPLES: usize = 10;

/// First `(φ, ψ)` whose value changes under seeded re-choice, as a witness
/// naming both seeds and values.
pub fn rechoice_witness(ctx: &DualityContext, e: &DecoratedSequence, rechoices: usize, seed: u64) -> Result<Option<String>, CtpError> {
    let setup = CtpSetup::new(ctx, e)?;
    let (xs, ys) = test_elements(&setup.sel_m2, &setup.sel_dual);
    for phi in &xs {
        for psi in &ys {
            let base = ctp_with(ctx, e, &setup, phi, psi, None)?.value;
            for k in 0..rechoices as u64 {
                let s = seed.wrapping_mul(1_000_003).wrapping_add(k);
                let v = ctp_with(ctx, e, &setup, phi, psi, Some(s))?.value;
                if v != base {
                    return Ok(Some(format!("φ={phi:?} ψ={psi:?}: least choices give {base}, seed {s} gives {v}")));
                }
            }
        }
    }
    Ok(None)
}

/// The twisted split sequence on the context whose reciprocity is broken.
pub fn broken_sequence() -> Result<(DualityContext, DecoratedSequence), CtpError> {
    let ctx = fixtures::broken_context();
    let e = fixtures::twisted_split_sequence(&ctx, &[vec![1, 1]])?;
    Ok((ctx, e))
}

fn per_sequence(suite: &str, f: impl Fn(&ShippedSequence) -> Result<Outcome, Box<dyn std::error::Error>>) -> Vec<CaseReport> {
    fixtures::shipped_sequences().iter().map(|s| run_case(suite, s.name.clone(), || f(s))).collect()
}

pub fn well_definedness(opts: &VerifyOptions) -> Vec<CaseReport> {
    let mut out = per_sequence("well-definedness", |s| Ok(rechoice_witness(&s.ctx, &s.sequence, RECHOICES, opts.seed)?.into()));
    out.push(run_case("well-definedness", "broken-reciprocity/detected", || {
        let (ctx, e) = broken_sequence()?;
        Ok(match rechoice_witness(&ctx, &e, RECHOICES, opts.seed)? {
            Some(w) => Outcome::Detected(w),
            None => Outcome::Fail("re-choice on the broken context never changed the value".into()),
        })
    }));
    out
}

pub fn kernels(_: &VerifyOptions) -> Vec<CaseReport> {
    per_sequence("kernels", |s| {
        let m = ctp_matrix(&s.ctx, &s.sequence)?;
        Ok(if m.kernels_match() {
            Outcome::Pass
        } else {
            Outcome::Fail(format!(
                "left kernel {:?} vs π(Sel M) {:?}; right kernel {:?} vs ι^∨(Sel M^∨) {:?}",
                m.left_kernel.generators(),
                m.expected_left.generators(),
                m.right_kernel.generators(),
                m.expected_right.generators()
            ))
        })
    })
}

pub fn duality(_: &VerifyOptions) -> Vec<CaseReport> {
    per_sequence("duality", |s| Ok(crate::identities::duality_identity(&s.ctx, &s.sequence)?.into()))
}

pub fn naturality(_: &VerifyOptions) -> Vec<CaseReport> {
    match fixtures::shipped_morphisms() {
        Ok(ms) => ms
            .iter()
            .map(|m| {
                run_case("naturality", m.name.clone(), || {
                    Ok(crate::identities::naturality(&m.ctx, &m.source, &m.target, &m.morphism)?.into())
                })
            })
            .collect(),
        Err(e) => vec![run_case("naturality", "fixtures", || Err(e.into()))],
    }
}

/// Embedding independence on every shipped sequence, with random `τ_v`.
pub fn conjugation(opts: &VerifyOptions) -> Vec<CaseReport> {
    per_sequence("conjugation", |s| {
        let mut rng = case_rng(opts.seed, &s.name);
        let elems = s.ctx.ambient.elements().to_vec();
        for _ in 0..CONJUGATION_TUPLES {
            let taus: Vec<Elem> = s.ctx.places.iter().map(|_| elems[rng.gen_range(0..elems.len())]).collect();
            if let Some(w) = crate::conjugation::embedding_independence(&s.ctx, &s.sequence, &taus)? {
                return Ok(Outcome::Fail(format!("τ={taus:?}: {w}")));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// The induction identity on every Selmer pair of every family, and the
/// duality functor and Selmer–Shapiro bijection on each term.
pub fn field_change(_: &VerifyOptions) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for fam in fixtures::field_change_families() {
        let dc = &fam.derived;
        let e = &fam.sequence;
        out.push(run_case("field-change", format!("{}/induction", fam.name), || {
            let setup = crate::fieldchange::induced_setup(dc, e)?;
            let s2 = selmer(&dc.derived, &e.m2)?;
            let s1 = selmer(&dc.derived, &dual_decorated(&dc.derived, &e.m1)?)?;
            for phi in s2.group.elements() {
                for psi in s1.group.elements() {
                    let r = crate::fieldchange::field_change_ctp(dc, e, &setup, phi, psi)?;
                    if !r.holds() {
                        return Ok(Outcome::Fail(format!("φ={phi:?} ψ={psi:?}: over K {} over F {}", r.over_k, r.over_f)));
                    }
                }
            }
            Ok(Outcome::Pass)
        }));
        out.push(run_case("field-change", format!("{}/duality-functor", fam.name), || {
            for (label, x) in [("M1", &e.m1), ("M", &e.m), ("M2", &e.m2)] {
                if !crate::fieldchange::duality_functor_holds(dc, x)? {
                    return Ok(Outcome::Fail(format!("t does not carry the induced dual conditions on {label}")));
                }
                if !crate::fieldchange::selmer_shapiro_holds(dc, x)? {
                    return Ok(Outcome::Fail(format!("Shapiro is not a bijection of Selmer groups on {label}")));
                }
            }
            Ok(Outcome::Pass)
        }));
    }
    out
}

/// Restriction and corestriction identities, one case per part. Parts
/// whose hypothesis fails are skipped with a notice. A control case checks
/// that the hypothesis test rejects full conditions over `F` against zero
/// conditions over `K`.
pub fn restriction(_: &VerifyOptions) -> Vec<CaseReport> {
    let pairs = match fixtures::restriction_pairs() {
        Ok(p) => p,
        Err(e) => return vec![run_case("restriction", "fixtures", || Err(e.into()))],
    };
    let mut out = Vec::new();
    for (name, dc, ef, ek) in &pairs {
        let mut report = None;
        out.push(run_case("restriction", format!("{name}/hypotheses"), || {
            report = Some(crate::fieldchange::adjointness(dc, ef, ek)?);
            Ok(Outcome::Pass)
        }));
        let Some(report) = report else { continue };
        let parts = [
            ("part1", report.part1, "cores does not carry K-conditions into F-conditions"),
            ("part2", report.part2, "res does not carry F-conditions into K-conditions"),
            ("part3", report.part3, "one of the containment hypotheses fails"),
        ];
        for (label, part, why) in parts {
            out.push(run_case("restriction", format!("{name}/{label}"), || {
                Ok(match part {
                    Some(true) => Outcome::Pass,
                    Some(false) => Outcome::Fail(report.witness.clone().unwrap_or_default()),
                    None => Outcome::Skip(format!("hypothesis fails: {why}")),
                })
            }));
        }
        out.push(run_case("restriction", format!("{name}/hypothesis-control"), || {
            let xf = full_conditions(&dc.base, &ef.m2.module)?;
            let xk = zero_conditions(&dc.derived, &ek.m2.module)?;
            Ok(if !crate::fieldchange::res_preserves(dc, &xf, &xk)? {
                Outcome::Detected("res of H¹(G_v, M2) is not inside the zero conditions".into())
            } else if !crate::fieldchange::restrict_decorated(dc, &xf)?.conditions.iter().any(|w| w.order() > 1) {
                Outcome::Skip("res vanishes on every local H¹".into())
            } else {
                Outcome::Fail("res_preserves accepted a nonzero image into zero conditions".into())
            })
        }));
    }
    out
}

/// Conjugation invariance over the dihedral family, for every `τ ∈ G`.
pub fn galois(_: &VerifyOptions) -> Vec<CaseReport> {
    let fam = fixtures::galois_dihedral();
    let dc = &fam.derived;
    let e = &fam.sequence;
    let g = dc.base.ambient.clone();
    let lift = |m: &Arc<GModule>| GModule::trivial_action(&g, m.moduli().to_vec());
    let lifts = [lift(&e.m1.module), lift(&e.m.module), lift(&e.m2.module)];
    let mut out = Vec::new();
    for &tau in g.elements() {
        out.push(run_case("galois", format!("{}/tau={tau}", fam.name), || {
            Ok(match crate::conjugation::galois_invariance(dc, e, [&lifts[0], &lifts[1], &lifts[2]], tau)? {
                None => Outcome::Skip("conditions are not stable under τ".into()),
                Some(w) => w.into(),
            })
        }));
    }
    out
}

pub fn symmetry(_: &VerifyOptions) -> Vec<CaseReport> {
    let ctx = fixtures::cyclotomic_context();
    [(1, 1), (1, 2), (2, 1), (2, 2), (1, 4), (4, 1)]
        .iter()
        .map(|&(a, b)| {
            run_case("symmetry", format!("cyclotomic/E({a},{b})"), || Ok(crate::identities::cyclotomic_symmetry(&ctx, a, b)?.into()))
        })
        .collect()
}

pub fn antisymmetry(_: &VerifyOptions) -> Vec<CaseReport> {
    let ctx = fixtures::cyclotomic_context();
    let mut out = Vec::new();
    for m in [1, 2] {
        out.push(run_case("antisymmetry", format!("cyclotomic/D({m})"), || Ok(crate::identities::antisymmetry(&ctx, 2, m)?.into())));
    }
    for (a, b) in [(1, 1), (1, 2), (2, 1)] {
        out.push(run_case("antisymmetry", format!("cyclotomic/compatibility a={a} b={b}"), || {
            Ok(crate::identities::compatibility(&ctx, 2, a, b)?.into())
        }));
    }
    out.push(run_case("antisymmetry", "cyclotomic/baer-formula", || Ok(crate::identities::baer_formula(&ctx, 2)?.into())));
    out
}

pub fn gamma(_: &VerifyOptions) -> Vec<CaseReport> {
    let ctx = fixtures::cyclotomic_context();
    vec![run_case("gamma", "cyclotomic/n=2", || {
        let r = crate::gamma::check_gamma(&ctx, 2)?;
        Ok(if r.passes() { Outcome::Pass } else { Outcome::Fail(format!("{r:?}")) })
    })]
}

/// `|G| = 2`: every legal transcript gives the computed value.
pub fn oracle(_: &VerifyOptions) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for s in fixtures::order_two_sequences() {
        out.push(run_case("oracle", s.name.clone(), || {
            let setup = CtpSetup::new(&s.ctx, &s.sequence)?;
            for phi in setup.sel_m2.group.elements() {
                for psi in setup.sel_dual.group.elements() {
                    let v = ctp_with(&s.ctx, &s.sequence, &setup, phi, psi, None)?.value;
                    let r = crate::oracle::exhaustive_ctp(&s.ctx, &s.sequence, phi, psi)?;
                    if r.values.len() != 1 || !r.values.contains(&v) {
                        return Ok(Outcome::Fail(format!(
                            "φ={phi:?} ψ={psi:?}: computed {v}, {} transcripts reach {:?}",
                            r.transcripts, r.values
                        )));
                    }
                }
            }
            Ok(Outcome::Pass)
        }));
    }
    out.push(run_case("oracle", "broken-reciprocity/detected", || {
        let (ctx, e) = broken_sequence()?;
        let setup = CtpSetup::new(&ctx, &e)?;
        for phi in setup.sel_m2.group.elements() {
            for psi in setup.sel_dual.group.elements() {
                let r = crate::oracle::exhaustive_ctp(&ctx, &e, phi, psi)?;
                if r.values.len() > 1 {
                    return Ok(Outcome::Detected(format!("φ={phi:?} ψ={psi:?}: transcripts reach {:?}", r.values)));
                }
            }
        }
        Ok(Outcome::Fail("every transcript on the broken context agreed".into()))
    }));
    out
}
