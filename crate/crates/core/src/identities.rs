//! Identities satisfied by the pairing: duality, naturality, and the
//! cyclotomic symmetry and antisymmetry statements.

use crate::context::{dual_decorated, selmer, DualityContext, Selmer};
use crate::ctp::ctp;
use crate::error::{ContextError, CtpError};
use crate::extension::{cyclotomic_family, g_morphism, hom_from_columns, m_n_sequence, torsion_parts};
use crate::group_change;
use crate::hom::ModuleHom;
use crate::qz::QZ;
use crate::sequence::DecoratedSequence;

/// Pairs at or below this many are checked exhaustively; above it only
/// generator pairs are used.
pub const EXHAUSTIVE_PAIRS: usize = 256;

/// The Selmer elements to test against: all of them when small.
pub fn test_elements(a: &Selmer, b: &Selmer) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    if a.order() * b.order() <= EXHAUSTIVE_PAIRS {
        (a.group.elements().cloned().collect(), b.group.elements().cloned().collect())
    } else {
        (a.generators(), b.generators())
    }
}

fn mismatch(label: &str, phi: &[i64], psi: &[i64], lhs: QZ, rhs: QZ) -> String {
    format!("{label} at φ={phi:?} ψ={psi:?}: {lhs} != {rhs}")
}

/// Selmer groups of `M2` and of `M1^∨`.
pub fn selmer_sides(ctx: &DualityContext, e: &DecoratedSequence) -> Result<(Selmer, Selmer), CtpError> {
    Ok((selmer(ctx, &e.m2)?, selmer(ctx, &dual_decorated(ctx, &e.m1)?)?))
}

/// `CTP_E(φ, ψ) = CTP_{E^∨}(ψ, φ)`; the first failure, if any.
pub fn duality_identity(ctx: &DualityContext, e: &DecoratedSequence) -> Result<Option<String>, CtpError> {
    let ed = e.dual(ctx)?;
    if ed.m1.module != e.m2.module {
        return Err(ContextError::ContextMismatch.into());
    }
    let (s2, s1) = selmer_sides(ctx, e)?;
    let (xs, ys) = test_elements(&s2, &s1);
    for phi in &xs {
        for psi in &ys {
            let lhs = ctp(ctx, e, phi, psi, None)?.value;
            let rhs = ctp(ctx, &ed, psi, phi, None)?.value;
            if lhs != rhs {
                return Ok(Some(mismatch("duality", phi, psi, lhs, rhs)));
            }
        }
    }
    Ok(None)
}

/// A morphism `E → E'` of decorated sequences.
#[derive(Clone, Debug)]
pub struct SequenceMorphism {
    pub f1: ModuleHom,
    pub f: ModuleHom,
    pub f2: ModuleHom,
}

impl SequenceMorphism {
    /// Checks both squares and that every map carries local conditions
    /// into local conditions.
    pub fn new(ctx: &DualityContext, e: &DecoratedSequence, e2: &DecoratedSequence, f1: ModuleHom, f: ModuleHom, f2: ModuleHom) -> Result<SequenceMorphism, CtpError> {
        let ends = [(&f1, &e.m1, &e2.m1), (&f, &e.m, &e2.m), (&f2, &e.m2, &e2.m2)];
        for (g, a, b) in ends {
            if g.source() != &a.module || g.target() != &b.module {
                return Err(CtpError::NotComposable("morphism terms do not match the sequences".into()));
            }
            if !DecoratedSequence::conditions_preserved(ctx, g, a, b)? {
                return Err(CtpError::NotComposable("a map does not preserve local conditions".into()));
            }
        }
        if f.compose(&e.iota)? != e2.iota.compose(&f1)? || f2.compose(&e.pi)? != e2.pi.compose(&f)? {
            return Err(CtpError::NotComposable("squares do not commute".into()));
        }
        Ok(SequenceMorphism { f1, f, f2 })
    }
}

/// `CTP_E(φ, f1^∨ ψ) = CTP_{E'}(f2 φ, ψ)`.
pub fn naturality(ctx: &DualityContext, e: &DecoratedSequence, e2: &DecoratedSequence, mor: &SequenceMorphism) -> Result<Option<String>, CtpError> {
    let c = &ctx.coefficient;
    let f1d = group_change::induced_by(&mor.f1.dual(c)?, 1)?;
    let f2c = group_change::induced_by(&mor.f2, 1)?;
    let s2 = selmer(ctx, &e.m2)?;
    let s1 = selmer(ctx, &dual_decorated(ctx, &e2.m1)?)?;
    let (xs, ys) = test_elements(&s2, &s1);
    for phi in &xs {
        for psi in &ys {
            let lhs = ctp(ctx, e, phi, &f1d.apply(psi), None)?.value;
            let rhs = ctp(ctx, e2, &f2c.apply(phi), psi, None)?.value;
            if lhs != rhs {
                return Ok(Some(mismatch("naturality", phi, psi, lhs, rhs)));
            }
        }
    }
    Ok(None)
}

/// `CTP_{E(a,b)}(φ, g_a ψ) = CTP_{E(b,a)}(ψ, g_b φ)` for `φ ∈ Sel Z/b`,
/// `ψ ∈ Sel Z/a`.
pub fn cyclotomic_symmetry(ctx: &DualityContext, a: i64, b: i64) -> Result<Option<String>, CtpError> {
    let eab = cyclotomic_family(ctx, a, b)?;
    let eba = cyclotomic_family(ctx, b, a)?;
    let ga = group_change::induced_by(&g_morphism(ctx, a)?, 1)?;
    let gb = group_change::induced_by(&g_morphism(ctx, b)?, 1)?;
    let sb = selmer(ctx, &eab.m2)?;
    let sa = selmer(ctx, &eba.m2)?;
    let (xs, ys) = test_elements(&sb, &sa);
    for phi in &xs {
        for psi in &ys {
            let lhs = ctp(ctx, &eab, phi, &ga.apply(psi), None)?.value;
            let rhs = ctp(ctx, &eba, psi, &gb.apply(phi), None)?.value;
            if lhs != rhs {
                return Ok(Some(mismatch("symmetry", phi, psi, lhs, rhs)));
            }
        }
    }
    Ok(None)
}

/// `D(m) = (E_n − E_n^∨)[m]`.
pub fn d_sequence(ctx: &DualityContext, n: i64, m: i64) -> Result<DecoratedSequence, CtpError> {
    if n % m != 0 {
        return Err(CtpError::NotComposable(format!("{m} does not divide {n}")));
    }
    Ok(torsion_parts(ctx, &m_n_sequence(ctx, n)?, m)?.0)
}

/// `CTP_{D(m)}(φ, ψ) = −CTP_{D(m)}(ψ, φ)`. Both arguments live in
/// `Sel Z/m`, the left one as `M2` and the right one as `M1^∨`.
pub fn antisymmetry(ctx: &DualityContext, n: i64, m: i64) -> Result<Option<String>, CtpError> {
    let d = d_sequence(ctx, n, m)?;
    let (s2, s1) = selmer_sides(ctx, &d)?;
    if s2.h1.module() != s1.h1.module() || s2.group != s1.group {
        return Err(CtpError::NotComposable("the two Selmer groups of D(m) differ".into()));
    }
    let (xs, _) = test_elements(&s2, &s1);
    for phi in &xs {
        for psi in &xs {
            let lhs = ctp(ctx, &d, phi, psi, None)?.value;
            let rhs = -ctp(ctx, &d, psi, phi, None)?.value;
            if lhs != rhs {
                return Ok(Some(mismatch("antisymmetry", phi, psi, lhs, rhs)));
            }
        }
    }
    Ok(None)
}

/// The morphism `D(a) → D(m)` given by inclusion at each entry, `a | m | n`.
pub fn d_inclusion(ctx: &DualityContext, n: i64, a: i64, m: i64) -> Result<(DecoratedSequence, DecoratedSequence, SequenceMorphism), CtpError> {
    if m % a != 0 || n % m != 0 {
        return Err(CtpError::NotComposable(format!("need {a} | {m} | {n}")));
    }
    let e = m_n_sequence(ctx, n)?;
    let (da, sa) = torsion_parts(ctx, &e, a)?;
    let (dm, sm) = torsion_parts(ctx, &e, m)?;
    let mut maps = Vec::new();
    for (x, y) in sa.iter().zip(&sm) {
        let cols = x
            .lifts
            .iter()
            .map(|l| y.project(l).ok_or_else(|| CtpError::NotComposable("torsion is not nested".into())))
            .collect::<Result<Vec<_>, _>>()?;
        maps.push(hom_from_columns(&x.module, &y.module, &cols)?);
    }
    let [f1, f, f2]: [ModuleHom; 3] = maps.try_into().expect("three terms");
    let mor = SequenceMorphism::new(ctx, &da, &dm, f1, f, f2)?;
    Ok((da, dm, mor))
}

/// `CTP_{D(m)}(φ, ψ) = CTP_{D(a)}(bφ, ψ)` for `m = ab`, checked as
/// naturality along `D(a) → D(m)`.
pub fn compatibility(ctx: &DualityContext, n: i64, a: i64, b: i64) -> Result<Option<String>, CtpError> {
    let (da, dm, mor) = d_inclusion(ctx, n, a, a * b)?;
    naturality(ctx, &da, &dm, &mor)
}

/// `CTP_{D(n)}(φ, ψ) = CTP_{E(n,n)}(φ, gψ) − CTP_{E(n,n)}(ψ, gφ)`.
pub fn baer_formula(ctx: &DualityContext, n: i64) -> Result<Option<String>, CtpError> {
    let d = d_sequence(ctx, n, n)?;
    let e = cyclotomic_family(ctx, n, n)?;
    let g = group_change::induced_by(&g_morphism(ctx, n)?, 1)?;
    let (s2, s1) = selmer_sides(ctx, &d)?;
    let (xs, ys) = test_elements(&s2, &s1);
    for phi in &xs {
        for psi in &ys {
            let lhs = ctp(ctx, &d, phi, psi, None)?.value;
            let rhs = ctp(ctx, &e, phi, &g.apply(psi), None)?.value - ctp(ctx, &e, psi, &g.apply(phi), None)?.value;
            if lhs != rhs {
                return Ok(Some(mismatch("Baer formula", phi, psi, lhs, rhs)));
            }
        }
    }
    Ok(None)
}
