//! The Cassels–Tate pairing of a decorated short exact sequence.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::Cochain;
use crate::cohomology::{solve_coboundary, CohomologyGroup, Solve};
use crate::context::{dual_decorated, selmer, DualityContext, Selmer};
use crate::error::{CochainError, CtpError};
use crate::finab::AbSubgroup;
use crate::group::Subgroup;
use crate::hom::Pairing;
use crate::module::GModule;
use crate::qz::QZ;
use crate::sequence::DecoratedSequence;

/// Every choice made along the way.
#[derive(Clone, Debug)]
pub struct Transcript {
    pub psi_bar: Cochain,
    pub phi_bar: Cochain,
    pub f: Cochain,
    pub epsilon: Cochain,
    /// Class in `W_v` of each local lift.
    pub local_classes: Vec<Vec<i64>>,
    pub local_lifts: Vec<Cochain>,
    pub gammas: Vec<Cochain>,
    pub local_values: Vec<QZ>,
}

#[derive(Clone, Debug)]
pub struct CtpComputation {
    pub phi: Vec<i64>,
    pub psi: Vec<i64>,
    pub transcript: Transcript,
    pub value: QZ,
}

/// Maps a cochain with values in `ι(M1)` back to `M1`.
pub(crate) fn iota_pullback(e: &DecoratedSequence, c: &Cochain) -> Result<Cochain, CochainError> {
    let target = e.m1.module.restrict(c.group())?;
    let carrier = e.m.module.carrier();
    let mut values = Vec::with_capacity(c.tuples());
    for idx in 0..c.tuples() {
        let y = c.value_at(idx);
        match &e.iota_inverse[carrier.encode(y) as usize] {
            Some(x) => values.push(x.clone()),
            None => return Err(CochainError::Mismatch),
        }
    }
    Cochain::from_values(&target, c.degree(), &values)
}

/// Composes a cochain valued in `M2` with the section.
pub(crate) fn section_of(e: &DecoratedSequence, c: &Cochain) -> Result<Cochain, CochainError> {
    let target = e.m.module.restrict(c.group())?;
    let carrier = e.m2.module.carrier();
    let values: Vec<Vec<i64>> = (0..c.tuples()).map(|idx| e.section[carrier.encode(c.value_at(idx)) as usize].clone()).collect();
    Cochain::from_values(&target, c.degree(), &values)
}

/// The data shared by every computation on one sequence.
pub struct CtpSetup {
    pub sel_m2: Selmer,
    pub sel_dual: Selmer,
    pub dual_module: Arc<GModule>,
    pub pairing: Pairing,
}

impl CtpSetup {
    pub fn new(ctx: &DualityContext, e: &DecoratedSequence) -> Result<CtpSetup, CtpError> {
        let sel_m2 = selmer(ctx, &e.m2)?;
        let d1 = dual_decorated(ctx, &e.m1)?;
        let sel_dual = selmer(ctx, &d1)?;
        let (dual_module, pairing) = ctx.dual(&e.m1.module)?;
        Ok(CtpSetup { sel_m2, sel_dual, dual_module, pairing })
    }
}

fn representative<R: Rng>(h: &CohomologyGroup, coords: &[i64], rng: Option<&mut R>) -> Result<Cochain, CochainError> {
    let rep = h.representative(coords)?;
    match rng {
        Some(rng) => rep.add(&Cochain::random_coboundary(h.module(), h.degree(), rng)?),
        None => Ok(rep),
    }
}

/// `CTP_E(φ, ψ)` for `φ ∈ Sel M2` and `ψ ∈ Sel M1^∨` in class coordinates.
/// Without a seed every choice is the least one.
pub fn ctp(ctx: &DualityContext, e: &DecoratedSequence, phi: &[i64], psi: &[i64], seed: Option<u64>) -> Result<CtpComputation, CtpError> {
    let setup = CtpSetup::new(ctx, e)?;
    ctp_with(ctx, e, &setup, phi, psi, seed)
}

pub fn ctp_with(
    ctx: &DualityContext,
    e: &DecoratedSequence,
    setup: &CtpSetup,
    phi: &[i64],
    psi: &[i64],
    seed: Option<u64>,
) -> Result<CtpComputation, CtpError> {
    let phi = setup.sel_m2.h1.finab().reduce(phi);
    let psi = setup.sel_dual.h1.finab().reduce(psi);
    if phi.len() != setup.sel_m2.h1.rank() || !setup.sel_m2.group.contains(&phi) {
        return Err(CtpError::NotSelmer { which: "phi" });
    }
    if psi.len() != setup.sel_dual.h1.rank() || !setup.sel_dual.group.contains(&psi) {
        return Err(CtpError::NotSelmer { which: "psi" });
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);

    let phi_bar = representative(&setup.sel_m2.h1, &phi, rng.as_mut())?;
    let psi_bar = representative(&setup.sel_dual.h1, &psi, rng.as_mut())?;
    let mut f = section_of(e, &phi_bar)?;
    if let Some(rng) = rng.as_mut() {
        f = f.add(&Cochain::random(&e.m1.module, 1, rng)?.map(&e.iota)?)?;
    }
    let df = iota_pullback(e, &f.coboundary()?)?;
    let omega = df.cup(&psi_bar, &setup.pairing)?;
    let epsilon = match solve_coboundary(&omega, false, rng.as_mut())? {
        Solve::Solution(x) => x,
        Solve::Obstruction(class) => return Err(CtpError::EpsilonObstruction { class }),
    };

    let mut t = Transcript {
        psi_bar,
        phi_bar,
        f,
        epsilon,
        local_classes: Vec::new(),
        local_lifts: Vec::new(),
        gammas: Vec::new(),
        local_values: Vec::new(),
    };
    let mut value = QZ::ZERO;
    for (v, place) in ctx.places.iter().enumerate() {
        let gv = &place.decomposition;
        let (lift, class) = local_lift(ctx, e, v, &t.phi_bar.restrict(gv)?, rng.as_mut())?;
        let diff = t.f.restrict(gv)?.sub(&lift)?;
        let pv = setup.pairing.restrict(gv)?;
        let gamma = iota_pullback(e, &diff)?.cup(&t.psi_bar.restrict(gv)?, &pv)?.sub(&t.epsilon.restrict(gv)?)?;
        let inv = place.inv.eval(&gamma)?;
        value = value + inv;
        t.local_classes.push(class);
        t.local_lifts.push(lift);
        t.gammas.push(gamma);
        t.local_values.push(inv);
    }
    Ok(CtpComputation { phi, psi, transcript: t, value })
}

/// A cocycle lift of `φ̄_v` whose class lies in `W_v`.
fn local_lift<R: Rng>(
    ctx: &DualityContext,
    e: &DecoratedSequence,
    v: usize,
    phi_v: &Cochain,
    mut rng: Option<&mut R>,
) -> Result<(Cochain, Vec<i64>), CtpError> {
    let gv: &Subgroup = &ctx.places[v].decomposition;
    let (_, pv) = e.local_maps(ctx, v)?;
    let target = pv.target.class_of(std::slice::from_ref(phi_v))?;
    let fiber: Vec<&Vec<i64>> = e.m.conditions[v].elements().filter(|w| pv.apply(w) == target).collect();
    if fiber.is_empty() {
        return Err(CtpError::LocalLiftObstruction { place: ctx.places[v].name.clone() });
    }
    let w = match rng.as_mut() {
        Some(rng) => fiber[rng.gen_range(0..fiber.len())].clone(),
        None => fiber[0].clone(),
    };
    let h = ctx.local_h1(&e.m.module, v)?;
    let r = representative(&h, &w, rng)?;
    let pi_v = e.pi.restrict(gv)?;
    let delta = r.map(&pi_v)?.sub(phi_v)?;
    let m2 = match solve_coboundary::<R>(&delta, false, None)? {
        Solve::Solution(x) => x,
        Solve::Obstruction(_) => unreachable!("classes agree"),
    };
    let lift = r.sub(&section_of(e, &m2)?.coboundary()?)?;
    debug_assert_eq!(lift.map(&pi_v)?, *phi_v);
    Ok((lift, w))
}

/// The pairing matrix on Selmer generators with both kernels.
#[derive(Clone, Debug)]
pub struct CtpMatrix {
    pub left_generators: Vec<Vec<i64>>,
    pub right_generators: Vec<Vec<i64>>,
    pub values: Vec<Vec<QZ>>,
    pub left_kernel: AbSubgroup,
    pub right_kernel: AbSubgroup,
    /// `π_*(Sel M) ⊆ Sel M2`.
    pub expected_left: AbSubgroup,
    /// `ι^∨_*(Sel M^∨) ⊆ Sel M1^∨`.
    pub expected_right: AbSubgroup,
}

impl CtpMatrix {
    pub fn kernels_match(&self) -> bool {
        self.left_kernel == self.expected_left && self.right_kernel == self.expected_right
    }
}

/// Evaluates the pairing on generator pairs and computes both kernels by
/// direct evaluation against the other side's generators.
pub fn ctp_matrix(ctx: &DualityContext, e: &DecoratedSequence) -> Result<CtpMatrix, CtpError> {
    let setup = CtpSetup::new(ctx, e)?;
    let lg = setup.sel_m2.generators();
    let rg = setup.sel_dual.generators();
    let mut values = Vec::with_capacity(lg.len());
    for x in &lg {
        let mut row = Vec::with_capacity(rg.len());
        for y in &rg {
            row.push(ctp_with(ctx, e, &setup, x, y, None)?.value);
        }
        values.push(row);
    }
    let mut left = Vec::new();
    for x in setup.sel_m2.group.elements() {
        let mut zero = true;
        for y in &rg {
            if !ctp_with(ctx, e, &setup, x, y, None)?.value.is_zero() {
                zero = false;
                break;
            }
        }
        if zero {
            left.push(x.clone());
        }
    }
    let mut right = Vec::new();
    for y in setup.sel_dual.group.elements() {
        let mut zero = true;
        for x in &lg {
            if !ctp_with(ctx, e, &setup, x, y, None)?.value.is_zero() {
                zero = false;
                break;
            }
        }
        if zero {
            right.push(y.clone());
        }
    }
    let left_kernel = AbSubgroup::span(&setup.sel_m2.h1.finab(), &left)?;
    let right_kernel = AbSubgroup::span(&setup.sel_dual.h1.finab(), &right)?;
    let (expected_left, expected_right) = theorem_kernels(ctx, e)?;
    Ok(CtpMatrix { left_generators: lg, right_generators: rg, values, left_kernel, right_kernel, expected_left, expected_right })
}

/// `π_*(Sel M)` and `ι^∨_*(Sel M^∨)`.
pub fn theorem_kernels(ctx: &DualityContext, e: &DecoratedSequence) -> Result<(AbSubgroup, AbSubgroup), CtpError> {
    let sel_m = selmer(ctx, &e.m)?;
    let pi = crate::group_change::induced_by(&e.pi, 1)?;
    let left = sel_m.group.image(&pi.target.finab(), |x| pi.apply(x))?;
    let dm = dual_decorated(ctx, &e.m)?;
    let sel_dm = selmer(ctx, &dm)?;
    let iota_dual = e.iota.dual(&ctx.coefficient)?;
    let id = crate::group_change::induced_by(&iota_dual, 1)?;
    let right = sel_dm.group.image(&id.target.finab(), |x| id.apply(x))?;
    Ok((left, right))
}
