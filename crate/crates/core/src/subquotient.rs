//! Submodules and quotients of a module, with explicit coordinates.

use std::sync::Arc;

use crate::error::ModuleError;
use crate::hom::ModuleHom;
use crate::linalg::{modn, SubQuotient};
use crate::module::GModule;

/// `S / R` for `G`-stable subgroups `R ⊆ S` of a module `A`, presented as a
/// new module whose basis vectors are classes of chosen elements of `S`.
#[derive(Clone, Debug)]
pub struct ModuleSubquotient {
    pub ambient: Arc<GModule>,
    pub module: Arc<GModule>,
    /// Basis lifts, in the coordinates of `A`.
    pub lifts: Vec<Vec<i64>>,
    sq: SubQuotient,
}

fn embed(a: &GModule, x: &[i64]) -> Vec<i64> {
    let n = a.exponent();
    x.iter().zip(a.moduli()).map(|(&v, &d)| modn(v * (n / d), n)).collect()
}

fn unembed(a: &GModule, x: &[i64]) -> Vec<i64> {
    let n = a.exponent();
    x.iter().zip(a.moduli()).map(|(&v, &d)| modn(v / (n / d), d)).collect()
}

impl ModuleSubquotient {
    pub fn new(a: &Arc<GModule>, s: &[Vec<i64>], r: &[Vec<i64>]) -> Result<ModuleSubquotient, ModuleError> {
        let n = a.exponent();
        let k = a.rank();
        let l: Vec<Vec<i64>> = s.iter().map(|x| embed(a, x)).collect();
        let rel: Vec<Vec<i64>> = r.iter().map(|x| embed(a, x)).collect();
        let sq = SubQuotient::new(n.max(1), k, &l, &rel);
        let lifts: Vec<Vec<i64>> = sq.generators.iter().map(|g| unembed(a, g)).collect();
        let mut out = ModuleSubquotient { ambient: a.clone(), module: GModule::trivial_action(a.group(), sq.orders.clone()), lifts, sq };
        let mut action = Vec::new();
        for sigma in a.group().generators() {
            let cols = out
                .lifts
                .iter()
                .map(|x| {
                    out.project(&a.act(sigma, x))
                        .ok_or_else(|| ModuleError::PreconditionViolation("subgroup is not stable under the action".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rows = (0..cols.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
            action.push((sigma, rows));
        }
        out.module = GModule::build(a.group(), out.sq.orders.clone(), &action)?;
        for x in r {
            if out.project(x).is_none_or(|c| c.iter().any(|&v| v != 0)) {
                return Err(ModuleError::PreconditionViolation("relations are not contained in the subgroup".into()));
            }
        }
        Ok(out)
    }

    /// Coordinates of the class of `x ∈ S`, or `None` if `x ∉ S + R`.
    pub fn project(&self, x: &[i64]) -> Option<Vec<i64>> {
        self.sq.project(&embed(&self.ambient, x))
    }

    /// `S/R → A/R'` style maps are built by the caller; this is `S → A` when
    /// `R = 0`.
    pub fn inclusion(&self) -> Result<ModuleHom, ModuleError> {
        let k = self.ambient.rank();
        let rows: Vec<Vec<i64>> = (0..k).map(|i| self.lifts.iter().map(|x| x[i]).collect()).collect();
        ModuleHom::new(&self.module, &self.ambient, &rows)
    }

    /// `A → A/R` when `S = A`.
    pub fn projection(&self) -> Result<ModuleHom, ModuleError> {
        let k = self.ambient.rank();
        let cols = (0..k)
            .map(|j| {
                let mut e = vec![0; k];
                e[j] = 1;
                self.project(&e).ok_or_else(|| ModuleError::PreconditionViolation("basis vector outside S".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rows: Vec<Vec<i64>> = (0..self.module.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        ModuleHom::new(&self.ambient, &self.module, &rows)
    }
}

/// The basis vectors of a module.
pub fn basis(a: &GModule) -> Vec<Vec<i64>> {
    (0..a.rank())
        .map(|j| {
            let mut e = vec![0; a.rank()];
            e[j] = 1;
            e
        })
        .collect()
}

/// `A / R`.
pub fn quotient(a: &Arc<GModule>, r: &[Vec<i64>]) -> Result<ModuleSubquotient, ModuleError> {
    ModuleSubquotient::new(a, &basis(a), r)
}

/// The submodule generated by `s`.
pub fn submodule(a: &Arc<GModule>, s: &[Vec<i64>]) -> Result<ModuleSubquotient, ModuleError> {
    ModuleSubquotient::new(a, s, &[])
}
