//! Cohomology groups `H^n(S, M)` by exact linear algebra over `Z/N`, with
//! `N` the exponent of `M`.
//!
//! A cochain in `C^n(S, M)` is lifted coordinate-wise to `(Z/N)^a`; target
//! coordinates of a differential are embedded through `Z/d ⊂ Z/N`,
//! `y ↦ (N/d)·y`. Cocycles are then the kernel of the scaled differential
//! and `H^n` is that kernel modulo the image of the previous differential and
//! the lifts of zero.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex, OnceLock};

use rand::Rng;

use crate::cochain::Cochain;
use crate::error::CochainError;
use crate::finab::FinAb;
use crate::linalg::{modn, Diagonalization, SubQuotient, ZnMatrix};
use crate::module::GModule;

/// Highest degree for which `H^n` is computed.
pub const COHOMOLOGY_CEILING: usize = 3;

/// Largest dense differential (entries) the pipeline will assemble.
pub const MATRIX_ENTRY_CAP: u128 = 1 << 25;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    elements: Vec<usize>,
    fingerprint: u64,
    moduli: Vec<i64>,
    degree: usize,
}

impl Key {
    fn new(m: &GModule, degree: usize) -> Key {
        Key { elements: m.group().elements().to_vec(), fingerprint: m.fingerprint(), moduli: m.moduli().to_vec(), degree }
    }
}

type Cell<T> = Arc<OnceLock<Arc<T>>>;

/// Per-key once-only construction: the map lock is held only to fetch the
/// cell, so distinct keys build concurrently and equal keys build once.
struct Cache<T> {
    map: Mutex<HashMap<Key, (Arc<GModule>, Cell<T>)>>,
}

impl<T> Cache<T> {
    fn new() -> Self {
        Cache { map: Mutex::new(HashMap::new()) }
    }

    fn get_or_try_init(
        &self,
        m: &Arc<GModule>,
        degree: usize,
        init: impl FnOnce() -> Result<T, CochainError>,
    ) -> Result<Arc<T>, CochainError> {
        let key = Key::new(m, degree);
        let cell = {
            let mut map = self.map.lock().unwrap_or_else(|e| e.into_inner());
            match map.get(&key) {
                Some((stored, cell)) if **stored == **m => cell.clone(),
                Some(_) => {
                    // fingerprint collision between distinct modules: do not cache
                    drop(map);
                    return init().map(Arc::new);
                }
                None => {
                    let cell: Cell<T> = Arc::new(OnceLock::new());
                    map.insert(key, (m.clone(), cell.clone()));
                    cell
                }
            }
        };
        if let Some(v) = cell.get() {
            return Ok(v.clone());
        }
        let v = Arc::new(init()?);
        Ok(cell.get_or_init(|| v).clone())
    }
}

static DIFFERENTIALS: LazyLock<Cache<Diagonalization>> = LazyLock::new(Cache::new);
static GROUPS: LazyLock<Cache<CohomologyGroup>> = LazyLock::new(Cache::new);

fn lift_modulus(m: &GModule) -> i64 {
    m.exponent()
}

fn cochain_len(m: &GModule, n: usize) -> u128 {
    (m.group().order() as u128).pow(n as u32) * m.rank() as u128
}

/// The scaled differential `d_n : C^n → C^{n+1}` as a matrix over `Z/N`.
fn differential_matrix(m: &GModule, n: usize) -> Result<ZnMatrix, CochainError> {
    let big_n = lift_modulus(m);
    let (cols, rows) = (cochain_len(m, n), cochain_len(m, n + 1));
    if cols * rows > MATRIX_ENTRY_CAP {
        return Err(CochainError::TooLarge { size: cols * rows });
    }
    let (cols, rows) = (cols as usize, rows as usize);
    let g = m.group().parent().clone();
    let els = m.group().elements();
    let s = els.len();
    let k = m.rank();
    let d = m.moduli();
    let mut x = ZnMatrix::zeros(big_n, rows, cols);
    let pos = |e: usize| m.group().position(e).unwrap();
    let tuples = s.pow(n as u32 + 1);
    let mut args = vec![0usize; n + 1];
    let mut sub = vec![0usize; n];
    for t in 0..tuples {
        let mut idx = t;
        for slot in args.iter_mut().rev() {
            *slot = idx % s;
            idx /= s;
        }
        let index_of = |p: &[usize]| p.iter().fold(0usize, |a, &q| a * s + q);
        let mut add_block = |col_tuple: usize, mat: Option<&[i64]>, sign: i64| {
            for i in 0..k {
                let row = t * k + i;
                let scale = big_n / d[i];
                for j in 0..k {
                    let a = match mat {
                        Some(mm) => mm[i * k + j],
                        None => (i == j) as i64,
                    };
                    if a != 0 {
                        let c = col_tuple * k + j;
                        let v = x.get(row, c) + sign * a * scale;
                        x.set(row, c, v);
                    }
                }
            }
        };
        // σ_1 · f(σ_2, ..)
        let a0 = m.matrix(els[args[0]]).expect("acting element");
        add_block(index_of(&args[1..]), Some(a0), 1);
        for i in 1..=n {
            for (j, slot) in sub.iter_mut().enumerate() {
                *slot = match j + 1 {
                    q if q < i => args[j],
                    q if q == i => pos(g.mul(els[args[i - 1]], els[args[i]])),
                    _ => args[j + 1],
                };
            }
            add_block(index_of(&sub), None, if i % 2 == 0 { 1 } else { -1 });
        }
        add_block(index_of(&args[..n]), None, if (n + 1) % 2 == 0 { 1 } else { -1 });
    }
    Ok(x)
}

fn diagonalized_differential(m: &Arc<GModule>, n: usize) -> Result<Arc<Diagonalization>, CochainError> {
    DIFFERENTIALS.get_or_try_init(m, n, || Ok(Diagonalization::new(differential_matrix(m, n)?, true)))
}

fn scaled_values(m: &GModule, c: &Cochain) -> Vec<i64> {
    let big_n = lift_modulus(m);
    let d = m.moduli();
    let k = d.len();
    c.data().iter().enumerate().map(|(p, &x)| modn(x * (big_n / d[p % k]), big_n)).collect()
}

/// `H^n(S, M)` with chosen representative cocycles.
#[derive(Debug)]
pub struct CohomologyGroup {
    module: Arc<GModule>,
    degree: usize,
    quotient: SubQuotient,
    representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    /// Cached; equal `(S, M, n)` are computed once.
    pub fn compute(m: &Arc<GModule>, n: usize) -> Result<Arc<CohomologyGroup>, CochainError> {
        if n > COHOMOLOGY_CEILING {
            return Err(CochainError::DegreeTooLarge { degree: n, ceiling: COHOMOLOGY_CEILING });
        }
        GROUPS.get_or_try_init(m, n, || Self::build(m, n))
    }

    fn build(m: &Arc<GModule>, n: usize) -> Result<CohomologyGroup, CochainError> {
        let big_n = lift_modulus(m);
        let a = cochain_len(m, n) as usize;
        let kernel = diagonalized_differential(m, n)?.kernel();
        let d = m.moduli();
        let k = d.len();
        let mut rel: Vec<Vec<i64>> = Vec::new();
        if n > 0 {
            // image of d_{n-1}: columns of the unscaled differential
            let prev = differential_matrix(m, n - 1)?;
            for j in 0..prev.cols {
                let col: Vec<i64> = (0..a).map(|i| (prev.get(i, j) / (big_n / d[i % k])) % d[i % k]).collect();
                if col.iter().any(|&x| x != 0) {
                    rel.push(col);
                }
            }
        }
        for i in 0..a {
            if d[i % k] < big_n {
                let mut e = vec![0; a];
                e[i] = d[i % k];
                rel.push(e);
            }
        }
        let quotient = SubQuotient::new(big_n, a, &kernel, &rel);
        let representatives = quotient
            .generators
            .iter()
            .map(|g| Cochain::from_flat(m, n, g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CohomologyGroup { module: m.clone(), degree: n, quotient, representatives })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Orders of the cyclic summands.
    pub fn orders(&self) -> &[i64] {
        &self.quotient.orders
    }

    pub fn order(&self) -> u128 {
        self.quotient.order()
    }

    pub fn rank(&self) -> usize {
        self.quotient.orders.len()
    }

    pub fn finab(&self) -> FinAb {
        FinAb::new(self.quotient.orders.clone())
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Coordinates of the class of a cocycle.
    pub fn class_of(&self, c: &Cochain) -> Result<Vec<i64>, CochainError> {
        if c.module() != &self.module || c.degree() != self.degree {
            return Err(CochainError::Mismatch);
        }
        self.quotient.project(c.data()).ok_or(CochainError::NotACocycle)
    }

    /// `Σ c_i · rep_i`.
    pub fn representative(&self, coords: &[i64]) -> Result<Cochain, CochainError> {
        if coords.len() != self.rank() {
            return Err(CochainError::Mismatch);
        }
        let mut acc = Cochain::zero(&self.module, self.degree)?;
        for (r, &c) in self.representatives.iter().zip(coords) {
            acc = acc.add(&r.scale(c))?;
        }
        Ok(acc)
    }

    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool, CochainError> {
        Ok(self.class_of(c)?.iter().all(|&x| x == 0))
    }
}

/// Outcome of `dx = ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solution(Cochain),
    /// `ω` is a cocycle with this nonzero class; empty when `H^n` is too large
    /// to tabulate.
    Obstruction(Vec<i64>),
}

/// Solves `dx = ω`. The default particular solution has every free
/// coordinate zero; with an rng a random cocycle is added.
pub fn solve_coboundary<R: Rng + ?Sized>(
    omega: &Cochain,
    check_cocycle: bool,
    rng: Option<&mut R>,
) -> Result<Solve, CochainError> {
    let n = omega.degree();
    if n == 0 {
        return Err(CochainError::DegreeTooLarge { degree: 0, ceiling: 0 });
    }
    if check_cocycle && !omega.is_cocycle()? {
        return Err(CochainError::NotACocycle);
    }
    let m = omega.module();
    let diag = diagonalized_differential(m, n - 1)?;
    match diag.solve(&scaled_values(m, omega)) {
        Some(x) => {
            let mut sol = Cochain::from_flat(m, n - 1, &x)?;
            if let Some(rng) = rng {
                let big_n = lift_modulus(m);
                for kv in diag.kernel() {
                    let c = rng.gen_range(0..big_n);
                    sol = sol.add(&Cochain::from_flat(m, n - 1, &kv)?.scale(c))?;
                }
            }
            debug_assert_eq!(sol.coboundary()?, *omega);
            Ok(Solve::Solution(sol))
        }
        None => {
            if !omega.is_cocycle()? {
                return Err(CochainError::NotACocycle);
            }
            let class = match CohomologyGroup::compute(m, n) {
                Ok(h) => h.class_of(omega)?,
                Err(CochainError::TooLarge { .. }) => Vec::new(),
                Err(e) => return Err(e),
            };
            Ok(Solve::Obstruction(class))
        }
    }
}

/// Deterministic variant of [`solve_coboundary`].
pub fn solve(omega: &Cochain) -> Result<Solve, CochainError> {
    solve_coboundary::<rand::rngs::ThreadRng>(omega, false, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::hom::Pairing;

    #[test]
    fn small_groups() {
        let z2 = FiniteGroup::cyclic(2);
        let m = GModule::trivial_action(&z2.whole(), vec![2]);
        assert_eq!(CohomologyGroup::compute(&m, 1).unwrap().orders(), &[2]);
        assert_eq!(CohomologyGroup::compute(&m, 2).unwrap().orders(), &[2]);
        let z3 = FiniteGroup::cyclic(3);
        let m3 = GModule::trivial_action(&z3.whole(), vec![2]);
        assert_eq!(CohomologyGroup::compute(&m3, 1).unwrap().order(), 1);
        let sign = GModule::build(&z2.whole(), vec![4], &[(1, vec![vec![-1]])]).unwrap();
        assert_eq!(CohomologyGroup::compute(&sign, 0).unwrap().orders(), &[2]);
    }

    #[test]
    fn cup_square_is_nonzero() {
        let z2 = FiniteGroup::cyclic(2);
        let m = GModule::trivial_action(&z2.whole(), vec![2]);
        let h1 = CohomologyGroup::compute(&m, 1).unwrap();
        let x = &h1.representatives()[0];
        let (_, b) = Pairing::tensor(&m, &m).unwrap();
        let xx = x.cup(x, &b).unwrap();
        let h2 = CohomologyGroup::compute(b.target(), 2).unwrap();
        assert_eq!(h2.class_of(&xx).unwrap(), vec![1]);
        assert_eq!(solve(&xx.retarget(&m).unwrap()).unwrap(), Solve::Obstruction(vec![1]));
    }
}
