//! Inhomogeneous cochains as dense tables `S^n → M`.

use std::sync::Arc;

use rand::Rng;

use crate::error::CochainError;
use crate::group::{Elem, Subgroup, Transversal};
use crate::hom::{ModuleHom, Pairing};
use crate::induced::Induced;
use crate::module::GModule;

/// Degree ceiling for cochain tables.
pub const MAX_DEGREE: usize = 4;

/// A cochain on the acting group of `module`. Tuples are indexed row-major by
/// the positions of their entries in the sorted element list of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    module: Arc<GModule>,
    degree: usize,
    data: Vec<i64>,
}

fn check_degree(n: usize) -> Result<(), CochainError> {
    if n > MAX_DEGREE {
        Err(CochainError::DegreeTooLarge { degree: n, ceiling: MAX_DEGREE })
    } else {
        Ok(())
    }
}

impl Cochain {
    pub fn zero(module: &Arc<GModule>, degree: usize) -> Result<Cochain, CochainError> {
        check_degree(degree)?;
        let len = module.group().order().pow(degree as u32) * module.rank();
        Ok(Cochain { module: module.clone(), degree, data: vec![0; len] })
    }

    pub fn from_fn(
        module: &Arc<GModule>,
        degree: usize,
        mut f: impl FnMut(&[Elem]) -> Vec<i64>,
    ) -> Result<Cochain, CochainError> {
        let mut c = Cochain::zero(module, degree)?;
        let k = module.rank();
        let mut args = vec![0; degree];
        for idx in 0..c.tuples() {
            c.decode_into(idx, &mut args);
            let v = module.carrier().reduce(&f(&args));
            c.data[idx * k..(idx + 1) * k].copy_from_slice(&v);
        }
        Ok(c)
    }

    /// Values listed tuple by tuple.
    pub fn from_values(module: &Arc<GModule>, degree: usize, values: &[Vec<i64>]) -> Result<Cochain, CochainError> {
        let mut c = Cochain::zero(module, degree)?;
        if values.len() != c.tuples() || values.iter().any(|v| v.len() != module.rank()) {
            return Err(CochainError::Mismatch);
        }
        let k = module.rank();
        for (idx, v) in values.iter().enumerate() {
            let v = module.carrier().reduce(v);
            c.data[idx * k..(idx + 1) * k].copy_from_slice(&v);
        }
        Ok(c)
    }

    /// The flat value vector (tuple-major) reduced into the module.
    pub fn from_flat(module: &Arc<GModule>, degree: usize, flat: &[i64]) -> Result<Cochain, CochainError> {
        let mut c = Cochain::zero(module, degree)?;
        if flat.len() != c.data.len() {
            return Err(CochainError::Mismatch);
        }
        let d = module.moduli();
        let k = d.len();
        for (p, &x) in flat.iter().enumerate() {
            c.data[p] = crate::linalg::modn(x, d[p % k]);
        }
        Ok(c)
    }

    pub fn random<R: Rng + ?Sized>(module: &Arc<GModule>, degree: usize, rng: &mut R) -> Result<Cochain, CochainError> {
        let mut c = Cochain::zero(module, degree)?;
        let d = module.moduli().to_vec();
        let k = d.len();
        for (p, x) in c.data.iter_mut().enumerate() {
            *x = rng.gen_range(0..d[p % k]);
        }
        Ok(c)
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn group(&self) -> &Subgroup {
        self.module.group()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn tuples(&self) -> usize {
        self.group().order().pow(self.degree as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn decode_into(&self, mut idx: usize, out: &mut [Elem]) {
        let els = self.group().elements();
        let n = els.len();
        for slot in out.iter_mut().rev() {
            *slot = els[idx % n];
            idx /= n;
        }
    }

    pub fn tuple(&self, idx: usize) -> Vec<Elem> {
        let mut out = vec![0; self.degree];
        self.decode_into(idx, &mut out);
        out
    }

    pub fn index(&self, args: &[Elem]) -> usize {
        debug_assert_eq!(args.len(), self.degree);
        let g = self.group();
        let n = g.order();
        args.iter().fold(0, |acc, &a| acc * n + g.position(a).unwrap_or_else(|| panic!("{a} outside the cochain group")))
    }

    pub fn value(&self, args: &[Elem]) -> &[i64] {
        self.value_at(self.index(args))
    }

    pub fn value_at(&self, idx: usize) -> &[i64] {
        let k = self.module.rank();
        &self.data[idx * k..(idx + 1) * k]
    }

    fn same_shape(&self, o: &Cochain) -> Result<(), CochainError> {
        if self.degree != o.degree || self.module != o.module {
            return Err(CochainError::Mismatch);
        }
        Ok(())
    }

    fn zip_with(&self, o: &Cochain, f: impl Fn(i64, i64) -> i64) -> Result<Cochain, CochainError> {
        self.same_shape(o)?;
        let d = self.module.moduli();
        let k = d.len();
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .enumerate()
            .map(|(p, (&a, &b))| crate::linalg::modn(f(a, b), d[p % k]))
            .collect();
        Ok(Cochain { module: self.module.clone(), degree: self.degree, data })
    }

    pub fn add(&self, o: &Cochain) -> Result<Cochain, CochainError> {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Cochain) -> Result<Cochain, CochainError> {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let d = self.module.moduli();
        let r = d.len();
        let data = self.data.iter().enumerate().map(|(p, &a)| crate::linalg::modn(a * k, d[p % r])).collect();
        Cochain { module: self.module.clone(), degree: self.degree, data }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(-1)
    }

    /// Post-composition with a module map over the same group.
    pub fn map(&self, f: &ModuleHom) -> Result<Cochain, CochainError> {
        if f.source() != &self.module {
            return Err(CochainError::Mismatch);
        }
        let k = self.module.rank();
        let data = (0..self.tuples()).flat_map(|i| f.apply(&self.data[i * k..(i + 1) * k])).collect();
        Ok(Cochain { module: f.target().clone(), degree: self.degree, data })
    }

    /// Same table, regarded as valued in another module with the same carrier.
    pub fn retarget(&self, module: &Arc<GModule>) -> Result<Cochain, CochainError> {
        if module.group() != self.group() || module.moduli() != self.module.moduli() {
            return Err(CochainError::Mismatch);
        }
        Ok(Cochain { module: module.clone(), degree: self.degree, data: self.data.clone() })
    }

    /// The standard inhomogeneous differential.
    pub fn coboundary(&self) -> Result<Cochain, CochainError> {
        let n = self.degree;
        check_degree(n + 1)?;
        let g = self.group().parent().clone();
        let m = self.module.clone();
        let c = m.carrier().clone();
        let mut sub = vec![0; n];
        Cochain::from_fn(&m, n + 1, |s| {
            let mut acc = m.act(s[0], self.value(&s[1..]));
            for i in 1..=n {
                for (j, slot) in sub.iter_mut().enumerate() {
                    *slot = match j + 1 {
                        x if x < i => s[j],
                        x if x == i => g.mul(s[i - 1], s[i]),
                        _ => s[j + 1],
                    };
                }
                let v = self.value(&sub);
                acc = if i % 2 == 0 { c.add(&acc, v) } else { c.sub(&acc, v) };
            }
            let v = self.value(&s[..n]);
            if (n + 1) % 2 == 0 {
                c.add(&acc, v)
            } else {
                c.sub(&acc, v)
            }
        })
    }

    pub fn is_cocycle(&self) -> Result<bool, CochainError> {
        Ok(self.coboundary()?.is_zero())
    }

    /// `(f ∪ g)(σ_1..σ_{k+j}) = B(f(σ_1..σ_k), σ_1⋯σ_k · g(σ_{k+1}..))`.
    pub fn cup(&self, o: &Cochain, b: &Pairing) -> Result<Cochain, CochainError> {
        if b.left() != &self.module || b.right() != &o.module {
            return Err(CochainError::PairingMismatch);
        }
        let (k, j) = (self.degree, o.degree);
        let g = self.group().parent().clone();
        Cochain::from_fn(b.target(), k + j, |s| {
            let prod = s[..k].iter().fold(g.identity(), |a, &x| g.mul(a, x));
            b.eval(self.value(&s[..k]), &o.module.act(prod, o.value(&s[k..])))
        })
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Cochain, CochainError> {
        let m = self.module.restrict(h)?;
        Cochain::from_fn(&m, self.degree, |s| self.value(s).to_vec())
    }

    /// `conj_τ f (σ..) = τ·f(τ⁻¹στ, ..)`, valued in the conjugate module `τM`
    /// (where `τ·` is the identity on the carrier).
    pub fn conjugate(&self, tau: Elem) -> Result<Cochain, CochainError> {
        let g = self.group().parent().clone();
        let tm = self.module.conjugate(tau);
        let ti = g.inv(tau);
        let mut buf = vec![0; self.degree];
        Cochain::from_fn(&tm, self.degree, |s| {
            for (b, &x) in buf.iter_mut().zip(s) {
                *b = g.mul(g.mul(ti, x), tau);
            }
            self.value(&buf).to_vec()
        })
    }

    /// Conjugation composed with `c_τ`, for `f` valued in the restriction of
    /// the `G`-module `m`: `σ.. ↦ τ f(τ⁻¹στ, ..)` with the actual action of `τ`.
    pub fn conjugate_in(&self, tau: Elem, m: &Arc<GModule>) -> Result<Cochain, CochainError> {
        if *m.restrict(self.group())? != *self.module {
            return Err(CochainError::Mismatch);
        }
        let g = self.group().parent().clone();
        let target = m.restrict(&self.group().conjugate(tau))?;
        let ti = g.inv(tau);
        let mut buf = vec![0; self.degree];
        Cochain::from_fn(&target, self.degree, |s| {
            for (b, &x) in buf.iter_mut().zip(s) {
                *b = g.mul(g.mul(ti, x), tau);
            }
            m.act(tau, self.value(&buf))
        })
    }

    /// `h_τ : C^{n+1} → C^n`,
    /// `h_τ f(σ_1..σ_n) = Σ_r (−1)^r f(σ_1..σ_r, τ, τ⁻¹σ_{r+1}τ, .., τ⁻¹σ_nτ)`.
    /// Returns `None` on `C^0`, where `h_τ` is the zero map to `C^{-1} = 0`.
    pub fn homotopy(&self, tau: Elem) -> Result<Option<Cochain>, CochainError> {
        if self.degree == 0 {
            return Ok(None);
        }
        if !self.group().contains(tau) {
            return Err(CochainError::Mismatch);
        }
        let n = self.degree - 1;
        let g = self.group().parent().clone();
        let c = self.module.carrier().clone();
        let ti = g.inv(tau);
        let mut buf = vec![0; n + 1];
        Cochain::from_fn(&self.module, n, |s| {
            let mut acc = c.zero();
            for r in 0..=n {
                buf[..r].copy_from_slice(&s[..r]);
                buf[r] = tau;
                for i in r..n {
                    buf[i + 1] = g.mul(g.mul(ti, s[i]), tau);
                }
                let v = self.value(&buf);
                acc = if r % 2 == 0 { c.add(&acc, v) } else { c.sub(&acc, v) };
            }
            acc
        })
        .map(Some)
    }

    /// Transversal corestriction to the acting group of the `G`-module `m`;
    /// `self` must be valued in the restriction of `m`.
    pub fn corestrict(&self, t: &Transversal, m: &Arc<GModule>) -> Result<Cochain, CochainError> {
        if !t.is_normalized() {
            return Err(CochainError::TransversalNotNormalized);
        }
        if t.sub() != self.group() || t.ambient() != m.group() || *m.restrict(self.group())? != *self.module {
            return Err(CochainError::Mismatch);
        }
        let g = m.group().parent().clone();
        let c = m.carrier().clone();
        let n = self.degree;
        let mut prime = vec![0; n];
        Cochain::from_fn(m, n, |s| {
            let mut acc = c.zero();
            for &t0 in t.reps() {
                let mut x = t0;
                for j in 0..n {
                    let y = t.rep_of(g.mul(g.inv(s[j]), x));
                    prime[j] = g.mul(g.mul(g.inv(x), s[j]), y);
                    x = y;
                }
                acc = c.add(&acc, &m.act(t0, self.value(&prime)));
            }
            acc
        })
    }

    /// `ᵀsh = ᵀcor ∘ i_1`, valued in `ind`.
    pub fn shapiro(&self, t: &Transversal, ind: &Induced) -> Result<Cochain, CochainError> {
        if ind.base != self.module {
            return Err(CochainError::Mismatch);
        }
        self.map(&ind.i_1()?)?.corestrict(t, &ind.module)
    }

    /// `x ↦ dx` for random `x`.
    pub fn random_coboundary<R: Rng + ?Sized>(module: &Arc<GModule>, degree: usize, rng: &mut R) -> Result<Cochain, CochainError> {
        if degree == 0 {
            return Cochain::zero(module, 0);
        }
        Cochain::random(module, degree - 1, rng)?.coboundary()
    }

    /// `e(φ)(σ_0..σ_n) = σ_0 φ(σ_0⁻¹σ_1, .., σ_{n−1}⁻¹σ_n)`.
    pub fn to_homogeneous(&self) -> Result<Homogeneous, CochainError> {
        let g = self.group().parent().clone();
        let n = self.degree;
        let mut buf = vec![0; n];
        let table = Cochain::from_fn(&self.module, n + 1, |s| {
            for i in 0..n {
                buf[i] = g.mul(g.inv(s[i]), s[i + 1]);
            }
            self.module.act(s[0], self.value(&buf))
        })?;
        Ok(Homogeneous { table })
    }
}

/// A homogeneous cochain `G^{n+1} → M`, stored as a table of degree `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    pub table: Cochain,
}

impl Homogeneous {
    pub fn degree(&self) -> usize {
        self.table.degree() - 1
    }

    pub fn value(&self, args: &[Elem]) -> &[i64] {
        self.table.value(args)
    }

    /// First non-equivariant pair `(σ, tuple)`, if any.
    pub fn equivariance_witness(&self) -> Option<Elem> {
        let g = self.table.group().parent().clone();
        let m = self.table.module().clone();
        let mut buf = vec![0; self.table.degree()];
        for sigma in self.table.group().generators() {
            for idx in 0..self.table.tuples() {
                let s = self.table.tuple(idx);
                for (b, &x) in buf.iter_mut().zip(&s) {
                    *b = g.mul(sigma, x);
                }
                if self.table.value(&buf) != m.act(sigma, self.table.value_at(idx)).as_slice() {
                    return Some(sigma);
                }
            }
        }
        None
    }

    /// `φ(σ_1..σ_n) = F(1, σ_1, σ_1σ_2, ..)`.
    pub fn to_inhomogeneous(&self) -> Result<Cochain, CochainError> {
        if let Some(sigma) = self.equivariance_witness() {
            return Err(CochainError::NotEquivariant { sigma });
        }
        let g = self.table.group().parent().clone();
        let n = self.degree();
        let mut buf = vec![0; n + 1];
        Cochain::from_fn(self.table.module(), n, |s| {
            buf[0] = g.identity();
            for i in 0..n {
                buf[i + 1] = g.mul(buf[i], s[i]);
            }
            self.table.value(&buf).to_vec()
        })
    }
}
