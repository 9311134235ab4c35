//! Exact linear algebra over `Z/N`: diagonal (Smith-style) reduction with
//! unimodular row and column operations, kernels, particular solutions, and
//! subquotients of submodules of `(Z/N)^a`.
//!
//! Every finite abelian group in this crate has exponent dividing some `N`, so
//! integer lattices containing `N·Z^a` are exactly submodules of `(Z/N)^a` and
//! all reductions can be carried out with entries in `[0, N)`: there is no
//! coefficient growth.

/// Least nonnegative residue.
#[inline]
pub fn modn(x: i64, n: i64) -> i64 {
    let r = x % n;
    if r < 0 {
        r + n
    } else {
        r
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `x` modulo `n`, if it is a unit.
pub fn inv_mod(x: i64, n: i64) -> Option<i64> {
    let (g, s, _) = egcd(modn(x, n), n);
    (g == 1).then(|| modn(s, n))
}

/// A unit `u` of `Z/n` with `u·x ≡ gcd(x, n) (mod n)`.
pub fn normalizing_unit(x: i64, n: i64) -> i64 {
    let x = modn(x, n);
    let g = gcd(x, n);
    if g == 0 || n == 1 {
        return 1;
    }
    let m = n / g;
    let xp = (x / g) % m;
    let u0 = if m == 1 { 1 } else { inv_mod(xp, m).expect("coprime by construction") };
    // lift u0 (mod m) to a unit mod n
    let mut u = u0;
    while gcd(u, n) != 1 {
        u += m;
    }
    modn(u, n)
}

/// Dense row-major matrix with entries kept in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnMatrix {
    pub n: i64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl ZnMatrix {
    pub fn zeros(n: i64, rows: usize, cols: usize) -> Self {
        ZnMatrix { n, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: i64, size: usize) -> Self {
        let mut m = Self::zeros(n, size, size);
        for i in 0..size {
            m.data[i * size + i] = 1 % n;
        }
        m
    }

    /// Builds a matrix from columns of equal length.
    pub fn from_columns(n: i64, rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(n, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = modn(v, n);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = modn(v, self.n);
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let mut acc = 0i64;
                for (a, b) in row.iter().zip(x) {
                    acc = (acc + a * b) % self.n;
                }
                modn(acc, self.n)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `(row_i, row_j) ← (a·row_i + b·row_j, c·row_i + d·row_j)`
    fn combine_rows(&mut self, i: usize, j: usize, [a, b, c, d]: [i64; 4]) {
        let n = self.n;
        for k in 0..self.cols {
            let x = self.data[i * self.cols + k];
            let y = self.data[j * self.cols + k];
            if x == 0 && y == 0 {
                continue;
            }
            self.data[i * self.cols + k] = modn(a * x + b * y, n);
            self.data[j * self.cols + k] = modn(c * x + d * y, n);
        }
    }

    /// `row_i ← row_i + k·row_j`
    fn add_row(&mut self, i: usize, j: usize, k: i64) {
        let n = self.n;
        let cols = self.cols;
        for c in 0..cols {
            let y = self.data[j * cols + c];
            if y != 0 {
                let x = &mut self.data[i * cols + c];
                *x = modn(*x + k * y, n);
            }
        }
    }

    fn scale_row(&mut self, i: usize, u: i64) {
        let n = self.n;
        for c in 0..self.cols {
            let x = &mut self.data[i * self.cols + c];
            *x = modn(*x * u, n);
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, [a, b, c, d]: [i64; 4]) {
        let n = self.n;
        for r in 0..self.rows {
            let x = self.data[r * self.cols + i];
            let y = self.data[r * self.cols + j];
            if x == 0 && y == 0 {
                continue;
            }
            self.data[r * self.cols + i] = modn(a * x + b * y, n);
            self.data[r * self.cols + j] = modn(c * x + d * y, n);
        }
    }

    fn add_col(&mut self, i: usize, j: usize, k: i64) {
        let n = self.n;
        for r in 0..self.rows {
            let y = self.data[r * self.cols + j];
            if y != 0 {
                let x = &mut self.data[r * self.cols + i];
                *x = modn(*x + k * y, n);
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum RowOp {
    Swap(u32, u32),
    Add { i: u32, j: u32, k: i64 },
    Scale { i: u32, u: i64 },
    Combine { i: u32, j: u32, m: [i64; 4] },
}

/// Result of diagonalizing `X`: `U·X·V = D` with `D` diagonal, each pivot
/// `D[k][k]` a proper divisor of `N` (`k < rank`). `U` is kept as an
/// operation log, `V` explicitly when requested.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub n: i64,
    pub rows: usize,
    pub cols: usize,
    pub pivots: Vec<i64>,
    ops: Vec<RowOp>,
    pub v: Option<ZnMatrix>,
}

impl Diagonalization {
    /// Deterministic reduction. Pivot rule: among remaining nonzero entries,
    /// the least `gcd(x, N)`, first in row-major order.
    pub fn new(mut x: ZnMatrix, track_v: bool) -> Self {
        let n = x.n;
        let (rows, cols) = (x.rows, x.cols);
        let mut v = track_v.then(|| ZnMatrix::identity(n, cols));
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let mut best: Option<(i64, usize, usize)> = None;
            'scan: for i in t..rows {
                for j in t..cols {
                    let e = x.get(i, j);
                    if e != 0 {
                        let g = gcd(e, n);
                        if best.map_or(true, |(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                            if g == 1 {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            if pi != t {
                x.swap_rows(pi, t);
                ops.push(RowOp::Swap(pi as u32, t as u32));
            }
            if pj != t {
                x.swap_cols(pj, t);
                if let Some(v) = v.as_mut() {
                    v.swap_cols(pj, t);
                }
            }
            loop {
                let u = normalizing_unit(x.get(t, t), n);
                if u != 1 {
                    x.scale_row(t, u);
                    ops.push(RowOp::Scale { i: t as u32, u });
                }
                let mut dirty = false;
                for i in t + 1..rows {
                    let q = x.get(i, t);
                    if q == 0 {
                        continue;
                    }
                    let p = x.get(t, t);
                    if q % p == 0 {
                        let k = -(q / p);
                        x.add_row(i, t, k);
                        ops.push(RowOp::Add { i: i as u32, j: t as u32, k });
                    } else {
                        let (h, s, tt) = egcd(p, q);
                        let m = [s, tt, -(q / h), p / h];
                        x.combine_rows(t, i, m);
                        ops.push(RowOp::Combine { i: t as u32, j: i as u32, m });
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                for j in t + 1..cols {
                    let q = x.get(t, j);
                    if q == 0 {
                        continue;
                    }
                    let p = x.get(t, t);
                    if q % p == 0 {
                        let k = -(q / p);
                        x.add_col(j, t, k);
                        if let Some(v) = v.as_mut() {
                            v.add_col(j, t, k);
                        }
                    } else {
                        let (h, s, tt) = egcd(p, q);
                        let m = [s, tt, -(q / h), p / h];
                        x.combine_cols(t, j, m);
                        if let Some(v) = v.as_mut() {
                            v.combine_cols(t, j, m);
                        }
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            pivots.push(x.get(t, t));
            t += 1;
        }
        Diagonalization { n, rows, cols, pivots, ops, v }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Applies `U` to a column vector of length `rows`.
    pub fn apply_u(&self, b: &mut [i64]) {
        let n = self.n;
        for op in &self.ops {
            match *op {
                RowOp::Swap(a, c) => b.swap(a as usize, c as usize),
                RowOp::Add { i, j, k } => {
                    b[i as usize] = modn(b[i as usize] + k * b[j as usize], n);
                }
                RowOp::Scale { i, u } => b[i as usize] = modn(b[i as usize] * u, n),
                RowOp::Combine { i, j, m } => {
                    let (x, y) = (b[i as usize], b[j as usize]);
                    b[i as usize] = modn(m[0] * x + m[1] * y, n);
                    b[j as usize] = modn(m[2] * x + m[3] * y, n);
                }
            }
        }
    }

    fn v(&self) -> &ZnMatrix {
        self.v.as_ref().expect("column transform was not tracked")
    }

    /// Generators of `{x : X·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let v = self.v();
        let mut out = Vec::new();
        for k in 0..self.cols {
            let scale = if k < self.rank() { self.n / self.pivots[k] } else { 1 };
            if scale == self.n {
                continue;
            }
            let col: Vec<i64> = (0..self.cols).map(|i| modn(v.get(i, k) * scale, self.n)).collect();
            if col.iter().any(|&e| e != 0) {
                out.push(col);
            }
        }
        out
    }

    /// Least particular solution of `X·x = b` (free coordinates zero), or
    /// `None` when unsolvable.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let mut c: Vec<i64> = b.iter().map(|&e| modn(e, self.n)).collect();
        self.apply_u(&mut c);
        if c[self.rank()..].iter().any(|&e| e != 0) {
            return None;
        }
        let mut z = vec![0i64; self.cols];
        for k in 0..self.rank() {
            let p = self.pivots[k];
            if c[k] % p != 0 {
                return None;
            }
            z[k] = c[k] / p;
        }
        Some(self.v().mul_vec(&z))
    }
}

/// The group `L / R` for submodules `R ⊆ L` of `(Z/N)^a`, presented as a
/// direct sum of cyclic groups with chosen generators.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub n: i64,
    pub dim: usize,
    /// `q_i` with `(Z/N)^a / R ≅ ⊕ Z/q_i` in `U_R`-coordinates.
    rel_orders: Vec<i64>,
    rel: Diagonalization,
    img: Diagonalization,
    /// Orders of the cyclic summands (all > 1).
    pub orders: Vec<i64>,
    /// Indices `k` of the pivots of `img` that give the summands.
    summand_pivots: Vec<usize>,
    /// Generators as vectors of `(Z/N)^a`.
    pub generators: Vec<Vec<i64>>,
}

impl SubQuotient {
    /// `l` generates `L`, `r` generates `R`; requires `R ⊆ L` for the
    /// projection to be meaningful (only elements of `L + R` are projected).
    pub fn new(n: i64, dim: usize, l: &[Vec<i64>], r: &[Vec<i64>]) -> Self {
        let rel = Diagonalization::new(ZnMatrix::from_columns(n, dim, r), false);
        let rel_orders: Vec<i64> = (0..dim).map(|i| if i < rel.rank() { rel.pivots[i] } else { n }).collect();
        let scaled: Vec<Vec<i64>> = l.iter().map(|x| Self::to_quotient(&rel, &rel_orders, n, x)).collect();
        let img = Diagonalization::new(ZnMatrix::from_columns(n, dim, &scaled), true);
        let v = img.v();
        let mut orders = Vec::new();
        let mut summand_pivots = Vec::new();
        let mut generators = Vec::new();
        for k in 0..img.rank() {
            let h = n / img.pivots[k];
            if h <= 1 {
                continue;
            }
            // generator = L · V e_k
            let mut g = vec![0i64; dim];
            for (j, lj) in l.iter().enumerate() {
                let c = v.get(j, k);
                if c != 0 {
                    for (gi, &li) in g.iter_mut().zip(lj) {
                        *gi = modn(*gi + c * li, n);
                    }
                }
            }
            orders.push(h);
            summand_pivots.push(k);
            generators.push(g);
        }
        SubQuotient { n, dim, rel_orders, rel, img, orders, summand_pivots, generators }
    }

    fn to_quotient(rel: &Diagonalization, q: &[i64], n: i64, x: &[i64]) -> Vec<i64> {
        let mut w: Vec<i64> = x.iter().map(|&e| modn(e, n)).collect();
        rel.apply_u(&mut w);
        for (wi, &qi) in w.iter_mut().zip(q) {
            *wi = modn(*wi * (n / qi), n);
        }
        w
    }

    /// Coordinates of `x ∈ L + R` on the chosen generators, or `None` if `x`
    /// lies outside `L + R`.
    pub fn project(&self, x: &[i64]) -> Option<Vec<i64>> {
        let mut c = Self::to_quotient(&self.rel, &self.rel_orders, self.n, x);
        self.img.apply_u(&mut c);
        if c[self.img.rank()..].iter().any(|&e| e != 0) {
            return None;
        }
        let mut out = Vec::with_capacity(self.orders.len());
        for (k, &p) in self.img.pivots.iter().enumerate() {
            if c[k] % p != 0 {
                return None;
            }
            if let Some(pos) = self.summand_pivots.iter().position(|&s| s == k) {
                out.push(modn(c[k] / p, self.orders[pos]));
            }
        }
        Some(out)
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&h| h as u128).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizing_units() {
        for n in 1..40 {
            for x in 0..n {
                let u = normalizing_unit(x, n);
                assert_eq!(gcd(u, n), 1, "n={n} x={x}");
                assert_eq!(modn(u * x, n), gcd(x, n) % n.max(1));
            }
        }
    }

    #[test]
    fn kernel_and_solve_mod_12() {
        // X = [[2, 3], [4, 6]] over Z/12
        let x = ZnMatrix::from_columns(12, 2, &[vec![2, 4], vec![3, 6]]);
        let d = Diagonalization::new(x.clone(), true);
        for k in d.kernel() {
            assert!(x.mul_vec(&k).iter().all(|&e| e == 0));
        }
        // brute-force kernel size
        let brute = (0..144).filter(|&i| x.mul_vec(&[i / 12, i % 12]).iter().all(|&e| e == 0)).count();
        let span = span_size(12, &d.kernel());
        assert_eq!(span, brute);
        let b = x.mul_vec(&[5, 7]);
        let s = d.solve(&b).unwrap();
        assert_eq!(x.mul_vec(&s), b);
        assert!(d.solve(&[1, 0]).is_none());
    }

    fn span_size(n: i64, gens: &[Vec<i64>]) -> usize {
        let mut set = std::collections::BTreeSet::new();
        let dim = gens.first().map_or(0, |g| g.len());
        set.insert(vec![0; dim]);
        loop {
            let mut next = set.clone();
            for s in &set {
                for g in gens {
                    next.insert(s.iter().zip(g).map(|(a, b)| modn(a + b, n)).collect());
                }
            }
            if next.len() == set.len() {
                return set.len();
            }
            set = next;
        }
    }

    #[test]
    fn subquotient_z4_mod_2z4() {
        // L = Z/4, R = 2Z/4 -> Z/2
        let sq = SubQuotient::new(4, 1, &[vec![1]], &[vec![2]]);
        assert_eq!(sq.orders, vec![2]);
        assert_eq!(sq.project(&[3]), Some(vec![1]));
        assert_eq!(sq.project(&[2]), Some(vec![0]));
    }
}
