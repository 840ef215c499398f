//! Dense linear algebra over a prime field F_p.
//!
//! Everything downstream (resolutions, cochain complexes, spectral sequence
//! pages) bottoms out in the routines here. Vectors are plain `Vec<u32>` with
//! entries in `[0, p)`. Row reduction always picks the leftmost nonzero entry
//! as pivot so that every echelon form, kernel basis and chosen solution is
//! reproducible.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("boundary vector {index} is not in the span of the cycles")]
    BoundaryNotCycle { index: usize },
    #[error("vector is not a cycle of this subquotient")]
    NotACycle,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// `target += c * src`, entrywise mod p.
#[inline]
pub fn axpy(target: &mut [u32], c: u32, src: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    debug_assert_eq!(target.len(), src.len());
    for (t, &s) in target.iter_mut().zip(src) {
        if s != 0 {
            *t = ((*t as u64 + c as u64 * s as u64) % p as u64) as u32;
        }
    }
}

pub fn scale(v: &mut [u32], c: u32, p: u32) {
    for x in v.iter_mut() {
        *x = mul_mod(*x, c, p);
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    let mut s: u64 = 0;
    for (&x, &y) in a.iter().zip(b) {
        s = (s + x as u64 * y as u64) % p as u64;
    }
    s as u32
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix mod {} ({}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from rows; entries are reduced mod p.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x % p;
            }
        }
        m
    }

    /// Build the matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % p;
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = add_mod(self.data[k], v % self.p, self.p);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v, self.p)).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    axpy(orow, a, other.row(k), self.p);
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column of each nonzero row.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut rows: Vec<Vec<u32>> = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols, self.p);
        rows.truncate(pivots.len());
        (FpMatrix::from_rows(self.p, self.cols, &rows), pivots)
    }
}

/// In-place RREF on a list of rows; returns pivot columns and leaves the
/// nonzero rows first (in pivot order).
pub fn rref_in_place(rows: &mut Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        scale(&mut rows[r], inv, p);
        let pivot_row = std::mem::take(&mut rows[r]);
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = neg_mod(row[c], p);
                axpy(row, f, &pivot_row, p);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &FpMatrix) -> usize {
    let mut rows = m.to_rows();
    rref_in_place(&mut rows, m.cols, m.p).len()
}

/// Rank of the span of a list of vectors.
pub fn rank_of_vectors(vectors: &[Vec<u32>], dim: usize, p: u32) -> usize {
    let mut rows = vectors.to_vec();
    rref_in_place(&mut rows, dim, p).len()
}

/// Basis of the null space of `m`. One vector per free column, with a 1 in that
/// column and zeros in every other free column.
pub fn kernel_basis(m: &FpMatrix) -> Vec<Vec<u32>> {
    let p = m.p;
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[f] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = neg_mod(r.get(row, f), p);
        }
        basis.push(v);
    }
    basis
}

/// A solution of `m v = target`, with free variables set to zero, or `None`
/// if the system is inconsistent.
pub fn solve_linear(m: &FpMatrix, target: &[u32]) -> Option<Vec<u32>> {
    assert_eq!(target.len(), m.rows, "target length must equal row count");
    let p = m.p;
    let cols = m.cols;
    let mut rows: Vec<Vec<u32>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(target[i] % p);
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, cols + 1, p);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut v = vec![0; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = rows[row][cols];
    }
    Some(v)
}

/// Incrementally maintained reduced echelon basis of a subspace of F_p^n.
///
/// Besides membership tests this tracks, for every stored row, its expression
/// in terms of the vectors that were inserted, so callers can recover
/// coefficients of a combination.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// row k = sum_j combos[k][j] * inserted[j]
    combos: Vec<Vec<u32>>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new(p: u32, dim: usize) -> Self {
        EchelonBasis {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the basis. Returns the remainder and the
    /// coefficients `c` with `v = remainder + sum_k c[k] rows[k]`.
    pub fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut w = v.to_vec();
        let mut coeffs = vec![0; self.rows.len()];
        for (k, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = w[pc];
            if c != 0 {
                coeffs[k] = c;
                axpy(&mut w, neg_mod(c, self.p), row, self.p);
            }
        }
        (w, coeffs)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero(&self.reduce(v).0)
    }

    /// Insert a vector; returns true if it enlarged the span. Every call counts
    /// as one inserted vector for [`EchelonBasis::express`], even if dependent.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.dim);
        let idx = self.inserted;
        self.inserted += 1;
        for c in &mut self.combos {
            c.push(0);
        }
        let (mut w, coeffs) = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        // combo for w: inserted[idx] - sum coeffs[k] * rows[k]
        let mut combo = vec![0; self.inserted];
        combo[idx] = 1;
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                axpy(&mut combo, neg_mod(c, self.p), &self.combos[k].clone(), self.p);
            }
        }
        let inv = inv_mod(w[pc], self.p);
        scale(&mut w, inv, self.p);
        scale(&mut combo, inv, self.p);
        for k in 0..self.rows.len() {
            let c = self.rows[k][pc];
            if c != 0 {
                let f = neg_mod(c, self.p);
                axpy(&mut self.rows[k], f, &w, self.p);
                let cc = self.combos[k].clone();
                let mut nc = cc;
                axpy(&mut nc, f, &combo, self.p);
                self.combos[k] = nc;
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(at, w);
        self.pivots.insert(at, pc);
        self.combos.insert(at, combo);
        true
    }

    /// If `v` is in the span, coefficients over the inserted vectors (in
    /// insertion order) producing it.
    pub fn express(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (w, coeffs) = self.reduce(v);
        if !is_zero(&w) {
            return None;
        }
        let mut out = vec![0; self.inserted];
        for (k, &c) in coeffs.iter().enumerate() {
            axpy(&mut out, c, &self.combos[k], self.p);
        }
        Some(out)
    }
}

/// Cycles modulo boundaries, with a canonical basis of representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    p: u32,
    ambient_dim: usize,
    cycles: EchelonBasis,
    boundaries: EchelonBasis,
    /// Quotient representatives: reduced against boundaries, in RREF among
    /// themselves.
    reps: Vec<Vec<u32>>,
    rep_pivots: Vec<usize>,
}

impl Subquotient {
    /// The whole ambient space modulo nothing.
    pub fn full(p: u32, ambient_dim: usize) -> Self {
        let cycles: Vec<Vec<u32>> = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        subquotient_of(p, &cycles, &[], ambient_dim).expect("full space is consistent")
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
    pub fn cycle_basis(&self) -> &[Vec<u32>] {
        self.cycles.rows()
    }
    pub fn boundary_basis(&self) -> &[Vec<u32>] {
        self.boundaries.rows()
    }
    pub fn quotient_reps(&self) -> &[Vec<u32>] {
        &self.reps
    }

    pub fn is_cycle(&self, v: &[u32]) -> bool {
        self.cycles.contains(v)
    }

    pub fn is_boundary(&self, v: &[u32]) -> bool {
        self.boundaries.contains(v)
    }

    /// Coordinates of the class of `v` over the quotient representatives.
    pub fn reduce(&self, v: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::Dimension {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let (mut w, _) = self.boundaries.reduce(v);
        let mut coords = vec![0; self.reps.len()];
        for (k, (rep, &pc)) in self.reps.iter().zip(&self.rep_pivots).enumerate() {
            let c = w[pc];
            if c != 0 {
                coords[k] = c;
                axpy(&mut w, neg_mod(c, self.p), rep, self.p);
            }
        }
        if is_zero(&w) {
            Ok(coords)
        } else {
            Err(LinalgError::NotACycle)
        }
    }

    /// The cycle `sum_k coords[k] * rep_k`.
    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.ambient_dim];
        for (rep, &c) in self.reps.iter().zip(coords) {
            axpy(&mut v, c, rep, self.p);
        }
        v
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Build span(cycles) / span(boundaries). Fails if some boundary is not in the
/// span of the cycles.
pub fn subquotient_of(
    p: u32,
    cycles: &[Vec<u32>],
    boundaries: &[Vec<u32>],
    ambient_dim: usize,
) -> Result<Subquotient, LinalgError> {
    let mut zb = EchelonBasis::new(p, ambient_dim);
    for c in cycles {
        if c.len() != ambient_dim {
            return Err(LinalgError::Dimension {
                expected: ambient_dim,
                got: c.len(),
            });
        }
        zb.insert(c);
    }
    let mut bb = EchelonBasis::new(p, ambient_dim);
    for (index, b) in boundaries.iter().enumerate() {
        if !zb.contains(b) {
            return Err(LinalgError::BoundaryNotCycle { index });
        }
        bb.insert(b);
    }
    // Representatives: cycle basis rows reduced mod boundaries (hence zero at
    // every boundary pivot), then RREF among themselves, which keeps those zeros.
    let mut combined = bb.clone();
    let mut reps = Vec::new();
    for z in zb.rows() {
        let (w, _) = combined.reduce(z);
        if !is_zero(&w) {
            combined.insert(&w);
            reps.push(w);
        }
    }
    let rep_pivots = rref_in_place(&mut reps, ambient_dim, p);
    reps.truncate(rep_pivots.len());
    Ok(Subquotient {
        p,
        ambient_dim,
        cycles: zb,
        boundaries: bb,
        reps,
        rep_pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive enumeration of F_p^n, for small oracles.
    fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..p).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&FpMatrix::identity(3, 3)), 3);
        assert_eq!(rank(&FpMatrix::zeros(5, 4, 7)), 0);
        let m = FpMatrix::from_rows(5, 2, &[vec![1, 2], vec![2, 4]]);
        // brute force: number of distinct images = p^rank
        let images: std::collections::BTreeSet<Vec<u32>> =
            all_vectors(5, 2).iter().map(|v| m.mul_vec(v)).collect();
        assert_eq!(images.len(), 5);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&FpMatrix::identity(3, 3)).is_empty());
        let k = kernel_basis(&FpMatrix::zeros(7, 2, 3));
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let m = FpMatrix::from_rows(2, 3, &[vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        let brute = all_vectors(2, 3)
            .into_iter()
            .filter(|v| is_zero(&m.mul_vec(v)))
            .count();
        assert_eq!(brute, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<u32>() % 2, 0);
        }
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(5, 3);
        assert_eq!(solve_linear(&id, &[1, 4, 2]), Some(vec![1, 4, 2]));
        assert_eq!(solve_linear(&FpMatrix::zeros(5, 2, 2), &[1, 0]), None);
        let m = FpMatrix::from_rows(3, 2, &[vec![1, 1], vec![0, 0]]);
        let sols: Vec<_> = all_vectors(3, 2)
            .into_iter()
            .filter(|v| m.mul_vec(v) == vec![2, 0])
            .collect();
        assert_eq!(sols.len(), 3);
        assert_eq!(solve_linear(&m, &[2, 0]), Some(vec![2, 0]));
    }

    #[test]
    fn subquotient_examples() {
        let full = Subquotient::full(3, 3);
        assert_eq!(full.dim(), 3);
        assert_eq!(full.reduce(&[1, 2, 0]).unwrap(), vec![1, 2, 0]);

        let cyc = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let zero = subquotient_of(3, &cyc, &cyc, 3).unwrap();
        assert_eq!(zero.dim(), 0);

        let sq = subquotient_of(3, &cyc, &[vec![1, 1, 0]], 3).unwrap();
        assert_eq!(sq.dim(), 1);
        assert_eq!(sq.reduce(&[1, 1, 0]).unwrap(), vec![0]);
        assert!(sq.reduce(&[0, 0, 1]).is_err());

        assert_eq!(
            subquotient_of(3, &cyc, &[vec![0, 0, 1]], 3).unwrap_err(),
            LinalgError::BoundaryNotCycle { index: 0 }
        );
    }

    #[test]
    fn echelon_express_recovers_combination() {
        let mut e = EchelonBasis::new(5, 3);
        e.insert(&[1, 2, 0]);
        e.insert(&[2, 4, 0]);
        e.insert(&[0, 1, 1]);
        let c = e.express(&[3, 0, 4]).unwrap();
        let mut v = vec![0; 3];
        axpy(&mut v, c[0], &[1, 2, 0], 5);
        axpy(&mut v, c[1], &[2, 4, 0], 5);
        axpy(&mut v, c[2], &[0, 1, 1], 5);
        assert_eq!(v, vec![3, 0, 4]);
        assert!(e.express(&[0, 0, 1]).is_none());
    }

    fn matrix_strategy() -> impl Strategy<Value = (u32, FpMatrix)> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..6, 1usize..6).prop_flat_map(
            |(p, r, c)| {
                prop::collection::vec(0..p, r * c).prop_map(move |d| {
                    let rows: Vec<Vec<u32>> = d.chunks(c).map(|x| x.to_vec()).collect();
                    (p, FpMatrix::from_rows(p, c, &rows))
                })
            },
        )
    }

    proptest! {
        #[test]
        fn rank_nullity((_p, m) in matrix_strategy()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(is_zero(&m.mul_vec(v)));
            }
        }

        #[test]
        fn solve_is_sound((p, m) in matrix_strategy(), seed in 0u32..1000) {
            let t: Vec<u32> = (0..m.rows()).map(|i| (seed.wrapping_mul(31).wrapping_add(i as u32 * 7)) % p).collect();
            match solve_linear(&m, &t) {
                Some(v) => prop_assert_eq!(m.mul_vec(&v), t),
                None => {
                    let mut cols: Vec<Vec<u32>> = (0..m.cols()).map(|j| m.column(j)).collect();
                    let r0 = rank_of_vectors(&cols, m.rows(), p);
                    cols.push(t);
                    prop_assert!(rank_of_vectors(&cols, m.rows(), p) > r0);
                }
            }
        }

        #[test]
        fn subquotient_reduce_is_linear((p, m) in matrix_strategy(), a in 0u32..7, b in 0u32..7) {
            // cycles: rows of m; boundaries: first row only.
            let rows = m.to_rows();
            let sq = subquotient_of(p, &rows, &rows[..1], m.cols()).unwrap();
            prop_assert_eq!(sq.dim(), rank(&m) - rank_of_vectors(&rows[..1], m.cols(), p));
            let x = rows[rows.len() - 1].clone();
            let y = rows[0].clone();
            let mut z = vec![0; m.cols()];
            axpy(&mut z, a % p, &x, p);
            axpy(&mut z, b % p, &y, p);
            let rz = sq.reduce(&z).unwrap();
            let mut expect = vec![0; sq.dim()];
            axpy(&mut expect, a % p, &sq.reduce(&x).unwrap(), p);
            axpy(&mut expect, b % p, &sq.reduce(&y).unwrap(), p);
            prop_assert_eq!(rz, expect);
            prop_assert!(is_zero(&sq.reduce(&y).unwrap()));
        }
    }
}
