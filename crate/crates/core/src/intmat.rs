//! Integer matrices and Smith normal form over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A dense row-major matrix of machine integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<i64>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{:?}", self.rows, self.cols, self.data)
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(cols: usize, data: Vec<Vec<i64>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: data.len(), cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i][j] = c[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i][j] = v;
    }

    pub fn row_slices(&self) -> &[Vec<i64>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.data.iter().map(|r| r[j]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j];
            }
        }
        t
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i][j] += a * rhs.data[k][j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] += rhs.data[i][j];
            }
        }
        out
    }

    pub fn scaled(&self, k: i64) -> IntMatrix {
        let mut out = self.clone();
        out.data.iter_mut().flatten().for_each(|x| *x *= k);
        out
    }

    /// Adds `k * block` at offset `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &IntMatrix, k: i64) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[r0 + i][c0 + j] += k * block.data[i][j];
            }
        }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        self.data.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let data = rows.iter().map(|&i| cols.iter().map(|&j| self.data[i][j]).collect()).collect();
        IntMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn to_big(&self) -> Vec<Vec<BigInt>> {
        self.data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith(self.rows, self.cols, self.to_big(), Track::NONE).rank()
    }
}

/// Which unimodular transforms to record while reducing.
#[derive(Debug, Clone, Copy, Default)]
pub struct Track {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
    pub right_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { left: false, left_inv: false, right: false, right_inv: false };
    pub const RIGHT: Track = Track { left: false, left_inv: false, right: true, right_inv: false };
    pub const ALL: Track = Track { left: true, left_inv: true, right: true, right_inv: true };
}

/// Result of a Smith normal form computation: `left * A * right = D` with
/// `D` diagonal, positive diagonal entries `d_1 | d_2 | ... | d_rank`.
#[derive(Debug, Clone)]
pub struct Snf {
    rows: usize,
    cols: usize,
    diag: Vec<BigInt>,
    left: Option<Vec<Vec<BigInt>>>,
    left_inv: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
    right_inv: Option<Vec<Vec<BigInt>>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn diagonal(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn left(&self) -> Option<&Vec<Vec<BigInt>>> {
        self.left.as_ref()
    }

    pub fn left_inv(&self) -> Option<&Vec<Vec<BigInt>>> {
        self.left_inv.as_ref()
    }

    pub fn right(&self) -> Option<&Vec<Vec<BigInt>>> {
        self.right.as_ref()
    }

    pub fn right_inv(&self) -> Option<&Vec<Vec<BigInt>>> {
        self.right_inv.as_ref()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Diagonal entries greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    left: Option<Vec<Vec<BigInt>>>,
    left_inv: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
    right_inv: Option<Vec<Vec<BigInt>>>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(p) = self.left.as_mut() {
            p.swap(i, j);
        }
        if let Some(pi) = self.left_inv.as_mut() {
            for row in pi.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(q) = self.right.as_mut() {
            for row in q.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(qi) = self.right_inv.as_mut() {
            qi.swap(i, j);
        }
    }

    /// row_i += c * row_t
    fn add_row(&mut self, i: usize, t: usize, c: &BigInt) {
        let src = self.a[t].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
        if let Some(p) = self.left.as_mut() {
            let src = p[t].clone();
            for (x, y) in p[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        if let Some(pi) = self.left_inv.as_mut() {
            // P' = E P with E = I + c e_i e_t^T, so P'^-1 = P^-1 (I - c e_i e_t^T): col_t -= c col_i
            for row in pi.iter_mut() {
                if !row[i].is_zero() {
                    let d = c * &row[i];
                    row[t] -= d;
                }
            }
        }
    }

    /// col_j += c * col_t
    fn add_col(&mut self, j: usize, t: usize, c: &BigInt) {
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                let d = c * &row[t];
                row[j] += d;
            }
        }
        if let Some(q) = self.right.as_mut() {
            for row in q.iter_mut() {
                if !row[t].is_zero() {
                    let d = c * &row[t];
                    row[j] += d;
                }
            }
        }
        if let Some(qi) = self.right_inv.as_mut() {
            // Q' = Q (I + c e_t e_j^T), so Q'^-1 = (I - c e_t e_j^T) Q^-1: row_t -= c row_j
            let src = qi[j].clone();
            for (x, y) in qi[t].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x -= c * y;
                }
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -&*x;
        }
        if let Some(p) = self.left.as_mut() {
            for x in p[t].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(pi) = self.left_inv.as_mut() {
            for row in pi.iter_mut() {
                row[t] = -&row[t];
            }
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = -(self.a[i][t].div_floor(&self.a[t][t]));
                    self.add_row(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = -(self.a[t][j].div_floor(&self.a[t][t]));
                    self.add_col(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // move the smallest remainder in row/column t into the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the remaining block by the pivot
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
            t += 1;
        }
        diag
    }
}

/// Smith normal form of a `rows x cols` integer matrix.
pub fn smith(rows: usize, cols: usize, a: Vec<Vec<BigInt>>, track: Track) -> Snf {
    debug_assert_eq!(a.len(), rows);
    let mut r = Reducer {
        a,
        rows,
        cols,
        left: track.left.then(|| identity(rows)),
        left_inv: track.left_inv.then(|| identity(rows)),
        right: track.right.then(|| identity(cols)),
        right_inv: track.right_inv.then(|| identity(cols)),
    };
    let diag = r.run();
    Snf { rows, cols, diag, left: r.left, left_inv: r.left_inv, right: r.right, right_inv: r.right_inv }
}

fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Solves `A x = b (mod n)`; returns a solution with entries in `0..n`.
pub fn solve_mod(rows: usize, cols: usize, a: Vec<Vec<BigInt>>, b: &[BigInt], n: &BigInt) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), rows);
    let snf = smith(rows, cols, a, Track { left: true, right: true, ..Track::NONE });
    let c = mat_vec(snf.left.as_ref().expect("left transform"), b);
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank() {
            let d = &snf.diag[i];
            let g = d.gcd(n);
            if !ci.is_multiple_of(&g) {
                return None;
            }
            let m = n / &g;
            let dm = (d / &g).mod_floor(&m);
            let inv = mod_inverse(&dm, &m)?;
            y[i] = ((ci / &g) * inv).mod_floor(&m);
        } else if !ci.is_multiple_of(n) {
            return None;
        }
    }
    let x = mat_vec(snf.right.as_ref().expect("right transform"), &y);
    Some(x.into_iter().map(|v| v.mod_floor(n)).collect())
}

/// Generators of `{x : A x = 0 (mod n)}` with their additive orders (all > 1).
pub fn kernel_mod(rows: usize, cols: usize, a: Vec<Vec<BigInt>>, n: &BigInt) -> Vec<(Vec<BigInt>, BigInt)> {
    let snf = smith(rows, cols, a, Track::RIGHT);
    let q = snf.right.as_ref().expect("right transform");
    let mut out = Vec::new();
    for j in 0..cols {
        let (scale, order) = if j < snf.rank() {
            let g = snf.diag[j].gcd(n);
            (n / &g, g)
        } else {
            (BigInt::one(), n.clone())
        };
        if order.is_one() {
            continue;
        }
        let v: Vec<BigInt> = q.iter().map(|row| (&row[j] * &scale).mod_floor(n)).collect();
        out.push((v, order));
    }
    out
}

/// A basis of the integer kernel `{x : A x = 0}`.
pub fn kernel_basis(rows: usize, cols: usize, a: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let snf = smith(rows, cols, a, Track::RIGHT);
    let q = snf.right.as_ref().expect("right transform");
    (snf.rank()..cols).map(|j| q.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
