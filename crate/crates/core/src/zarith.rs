//! Exact integer kernels shared by the finite and lattice backends.
//!
//! Everything here is plain `i128` arithmetic with explicit overflow
//! checks: an overflow aborts with a diagnostic instead of wrapping, so a
//! reported witness can never be an artifact of modular wraparound.
//!
//! Lattices are spans of matrix *columns* throughout the crate. The
//! canonical Hermite normal form used everywhere is column-style: pivots
//! positive, each column's topmost nonzero entry is its pivot, pivot rows
//! strictly increase left to right, every entry in a pivot row outside the
//! pivot lies in `[0, pivot)`, zero columns removed.

use crate::error::{Error, Result};

#[inline]
fn ck_add(a: i128, b: i128) -> i128 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("integer overflow in exact arithmetic: {a} + {b}"))
}

#[inline]
fn ck_sub(a: i128, b: i128) -> i128 {
    a.checked_sub(b)
        .unwrap_or_else(|| panic!("integer overflow in exact arithmetic: {a} - {b}"))
}

#[inline]
fn ck_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("integer overflow in exact arithmetic: {a} * {b}"))
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g` and `g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, u, v) = ext_gcd(b, a % b);
    (g, v, ck_sub(u, ck_mul(a / b, v)))
}

pub fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        return 0;
    }
    ck_mul(a / gcd(a, b), b).abs()
}

/// Deterministic trial division; ample for desk-scale generators.
pub fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2i128;
    while ck_mul(d, d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes in ascending order: 2, 3, 5, ...
pub fn primes() -> impl Iterator<Item = i128> {
    (2i128..).filter(|&n| is_prime(n))
}

/// Divisors of `n > 0` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of nonpositive {n}");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// A (principal) ideal of the integers, identified by its nonnegative
/// generator. Generator 0 is the zero ideal, 1 the whole ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealOfZ {
    generator: i128,
}

impl IdealOfZ {
    pub fn new(g: i128) -> Self {
        IdealOfZ { generator: g.abs() }
    }

    pub const ZERO: IdealOfZ = IdealOfZ { generator: 0 };
    pub const WHOLE: IdealOfZ = IdealOfZ { generator: 1 };

    pub fn generator(&self) -> i128 {
        self.generator
    }

    pub fn contains(&self, x: i128) -> bool {
        if self.generator == 0 {
            x == 0
        } else {
            x % self.generator == 0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.generator == 0
    }

    pub fn is_whole_ring(&self) -> bool {
        self.generator == 1
    }

    /// Ideal sum `(a) + (b) = (gcd(a, b))`.
    pub fn plus(&self, other: &IdealOfZ) -> IdealOfZ {
        IdealOfZ::new(gcd(self.generator, other.generator))
    }

    /// Ideal intersection `(a) \u{2229} (b) = (lcm(a, b))`.
    pub fn meet(&self, other: &IdealOfZ) -> IdealOfZ {
        IdealOfZ::new(lcm(self.generator, other.generator))
    }

    /// Prime ideals of the integers are (0) and (p) for prime p.
    pub fn is_prime_ideal(&self) -> bool {
        self.generator == 0 || is_prime(self.generator)
    }
}

/// Generator of the ideal spanned by `xs`: the gcd of absolute values,
/// 0 for an empty or all-zero list.
pub fn gcd_ideal(xs: &[i128]) -> IdealOfZ {
    IdealOfZ::new(xs.iter().fold(0i128, |g, &x| gcd(g, x)))
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        assert!(!rows.is_empty(), "matrices need at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged row lengths");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    /// Build from column vectors over `rows` rows; `columns` may be empty.
    pub fn from_columns(rows: usize, columns: &[Vec<i128>]) -> Result<Self> {
        assert!(rows > 0, "matrices need at least one row");
        for c in columns {
            if c.len() != rows {
                return Err(Error::RankMismatch {
                    rank: rows,
                    got: c.len(),
                });
            }
        }
        let mut m = Self::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i128) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i128>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols.max(1), self.rows);
        if self.cols == 0 {
            return IntMatrix {
                rows: 1,
                cols: self.rows,
                data: vec![0; self.rows],
            };
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0i128, |acc, j| ck_add(acc, ck_mul(self.at(i, j), v[j])))
            })
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self.at(i, a);
            let y = self.at(i, b);
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = self.at(i, j);
            self.set(i, j, ck_sub(0, x));
        }
    }

    /// `col_j += q * col_i`
    fn col_axpy(&mut self, j: usize, q: i128, i: usize) {
        if q == 0 {
            return;
        }
        for r in 0..self.rows {
            let x = ck_add(self.at(r, j), ck_mul(q, self.at(r, i)));
            self.set(r, j, x);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let x = self.at(a, j);
            let y = self.at(b, j);
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = self.at(i, j);
            self.set(i, j, ck_sub(0, x));
        }
    }

    /// `row_i += q * row_k`
    fn row_axpy(&mut self, i: usize, q: i128, k: usize) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let x = ck_add(self.at(i, j), ck_mul(q, self.at(k, j)));
            self.set(i, j, x);
        }
    }

    fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.at(i, j) == 0)
    }
}

/// Canonical column-style Hermite normal form; zero columns removed.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf_with_transform(m);
    let keep: Vec<usize> = (0..h.cols()).filter(|&j| !h.col_is_zero(j)).collect();
    let cols: Vec<Vec<i128>> = keep.iter().map(|&j| h.column(j)).collect();
    IntMatrix::from_columns(m.rows(), &cols).expect("columns share the input row count")
}

/// Column HNF together with the unimodular `V` such that `m * V = H`.
/// Zero columns of `H` are kept so that the matching columns of `V` form
/// an integer kernel basis of `m`.
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut w = m.clone();
    let mut v = IntMatrix::identity(m.cols());
    let (rows, cols) = (m.rows(), m.cols());
    let mut c = 0usize;
    for r in 0..rows {
        if c == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in c..cols {
                if w.at(r, j) != 0
                    && best.is_none_or(|b| w.at(r, j).abs() < w.at(r, b).abs())
                {
                    best = Some(j);
                }
            }
            let Some(j0) = best else { break };
            w.swap_cols(c, j0);
            v.swap_cols(c, j0);
            let mut done = true;
            for j in (c + 1)..cols {
                if w.at(r, j) != 0 {
                    let q = w.at(r, j) / w.at(r, c);
                    w.col_axpy(j, -q, c);
                    v.col_axpy(j, -q, c);
                    if w.at(r, j) != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if w.at(r, c) != 0 {
            if w.at(r, c) < 0 {
                w.negate_col(c);
                v.negate_col(c);
            }
            let p = w.at(r, c);
            for j in 0..c {
                let q = w.at(r, j).div_euclid(p);
                w.col_axpy(j, -q, c);
                v.col_axpy(j, -q, c);
            }
            c += 1;
        }
    }
    (w, v)
}

/// Basis of the integer kernel `{ u : m * u = 0 }`, as vectors of length
/// `m.cols()`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<i128>> {
    if m.cols() == 0 {
        return Vec::new();
    }
    let (h, v) = hnf_with_transform(m);
    (0..h.cols())
        .filter(|&j| h.col_is_zero(j))
        .map(|j| v.column(j))
        .collect()
}

/// Solve `h * u = target` for integer `u`, where `h` is a canonical HNF
/// (column echelon). Returns `None` when `target` is outside the span.
pub fn hnf_solve(h: &IntMatrix, target: &[i128]) -> Option<Vec<i128>> {
    assert_eq!(target.len(), h.rows(), "dimension mismatch in hnf_solve");
    let mut residue = target.to_vec();
    let mut u = vec![0i128; h.cols()];
    for j in 0..h.cols() {
        let Some(r) = (0..h.rows()).find(|&i| h.at(i, j) != 0) else {
            continue; // zero column, coefficient stays 0
        };
        if residue[r] % h.at(r, j) != 0 {
            return None;
        }
        let q = residue[r] / h.at(r, j);
        u[j] = q;
        for i in 0..h.rows() {
            residue[i] = ck_sub(residue[i], ck_mul(q, h.at(i, j)));
        }
    }
    if residue.iter().all(|&x| x == 0) {
        Some(u)
    } else {
        None
    }
}

/// Smith normal form diagonal: positive invariant factors `d1 | d2 | ...`,
/// zero entries omitted.
pub fn snf(m: &IntMatrix) -> Vec<i128> {
    snf_with_left(m).diag
}

/// Smith normal form with the left transform recorded: `left * m * V = D`
/// for some unimodular `V` that is not kept. `diag` lists the positive
/// invariant factors; trailing zero diagonal entries are dropped but the
/// rank is implicit in `diag.len()`.
pub struct SnfDecomp {
    pub diag: Vec<i128>,
    pub left: IntMatrix,
}

pub fn snf_with_left(m: &IntMatrix) -> SnfDecomp {
    let mut w = m.clone();
    let mut left = IntMatrix::identity(m.rows());
    let (rows, cols) = (m.rows(), m.cols());
    let bound = rows.min(cols);
    let mut t = 0usize;
    while t < bound {
        // locate the absolutely smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w.at(i, j) != 0
                    && best.is_none_or(|(bi, bj)| w.at(i, j).abs() < w.at(bi, bj).abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        left.swap_rows(t, bi);
        w.swap_cols(t, bj);
        let mut clean = true;
        for i in (t + 1)..rows {
            if w.at(i, t) != 0 {
                let q = w.at(i, t) / w.at(t, t);
                w.row_axpy(i, -q, t);
                left.row_axpy(i, -q, t);
                if w.at(i, t) != 0 {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if w.at(t, j) != 0 {
                let q = w.at(t, j) / w.at(t, t);
                w.col_axpy(j, -q, t);
                if w.at(t, j) != 0 {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // divisibility fix: pull a bad row up and restart the corner
        let pivot = w.at(t, t);
        let mut fixed = true;
        'scan: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if w.at(i, j) % pivot != 0 {
                    w.row_axpy(t, 1, i);
                    left.row_axpy(t, 1, i);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if w.at(t, t) < 0 {
            w.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    SnfDecomp {
        diag: (0..t).map(|i| w.at(i, i)).collect(),
        left,
    }
}
