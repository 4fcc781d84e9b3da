//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision; no floating point is used anywhere
//! in the crate. Normal forms (Hermite, Smith) are canonical so that repeated
//! runs produce byte-identical output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Int) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| Int::from(x)).collect(),
        }
    }

    pub fn from_row_vectors(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Int> {
        self.row(i).to_vec()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| &self[(i, k)] * &v[k]).sum())
            .collect()
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, n: &Int) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * n)
    }

    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            Rat::from_integer(self[(i, j)].clone())
        })
    }

    pub fn to_rows_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
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

    /// row a -= q * row b
    fn row_submul(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(b, j)] * q;
            self[(a, j)] -= t;
        }
    }

    fn col_submul(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, b)] * q;
            self[(i, a)] -= t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num.div_floor(&prev);
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Row Hermite normal form. Returns (h, u) with u unimodular, u·self = h,
    /// pivots positive and entries above each pivot reduced into [0, pivot).
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            if (pivot_row..self.rows).all(|i| h[(i, col)].is_zero()) {
                continue;
            }
            // gcd elimination within this column
            loop {
                let best = (pivot_row..self.rows)
                    .filter(|&i| !h[(i, col)].is_zero())
                    .min_by_key(|&i| h[(i, col)].abs())
                    .expect("nonzero entry exists");
                h.swap_rows(best, pivot_row);
                u.swap_rows(best, pivot_row);
                let mut clean = true;
                for i in pivot_row + 1..self.rows {
                    if h[(i, col)].is_zero() {
                        continue;
                    }
                    let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                    h.row_submul(i, pivot_row, &q);
                    u.row_submul(i, pivot_row, &q);
                    if !h[(i, col)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let pivot = h[(pivot_row, col)].clone();
            for i in 0..pivot_row {
                let q = h[(i, col)].div_floor(&pivot);
                h.row_submul(i, pivot_row, &q);
                u.row_submul(i, pivot_row, &q);
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Rank over the rationals (equals the number of nonzero HNF rows).
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        (0..h.rows)
            .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// Smith normal form: u·self·v is diagonal with each entry dividing the
    /// next. `factors` lists the nonzero diagonal entries (all positive).
    pub fn snf(&self) -> Snf {
        let mut a = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0usize;
        while t < n {
            // smallest nonzero entry in the trailing block becomes the pivot
            let mut piv: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !a[(i, j)].is_zero()
                        && piv.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                    {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            a.swap_rows(pi, t);
            u.swap_rows(pi, t);
            a.swap_cols(pj, t);
            v.swap_cols(pj, t);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.row_submul(i, t, &q);
                    u.row_submul(i, t, &q);
                    if !a[(i, t)].is_zero() {
                        a.swap_rows(i, t);
                        u.swap_rows(i, t);
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.col_submul(j, t, &q);
                    v.col_submul(j, t, &q);
                    if !a[(t, j)].is_zero() {
                        a.swap_cols(j, t);
                        v.swap_cols(j, t);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // enforce the divisor chain before moving on
                let offender = (t + 1..self.rows)
                    .flat_map(|i| (t + 1..self.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
                match offender {
                    Some((i, _)) => {
                        for j in 0..self.cols {
                            let add = a[(i, j)].clone();
                            a[(t, j)] += add;
                        }
                        for j in 0..self.rows {
                            let add = u[(i, j)].clone();
                            u[(t, j)] += add;
                        }
                    }
                    None => break,
                }
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        let factors = (0..t).map(|i| a[(i, i)].clone()).collect();
        Snf { factors, u, v }
    }

    /// Basis of the saturated integer kernel {x ∈ Z^cols : self·xᵀ = 0},
    /// returned as HNF-normalized rows.
    pub fn integer_kernel(&self) -> IntMatrix {
        let (h, u) = self.transpose().hnf();
        let mut rows = Vec::new();
        for i in 0..h.rows() {
            if h.row(i).iter().all(|x| x.is_zero()) {
                rows.push(u.row_vec(i));
            }
        }
        if rows.is_empty() {
            return IntMatrix::zero(0, self.cols);
        }
        let k = IntMatrix::from_row_vectors(rows);
        let (kh, _) = k.hnf();
        kh
    }

    /// Some integral solution x of self·x = b, if one exists. Uses the Smith
    /// normal form, so it also detects unsolvability exactly.
    pub fn solve_integer(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let snf = self.snf();
        let rank = snf.factors.len();
        let ub = snf.u.mul_vec(b);
        let mut y = vec![Int::zero(); self.cols];
        for (i, ubi) in ub.iter().enumerate() {
            if i < rank {
                let (q, r) = ubi.div_rem(&snf.factors[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ubi.is_zero() {
                return None;
            }
        }
        Some(snf.v.mul_vec(&y))
    }

    /// Sylvester signature (pos, neg, zero) of a symmetric matrix, computed by
    /// exact rational congruence diagonalization. Zero diagonal blocks are
    /// handled by merging in an off-diagonal row, so hyperbolic-plane-heavy
    /// inputs cost one extra sweep and contribute (1,1) per plane.
    pub fn signature_of_symmetric(&self) -> Result<(usize, usize, usize)> {
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let n = self.rows;
        let mut a = self.to_rat();
        let (mut pos, mut neg) = (0usize, 0usize);
        let mut k = 0usize;
        while k < n {
            if let Some(p) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
                a.swap_rows(p, k);
                a.swap_cols(p, k);
                let d = a[(k, k)].clone();
                if d.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                for i in k + 1..n {
                    let f = &a[(i, k)] / &d;
                    if f.is_zero() {
                        continue;
                    }
                    for j in k..n {
                        let t = &f * &a[(k, j)];
                        a[(i, j)] -= t;
                    }
                }
                for j in k + 1..n {
                    let f = &a[(k, j)] / &d;
                    if f.is_zero() {
                        continue;
                    }
                    for i in k..n {
                        let t = &f * &a[(i, k)];
                        a[(i, j)] -= t;
                    }
                }
                k += 1;
            } else {
                // all remaining diagonal entries vanish
                let mut off = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !a[(i, j)].is_zero() {
                            off = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = off else { break };
                // fold row/col j into i; the indefinite 2x2 block [[0,b],[b,0]]
                // then diagonalizes to one positive and one negative direction
                for t in 0..n {
                    let add = a[(j, t)].clone();
                    a[(i, t)] += add;
                }
                for t in 0..n {
                    let add = a[(t, j)].clone();
                    a[(t, i)] += add;
                }
            }
        }
        Ok((pos, neg, n - pos - neg))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form decomposition: u·m·v = diag(factors, 0, …).
#[derive(Clone, Debug)]
pub struct Snf {
    pub factors: Vec<Int>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Dense matrix of rationals in lowest terms, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| &self[(i, k)] * &v[k]).sum())
            .collect()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            det *= &a[(k, k)].clone();
            let inv = a[(k, k)].clone();
            for i in k + 1..n {
                let f = &a[(i, k)] / &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &f * &a[(k, j)];
                    a[(i, j)] -= t;
                }
            }
        }
        det
    }

    /// Solve self·x = b by Gaussian elimination; None if singular.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            if p != k {
                a.swap_rows(p, k);
                rhs.swap(p, k);
            }
            let inv = a[(k, k)].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = &a[(i, k)] / &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &f * &a[(k, j)];
                    a[(i, j)] -= t;
                }
                let t = &f * &rhs[k];
                rhs[i] -= t;
            }
        }
        Some(
            rhs.into_iter()
                .zip((0..n).map(|k| a[(k, k)].clone()))
                .map(|(x, d)| x / d)
                .collect(),
        )
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
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// x·G·y for an integer Gram matrix and rational vectors.
pub fn form_product(gram: &IntMatrix, x: &[Rat], y: &[Rat]) -> Rat {
    assert_eq!(x.len(), gram.rows());
    assert_eq!(y.len(), gram.cols());
    let mut acc = Rat::zero();
    for i in 0..gram.rows() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..gram.cols() {
            if y[j].is_zero() {
                continue;
            }
            acc += &x[i] * &y[j] * Rat::from_integer(gram[(i, j)].clone());
        }
    }
    acc
}

/// x·G·y for integer vectors.
pub fn form_product_int(gram: &IntMatrix, x: &[Int], y: &[Int]) -> Int {
    assert_eq!(x.len(), gram.rows());
    assert_eq!(y.len(), gram.cols());
    let mut acc = Int::zero();
    for i in 0..gram.rows() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..gram.cols() {
            if y[j].is_zero() {
                continue;
            }
            acc += &x[i] * &y[j] * &gram[(i, j)];
        }
    }
    acc
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn rat_vec_from_int(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Clears denominators: returns (lcm, integral vector lcm·v).
pub fn clear_denominators(v: &[Rat]) -> (Int, Vec<Int>) {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints = v
        .iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect();
    (l, ints)
}
