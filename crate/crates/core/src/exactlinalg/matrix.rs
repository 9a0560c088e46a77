use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{int, Rational};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals. Matrices act on column
/// vectors from the left.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::RaggedRows);
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n, "column length");
            for (i, v) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn block_diagonal(blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.entries[(r0 + i) * c + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.row_vectors().map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            Rational::zero()
        } else {
            self.get(0, 0).clone()
        };
        (*self == Matrix::scalar(self.rows, c.clone())).then_some(c)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `self + c·I`.
    pub fn shift(&self, c: &Rational) -> Matrix {
        assert!(self.is_square(), "shift of a non-square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            let k = i * self.cols + i;
            m.entries[k] = &m.entries[k] + c;
        }
        m
    }

    /// `self·v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        let (w, wd) = common_denominator(v.iter());
        (0..self.rows)
            .map(|i| {
                let (r, rd) = common_denominator(self.row(i).iter());
                Rational::new(dot(&r, &w), rd * &wd)
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Reduced row-echelon form together with its rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_pivots();
        (m, pivots.len())
    }

    /// Reduced row-echelon form and the pivot column of each nonzero row.
    pub(crate) fn rref_pivots(&self) -> (Matrix, Vec<usize>) {
        // Fraction-free Gauss-Jordan on integer rows: after each step every
        // entry is a minor of the input, so dividing by the previous pivot
        // is exact. The pivots are divided out only at the end.
        let cols = self.cols;
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| integer_row(&self.entries[i * cols..(i + 1) * cols]))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(p, r);
            let (head, tail) = rows.split_at_mut(r);
            let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
            let piv = pivot_row[c].clone();
            for row in head.iter_mut().chain(tail.iter_mut()) {
                let a = std::mem::take(&mut row[c]);
                for j in 0..cols {
                    if j == c {
                        continue;
                    }
                    let mut x = &row[j] * &piv;
                    if !a.is_zero() && !pivot_row[j].is_zero() {
                        x -= &a * &pivot_row[j];
                    }
                    if !prev.is_one() && !x.is_zero() {
                        x /= &prev;
                    }
                    row[j] = x;
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        let mut m = Matrix::zeros(self.rows, cols);
        for (i, &c) in pivots.iter().enumerate() {
            let lead = &rows[i][c];
            for j in c..cols {
                if !rows[i][j].is_zero() {
                    m.entries[i * cols + j] = Rational::new(rows[i][j].clone(), lead.clone());
                }
            }
        }
        (m, pivots)
    }

    /// Each row times the lcm of its denominators.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_vectors()
            .map(|row| common_denominator(row.iter()).0)
            .collect()
    }

    /// The whole matrix times the lcm of all its denominators.
    pub(crate) fn integer_multiple(&self) -> Vec<Vec<BigInt>> {
        let (flat, _) = common_denominator(self.entries.iter());
        flat.chunks(self.cols.max(1)).map(<[BigInt]>::to_vec).collect()
    }

    pub fn rank(&self) -> usize {
        if let Some(r) = super::modular::full_rank(self) {
            return r;
        }
        self.rref().1
    }

    /// `{v : self·v = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        if let Some(k) = super::modular::kernel(self) {
            return k;
        }
        let (r, pivots) = self.rref_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.cols, &basis).expect("kernel vectors have ambient length")
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.entries[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.entries[i * 2 * n + n + i] = Rational::one();
        }
        let (r, pivots) = aug.rref_pivots();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.entries[i * n + j] = r.get(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
        &(a * b) - &(b * a)
    }

    /// A positive integer multiple of `[a, b]` with integer entries.
    pub(crate) fn scaled_commutator(a: &Matrix, b: &Matrix) -> Matrix {
        assert!(a.is_square() && b.is_square() && a.rows == b.rows, "commutator shape");
        let n = a.rows;
        let (ai, _) = common_denominator(a.entries.iter());
        let (bi, _) = common_denominator(b.entries.iter());
        let col = |m: &[BigInt], j: usize| -> Vec<BigInt> { (0..n).map(|i| m[i * n + j].clone()).collect() };
        let a_cols: Vec<Vec<BigInt>> = (0..n).map(|j| col(&ai, j)).collect();
        let b_cols: Vec<Vec<BigInt>> = (0..n).map(|j| col(&bi, j)).collect();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            let (a_row, b_row) = (&ai[i * n..(i + 1) * n], &bi[i * n..(i + 1) * n]);
            for j in 0..n {
                entries.push(Rational::from_integer(dot(a_row, &b_cols[j]) - dot(b_row, &a_cols[j])));
            }
        }
        Matrix { rows: n, cols: n, entries }
    }

    /// Matrix of `m` restricted to `from`, written in the canonical bases of
    /// `from` (columns) and `to` (rows).
    pub fn restriction(&self, from: &Subspace, to: &Subspace) -> Result<Matrix> {
        restriction_of_power(self, 1, from, to)
    }
}

/// Matrix of `m^k` restricted to `from`, in the canonical bases of `from`
/// and `to`. Fails with `NotInvariant` if some image leaves `to`.
pub fn restriction_of_power(m: &Matrix, k: u32, from: &Subspace, to: &Subspace) -> Result<Matrix> {
    let (columns, scales) = restricted_columns(m, k, from, to)?;
    let columns: Vec<Vec<Rational>> = columns
        .into_iter()
        .zip(scales)
        .map(|(c, s)| c.into_iter().map(|x| Rational::new(x, s.clone())).collect())
        .collect();
    Ok(Matrix::from_columns(to.dim(), &columns))
}

/// The restriction of `m^k` with each column multiplied by some positive
/// integer, so that every entry is an integer. Same rank as the exact one.
pub(crate) fn scaled_restriction_of_power(
    m: &Matrix,
    k: u32,
    from: &Subspace,
    to: &Subspace,
) -> Result<Matrix> {
    let (columns, _) = restricted_columns(m, k, from, to)?;
    let columns: Vec<Vec<Rational>> = columns
        .into_iter()
        .map(|c| c.into_iter().map(Rational::from_integer).collect())
        .collect();
    Ok(Matrix::from_columns(to.dim(), &columns))
}

/// Integer coordinates of `m^k v` for each basis vector `v` of `from`, and
/// the denominator each column must be divided by.
fn restricted_columns(
    m: &Matrix,
    k: u32,
    from: &Subspace,
    to: &Subspace,
) -> Result<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(m.rows, m.cols));
    }
    if from.ambient_dim() != m.cols || to.ambient_dim() != m.rows {
        return Err(Error::DimensionMismatch(from.ambient_dim(), to.ambient_dim()));
    }
    // iterate on integers: m = mi / l and v = w / d
    let (flat, l) = common_denominator(m.entries.iter());
    let mi: Vec<&[BigInt]> = flat.chunks(m.cols.max(1)).collect();
    let lk = num_traits::pow(l, k as usize);
    // the basis of `to` as integer rows over one denominator e
    let (target, e) = common_denominator(to.basis().entries.iter());
    let target: Vec<&[BigInt]> = target.chunks(m.rows.max(1)).collect();
    let mut columns = Vec::with_capacity(from.dim());
    let mut scales = Vec::with_capacity(from.dim());
    for v in from.basis().row_vectors() {
        let (mut u, d) = common_denominator(v.iter());
        for _ in 0..k {
            u = mi.iter().map(|row| dot(row, &u)).collect();
        }
        // canonical basis rows have a 1 at their pivot, so the coordinates
        // are read off there and confirmed by recombining
        let coords: Vec<BigInt> = to.pivots().iter().map(|&p| u[p].clone()).collect();
        let invariant = (0..u.len()).all(|j| {
            let back = coords
                .iter()
                .zip(&target)
                .filter(|(c, _)| !c.is_zero())
                .fold(BigInt::zero(), |acc, (c, row)| acc + c * &row[j]);
            back == &u[j] * &e
        });
        if !invariant {
            return Err(Error::NotInvariant);
        }
        columns.push(coords);
        scales.push(&lk * &d);
    }
    Ok((columns, scales))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.row_vectors().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            f.write_str(&cells.join(", "))?;
        }
        f.write_str("]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "product shape");
        // integer dot products, one reduction per entry
        let rows: Vec<_> = (0..self.rows)
            .map(|i| common_denominator(self.row(i).iter()))
            .collect();
        let cols: Vec<_> = (0..rhs.cols)
            .map(|j| common_denominator((0..rhs.rows).map(|k| rhs.get(k, j))))
            .collect();
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for (r, rd) in &rows {
            for (c, cd) in &cols {
                let n = dot(r, c);
                entries.push(if n.is_zero() {
                    Rational::zero()
                } else {
                    Rational::new(n, rd * cd)
                });
            }
        }
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

/// The row scaled by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let (mut out, _) = common_denominator(row.iter());
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Integer numerators over a common denominator.
fn common_denominator<'a>(xs: impl Iterator<Item = &'a Rational> + Clone) -> (Vec<BigInt>, BigInt) {
    let l = xs
        .clone()
        .fold(BigInt::one(), |acc, x| if x.denom().is_one() { acc } else { acc.lcm(x.denom()) });
    let ints = xs
        .map(|x| {
            if x.denom().is_one() {
                x.numer() * &l
            } else {
                x.numer() * (&l / x.denom())
            }
        })
        .collect();
    (ints, l)
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}
