use std::ops::Range;

use num_traits::Zero;

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A subspace of `Q^n` stored by its reduced row-echelon basis.
///
/// The canonical basis makes structural equality coincide with equality of
/// subspaces as sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_pivots();
        let rank = pivots.len();
        let entries = r.entries()[..rank * m.cols()].to_vec();
        Subspace {
            ambient_dim: m.cols(),
            basis: Matrix::new(rank, m.cols(), entries).expect("rref prefix"),
            pivots,
        }
    }

    /// A basis already in reduced row-echelon form with the given pivots.
    pub(crate) fn from_echelon_parts(basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace {
            ambient_dim: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(ambient_dim, v.len()));
        }
        let entries = vectors.iter().flatten().cloned().collect();
        Ok(Subspace::row_space(&Matrix::new(vectors.len(), ambient_dim, entries)?))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Leading columns of the canonical basis vectors.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let row = Matrix::from_rows(vec![coords.clone()]).expect("one row");
        let back = &row * &self.basis;
        (back.row(0) == v).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let entries = self
            .basis
            .entries()
            .iter()
            .chain(other.basis.entries())
            .cloned()
            .collect();
        let stacked = Matrix::new(self.dim() + other.dim(), self.ambient_dim, entries)?;
        Ok(Subspace::row_space(&stacked))
    }

    /// Zassenhaus intersection: row-reduce `[a | a]` stacked over `[b | 0]`;
    /// rows whose left half vanishes carry a basis of `a ∩ b` on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let mut m = Matrix::zeros(self.dim() + other.dim(), 2 * n);
        for (i, row) in self.basis.row_vectors().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
                m.set(i, n + j, v.clone());
            }
        }
        for (i, row) in other.basis.row_vectors().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(self.dim() + i, j, v.clone());
            }
        }
        let (r, pivots) = m.rref_pivots();
        let vectors: Vec<Vec<Rational>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(row, _)| r.row(row)[n..].to_vec())
            .collect();
        Subspace::from_vectors(n, &vectors)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.row_vectors().all(|v| self.contains_vector(v)))
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let images: Vec<Vec<Rational>> =
            self.basis.row_vectors().map(|v| m.apply(v)).collect();
        Subspace::from_vectors(m.rows(), &images).expect("image vectors have ambient length")
    }
}

/// An ordered direct-sum decomposition of the ambient space into nonzero
/// parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    ambient_dim: usize,
    parts: Vec<Subspace>,
}

pub fn is_decomposition(parts: &[Subspace], ambient_dim: usize) -> bool {
    if parts.iter().any(|p| p.is_zero() || p.ambient_dim() != ambient_dim) {
        return false;
    }
    if parts.iter().map(Subspace::dim).sum::<usize>() != ambient_dim {
        return false;
    }
    let entries = parts
        .iter()
        .flat_map(|p| p.basis().entries().iter().cloned())
        .collect();
    Matrix::new(ambient_dim, ambient_dim, entries).is_ok_and(|m| m.rank() == ambient_dim)
}

impl Decomposition {
    pub fn new(ambient_dim: usize, parts: Vec<Subspace>) -> Result<Self> {
        if !is_decomposition(&parts, ambient_dim) {
            return Err(Error::NotADecomposition);
        }
        Ok(Decomposition { ambient_dim, parts })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index `d` of the last part.
    pub fn diameter(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn part(&self, i: usize) -> &Subspace {
        &self.parts[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    /// Sum of the parts with index in `range`; empty ranges give zero.
    pub fn span(&self, range: Range<usize>) -> Subspace {
        let end = range.end.min(self.parts.len());
        let start = range.start.min(end);
        let entries: Vec<Rational> = self.parts[start..end]
            .iter()
            .flat_map(|p| p.basis().entries().iter().cloned())
            .collect();
        let rows = entries.len() / self.ambient_dim.max(1);
        let m = Matrix::new(rows, self.ambient_dim, entries).expect("stacked bases");
        Subspace::row_space(&m)
    }

    /// Same parts, opposite order.
    pub fn reversed(&self) -> Decomposition {
        Decomposition {
            ambient_dim: self.ambient_dim,
            parts: self.parts.iter().rev().cloned().collect(),
        }
    }

    /// Invertible matrix whose columns list the bases of the parts in order.
    pub fn change_of_basis(&self) -> Matrix {
        let columns: Vec<Vec<Rational>> = self
            .parts
            .iter()
            .flat_map(|p| p.basis().row_vectors().map(<[Rational]>::to_vec))
            .collect();
        Matrix::from_columns(self.ambient_dim, &columns)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0];
        for p in &self.parts {
            offsets.push(offsets.last().unwrap() + p.dim());
        }
        offsets
    }

    /// The operator acting as `eigenvalues[i]` on part `i`.
    pub fn operator(&self, eigenvalues: &[Rational]) -> Matrix {
        assert_eq!(eigenvalues.len(), self.parts.len(), "one eigenvalue per part");
        let p = self.change_of_basis();
        let diag: Vec<Rational> = self
            .parts
            .iter()
            .zip(eigenvalues)
            .flat_map(|(part, ev)| std::iter::repeat_n(ev.clone(), part.dim()))
            .collect();
        let p_inv = p.inverse().expect("decomposition bases are independent");
        &(&p * &Matrix::diagonal(&diag)) * &p_inv
    }

    /// `m` written in the basis adapted to the decomposition.
    pub fn block_form(&self, m: &Matrix) -> BlockForm {
        let p = self.change_of_basis();
        let p_inv = p.inverse().expect("decomposition bases are independent");
        BlockForm {
            matrix: &(&p_inv * m) * &p,
            offsets: self.offsets(),
        }
    }
}

/// A matrix in block form relative to a decomposition; block `(j, i)` is
/// the component of the image of part `i` inside part `j`.
#[derive(Clone, Debug)]
pub struct BlockForm {
    matrix: Matrix,
    offsets: Vec<usize>,
}

impl BlockForm {
    pub fn block_is_zero(&self, j: usize, i: usize) -> bool {
        (self.offsets[j]..self.offsets[j + 1]).all(|r| {
            (self.offsets[i]..self.offsets[i + 1]).all(|c| self.matrix.get(r, c).is_zero())
        })
    }
}
