//! Exact rational vectors and square matrices.
//!
//! A `RatMatrix` is the dual-side representation of an automorphism: it acts
//! on column vectors of the rational character space. Everything here is
//! immutable after construction and exact.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::rat::{format_rat, rat_int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("rows do not form a square matrix")]
    NotSquare,
}

/// Vector in the rational character space Q^r.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QVec {
    coords: Vec<Rat>,
}

impl QVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        QVec { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        QVec::new(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        QVec {
            coords: vec![rat_int(0); dim],
        }
    }

    /// Standard basis vector e_i (0-indexed).
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut v = QVec::zero(dim);
        v.coords[i] = rat_int(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &Rat) -> QVec {
        QVec::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn dot(&self, other: &QVec) -> Rat {
        assert_eq!(self.dim(), other.dim());
        let mut acc = rat_int(0);
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc += a * b;
        }
        acc
    }

    /// First nonzero coordinate index, if any.
    pub fn leading_index(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [Rat] {
        &mut self.coords
    }
}

impl Add for &QVec {
    type Output = QVec;
    fn add(self, rhs: &QVec) -> QVec {
        assert_eq!(self.dim(), rhs.dim());
        QVec::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &QVec {
    type Output = QVec;
    fn sub(self, rhs: &QVec) -> QVec {
        assert_eq!(self.dim(), rhs.dim());
        QVec::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl std::fmt::Debug for QVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, ")")
    }
}

/// Square matrix of exact rationals, row-major.
///
/// Dimension 0 is legal internally (it arises as the action on a
/// zero-dimensional quotient); external inputs are validated to r >= 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(MatrixError::NotSquare);
            }
            entries.extend(row);
        }
        Ok(RatMatrix { dim, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| rat_int(c)).collect())
                .collect(),
        )
        .expect("square integer literal")
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        RatMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { rat_int(1) } else { rat_int(0) })
    }

    pub fn zeros(dim: usize) -> Self {
        RatMatrix {
            dim,
            entries: vec![rat_int(0); dim * dim],
        }
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let dim = entries.len();
        Self::from_fn(dim, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                rat_int(0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> QVec {
        QVec::new(self.entries[i * self.dim..(i + 1) * self.dim].to_vec())
    }

    pub fn rows(&self) -> Vec<QVec> {
        (0..self.dim).map(|i| self.row(i)).collect()
    }

    pub fn col(&self, j: usize) -> QVec {
        QVec::new((0..self.dim).map(|i| self.entry(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.dim, |i, j| self.entry(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMatrix::identity(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn trace(&self) -> Rat {
        let mut acc = rat_int(0);
        for i in 0..self.dim {
            acc += self.entry(i, i);
        }
        acc
    }

    pub fn scalar_mul(&self, s: &Rat) -> RatMatrix {
        RatMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Matrix applied to a column vector.
    pub fn apply(&self, v: &QVec) -> QVec {
        assert_eq!(self.dim, v.dim(), "matrix/vector dimension mismatch");
        QVec::new(
            (0..self.dim)
                .map(|i| {
                    let mut acc = rat_int(0);
                    for j in 0..self.dim {
                        acc += self.entry(i, j) * v.coord(j);
                    }
                    acc
                })
                .collect(),
        )
    }

    /// Determinant by exact Gaussian elimination.
    // Row operations read the pivot row while mutating another, so index
    // loops are the borrow-friendly form here.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Rat {
        let n = self.dim;
        if n == 0 {
            return rat_int(1);
        }
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut det = rat_int(1);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return rat_int(0);
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det *= &a[col][col];
            let inv = rat_int(1) / &a[col][col];
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &inv;
                for c in col..n {
                    let t = &a[col][c] * &factor;
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Whether the matrix is integral with determinant +-1, i.e. defines an
    /// automorphism of the r-torus (its own lift to the solenoid).
    pub fn is_unimodular_integer(&self) -> bool {
        self.is_integer() && self.det().abs().is_one()
    }

    /// Inverse by exact Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix, MatrixError> {
        let n = self.dim;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut inv: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { rat_int(1) } else { rat_int(0) })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(MatrixError::Singular);
            };
            a.swap(p, col);
            inv.swap(p, col);
            let scale = rat_int(1) / &a[col][col];
            for c in 0..n {
                a[col][c] = &a[col][c] * &scale;
                inv[col][c] = &inv[col][c] * &scale;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let t = &a[col][c] * &factor;
                    a[r][c] = &a[r][c] - &t;
                    let t = &inv[col][c] * &factor;
                    inv[r][c] = &inv[r][c] - &t;
                }
            }
        }
        Ok(RatMatrix::from_rows(inv).expect("square by construction"))
    }

    /// Nonnegative matrix power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> RatMatrix {
        let mut base = self.clone();
        let mut acc = RatMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Characteristic polynomial det(xI - m), monic of degree r, computed by
    /// the Faddeev-LeVerrier recurrence. Exact; divisions are by integers
    /// 1..=r only.
    pub fn charpoly(&self) -> Polynomial {
        let n = self.dim;
        let mut coeffs = vec![rat_int(0); n + 1];
        coeffs[n] = rat_int(1);
        let mut aux = RatMatrix::identity(n);
        for k in 1..=n {
            aux = self * &aux;
            let c = -aux.trace() / rat_int(k as i64);
            for i in 0..n {
                let e = aux.entry(i, i) + &c;
                aux.entries[i * n + i] = e;
            }
            coeffs[n - k] = c;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        RatMatrix::from_fn(n, |i, j| {
            let mut acc = rat_int(0);
            for k in 0..n {
                acc += self.entry(i, k) * rhs.entry(k, j);
            }
            acc
        })
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, rhs.dim);
        RatMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, rhs.dim);
        RatMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rat(self.entry(i, j)))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
