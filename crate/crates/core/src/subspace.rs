//! Canonical rational subspaces and invariant-subspace machinery.
//!
//! A `Subspace` of Q^r is stored as a reduced row-echelon basis with strictly
//! increasing pivot columns, so equal subspaces have identical representation
//! and equality is structural. The quotient Q^r/V is always coordinatized by
//! the non-pivot standard coordinates of V's echelon basis, which makes
//! restriction and quotient actions deterministic.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{QVec, RatMatrix};
use crate::rat::rat_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// Q-subspace of Q^r in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<QVec>,
    pivots: Vec<usize>,
}

/// Reduced row-echelon form of a list of vectors: pivots are 1, pivot columns
/// are cleared above and below, zero rows dropped, pivot columns strictly
/// increasing. This is the unique canonical basis of the row space.
fn rref(ambient: usize, rows: Vec<QVec>) -> (Vec<QVec>, Vec<usize>) {
    let mut rows: Vec<QVec> = rows.into_iter().filter(|v| !v.is_zero()).collect();
    for v in &rows {
        assert_eq!(v.dim(), ambient, "row dimension mismatch");
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in 0..ambient {
        if next == rows.len() {
            break;
        }
        let Some(idx) = (next..rows.len()).find(|&i| !rows[i].coord(col).is_zero()) else {
            continue;
        };
        rows.swap(next, idx);
        let inv = rat_int(1) / rows[next].coord(col);
        if !inv.is_one() {
            rows[next] = rows[next].scale(&inv);
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row.coord(col).is_zero() {
                continue;
            }
            let factor = row.coord(col).clone();
            *row = &*row - &pivot_row.scale(&factor);
        }
        pivots.push(col);
        next += 1;
    }
    // Rows at index >= next carry zeros in every column by the elimination
    // invariant, so the reduced basis is exactly the first `next` rows.
    rows.truncate(next);
    (rows, pivots)
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: vec![],
            pivots: vec![],
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| QVec::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonical span of the given vectors.
    pub fn from_rows(ambient: usize, rows: Vec<QVec>) -> Self {
        let (basis, pivots) = rref(ambient, rows);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn span_of(v: &QVec) -> Self {
        Subspace::from_rows(v.dim(), vec![v.clone()])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn nonpivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Canonical representative of `v` modulo this subspace: pivot
    /// coordinates reduced to zero.
    pub fn reduce(&self, v: &QVec) -> QVec {
        assert_eq!(v.dim(), self.ambient);
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out.coord(p).is_zero() {
                continue;
            }
            let factor = out.coord(p).clone();
            out = &out - &row.scale(&factor);
        }
        out
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_rows(self.ambient, rows)
    }

    /// Orthogonal complement under the standard bilinear form:
    /// {x : b . x = 0 for every basis vector b}.
    pub fn orth_complement(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        kernel_of_rows(self.ambient, &self.basis)
    }

    /// Intersection, via complements: (U^perp + W^perp)^perp.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        self.orth_complement()
            .sum(&other.orth_complement())
            .orth_complement()
    }

    /// Image m(V).
    pub fn map(&self, m: &RatMatrix) -> Subspace {
        Subspace::from_rows(
            self.ambient,
            self.basis.iter().map(|v| m.apply(v)).collect(),
        )
    }

    /// Whether m(V) = V. For invertible m containment suffices since the
    /// image has the same dimension.
    pub fn is_invariant_under(&self, m: &RatMatrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.apply(v)))
    }

    /// Vector with the given coordinates in this subspace's echelon basis.
    pub fn from_basis_coords(&self, coords: &QVec) -> QVec {
        assert_eq!(coords.dim(), self.dim());
        let mut out = QVec::zero(self.ambient);
        for (c, row) in coords.coords().iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &row.scale(c);
            }
        }
        out
    }

    /// Coordinates of `v` in the echelon basis. For an echelon basis these
    /// are just the values of `v` at the pivot columns; valid only when
    /// `v` lies in the subspace.
    pub fn basis_coords(&self, v: &QVec) -> Option<QVec> {
        if !self.contains(v) {
            return None;
        }
        Some(QVec::new(
            self.pivots.iter().map(|&p| v.coord(p).clone()).collect(),
        ))
    }

    /// Embed a vector of quotient coordinates (indexed by the non-pivot
    /// columns) back into Q^r as its canonical representative.
    pub fn lift_quotient(&self, q: &QVec) -> QVec {
        let nonpivots = self.nonpivots();
        assert_eq!(q.dim(), nonpivots.len());
        let mut out = QVec::zero(self.ambient);
        for (value, &col) in q.coords().iter().zip(&nonpivots) {
            out.coords_mut()[col] = value.clone();
        }
        out
    }

    /// Quotient coordinates of `v + V`: reduce mod V, read non-pivot columns.
    pub fn project_quotient(&self, v: &QVec) -> QVec {
        let reduced = self.reduce(v);
        QVec::new(
            self.nonpivots()
                .iter()
                .map(|&c| reduced.coord(c).clone())
                .collect(),
        )
    }

    /// Preimage in Q^r of a subspace of the quotient Q^r/V under the
    /// canonical projection: V + (lifts of the quotient basis).
    pub fn pullback(&self, quotient_sub: &Subspace) -> Subspace {
        assert_eq!(quotient_sub.ambient_dim(), self.ambient - self.dim());
        let mut rows = self.basis.clone();
        rows.extend(quotient_sub.basis().iter().map(|q| self.lift_quotient(q)));
        Subspace::from_rows(self.ambient, rows)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of Q^{}", self.dim(), self.ambient)?;
        for v in &self.basis {
            write!(f, ", {:?}", v)?;
        }
        write!(f, ")")
    }
}

fn kernel_of_rows(ambient: usize, rows: &[QVec]) -> Subspace {
    // Solve rows . x = 0 from the echelon form of the rows.
    let reduced = Subspace::from_rows(ambient, rows.to_vec());
    let pivots = reduced.pivots().to_vec();
    let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
    let mut kernel_rows = Vec::with_capacity(free.len());
    for &fcol in &free {
        let mut v = QVec::zero(ambient);
        v.coords_mut()[fcol] = rat_int(1);
        for (row, &p) in reduced.basis().iter().zip(&pivots) {
            v.coords_mut()[p] = -row.coord(fcol);
        }
        kernel_rows.push(v);
    }
    Subspace::from_rows(ambient, kernel_rows)
}

/// Null space {v : m v = 0} of a square matrix, in canonical form.
pub fn kernel(m: &RatMatrix) -> Subspace {
    kernel_of_rows(m.dim(), &m.rows())
}

/// Rank of a square matrix.
pub fn rank(m: &RatMatrix) -> usize {
    Subspace::from_rows(m.dim(), m.rows()).dim()
}

/// Row space of a square matrix, in canonical form.
pub fn row_space(m: &RatMatrix) -> Subspace {
    Subspace::from_rows(m.dim(), m.rows())
}

/// Largest subspace of `seed` invariant under every generator.
///
/// Iterates V <- V meet g(V) meet g^{-1}(V) over all generators until stable;
/// each non-final pass strictly drops the dimension, so at most dim(seed)+1
/// passes run. The fixed point satisfies g(V) = V for every g, and every
/// invariant subspace of the seed survives each cut, so the result is the
/// unique largest one.
pub fn invariant_core(seed: &Subspace, gens: &[RatMatrix]) -> Subspace {
    let inverses: Vec<RatMatrix> = gens
        .iter()
        .map(|g| {
            g.inverse()
                .expect("invariant_core requires invertible generators")
        })
        .collect();
    let mut current = seed.clone();
    loop {
        if current.is_zero() {
            return current;
        }
        let mut next = current.clone();
        for (g, ginv) in gens.iter().zip(&inverses) {
            next = next.intersect(&current.map(g));
            next = next.intersect(&current.map(ginv));
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Matrix of `m` restricted to the invariant subspace `v`, written in the
/// canonical echelon basis of `v`.
pub fn restrict_action(m: &RatMatrix, v: &Subspace) -> Result<RatMatrix, SubspaceError> {
    if m.dim() != v.ambient_dim() {
        return Err(SubspaceError::AmbientMismatch(m.dim(), v.ambient_dim()));
    }
    let k = v.dim();
    let mut cols: Vec<QVec> = Vec::with_capacity(k);
    for b in v.basis() {
        let image = m.apply(b);
        let Some(coords) = v.basis_coords(&image) else {
            return Err(SubspaceError::NotInvariant);
        };
        cols.push(coords);
    }
    Ok(RatMatrix::from_fn(k, |i, j| cols[j].coord(i).clone()))
}

/// Matrix of the action induced by `m` on the quotient Q^r/v, in the basis of
/// the non-pivot standard coordinates of `v`.
pub fn quotient_action(m: &RatMatrix, v: &Subspace) -> Result<RatMatrix, SubspaceError> {
    if m.dim() != v.ambient_dim() {
        return Err(SubspaceError::AmbientMismatch(m.dim(), v.ambient_dim()));
    }
    if !v.is_invariant_under(m) {
        return Err(SubspaceError::NotInvariant);
    }
    let ambient = v.ambient_dim();
    let nonpivots = v.nonpivots();
    let k = nonpivots.len();
    let cols: Vec<QVec> = nonpivots
        .iter()
        .map(|&c| v.project_quotient(&m.apply(&QVec::unit(ambient, c))))
        .collect();
    Ok(RatMatrix::from_fn(k, |i, j| cols[j].coord(i).clone()))
}
