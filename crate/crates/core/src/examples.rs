//! Generators for the standard fixture families.
//!
//! Two constructions recur throughout the tests and the CLI: the triangular
//! tower automorphisms, whose distal series has exactly one layer per
//! dimension, and the affine lift family, whose groups are ergodic while
//! every single element fixes a character direction (eigenvalue 1), so no
//! element is ergodic. All constructors are deterministic.

use thiserror::Error;

use crate::groupdyn::{GenSet, GenSetError};
use crate::matrix::{QVec, RatMatrix};
use crate::rat::rat_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("at least one nonzero translation is required")]
    NoNonzeroTranslation,
    #[error("translation {index} has dimension {found}, expected {expected}")]
    TranslationDim {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error(transparent)]
    InvalidGenerators(#[from] GenSetError),
}

/// The golden-mean automorphism of the 2-torus, the standard ergodic
/// unimodular example.
pub fn golden_mean() -> RatMatrix {
    RatMatrix::from_i64_rows(&[&[1, 1], &[1, 0]])
}

/// Dual matrix of the k-dimensional tower automorphism: upper triangular
/// with ones on and above the diagonal. Unipotent for every k.
pub fn tower_alpha(k: usize) -> RatMatrix {
    assert!(k >= 1, "tower dimension must be positive");
    RatMatrix::from_fn(k, |i, j| if j >= i { rat_int(1) } else { rat_int(0) })
}

/// Affine lift of an n x n automorphism `a` with translation part `w`: the
/// (n+1) x (n+1) block matrix with `a` in the top-left, `w` as the top of
/// the last column and bottom row (0, ..., 0, 1). Every lift has eigenvalue
/// 1 and so is never ergodic.
pub fn gamma_plus_lift(a: &RatMatrix, w: &QVec) -> RatMatrix {
    assert_eq!(a.dim(), w.dim(), "translation dimension mismatch");
    assert!(a.is_invertible(), "lift base must be invertible");
    let n = a.dim();
    RatMatrix::from_fn(n + 1, |i, j| {
        if i < n && j < n {
            a.entry(i, j).clone()
        } else if i < n {
            w.coord(i).clone()
        } else if j < n {
            rat_int(0)
        } else {
            rat_int(1)
        }
    })
}

/// Lift a generator set by the affine construction: each base generator
/// lifts with zero translation, and each translation lifts the identity.
/// With an ergodic base and translations spanning the lattice the generated
/// group is ergodic on the (n+1)-dimensional solenoid even though none of
/// its elements is.
pub fn gamma_plus_genset(base: &GenSet, translations: &[QVec]) -> Result<GenSet, ExampleError> {
    let n = base.dim();
    for (index, w) in translations.iter().enumerate() {
        if w.dim() != n {
            return Err(ExampleError::TranslationDim {
                index,
                found: w.dim(),
                expected: n,
            });
        }
    }
    if translations.iter().all(|w| w.is_zero()) {
        return Err(ExampleError::NoNonzeroTranslation);
    }
    let zero = QVec::zero(n);
    let identity = RatMatrix::identity(n);
    let mut gens: Vec<RatMatrix> = base
        .gens()
        .iter()
        .map(|a| gamma_plus_lift(a, &zero))
        .collect();
    gens.extend(translations.iter().map(|w| gamma_plus_lift(&identity, w)));
    Ok(GenSet::new(base.mode(), gens, None)?)
}
