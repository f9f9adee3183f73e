//! Dynamics of a single automorphism of B_r or T^r.
//!
//! All verdicts are decided on the dual matrix acting on Q^r. Ergodicity is
//! equivalent to having no root of unity among the eigenvalues; distality is
//! equivalent to quasi-unipotence; and every automorphism splits the dual
//! space into a maximal invariant subspace on which it is quasi-unipotent
//! and a quotient on which it is ergodic.

use crate::cyclo::{exponent_m, is_quasi_unipotent, root_of_unity_eigenvalue};
use crate::matrix::RatMatrix;
use crate::subspace::{kernel, quotient_action, Subspace};

/// Ergodicity of a single automorphism, with the offending root-of-unity
/// order as witness when not ergodic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErgodicityCheck {
    pub ergodic: bool,
    /// Smallest n with a primitive n-th root of unity among the eigenvalues.
    pub root_of_unity_order: Option<u64>,
}

/// Distality of a single automorphism, with the unipotence exponent as
/// certificate when distal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistalityCheck {
    pub distal: bool,
    /// N such that m^N is unipotent.
    pub unipotence_exponent: Option<u64>,
}

/// The ergodic-distal splitting of the dual space under one automorphism.
///
/// `chain` is the ascending sequence V_1 <= V_2 <= ... <= V_n of invariant
/// subspaces, where V_1 collects the finite-orbit characters and each later
/// term pulls back the finite-orbit characters of the quotient by its
/// predecessor; the chain is reported up to (and including) the first
/// stabilized term. The restriction to V_n is quasi-unipotent and the action
/// induced on Q^r/V_n has no root-of-unity eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub chain: Vec<Subspace>,
    pub ergodic_part_dim: usize,
}

impl SplitReport {
    /// The stabilized distal part V_n (zero subspace for ergodic matrices).
    pub fn distal_part(&self) -> &Subspace {
        self.chain.last().expect("split chain is never empty")
    }
}

/// Full single-automorphism verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoVerdict {
    pub ergodic: bool,
    pub distal: bool,
    pub root_of_unity_witness: Option<u64>,
    pub unipotence_exponent: Option<u64>,
    pub split: SplitReport,
}

/// An automorphism is ergodic iff no root of unity is an eigenvalue of its
/// dual matrix.
pub fn is_ergodic_auto(m: &RatMatrix) -> ErgodicityCheck {
    let witness = root_of_unity_eigenvalue(m);
    ErgodicityCheck {
        ergodic: witness.is_none(),
        root_of_unity_order: witness,
    }
}

/// An automorphism is distal iff its dual matrix is quasi-unipotent.
pub fn is_distal_auto(m: &RatMatrix) -> DistalityCheck {
    let exponent = is_quasi_unipotent(m);
    DistalityCheck {
        distal: exponent.is_some(),
        unipotence_exponent: exponent,
    }
}

/// The subspace of characters with finite forward-backward orbit under m,
/// computed in closed form as ker(m^M - I): a finite cyclic orbit forces the
/// minimal polynomial on the orbit span to divide x^M - 1, and conversely.
pub fn finite_orbit_subspace_auto(m: &RatMatrix) -> Subspace {
    let r = m.dim();
    let shifted = &m.pow(exponent_m(r)) - &RatMatrix::identity(r);
    kernel(&shifted)
}

/// Ascending chain V_1 <= V_2 <= ... of invariant subspaces: V_1 the
/// finite-orbit characters of m, V_{i+1} the preimage in Q^r of the
/// finite-orbit characters of the induced action on Q^r/V_i. The chain
/// stabilizes at the maximal subspace on which m is quasi-unipotent; the
/// quotient beyond it carries the ergodic part.
pub fn ergodic_distal_split(m: &RatMatrix) -> SplitReport {
    let r = m.dim();
    let mut chain = vec![finite_orbit_subspace_auto(m)];
    loop {
        let current = chain.last().unwrap();
        if current.dim() == r {
            break;
        }
        let induced = quotient_action(m, current)
            .expect("split chain subspaces are invariant by construction");
        let w = finite_orbit_subspace_auto(&induced);
        if w.is_zero() {
            break;
        }
        let next = current.pullback(&w);
        chain.push(next);
    }
    let ergodic_part_dim = r - chain.last().unwrap().dim();
    SplitReport {
        chain,
        ergodic_part_dim,
    }
}

/// Ergodicity of the action restricted to an invariant subspace of the
/// dual. An ergodic automorphism stays ergodic on every invariant dual
/// subspace and on every dual quotient, since its spectrum splits across
/// them without gaining roots of unity.
pub fn is_ergodic_on_subspace(
    m: &RatMatrix,
    v: &Subspace,
) -> Result<ErgodicityCheck, crate::subspace::SubspaceError> {
    let restricted = crate::subspace::restrict_action(m, v)?;
    Ok(is_ergodic_auto(&restricted))
}

/// Torus-mode validation: an integer matrix with determinant +-1 is
/// simultaneously an automorphism of T^r and its own lift to B_r, so all
/// verdicts coincide across the two modes.
pub fn torus_validate(m: &RatMatrix) -> bool {
    m.is_unimodular_integer()
}

/// Combined verdict for one automorphism.
pub fn analyze_auto(m: &RatMatrix) -> AutoVerdict {
    let erg = is_ergodic_auto(m);
    let dis = is_distal_auto(m);
    AutoVerdict {
        ergodic: erg.ergodic,
        distal: dis.distal,
        root_of_unity_witness: erg.root_of_unity_order,
        unipotence_exponent: dis.unipotence_exponent,
        split: ergodic_distal_split(m),
    }
}
