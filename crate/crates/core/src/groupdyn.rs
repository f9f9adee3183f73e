//! Finitely generated automorphism groups.
//!
//! A group is presented by explicit invertible rational matrices. The
//! central object is the finite-orbit character subspace W: the largest
//! invariant subspace on which the group's image is finite, equivalently the
//! set of all characters with finite group orbit. W is zero exactly when the
//! action is ergodic, and iterating the W construction along quotients
//! produces the distal structure series with per-layer finite images.
//!
//! Orbit and closure enumerations are breadth-first with deterministic
//! order (generators in index order, inverses after), so reported witnesses
//! are shortest-word first. Closure caps come from Minkowski's bound: a
//! finite subgroup of GL(r, Q) has order dividing B(r), so a closure that
//! grows past B(r) is certifiably infinite, and a finitely generated torsion
//! linear group over Q is finite (Schur), so an infinite image always
//! contains an element of infinite order for the search to find.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::autdyn::finite_orbit_subspace_auto;
use crate::cyclo::{exponent_m, minkowski_bound};
use crate::matrix::{QVec, RatMatrix};
use crate::rat::Rat;
use crate::subspace::{invariant_core, kernel, quotient_action, restrict_action, Subspace};

/// Hard safety limit on internal breadth-first closures. Reaching it means a
/// mathematical guarantee (Schur / Minkowski) was violated, i.e. a bug.
const BFS_SAFETY_CAP: usize = 1_000_000;

/// Which dual lattice the input lives on: Z^r (torus automorphisms, integer
/// unimodular matrices) or Q^r (solenoid automorphisms, any invertible
/// rational matrices). Torus mode only adds input validation; all verdicts
/// share one code path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Torus,
    Solenoid,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Torus => write!(f, "torus"),
            Mode::Solenoid => write!(f, "solenoid"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenSetError {
    #[error("generator list is empty")]
    Empty,
    #[error("ambient dimension must be at least 1")]
    ZeroDim,
    #[error("generator {index} has dimension {found}, expected {expected}")]
    DimMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("generator {index} is not an integer matrix of determinant +-1 (torus mode)")]
    TorusInvalid { index: usize },
    #[error("label count does not match generator count")]
    LabelCount,
}

/// A finitely generated group of automorphisms, presented by the dual
/// matrices of its generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    dim: usize,
    mode: Mode,
    gens: Vec<RatMatrix>,
    labels: Option<Vec<String>>,
}

impl GenSet {
    pub fn new(
        mode: Mode,
        gens: Vec<RatMatrix>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GenSetError> {
        let Some(first) = gens.first() else {
            return Err(GenSetError::Empty);
        };
        let dim = first.dim();
        if dim == 0 {
            return Err(GenSetError::ZeroDim);
        }
        for (index, g) in gens.iter().enumerate() {
            if g.dim() != dim {
                return Err(GenSetError::DimMismatch {
                    index,
                    found: g.dim(),
                    expected: dim,
                });
            }
            if !g.is_invertible() {
                return Err(GenSetError::NotInvertible { index });
            }
            if mode == Mode::Torus && !g.is_unimodular_integer() {
                return Err(GenSetError::TorusInvalid { index });
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != gens.len() {
                return Err(GenSetError::LabelCount);
            }
        }
        Ok(GenSet {
            dim,
            mode,
            gens,
            labels,
        })
    }

    pub fn solenoid(gens: Vec<RatMatrix>) -> Result<Self, GenSetError> {
        Self::new(Mode::Solenoid, gens, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn gens(&self) -> &[RatMatrix] {
        &self.gens
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, index: usize) -> String {
        match &self.labels {
            Some(ls) => ls[index].clone(),
            None => format!("g{}", index + 1),
        }
    }

    pub fn inverses(&self) -> Vec<RatMatrix> {
        self.gens
            .iter()
            .map(|g| g.inverse().expect("generators are validated invertible"))
            .collect()
    }

    /// Same generators with the other mode's validation skipped; internal
    /// quotient and restriction constructions always use solenoid mode.
    pub(crate) fn internal(gens: Vec<RatMatrix>) -> Self {
        GenSet::new(Mode::Solenoid, gens, None).expect("internal generator sets are valid")
    }
}

/// A group element named by a word in the generators: signed 1-based letters
/// (negative for inverses) together with the evaluated matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<i64>,
    matrix: RatMatrix,
}

impl Word {
    pub fn identity(dim: usize) -> Self {
        Word {
            letters: vec![],
            matrix: RatMatrix::identity(dim),
        }
    }

    pub fn generator(index: usize, g: &GenSet) -> Self {
        Word {
            letters: vec![index as i64 + 1],
            matrix: g.gens()[index].clone(),
        }
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Evaluate a letter sequence over an arbitrary generator list (used to
    /// push words into restricted or quotient actions, where evaluation is a
    /// homomorphism because the subspace is invariant).
    pub fn eval(letters: &[i64], gens: &[RatMatrix]) -> RatMatrix {
        let dim = gens.first().map_or(0, |g| g.dim());
        let mut inverses: Vec<Option<RatMatrix>> = vec![None; gens.len()];
        let mut acc = RatMatrix::identity(dim);
        for &l in letters {
            debug_assert!(l != 0);
            let idx = (l.unsigned_abs() as usize) - 1;
            if l > 0 {
                acc = &acc * &gens[idx];
            } else {
                let inv = inverses[idx]
                    .get_or_insert_with(|| gens[idx].inverse().expect("invertible generator"));
                acc = &acc * inv;
            }
        }
        acc
    }

    pub fn from_letters(letters: Vec<i64>, g: &GenSet) -> Self {
        let matrix = Word::eval(&letters, g.gens());
        Word { letters, matrix }
    }

    /// Assemble a word from parts already known consistent (the matrix must
    /// be the evaluation of the letters over the generator list in use).
    pub(crate) fn from_parts(letters: Vec<i64>, matrix: RatMatrix) -> Self {
        Word { letters, matrix }
    }

    pub fn inverse_letters(letters: &[i64]) -> Vec<i64> {
        letters.iter().rev().map(|&l| -l).collect()
    }

    /// Human-readable form, e.g. `g1*g2^-1`; `id` for the empty word.
    pub fn display(&self, g: Option<&GenSet>) -> String {
        if self.letters.is_empty() {
            return "id".to_string();
        }
        self.letters
            .iter()
            .map(|&l| {
                let idx = (l.unsigned_abs() as usize) - 1;
                let name = match g {
                    Some(gs) => gs.label(idx),
                    None => format!("g{}", idx + 1),
                };
                if l > 0 {
                    name
                } else {
                    format!("{}^-1", name)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(None))
    }
}

/// Breadth-first closure over reduced words in the given items and their
/// inverses, deduplicated by evaluated matrix, identity first. Items carry
/// their own ambient letter sequences so composed words stay expressed in
/// the original generators.
pub(crate) fn bfs_products(
    dim: usize,
    items: &[(Vec<i64>, RatMatrix)],
    max_len: usize,
) -> Vec<(Vec<i64>, RatMatrix)> {
    let inverses: Vec<(Vec<i64>, RatMatrix)> = items
        .iter()
        .map(|(ls, m)| {
            (
                Word::inverse_letters(ls),
                m.inverse().expect("invertible item"),
            )
        })
        .collect();
    let mut seen: HashSet<RatMatrix> = HashSet::new();
    let mut out: Vec<(Vec<i64>, RatMatrix)> = Vec::new();
    // Queue entries: (letters, matrix, item-steps used, last signed item or 0).
    let mut queue: VecDeque<(Vec<i64>, RatMatrix, usize, i64)> = VecDeque::new();
    let identity = RatMatrix::identity(dim);
    seen.insert(identity.clone());
    out.push((vec![], identity.clone()));
    queue.push_back((vec![], identity, 0, 0));
    while let Some((letters, matrix, steps, last)) = queue.pop_front() {
        if steps == max_len {
            continue;
        }
        for (k, (ils, im)) in items.iter().chain(inverses.iter()).enumerate() {
            let signed = if k < items.len() {
                k as i64 + 1
            } else {
                -((k - items.len()) as i64 + 1)
            };
            if signed == -last {
                continue; // free reduction: never undo the previous step
            }
            let m2 = &matrix * im;
            if seen.contains(&m2) {
                continue;
            }
            let mut l2 = letters.clone();
            l2.extend_from_slice(ils);
            seen.insert(m2.clone());
            out.push((l2.clone(), m2.clone()));
            queue.push_back((l2, m2, steps + 1, signed));
        }
    }
    out
}

/// Breadth-first enumeration of distinct group elements as words of length
/// at most `max_len`, identity first, shortest word (then letter order)
/// winning ties.
pub fn element_enumerate(g: &GenSet, max_len: usize) -> Vec<Word> {
    let items: Vec<(Vec<i64>, RatMatrix)> = g
        .gens()
        .iter()
        .enumerate()
        .map(|(i, m)| (vec![i as i64 + 1], m.clone()))
        .collect();
    bfs_products(g.dim(), &items, max_len)
        .into_iter()
        .map(|(letters, matrix)| Word { letters, matrix })
        .collect()
}

/// Result of a character-orbit enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitResult {
    /// The full orbit, in breadth-first discovery order.
    FiniteOrbit(Vec<QVec>),
    /// The closure exceeded the cap. With the default cap B(r) this proves
    /// the orbit infinite, since a finite orbit spans an invariant subspace
    /// on which the group image is a finite subgroup of GL(<=r, Q).
    Exceeded,
}

/// Breadth-first closure of {v} under the generators and their inverses.
/// `cap` defaults to Minkowski's bound B(r).
pub fn vector_orbit(g: &GenSet, v: &QVec, cap: Option<usize>) -> OrbitResult {
    assert_eq!(v.dim(), g.dim(), "character dimension mismatch");
    let cap = cap.unwrap_or(minkowski_bound(g.dim()) as usize);
    assert!(cap >= 1);
    let inverses = g.inverses();
    let mut seen: HashSet<QVec> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(v.clone());
    out.push(v.clone());
    queue.push_back(v.clone());
    while let Some(x) = queue.pop_front() {
        for m in g.gens().iter().chain(inverses.iter()) {
            let y = m.apply(&x);
            if seen.insert(y.clone()) {
                if out.len() + 1 > cap {
                    return OrbitResult::Exceeded;
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    OrbitResult::FiniteOrbit(out)
}

/// Whether the image of the group on an invariant subspace is finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupImage {
    /// Every element of the image, as matrices restricted to the subspace.
    Finite(Vec<RatMatrix>),
    /// A word of infinite order on the subspace: (w^M - I) != 0 there.
    Infinite(Word),
}

/// Decide finiteness of the group image on an invariant subspace by
/// breadth-first closure of the restricted matrices. Elements of finite
/// order in GL(k, Q) satisfy m^M(k) = I, so any element failing that test
/// certifies an infinite image immediately; otherwise the closure either
/// completes (finite image, order at most B(k) by Minkowski) or eventually
/// reaches an infinite-order element, which exists by Schur's theorem.
///
/// Panics if `s` is not invariant under some generator.
pub fn group_image_finite_on(g: &GenSet, s: &Subspace) -> GroupImage {
    if s.is_zero() {
        return GroupImage::Finite(vec![RatMatrix::identity(0)]);
    }
    let restricted: Vec<RatMatrix> = g
        .gens()
        .iter()
        .map(|m| restrict_action(m, s).expect("subspace must be invariant under all generators"))
        .collect();
    let k = s.dim();
    let big_m = exponent_m(k);
    let inverses: Vec<RatMatrix> = restricted
        .iter()
        .map(|m| {
            m.inverse()
                .expect("restriction of invertible is invertible")
        })
        .collect();
    let mut seen: HashSet<RatMatrix> = HashSet::new();
    let mut out = Vec::new();
    // Track the shortest word reaching each element for witness extraction.
    let mut queue: VecDeque<(Vec<i64>, RatMatrix, i64)> = VecDeque::new();
    let identity = RatMatrix::identity(k);
    seen.insert(identity.clone());
    out.push(identity.clone());
    queue.push_back((vec![], identity, 0));
    while let Some((letters, matrix, last)) = queue.pop_front() {
        for (idx, m) in restricted.iter().chain(inverses.iter()).enumerate() {
            let signed = if idx < restricted.len() {
                idx as i64 + 1
            } else {
                -((idx - restricted.len()) as i64 + 1)
            };
            if signed == -last {
                continue;
            }
            let m2 = &matrix * m;
            if seen.contains(&m2) {
                continue;
            }
            let mut l2 = letters.clone();
            l2.push(signed);
            if !m2.pow(big_m).is_identity() {
                let ambient = Word::eval(&l2, g.gens());
                return GroupImage::Infinite(Word {
                    letters: l2,
                    matrix: ambient,
                });
            }
            seen.insert(m2.clone());
            out.push(m2.clone());
            assert!(
                out.len() <= BFS_SAFETY_CAP,
                "group closure exceeded safety cap"
            );
            queue.push_back((l2, m2, signed));
        }
    }
    GroupImage::Finite(out)
}

/// The finite-orbit character subspace W with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WReport {
    /// Largest invariant subspace on which the group image is finite;
    /// equivalently the set of all characters with finite group orbit.
    pub subspace: Subspace,
    /// The full (finite) image of the group restricted to W.
    pub image: Vec<RatMatrix>,
    /// Infinite-order words that forced refinement cuts along the way.
    pub refinement_witnesses: Vec<Word>,
}

/// Compute W = the largest invariant subspace carrying a finite group image.
///
/// Start from the intersection of ker(g^M - I) over the generators (every
/// finite-orbit character lies in each kernel, since a finite cyclic orbit
/// is annihilated by the universal exponent), shrink to the invariant core,
/// then repeatedly test finiteness of the image; an infinite-order witness w
/// cuts the space down to ker(w^M - I) restricted, which every finite-orbit
/// character also survives. Each cut strictly drops the dimension, so the
/// loop terminates, and on termination the image is finite, so the result
/// is exactly W.
pub fn finite_orbit_subspace_group(g: &GenSet) -> WReport {
    let r = g.dim();
    let big_m = exponent_m(r);
    let identity = RatMatrix::identity(r);
    let mut seed = Subspace::full(r);
    for gen in g.gens() {
        seed = seed.intersect(&kernel(&(&gen.pow(big_m) - &identity)));
    }
    let mut current = invariant_core(&seed, g.gens());
    let mut refinement_witnesses = Vec::new();
    loop {
        match group_image_finite_on(g, &current) {
            GroupImage::Finite(image) => {
                return WReport {
                    subspace: current,
                    image,
                    refinement_witnesses,
                };
            }
            GroupImage::Infinite(witness) => {
                let restricted = restrict_action(witness.matrix(), &current)
                    .expect("witness preserves the invariant subspace");
                let k = current.dim();
                let cut = kernel(&(&restricted.pow(exponent_m(k)) - &RatMatrix::identity(k)));
                let lifted = Subspace::from_rows(
                    r,
                    cut.basis()
                        .iter()
                        .map(|c| current.from_basis_coords(c))
                        .collect(),
                );
                debug_assert!(lifted.dim() < current.dim());
                current = invariant_core(&lifted, g.gens());
                refinement_witnesses.push(witness);
            }
        }
    }
}

/// A nonzero finite-orbit character with its full orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrbitWitness {
    pub chi: QVec,
    pub orbit: Vec<QVec>,
}

/// Ergodicity of the group action, with a finite-orbit character as witness
/// on the negative side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErgodicGroupCheck {
    pub ergodic: bool,
    pub witness: Option<FiniteOrbitWitness>,
}

/// The action is ergodic iff W = 0; otherwise any nonzero character of W has
/// a finite orbit, reported in full.
pub fn is_ergodic_group(g: &GenSet) -> ErgodicGroupCheck {
    let w = finite_orbit_subspace_group(g);
    if w.subspace.is_zero() {
        return ErgodicGroupCheck {
            ergodic: true,
            witness: None,
        };
    }
    let chi = w.subspace.basis()[0].clone();
    let orbit = match vector_orbit(g, &chi, None) {
        OrbitResult::FiniteOrbit(orbit) => orbit,
        OrbitResult::Exceeded => unreachable!("characters of W have orbits bounded by B(r)"),
    };
    ErgodicGroupCheck {
        ergodic: false,
        witness: Some(FiniteOrbitWitness { chi, orbit }),
    }
}

/// Per-layer certificate in the distal structure series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayerCertificate {
    /// The layer action S_{i+1}/S_i has this finite image.
    FiniteAction { order: usize, image: Vec<RatMatrix> },
    /// The series stalled: the quotient by the last chain term is nonzero
    /// but has W = 0, i.e. it carries an ergodic action of the group.
    Stalled { quotient_gens: Vec<RatMatrix> },
}

/// Ascending invariant subspace chain 0 = S_0 < S_1 < ... with layer
/// certificates. The dual descending chain of closed connected subgroups of
/// B_r has finite group action on each successive quotient; the action is
/// distal exactly when the chain reaches the full space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub chain: Vec<Subspace>,
    pub layers: Vec<LayerCertificate>,
    pub distal: bool,
}

/// Certificates attached to a group verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupCertificate {
    /// Non-ergodicity: a character with finite orbit.
    FiniteOrbit(FiniteOrbitWitness),
    /// Distality: every generator's E-th power is unipotent, making the
    /// group a finite extension of a unipotent group.
    VirtualUnipotence { exponent: u64 },
    /// Non-distality: the stalled quotient carries an ergodic action.
    ErgodicQuotient { dim: usize },
}

/// Group-level verdict with certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupVerdict {
    pub ergodic: bool,
    pub distal: bool,
    /// The finite-orbit character subspace of the full action.
    pub w: Subspace,
    pub series: SeriesReport,
    pub certificates: Vec<GroupCertificate>,
}

/// Build the distal structure series: S_1 = W(Q^r), and S_{i+1} the preimage
/// of W of the induced action on Q^r/S_i. Distal iff the chain reaches Q^r;
/// a stalled nonzero quotient with W = 0 certifies non-distality (the dual
/// invariant subgroup carries an ergodic action).
pub fn distal_series_group(g: &GenSet) -> GroupVerdict {
    let r = g.dim();
    let mut chain = vec![Subspace::zero(r)];
    let mut layers = Vec::new();
    let mut first_w: Option<Subspace> = None;
    let mut distal = false;
    let mut stalled_dim = 0usize;
    loop {
        let current = chain.last().unwrap().clone();
        if current.is_full() {
            distal = true;
            break;
        }
        let quotient_gens: Vec<RatMatrix> = g
            .gens()
            .iter()
            .map(|m| quotient_action(m, &current).expect("chain subspaces are invariant"))
            .collect();
        let quotient_set = GenSet::internal(quotient_gens.clone());
        let wrep = finite_orbit_subspace_group(&quotient_set);
        if first_w.is_none() {
            first_w = Some(wrep.subspace.clone());
        }
        if wrep.subspace.is_zero() {
            stalled_dim = r - current.dim();
            layers.push(LayerCertificate::Stalled { quotient_gens });
            break;
        }
        layers.push(LayerCertificate::FiniteAction {
            order: wrep.image.len(),
            image: wrep.image,
        });
        chain.push(current.pullback(&wrep.subspace));
    }
    let w = first_w.expect("dimension >= 1 guarantees at least one series step");
    let ergodic = w.is_zero();
    let mut certificates = Vec::new();
    if !ergodic {
        let chi = w.basis()[0].clone();
        if let OrbitResult::FiniteOrbit(orbit) = vector_orbit(g, &chi, None) {
            certificates.push(GroupCertificate::FiniteOrbit(FiniteOrbitWitness {
                chi,
                orbit,
            }));
        }
    }
    if distal {
        let exponent = exponent_m(r);
        debug_assert!(g
            .gens()
            .iter()
            .all(|m| crate::cyclo::is_quasi_unipotent(m).is_some()));
        certificates.push(GroupCertificate::VirtualUnipotence { exponent });
    } else {
        certificates.push(GroupCertificate::ErgodicQuotient { dim: stalled_dim });
    }
    GroupVerdict {
        ergodic,
        distal,
        w,
        series: SeriesReport {
            chain,
            layers,
            distal,
        },
        certificates,
    }
}

/// Lower central series data: `levels[i]` holds the nontrivial left-normed
/// commutator words of weight i+1 in the generators, which generate the
/// (i+1)-st term of the series modulo deeper terms.
#[derive(Debug, Clone)]
pub struct LowerCentralSeries {
    pub class: usize,
    pub levels: Vec<Vec<Word>>,
}

/// Witness of a nonvanishing deep commutator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("group not nilpotent within class cap {class_cap}: commutator {} is nontrivial", witness.display(None))]
pub struct NotNilpotentWitness {
    pub witness: Word,
    pub class_cap: usize,
}

fn commutator(a: &Word, b: &Word) -> Word {
    let a_inv = a.matrix.inverse().expect("invertible");
    let b_inv = b.matrix.inverse().expect("invertible");
    let matrix = &(&(&a_inv * &b_inv) * &a.matrix) * &b.matrix;
    let mut letters = Word::inverse_letters(&a.letters);
    letters.extend(Word::inverse_letters(&b.letters));
    letters.extend_from_slice(&a.letters);
    letters.extend_from_slice(&b.letters);
    Word { letters, matrix }
}

/// Verify nilpotency by left-normed commutator collection: a group whose
/// left-normed generator commutators of weight c+1 all vanish is nilpotent
/// of class at most c. Returns the generating words of each lower central
/// level, or a nonvanishing commutator of weight class_cap + 1.
pub fn verify_nilpotent(
    g: &GenSet,
    class_cap: usize,
) -> Result<LowerCentralSeries, NotNilpotentWitness> {
    assert!(class_cap >= 1);
    let gen_words: Vec<Word> = (0..g.gens().len()).map(|i| Word::generator(i, g)).collect();
    let mut levels = vec![gen_words.clone()];
    for weight in 2..=class_cap + 1 {
        let mut seen: HashSet<RatMatrix> = HashSet::new();
        let mut next = Vec::new();
        for c in levels.last().unwrap() {
            for gw in &gen_words {
                let w = commutator(c, gw);
                if w.matrix.is_identity() {
                    continue;
                }
                if seen.insert(w.matrix.clone()) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return Ok(LowerCentralSeries {
                class: weight - 1,
                levels,
            });
        }
        if weight == class_cap + 1 {
            return Err(NotNilpotentWitness {
                witness: next.swap_remove(0),
                class_cap,
            });
        }
        levels.push(next);
    }
    unreachable!("loop returns before exhausting the cap")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    /// a(W) != W, or the combined orbit failed to close: the necessary
    /// condition for a to normalize the group fails.
    #[error("the extra automorphism does not preserve the finite-orbit subspace")]
    NormalizationSuspect,
    /// No nonzero character of W has finite orbit under the extra
    /// automorphism (in particular W may be zero).
    #[error("no character of W has a finite orbit under the extra automorphism")]
    NoFiniteAlphaOrbit,
}

/// A character whose orbit stays finite after adjoining one automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedWitness {
    pub chi: QVec,
    /// Period k with a^k(chi) = chi; divides the universal exponent.
    pub alpha_period: u64,
    /// The full orbit of chi under the group generated by the generators
    /// and the extra automorphism.
    pub orbit: Vec<QVec>,
}

/// Extend a non-ergodicity witness across one normalizing automorphism:
/// given a non-ergodic group and an automorphism a with a(W) = W whose
/// restriction to W fixes some character up to finite order, produce a
/// character whose orbit under the enlarged group is still finite, so the
/// enlarged group is not ergodic either.
pub fn extend_nonergodic_witness(
    g: &GenSet,
    a: &RatMatrix,
) -> Result<ExtendedWitness, WitnessError> {
    assert_eq!(a.dim(), g.dim());
    assert!(
        a.is_invertible(),
        "the extra automorphism must be invertible"
    );
    let wrep = finite_orbit_subspace_group(g);
    let w = &wrep.subspace;
    if w.is_zero() {
        return Err(WitnessError::NoFiniteAlphaOrbit);
    }
    if !w.is_invariant_under(a) {
        return Err(WitnessError::NormalizationSuspect);
    }
    let a_on_w = restrict_action(a, w).expect("checked invariant");
    let fixed = finite_orbit_subspace_auto(&a_on_w);
    if fixed.is_zero() {
        return Err(WitnessError::NoFiniteAlphaOrbit);
    }
    let chi = w.from_basis_coords(&fixed.basis()[0]);
    // chi is fixed by a^M, so its a-period divides M.
    let mut alpha_period = 1u64;
    let mut x = a.apply(&chi);
    while x != chi {
        x = a.apply(&x);
        alpha_period += 1;
    }
    let r = g.dim();
    let mut combined = g.gens().to_vec();
    combined.push(a.clone());
    let combined_set = GenSet::internal(combined);
    // A closing orbit is covered by alpha_period many group orbits inside W,
    // each of size at most B(r).
    let cap = (minkowski_bound(r).saturating_mul(exponent_m(r))) as usize;
    match vector_orbit(&combined_set, &chi, Some(cap.max(1))) {
        OrbitResult::FiniteOrbit(orbit) => Ok(ExtendedWitness {
            chi,
            alpha_period,
            orbit,
        }),
        OrbitResult::Exceeded => Err(WitnessError::NormalizationSuspect),
    }
}

/// Result of the reducibility probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeResult {
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
    /// No proper invariant subspace found by spinning; one-sided evidence of
    /// irreducibility, not a proof.
    NoneFound,
}

/// Smallest invariant subspace containing v: iterate S <- S + sum_g g(S)
/// until stable. Containment of all forward images forces equality for
/// invertible generators, so the result is group-invariant.
pub fn spin(g: &GenSet, v: &QVec) -> Subspace {
    let mut current = Subspace::span_of(v);
    loop {
        let mut next = current.clone();
        for m in g.gens() {
            next = next.sum(&current.map(m));
        }
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

fn pseudo_random_vectors(dim: usize, count: usize) -> Vec<QVec> {
    // Deterministic xorshift stream so probe reports are reproducible.
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    (0..count)
        .map(|_| {
            QVec::new(
                (0..dim)
                    .map(|_| {
                        let numer = (next() % 7) as i64 - 3;
                        let denom = (next() % 3) as i64 + 1;
                        Rat::new(numer.into(), denom.into())
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Probe for a proper invariant subspace by spinning the standard basis
/// vectors and `trials` deterministic pseudo-random rational vectors.
pub fn probe_irreducible(g: &GenSet, trials: usize) -> ProbeResult {
    let r = g.dim();
    let mut candidates: Vec<QVec> = (0..r).map(|i| QVec::unit(r, i)).collect();
    candidates.extend(pseudo_random_vectors(r, trials));
    for v in &candidates {
        if v.is_zero() {
            continue;
        }
        let s = spin(g, v);
        if !s.is_zero() && !s.is_full() {
            return ProbeResult::Reducible(s);
        }
    }
    ProbeResult::NoneFound
}
