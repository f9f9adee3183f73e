//! Shared helpers for the integration test suites: a deterministic PRNG,
//! matrix samplers, and independent oracles kept deliberately separate from
//! the library's own computation paths.

#![allow(dead_code, clippy::needless_range_loop)]

use soldyn_core::matrix::{QVec, RatMatrix};
use soldyn_core::poly::Polynomial;
use soldyn_core::rat::{rat_int, Rat};

/// SplitMix64: tiny, seedable, reproducible forever.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform integer in the inclusive range [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

pub fn int_matrix(rng: &mut SplitMix64, r: usize, lo: i64, hi: i64) -> RatMatrix {
    let raw: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..r).map(|_| rng.int_in(lo, hi)).collect())
        .collect();
    RatMatrix::from_fn(r, |i, j| rat_int(raw[i][j]))
}

pub fn invertible_int_matrix(rng: &mut SplitMix64, r: usize, lo: i64, hi: i64) -> RatMatrix {
    loop {
        let m = int_matrix(rng, r, lo, hi);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn invertible_rat_matrix(rng: &mut SplitMix64, r: usize) -> RatMatrix {
    loop {
        let m = RatMatrix::from_fn(r, |_, _| {
            Rat::new(rng.int_in(-3, 3).into(), rng.int_in(1, 2).into())
        });
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random element of GL(r, Z) as a product of elementary row operations
/// applied to the identity (transvections plus occasional signed swaps).
pub fn unimodular_matrix(rng: &mut SplitMix64, r: usize, steps: usize) -> RatMatrix {
    let mut rows: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..steps {
        let i = rng.int_in(0, r as i64 - 1) as usize;
        let mut j = rng.int_in(0, r as i64 - 1) as usize;
        if i == j {
            j = (j + 1) % r;
        }
        match rng.int_in(0, 3) {
            0 | 1 => {
                let k = rng.int_in(-1, 1);
                for c in 0..r {
                    rows[j][c] += k * rows[i][c];
                }
            }
            2 => {
                rows.swap(i, j);
                for c in 0..r {
                    rows[i][c] = -rows[i][c];
                }
            }
            _ => {
                for c in 0..r {
                    rows[i][c] = -rows[i][c];
                }
            }
        }
    }
    let m = RatMatrix::from_fn(r, |i, j| rat_int(rows[i][j]));
    debug_assert!(m.is_unimodular_integer());
    m
}

/// All nonzero integer vectors with coordinates bounded by `height`.
pub fn integer_vectors(r: usize, height: i64) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let n = (2 * height + 1) as usize;
    let total = n.pow(r as u32);
    for idx in 0..total {
        let mut rem = idx;
        let mut coords = Vec::with_capacity(r);
        for _ in 0..r {
            coords.push((rem % n) as i128 - height as i128);
            rem /= n;
        }
        if coords.iter().any(|&c| c != 0) {
            out.push(coords);
        }
    }
    out
}

fn apply_i128(rows: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(&a, &b)| a.checked_mul(b).unwrap())
                .sum()
        })
        .collect()
}

fn integer_rows(m: &RatMatrix) -> Vec<Vec<i128>> {
    let r = m.dim();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let e = m.entry(i, j);
                    assert!(e.is_integer());
                    let s: String = e.numer().to_string();
                    s.parse::<i128>().expect("entry fits i128")
                })
                .collect()
        })
        .collect()
}

/// Brute-force ergodicity oracle: no nonzero integer character with
/// coordinates bounded by `height` has an orbit closing within `steps`
/// applications of the matrix. Exact machine-integer arithmetic; growth is
/// bounded by (r * max|entry|)^steps * height, checked on overflow.
pub fn brute_force_ergodic(m: &RatMatrix, height: i64, steps: u64) -> bool {
    let rows = integer_rows(m);
    for v in integer_vectors(m.dim(), height) {
        let mut x = apply_i128(&rows, &v);
        for _ in 0..steps {
            if x == v {
                return false;
            }
            x = apply_i128(&rows, &x);
        }
    }
    true
}

fn poly_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Polynomial::zero();
    for (j, top) in m[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let term = &poly_det(&minor) * top;
        det = if j % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
    }
    det
}

/// Characteristic polynomial by cofactor expansion of det(xI - m);
/// an independent oracle for the Faddeev-LeVerrier implementation.
pub fn cofactor_charpoly(m: &RatMatrix) -> Polynomial {
    let n = m.dim();
    let x = Polynomial::from_i64_coeffs(&[0, 1]);
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Polynomial::from_coeffs(vec![m.entry(i, j).clone()]);
                    if i == j {
                        &x - &c
                    } else {
                        &Polynomial::zero() - &c
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

/// Integer power of a matrix, inverting first for negative exponents.
pub fn signed_pow(m: &RatMatrix, e: i64) -> RatMatrix {
    if e >= 0 {
        m.pow(e as u64)
    } else {
        m.inverse().expect("invertible").pow((-e) as u64)
    }
}

pub fn qvec(coords: &[i64]) -> QVec {
    QVec::from_i64(coords)
}
