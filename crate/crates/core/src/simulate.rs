//! Floating-point torus-orbit statistics.
//!
//! Heuristic cross-checks of the exact verdicts, clearly labeled as such:
//! an ergodic automorphism should equidistribute orbits (low discrepancy
//! over a fixed dyadic grid), a distal one should keep orbits away from
//! zero. Double precision with mod-1 wraparound is shadow-accurate only
//! statistically for hyperbolic maps, which is all these statistics need.
//! Never a verdict source.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::autdyn::torus_validate;
use crate::matrix::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulateError {
    #[error("matrix is not an integer unimodular torus automorphism")]
    NotTorusAutomorphism,
    #[error("at least one iteration is required")]
    ZeroIterations,
    #[error("start point has dimension {found}, expected {expected}")]
    StartDim { found: usize, expected: usize },
    #[error("dimension {0} too large for the dyadic discrepancy grid")]
    DimensionTooLarge(usize),
}

/// Orbit statistics over one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitStats {
    pub iterations: u64,
    /// Minimum toral distance from the orbit (including the start point) to
    /// zero; lies in [0, sqrt(r)/2].
    pub min_dist_to_zero: f64,
    /// Max deviation of empirical cell frequencies from uniform over the
    /// fixed dyadic grid with 2 cells per axis (2^r cells total).
    pub discrepancy: f64,
}

/// A run with optionally recorded orbit points.
#[derive(Debug, Clone)]
pub struct OrbitRun {
    pub start: Vec<f64>,
    pub stats: OrbitStats,
    pub points: Option<Vec<Vec<f64>>>,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn unit_double(state: &mut u64) -> f64 {
    (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

fn toral_dist_to_zero(x: &[f64]) -> f64 {
    x.iter()
        .map(|&c| {
            let f = frac(c);
            f.min(1.0 - f)
        })
        .map(|d| d * d)
        .sum::<f64>()
        .sqrt()
}

fn cell_index(x: &[f64]) -> usize {
    x.iter()
        .enumerate()
        .map(|(i, &c)| usize::from(frac(c) >= 0.5) << i)
        .sum()
}

/// Iterate x -> m x mod 1 in double precision and report statistics.
/// Deterministic given the seed, which is consulted only when no start
/// point is supplied.
pub fn torus_orbit_run(
    m: &RatMatrix,
    start: Option<&[f64]>,
    iters: u64,
    seed: u64,
    record_points: bool,
) -> Result<OrbitRun, SimulateError> {
    if !torus_validate(m) {
        return Err(SimulateError::NotTorusAutomorphism);
    }
    if iters == 0 {
        return Err(SimulateError::ZeroIterations);
    }
    let r = m.dim();
    if r > 20 {
        return Err(SimulateError::DimensionTooLarge(r));
    }
    let x0: Vec<f64> = match start {
        Some(x) => {
            if x.len() != r {
                return Err(SimulateError::StartDim {
                    found: x.len(),
                    expected: r,
                });
            }
            x.iter().map(|&c| frac(c)).collect()
        }
        None => {
            let mut state = seed;
            (0..r).map(|_| unit_double(&mut state)).collect()
        }
    };
    let entries: Vec<Vec<f64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| m.entry(i, j).to_f64().expect("integer entry"))
                .collect()
        })
        .collect();
    let mut counts = vec![0u64; 1usize << r];
    let mut x = x0.clone();
    let mut min_dist = toral_dist_to_zero(&x);
    let mut points = record_points.then(|| {
        let mut v = Vec::with_capacity(iters as usize + 1);
        v.push(x.clone());
        v
    });
    for _ in 0..iters {
        let next: Vec<f64> = (0..r)
            .map(|i| frac((0..r).map(|j| entries[i][j] * x[j]).sum()))
            .collect();
        x = next;
        min_dist = min_dist.min(toral_dist_to_zero(&x));
        counts[cell_index(&x)] += 1;
        if let Some(p) = points.as_mut() {
            p.push(x.clone());
        }
    }
    let uniform = 1.0 / (1usize << r) as f64;
    let discrepancy = counts
        .iter()
        .map(|&c| (c as f64 / iters as f64 - uniform).abs())
        .fold(0.0, f64::max);
    Ok(OrbitRun {
        start: x0,
        stats: OrbitStats {
            iterations: iters,
            min_dist_to_zero: min_dist,
            discrepancy,
        },
        points,
    })
}

/// Statistics-only convenience wrapper.
pub fn torus_orbit_stats(
    m: &RatMatrix,
    start: Option<&[f64]>,
    iters: u64,
    seed: u64,
) -> Result<OrbitStats, SimulateError> {
    torus_orbit_run(m, start, iters, seed, false).map(|run| run.stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{golden_mean, tower_alpha};

    #[test]
    fn identity_orbit_is_a_point() {
        let stats = torus_orbit_stats(&RatMatrix::identity(2), Some(&[0.1, 0.2]), 100, 0).unwrap();
        let expected = (0.01f64 + 0.04).sqrt();
        assert!((stats.min_dist_to_zero - expected).abs() < 1e-12);
    }

    #[test]
    fn golden_orbit_equidistributes() {
        let stats = torus_orbit_stats(&golden_mean(), Some(&[0.1, 0.2]), 100_000, 0).unwrap();
        assert!(
            stats.discrepancy < 0.05,
            "discrepancy {}",
            stats.discrepancy
        );
    }

    #[test]
    fn tower_orbit_stays_on_invariant_circle() {
        // The second coordinate is invariant, so the orbit keeps distance
        // at least 0.3 from zero.
        let stats = torus_orbit_stats(&tower_alpha(2), Some(&[0.0, 0.3]), 10_000, 0).unwrap();
        assert!(
            stats.min_dist_to_zero >= 0.2,
            "min dist {}",
            stats.min_dist_to_zero
        );
    }

    #[test]
    fn seeded_runs_are_deterministic() {
        let a = torus_orbit_run(&golden_mean(), None, 1000, 42, true).unwrap();
        let b = torus_orbit_run(&golden_mean(), None, 1000, 42, true).unwrap();
        assert_eq!(a.start, b.start);
        assert_eq!(a.points.unwrap(), b.points.unwrap());
        let c = torus_orbit_run(&golden_mean(), None, 1000, 43, false).unwrap();
        assert_ne!(a.start, c.start);
    }

    #[test]
    fn rejects_non_torus_input() {
        let doubling = RatMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(
            torus_orbit_stats(&doubling, None, 10, 0),
            Err(SimulateError::NotTorusAutomorphism)
        );
        assert_eq!(
            torus_orbit_stats(&golden_mean(), None, 0, 0),
            Err(SimulateError::ZeroIterations)
        );
        assert_eq!(
            torus_orbit_stats(&golden_mean(), Some(&[0.1]), 10, 0),
            Err(SimulateError::StartDim {
                found: 1,
                expected: 2
            })
        );
    }
}
