//! Roots of unity and quasi-unipotence.
//!
//! Everything downstream rests on two exact eigenvalue tests: whether a
//! rational matrix has a root of unity among its eigenvalues, and whether
//! some fixed power of it is unipotent. Both are made decidable by the
//! classical bounds bundled in [`OrderSet`]: a root of unity that is an
//! eigenvalue of an r x r rational matrix has order n with phi(n) <= r, so
//! the single exponent M(r) = lcm{n : phi(n) <= r} annihilates every
//! finite-order phenomenon in dimension r, and Minkowski's bound B(r) caps
//! the order of any finite subgroup of GL(r, Q).

use num_integer::Integer;

use crate::matrix::RatMatrix;
use crate::poly::Polynomial;

/// Euler's totient, by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut n = n;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// The root-of-unity orders relevant in dimension r, with the universal
/// annihilator exponent M(r) and Minkowski's order bound B(r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSet {
    pub r: usize,
    /// All n >= 1 with phi(n) <= r, ascending. phi(n) >= sqrt(n/2), so the
    /// scan up to 2r^2 + 1 is exhaustive.
    pub orders: Vec<u64>,
    /// lcm of `orders`: m^M = I for every finite-order m in GL(r, Q).
    pub exponent_m: u64,
    /// Minkowski's bound: the order of every finite subgroup of GL(r, Q)
    /// divides B(r) = prod_{p <= r+1} p^{sum_i floor(r / (p^i (p-1)))}.
    pub minkowski_bound: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Compute the [`OrderSet`] for dimension r. Dimension 0 yields the
/// degenerate set (no orders, M = 1, B = 1).
pub fn order_set(r: usize) -> OrderSet {
    let rr = r as u64;
    let orders: Vec<u64> = (1..=2 * rr * rr + 1)
        .filter(|&n| euler_phi(n) <= rr)
        .collect();
    let exponent_m = orders.iter().fold(1u64, |acc, &n| acc.lcm(&n));
    let mut minkowski_bound = 1u64;
    for p in 2..=rr + 1 {
        if !is_prime(p) {
            continue;
        }
        let mut exp = 0u64;
        let mut denom = p - 1;
        while denom <= rr {
            exp += rr / denom;
            match denom.checked_mul(p) {
                Some(d) => denom = d,
                None => break,
            }
        }
        minkowski_bound *= p.pow(exp as u32);
    }
    OrderSet {
        r,
        orders,
        exponent_m,
        minkowski_bound,
    }
}

/// Convenience accessors used all over the group machinery.
pub fn exponent_m(r: usize) -> u64 {
    order_set(r).exponent_m
}

pub fn minkowski_bound(r: usize) -> u64 {
    order_set(r).minkowski_bound
}

/// The n-th cyclotomic polynomial, by iterated exact division of x^n - 1 by
/// the cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic_poly(n: u64) -> Polynomial {
    assert!(n >= 1);
    if n == 1 {
        return Polynomial::from_i64_coeffs(&[-1, 1]);
    }
    let mut result = Polynomial::x_pow_minus_one(n as usize);
    for d in 1..n {
        if n.is_multiple_of(d) {
            result = result.exact_div(&cyclotomic_poly(d));
        }
    }
    result
}

/// Smallest order n with phi(n) <= r such that the n-th cyclotomic polynomial
/// divides the characteristic polynomial; `None` when no root of unity is an
/// eigenvalue. The order scan is complete because any root-of-unity
/// eigenvalue of an r x r rational matrix has degree phi(n) <= r over Q.
pub fn root_of_unity_eigenvalue(m: &RatMatrix) -> Option<u64> {
    let cp = m.charpoly();
    order_set(m.dim())
        .orders
        .iter()
        .find(|&&n| !cp.gcd(&cyclotomic_poly(n)).is_constant())
        .copied()
}

/// Quasi-unipotence test: `Some(M)` iff (m^M - I)^r = 0 with M = M(r), i.e.
/// some power of m is unipotent, equivalently the characteristic polynomial
/// is a product of cyclotomic polynomials. The certificate is the universal
/// exponent M itself.
pub fn is_quasi_unipotent(m: &RatMatrix) -> Option<u64> {
    let r = m.dim();
    let big_m = exponent_m(r);
    let shifted = &m.pow(big_m) - &RatMatrix::identity(r);
    if shifted.pow(r as u64).is_zero() {
        Some(big_m)
    } else {
        None
    }
}

/// Whether m has finite order, i.e. m^M = I for the universal exponent.
pub fn is_finite_order(m: &RatMatrix) -> bool {
    m.pow(exponent_m(m.dim())).is_identity()
}

/// gcd helper used by the property tests: x^M - 1 shares a factor with the
/// characteristic polynomial exactly when some root of unity is an eigenvalue.
pub fn shares_factor_with_x_pow_m_minus_one(m: &RatMatrix) -> bool {
    if m.dim() == 0 {
        return false;
    }
    let cp = m.charpoly();
    let xm = Polynomial::x_pow_minus_one(exponent_m(m.dim()) as usize);
    !cp.gcd(&xm).is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    #[test]
    fn phi_small_values() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e, "phi({})", i + 1);
        }
    }

    #[test]
    fn order_set_r1() {
        let os = order_set(1);
        assert_eq!(os.orders, vec![1, 2]);
        assert_eq!(os.exponent_m, 2);
        assert_eq!(os.minkowski_bound, 2);
    }

    #[test]
    fn order_set_r2() {
        let os = order_set(2);
        assert_eq!(os.orders, vec![1, 2, 3, 4, 6]);
        assert_eq!(os.exponent_m, 12);
        assert_eq!(os.minkowski_bound, 24);
    }

    #[test]
    fn order_set_r4() {
        let os = order_set(4);
        assert_eq!(os.orders, vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
        assert_eq!(os.exponent_m, 120);
        assert_eq!(os.minkowski_bound, 5760);
    }

    #[test]
    fn order_scan_matches_brute_force() {
        for r in 0..=6usize {
            let os = order_set(r);
            let brute: Vec<u64> = (1..=2 * (r as u64) * (r as u64) + 1)
                .filter(|&n| euler_phi(n) <= r as u64)
                .collect();
            assert_eq!(os.orders, brute);
            // Beyond the scan bound phi only grows past r.
            for n in 2 * (r as u64) * (r as u64) + 2..=2 * (r as u64) * (r as u64) + 50 {
                assert!(euler_phi(n) > r as u64, "phi({}) <= {}", n, r);
            }
        }
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic_poly(1), Polynomial::from_i64_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), Polynomial::from_i64_coeffs(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), Polynomial::from_i64_coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), Polynomial::from_i64_coeffs(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_poly(12),
            Polynomial::from_i64_coeffs(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn cyclotomic_product_is_x_pow_n_minus_one() {
        for n in 1..=30u64 {
            let mut product = Polynomial::one();
            for d in 1..=n {
                if n % d == 0 {
                    product = &product * &cyclotomic_poly(d);
                }
            }
            assert_eq!(
                product,
                Polynomial::x_pow_minus_one(n as usize),
                "n = {}",
                n
            );
        }
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(root_of_unity_eigenvalue(&RatMatrix::identity(2)), Some(1));
        let golden = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        assert_eq!(root_of_unity_eigenvalue(&golden), None);
        let rot = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(root_of_unity_eigenvalue(&rot), Some(4));
        let neg = RatMatrix::from_i64_rows(&[&[-1, 0], &[0, 2]]);
        assert_eq!(root_of_unity_eigenvalue(&neg), Some(2));
    }

    #[test]
    fn quasi_unipotent_examples() {
        let upper = RatMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(is_quasi_unipotent(&upper), Some(12));
        let rot = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(is_quasi_unipotent(&rot), Some(12));
        let golden = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        assert_eq!(is_quasi_unipotent(&golden), None);
    }

    #[test]
    fn finite_order_examples() {
        let rot = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert!(is_finite_order(&rot));
        let upper = RatMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert!(!is_finite_order(&upper));
    }
}
