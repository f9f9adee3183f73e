//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first with the leading coefficient
//! nonzero (the zero polynomial has an empty coefficient list). Division and
//! gcd are exact; gcd runs on primitive integer representatives to keep
//! intermediate coefficients small.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    /// Build a polynomial from coefficients, lowest degree first.
    /// Trailing zeros are trimmed so the representation is canonical.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![rat_int(1)],
        }
    }

    /// The polynomial x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![rat_int(0); n + 1];
        coeffs[0] = rat_int(-1);
        coeffs[n] = rat_int(1);
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics on a zero divisor.
    pub fn divmod(&self, div: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![rat_int(0); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for i in 0..=dd {
                let t = &div.coeffs[i] * &factor;
                rem[k + i] = &rem[k + i] - &t;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) && rem.len() > k {
                rem.pop();
            }
            quot[k] = factor;
        }
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &Polynomial) -> Polynomial {
        let (q, r) = self.divmod(div);
        assert!(r.is_zero(), "exact_div: nonzero remainder");
        q
    }

    /// Primitive integer representative: scaled by the lcm of denominators,
    /// divided by the content, with positive leading coefficient.
    /// Returns `None` for the zero polynomial.
    fn primitive_int(&self) -> Option<Vec<BigInt>> {
        if self.is_zero() {
            return None;
        }
        let mut scale = BigInt::one();
        for c in &self.coeffs {
            scale = scale.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&scale / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for v in &mut ints {
            *v = &*v / &content;
        }
        Some(ints)
    }

    /// Polynomial gcd, returned as a primitive integer polynomial with
    /// positive leading coefficient (`1` for coprime inputs).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let a = self.primitive_int();
        let b = other.primitive_int();
        let (mut a, mut b) = match (a, b) {
            (None, None) => return Polynomial::zero(),
            (Some(a), None) => return from_int(&a),
            (None, Some(b)) => return from_int(&b),
            (Some(a), Some(b)) => (a, b),
        };
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        from_int(&primitive_part(a))
    }
}

fn from_int(v: &[BigInt]) -> Polynomial {
    Polynomial::from_coeffs(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

/// Pseudo-remainder of integer polynomials: rem(lc(b)^(da-db+1) * a, b),
/// computed without leaving the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut rem = a.to_vec();
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let top = rem.last().unwrap().clone();
        for v in rem.iter_mut() {
            *v = &*v * &lead;
        }
        for i in 0..=db {
            rem[k + i] = &rem[k + i] - &top * &b[i];
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut v {
        *c = &*c / &content;
    }
    v
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![rat_int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", crate::rat::format_rat(c))?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{}*", crate::rat::format_rat(c))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}
