//! Exact arithmetic in the ring of cyclotomic integers `ℤ[ω_L]`.
//!
//! Values are kept in the redundant power basis `Σ_{j<L} c_j ω_L^j` and are
//! only reduced modulo the cyclotomic polynomial `Φ_L` when an equality or
//! integrality question is asked. Character values are single monomials in
//! this basis, so products stay cheap.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// An element of `ℤ[ω_L]` in power-basis form.
///
/// Two values are equal when their canonical reductions agree (after lifting
/// to a common level), regardless of the raw coefficients.
#[derive(Debug, Clone)]
pub struct CyclotomicInt {
    level: usize,
    coeffs: Vec<i64>,
}

/// Integer polynomial, coefficients from the constant term upwards.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = alloc::vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Quotient and remainder by a monic divisor, exactly over the integers.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        if !divisor.is_monic() {
            return Err(Error::InvalidArgument("divisor must be monic".into()));
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((IntPolynomial::new(Vec::new()), self.clone()));
        }
        let mut quot = alloc::vec![0i64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - d] = c;
            for (j, &p) in divisor.coeffs.iter().enumerate() {
                let t = c.checked_mul(p).ok_or(Error::Overflow)?;
                rem[i - d + j] = rem[i - d + j].checked_sub(t).ok_or(Error::Overflow)?;
            }
        }
        rem.truncate(d);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }
}

/// `Φ_L`, by exact division `(x^L − 1) / Π_{d | L, d < L} Φ_d`.
pub fn cyclotomic_polynomial(level: usize) -> Result<IntPolynomial> {
    if level == 0 {
        return Err(Error::InvalidLevel("level must be at least 1".into()));
    }
    let divisors: Vec<usize> = (1..=level).filter(|d| level.is_multiple_of(*d)).collect();
    let mut phis: Vec<IntPolynomial> = Vec::with_capacity(divisors.len());
    for (k, &d) in divisors.iter().enumerate() {
        let mut p = IntPolynomial::x_pow_minus_one(d);
        for (e, phi_e) in divisors[..k].iter().zip(&phis) {
            if d % e == 0 {
                let (q, r) = p.div_rem_monic(phi_e)?;
                if r.degree().is_some() {
                    return Err(Error::Inconsistency(format!("Phi_{e} does not divide x^{d} - 1 exactly")));
                }
                p = q;
            }
        }
        phis.push(p);
    }
    Ok(phis.pop().expect("level has at least one divisor"))
}

/// Reduction modulo a fixed `Φ_L`, for repeated canonical forms at one level.
#[derive(Debug, Clone)]
pub struct Reducer {
    level: usize,
    phi: IntPolynomial,
}

impl Reducer {
    pub fn new(level: usize) -> Result<Self> {
        Ok(Self { level, phi: cyclotomic_polynomial(level)? })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `φ(L)`, the length of every canonical form.
    pub fn dimension(&self) -> usize {
        self.phi.degree().expect("cyclotomic polynomials are nonzero")
    }

    /// Remainder modulo `Φ_L`, padded to exactly `φ(L)` coefficients.
    pub fn reduce(&self, a: &CyclotomicInt) -> Result<Vec<i64>> {
        if a.level != self.level {
            return Err(Error::LevelMismatch { left: a.level, right: self.level });
        }
        let dim = self.dimension();
        let phi = self.phi.coeffs();
        let mut r = a.coeffs.clone();
        for i in (dim..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for (j, &p) in phi.iter().enumerate() {
                let t = c.checked_mul(p).ok_or(Error::Overflow)?;
                r[i - dim + j] = r[i - dim + j].checked_sub(t).ok_or(Error::Overflow)?;
            }
        }
        r.resize(dim, 0);
        Ok(r)
    }

    /// The integer `k` if `a = k`, else `None`.
    pub fn as_integer(&self, a: &CyclotomicInt) -> Result<Option<i64>> {
        Ok(integer_of_reduced(&self.reduce(a)?))
    }
}

/// Integer value of a canonical form, if it is a constant.
pub fn integer_of_reduced(reduced: &[i64]) -> Option<i64> {
    match reduced.split_first() {
        None => Some(0),
        Some((&k, rest)) if rest.iter().all(|&c| c == 0) => Some(k),
        Some(_) => None,
    }
}

impl CyclotomicInt {
    pub fn zero(level: usize) -> Result<Self> {
        check_level(level)?;
        Ok(Self { level, coeffs: alloc::vec![0; level] })
    }

    pub fn from_integer(k: i64, level: usize) -> Result<Self> {
        let mut z = Self::zero(level)?;
        z.coeffs[0] = k;
        Ok(z)
    }

    /// `ω_L^{j mod L}`.
    pub fn root(j: i64, level: usize) -> Result<Self> {
        let mut z = Self::zero(level)?;
        z.coeffs[j.rem_euclid(level as i64) as usize] = 1;
        Ok(z)
    }

    /// Builds a value from raw power-basis coefficients; `coeffs.len()` is the level.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        check_level(coeffs.len())?;
        Ok(Self { level: coeffs.len(), coeffs })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `k·ω_L^j` in place.
    pub fn add_monomial(&mut self, j: usize, k: i64) -> Result<()> {
        let slot = &mut self.coeffs[j % self.level];
        *slot = slot.checked_add(k).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { level: self.level, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn neg(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|&a| a.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(Self { level: self.level, coeffs })
    }

    /// Ring product; exponents add modulo `L`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let l = self.level;
        let mut coeffs = alloc::vec![0i64; l];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                let t = a.checked_mul(b).ok_or(Error::Overflow)?;
                let slot = &mut coeffs[(i + j) % l];
                *slot = slot.checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self { level: l, coeffs })
    }

    /// The same ring element written at level `target`, which must be a
    /// multiple of the current level.
    pub fn lift_to_level(&self, target: usize) -> Result<Self> {
        check_level(target)?;
        if !target.is_multiple_of(self.level) {
            return Err(Error::InvalidLevel(format!("{} does not divide {target}", self.level)));
        }
        let step = target / self.level;
        let mut coeffs = alloc::vec![0; target];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * step] = c;
        }
        Ok(Self { level: target, coeffs })
    }

    /// Remainder of the coefficient polynomial modulo `Φ_L`, of length `φ(L)`.
    pub fn canonical_reduce(&self) -> Result<Vec<i64>> {
        Reducer::new(self.level)?.reduce(self)
    }

    /// The integer `k` iff the canonical form is the constant `k`.
    pub fn as_integer(&self) -> Result<Option<i64>> {
        Ok(integer_of_reduced(&self.canonical_reduce()?))
    }

    /// `Σ_j c_j exp(2πij/L)` in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let l = self.level as f64;
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).fold(Complex64::new(0.0, 0.0), |acc, (j, &c)| {
            let angle = 2.0 * PI * j as f64 / l;
            acc + Complex64::new(libm::cos(angle), libm::sin(angle)) * c as f64
        })
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(Error::LevelMismatch { left: self.level, right: other.level })
        }
    }
}

impl PartialEq for CyclotomicInt {
    /// Compares canonical forms at the common level. Arithmetic overflow
    /// during reduction makes the values compare unequal.
    fn eq(&self, other: &Self) -> bool {
        let Some(common) = crate::group::lcm(self.level, other.level) else {
            return false;
        };
        let lifted = (self.lift_to_level(common), other.lift_to_level(common));
        let (Ok(a), Ok(b)) = lifted else {
            return false;
        };
        let Ok(reducer) = Reducer::new(common) else {
            return false;
        };
        matches!((reducer.reduce(&a), reducer.reduce(&b)), (Ok(x), Ok(y)) if x == y)
    }
}

fn check_level(level: usize) -> Result<()> {
    if level == 0 {
        Err(Error::InvalidLevel("level must be at least 1".into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(coeffs: &[i64]) -> CyclotomicInt {
        CyclotomicInt::from_coeffs(coeffs.to_vec()).unwrap()
    }

    fn totient(n: usize) -> usize {
        (1..=n).filter(|&k| crate::group::gcd(k, n) == 1).count()
    }

    #[test]
    fn roots() {
        assert_eq!(CyclotomicInt::root(0, 6).unwrap().as_integer().unwrap(), Some(1));
        assert_eq!(CyclotomicInt::root(3, 6).unwrap().canonical_reduce().unwrap(), [-1, 0]);
        assert_eq!(CyclotomicInt::root(7, 6).unwrap().coeffs(), CyclotomicInt::root(1, 6).unwrap().coeffs());
        assert_eq!(CyclotomicInt::root(-1, 6).unwrap().coeffs(), CyclotomicInt::root(5, 6).unwrap().coeffs());
        assert!(CyclotomicInt::root(1, 0).is_err());
    }

    #[test]
    fn ring_examples() {
        let w = |j| CyclotomicInt::root(j, 3).unwrap();
        let one = CyclotomicInt::from_integer(1, 3).unwrap();
        let s = w(1).add(&w(2)).unwrap().add(&one).unwrap();
        assert_eq!(s.as_integer().unwrap(), Some(0));

        let i = CyclotomicInt::root(1, 4).unwrap();
        assert_eq!(i.mul(&i).unwrap().as_integer().unwrap(), Some(-1));

        let a = c(&[3, -1, 4, 1]);
        assert_eq!(a.add(&CyclotomicInt::zero(4).unwrap()).unwrap().coeffs(), a.coeffs());
        assert!(matches!(a.add(&w(1)), Err(Error::LevelMismatch { left: 4, right: 3 })));
    }

    #[test]
    fn lifting() {
        let w2 = CyclotomicInt::root(1, 2).unwrap();
        assert_eq!(w2.lift_to_level(6).unwrap().coeffs(), CyclotomicInt::root(3, 6).unwrap().coeffs());
        let one = CyclotomicInt::from_integer(1, 1).unwrap();
        assert_eq!(one.lift_to_level(10).unwrap().as_integer().unwrap(), Some(1));
        let w3 = CyclotomicInt::root(1, 3).unwrap();
        assert_eq!(w3.lift_to_level(6).unwrap().coeffs(), CyclotomicInt::root(2, 6).unwrap().coeffs());
        assert!(w3.lift_to_level(4).is_err());
        assert_eq!(w3, w3.lift_to_level(12).unwrap());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap().coeffs(), [-1, 1]);
        assert_eq!(cyclotomic_polynomial(2).unwrap().coeffs(), [1, 1]);
        // x^4 - 1 = (x - 1)(x + 1)(x^2 + 1)
        assert_eq!(cyclotomic_polynomial(4).unwrap().coeffs(), [1, 0, 1]);
        // x^6 - 1 = (x - 1)(x + 1)(x^2 + x + 1)(x^2 - x + 1)
        assert_eq!(cyclotomic_polynomial(6).unwrap().coeffs(), [1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12).unwrap().coeffs(), [1, 0, -1, 0, 1]);
        assert!(cyclotomic_polynomial(0).is_err());
        // first level with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).unwrap().coeffs().contains(&-2));
    }

    #[test]
    fn degree_is_totient() {
        for l in 1..=64 {
            let phi = cyclotomic_polynomial(l).unwrap();
            assert_eq!(phi.degree(), Some(totient(l)), "level {l}");
            assert!(phi.is_monic());
        }
    }

    #[test]
    fn canonical_reduction_examples() {
        assert_eq!(c(&[1, 1, 1]).canonical_reduce().unwrap(), [0, 0]);
        // x + x^5 mod x^2 - x + 1: x^5 = -x^2 = 1 - x (mod Φ_6), so x + x^5 = 1
        let w = |j| CyclotomicInt::root(j, 6).unwrap();
        let s = w(1).add(&w(5)).unwrap();
        assert_eq!(s.canonical_reduce().unwrap(), [1, 0]);
        assert_eq!(s.as_integer().unwrap(), Some(1));
        assert_eq!(CyclotomicInt::from_integer(-7, 9).unwrap().as_integer().unwrap(), Some(-7));
        // ω_6 − ω_6^5 = i√3
        let d = w(1).sub(&w(5)).unwrap();
        assert_eq!(d.as_integer().unwrap(), None);
        assert_eq!(CyclotomicInt::zero(5).unwrap().as_integer().unwrap(), Some(0));
    }

    #[test]
    fn complex_values() {
        let i = CyclotomicInt::root(1, 4).unwrap().to_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm_sqr().sqrt() < 1e-15);
        assert!(c(&[1, 1, 1]).to_complex().norm_sqr().sqrt() < 1e-14);
        let s = CyclotomicInt::root(1, 6).unwrap().add(&CyclotomicInt::root(5, 6).unwrap()).unwrap();
        assert!((s.to_complex() - Complex64::new(1.0, 0.0)).norm_sqr().sqrt() < 1e-14);
    }

    #[test]
    fn overflow_is_reported() {
        let big = CyclotomicInt::from_integer(i64::MAX, 2).unwrap();
        assert_eq!(big.add(&big).unwrap_err(), Error::Overflow);
        assert_eq!(big.mul(&big).unwrap_err(), Error::Overflow);
    }

    fn triple() -> impl Strategy<Value = [CyclotomicInt; 3]> {
        (1usize..=24).prop_flat_map(|l| {
            proptest::collection::vec(proptest::collection::vec(-20i64..20, l), 3)
                .prop_map(|v| [c(&v[0]), c(&v[1]), c(&v[2])])
        })
    }

    proptest! {
        #[test]
        fn ring_axioms([a, b, c] in triple()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        }

        #[test]
        fn complex_embedding_is_a_homomorphism([a, b, _c] in triple()) {
            let err = |x: Complex64, y: Complex64| (x - y).norm_sqr().sqrt();
            prop_assert!(err(a.add(&b).unwrap().to_complex(), a.to_complex() + b.to_complex()) < 1e-12);
            let scale = 1.0 + a.to_complex().norm_sqr().sqrt() * b.to_complex().norm_sqr().sqrt();
            prop_assert!(err(a.mul(&b).unwrap().to_complex(), a.to_complex() * b.to_complex()) < 1e-12 * scale);
        }

        #[test]
        fn integrality_agrees_with_floats([a, _b, _c] in triple()) {
            if let Some(k) = a.as_integer().unwrap() {
                prop_assert!((a.to_complex() - Complex64::new(k as f64, 0.0)).norm_sqr().sqrt() < 1e-9);
            }
            // reduction preserves the complex value
            let r = a.canonical_reduce().unwrap();
            let mut padded = r.clone();
            padded.resize(a.level(), 0);
            let back = CyclotomicInt::from_coeffs(padded).unwrap();
            prop_assert!((back.to_complex() - a.to_complex()).norm_sqr().sqrt() < 1e-9);
            prop_assert_eq!(back, a);
        }
    }
}
