//! Boolean functions, Walsh–Hadamard spectra and the bent-function graphs
//! `Cay(ℤ_2^{2m+1}, S)` with `S = {0,1} × supp f`.
//!
//! Truth tables are indexed little-endian: bit `j` of the index is the value
//! of variable `z_{j+1}`. The same order is used for group coordinates, so a
//! point `z` of the cube is the element `(z_1, …, z_k)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::analysis::{FrAnalyzer, FrCertificate, FrTime, Outcome, TimeOf2Pi};
use crate::group::GroupSpec;
use crate::spectra::{validate_connection_set, ConnectionSet};
use crate::{Error, Result};

/// Largest supported arity.
pub const MAX_ARITY: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    arity: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    /// `table[i] = f(z)` where bit `j` of `i` is `z_{j+1}`.
    pub fn from_table(arity: usize, table: Vec<bool>) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::InvalidArgument(format!("arity must be in 1..={MAX_ARITY}, got {arity}")));
        }
        if table.len() != 1 << arity {
            return Err(Error::Shape(format!(
                "a function of {arity} variables needs {} values, got {}",
                1usize << arity,
                table.len()
            )));
        }
        Ok(Self { arity, table })
    }

    pub fn from_fn(arity: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::InvalidArgument(format!("arity must be in 1..={MAX_ARITY}, got {arity}")));
        }
        Self::from_table(arity, (0..1usize << arity).map(f).collect())
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        Self::from_fn(arity, |_| value)
    }

    /// Parses a string of `0`/`1` characters, character `i` being `f(i)`.
    /// The length must be a power of two, at least 2.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let table = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in truth table"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = arity_of(table.len())?;
        Self::from_table(arity, table)
    }

    /// Parses hex digits (optional `0x`) as a big-endian integer whose bit
    /// `i` is `f(i)`. Needs exactly `2^k/4` digits, so `k ≥ 2`.
    pub fn parse_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        let arity = arity_of(4 * digits.len())?;
        let mut table = alloc::vec![false; 1 << arity];
        for (pos, c) in digits.chars().rev().enumerate() {
            let d =
                c.to_digit(16).ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in hex truth table")))?;
            for b in 0..4 {
                table[4 * pos + b] = d >> b & 1 == 1;
            }
        }
        Self::from_table(arity, table)
    }

    /// Parses hex (with `0x` prefix) or a `0`/`1` string.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with("0x") || t.starts_with("0X") || t.chars().any(|c| !matches!(c, '0' | '1')) {
            Self::parse_hex(t)
        } else {
            Self::parse_bits(t)
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, z: usize) -> bool {
        self.table[z]
    }

    /// Points where `f = 1`, in increasing index order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&z| self.table[z]).collect()
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    pub fn to_bits(&self) -> String {
        self.table.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}

fn arity_of(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Parse(format!("truth table length {len} is not a power of two ≥ 2")));
    }
    Ok(len.trailing_zeros() as usize)
}

/// `W_f(x) = Σ_z (−1)^{f(z) + x·z}` for every `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, x: usize) -> i64 {
        self.values[x]
    }

    pub fn sum_of_squares(&self) -> i128 {
        self.values.iter().map(|&w| i128::from(w) * i128::from(w)).sum()
    }
}

/// Unnormalized in-place Walsh–Hadamard butterfly.
pub fn fwht(values: &mut [i64]) -> Result<()> {
    if !values.len().is_power_of_two() {
        return Err(Error::Shape(format!("length {} is not a power of two", values.len())));
    }
    let mut h = 1;
    while h < values.len() {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

pub fn walsh_transform(f: &BooleanFunction) -> WalshSpectrum {
    let mut values: Vec<i64> = f.table.iter().map(|&b| if b { -1 } else { 1 }).collect();
    fwht(&mut values).expect("table length is a power of two");
    WalshSpectrum { values }
}

/// Even arity and `|W_f(x)| = 2^{k/2}` everywhere.
pub fn is_bent(f: &BooleanFunction) -> bool {
    if !f.arity.is_multiple_of(2) {
        return false;
    }
    let flat = 1i64 << (f.arity / 2);
    walsh_transform(f).values.iter().all(|w| w.abs() == flat)
}

/// `z_1z_2 ⊕ z_3z_4 ⊕ … ⊕ z_{2m−1}z_{2m}`.
pub fn mm_bent(m: usize) -> Result<BooleanFunction> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    BooleanFunction::from_fn(2 * m, |z| (0..m).filter(|i| z >> (2 * i) & 3 == 3).count() % 2 == 1)
}

/// `S = {(ε, z) : ε ∈ {0,1}, f(z) = 1}` on `ℤ_2^{k+1}`, with `ε` first.
pub fn tan_connection_set(f: &BooleanFunction) -> Result<ConnectionSet> {
    if f.eval(0) {
        return Err(Error::Loop);
    }
    let k = f.arity;
    let spec = GroupSpec::cube(k + 1)?;
    let mut raw = Vec::with_capacity(2 * f.weight());
    for eps in 0..2 {
        for z in f.support() {
            let mut coords = Vec::with_capacity(k + 1);
            coords.push(eps);
            coords.extend((0..k).map(|j| z >> j & 1));
            raw.push(spec.element(&coords)?);
        }
    }
    if raw.is_empty() {
        return Err(Error::EmptyConnectionSet);
    }
    validate_connection_set(&spec, &raw)
}

/// `λ_(x_0, x_1)`: `2^k − W_f(0)` at zero, `−W_f(x_1)` when `x_0 = 0`, `x_1 ≠ 0`,
/// and `0` when `x_0 = 1`. Here `x = Σ x_j 2^{j}` with `x_0` the first coordinate.
pub fn predicted_eigenvalue(walsh: &WalshSpectrum, arity: usize, x0: usize, x1: usize) -> i64 {
    if x0 == 1 {
        0
    } else if x1 == 0 {
        (1i64 << arity) - walsh.value(0)
    } else {
        -walsh.value(x1)
    }
}

/// The graph built from [`mm_bent`].
#[derive(Debug, Clone)]
pub struct BentGraph {
    pub m: usize,
    pub function: BooleanFunction,
    pub spec: GroupSpec,
    pub set: ConnectionSet,
}

pub fn bent_graph(m: usize) -> Result<BentGraph> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m must be at least 2, got {m}")));
    }
    let function = mm_bent(m)?;
    let set = tan_connection_set(&function)?;
    Ok(BentGraph { m, spec: set.spec().clone(), set, function })
}

/// Revival between `v` and `v + (1, 0, …, 0)` at `t = π/2^m`, with `M = 2^{m+1}`.
pub fn bent_graph_fr(m: usize) -> Result<FrCertificate> {
    let graph = bent_graph(m)?;
    let spec = &graph.spec;
    let mut a = alloc::vec![0; spec.rank()];
    a[0] = 1;
    let a = spec.element(&a)?;
    let decision = FrAnalyzer::new(spec, &graph.set)?.decide(&a)?;
    let Outcome::Yes(certificate) = decision.outcome else {
        return Err(Error::Inconsistency(format!("no revival on the bent graph for m = {m}")));
    };
    let expected = 1u64 << (m + 1);
    if certificate.m != Some(expected)
        || certificate.time != FrTime::Rational(TimeOf2Pi::new(1, expected)?)
        || (certificate.sample_time - PI / (1u64 << m) as f64).abs() > 1e-12
    {
        return Err(Error::Inconsistency(format!(
            "bent graph for m = {m} gave M = {:?}, expected {expected}",
            certificate.m
        )));
    }
    Ok(certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{build_n, pair_differences, Classification};
    use crate::spectra::full_spectrum;
    use proptest::prelude::*;

    fn brute_walsh(f: &BooleanFunction) -> Vec<i64> {
        let n = 1usize << f.arity();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|z| {
                        let e = u32::from(f.eval(z)) + (x & z).count_ones();
                        if e % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn walsh_examples() {
        let zero = BooleanFunction::constant(3, false).unwrap();
        assert_eq!(walsh_transform(&zero).values(), [8, 0, 0, 0, 0, 0, 0, 0]);
        let z1 = BooleanFunction::from_fn(2, |z| z & 1 == 1).unwrap();
        assert_eq!(walsh_transform(&z1).values(), [0, 4, 0, 0]);
        let f = BooleanFunction::from_fn(4, |z| ((z & 1) & (z >> 1 & 1)) ^ ((z >> 2 & 1) & (z >> 3 & 1)) == 1).unwrap();
        assert!(walsh_transform(&f).values().iter().all(|w| w.abs() == 4));
        assert_eq!(walsh_transform(&f).values(), brute_walsh(&f));
        assert_eq!(f, mm_bent(2).unwrap());
    }

    #[test]
    fn bentness() {
        assert!(is_bent(&mm_bent(2).unwrap()));
        assert!(is_bent(&mm_bent(1).unwrap()));
        assert!(is_bent(&mm_bent(3).unwrap()));
        assert!(!is_bent(&BooleanFunction::constant(4, false).unwrap()));
        assert!(!is_bent(&BooleanFunction::from_fn(3, |z| z == 7).unwrap()));
        assert_eq!(mm_bent(2).unwrap().weight(), 6);
        assert_eq!(mm_bent(3).unwrap().weight(), 28);
    }

    #[test]
    fn parsing() {
        let f = mm_bent(2).unwrap();
        assert_eq!(f.to_bits(), "0001000100011110");
        assert_eq!(BooleanFunction::parse_bits("0001000100011110").unwrap(), f);
        // bits 3, 7, 11, 12, 13, 14 set
        assert_eq!(BooleanFunction::parse_hex("0x7888").unwrap(), f);
        assert_eq!(BooleanFunction::parse("7888").unwrap(), f);
        assert_eq!(BooleanFunction::parse("0001000100011110").unwrap(), f);
        assert!(BooleanFunction::parse_bits("011").is_err());
        assert!(BooleanFunction::parse_bits("0").is_err());
        assert!(BooleanFunction::parse_hex("0xg0").is_err());
        assert!(BooleanFunction::from_table(2, alloc::vec![false; 3]).is_err());
    }

    #[test]
    fn connection_sets() {
        let s = tan_connection_set(&mm_bent(2).unwrap()).unwrap();
        assert_eq!(s.len(), 12);
        assert_eq!(s.spec().rank(), 5);
        assert_eq!(
            tan_connection_set(&BooleanFunction::constant(4, false).unwrap()).unwrap_err(),
            Error::EmptyConnectionSet
        );
        assert_eq!(tan_connection_set(&BooleanFunction::constant(4, true).unwrap()).unwrap_err(), Error::Loop);
    }

    #[test]
    fn bent_spectrum_matches_three_cases() {
        for m in [2, 3] {
            let g = bent_graph(m).unwrap();
            let walsh = walsh_transform(&g.function);
            let spectrum = full_spectrum(&g.spec, &g.set).unwrap();
            for (i, x) in g.spec.elements().enumerate() {
                let c = x.coords();
                let x1 = (0..2 * m).map(|j| c[j + 1] << j).sum();
                let expect = predicted_eigenvalue(&walsh, 2 * m, c[0], x1);
                assert_eq!(spectrum.integer_value(i), Some(expect), "x = {x}");
            }
            assert_eq!(spectrum.integer_value(0), Some((1 << (2 * m)) - (1 << m)));
        }
    }

    #[test]
    fn bent_differences() {
        let g = bent_graph(2).unwrap();
        let spectrum = full_spectrum(&g.spec, &g.set).unwrap();
        let n = build_n(&g.spec, &g.spec.element(&[1, 0, 0, 0, 0]).unwrap()).unwrap();
        for d in pair_differences(&spectrum, &n).unwrap() {
            assert!(matches!(d, Some(0 | -16 | 8 | -8)), "{d:?}");
        }
    }

    #[test]
    fn bent_revival() {
        let c = bent_graph_fr(2).unwrap();
        assert_eq!(c.m, Some(8));
        assert!((c.sample_time - PI / 4.0).abs() < 1e-15);
        // the revival at π/2^m is in fact perfect transfer
        assert_eq!(c.classification, Classification::PST);
        assert!((c.beta + 1.0).norm_sqr() < 1e-24);
        let c = bent_graph_fr(3).unwrap();
        assert_eq!(c.classification, Classification::PST);
        assert_eq!(c.m, Some(16));
        assert!(bent_graph_fr(1).is_err());
    }

    proptest! {
        #[test]
        fn fwht_twice_scales(k in 1usize..=10, seed in any::<u64>()) {
            let f = BooleanFunction::from_fn(k, |z| (seed.wrapping_mul(z as u64 + 1) >> 17) & 1 == 1).unwrap();
            let w = walsh_transform(&f);
            prop_assert_eq!(w.sum_of_squares(), 1i128 << (2 * k));
            let mut again = w.values().to_vec();
            fwht(&mut again).unwrap();
            for (z, v) in again.iter().enumerate() {
                prop_assert_eq!(*v, (1i64 << k) * if f.eval(z) { -1 } else { 1 });
            }
        }

        #[test]
        fn fwht_matches_brute_force(k in 1usize..=6, bits in any::<u64>()) {
            let f = BooleanFunction::from_fn(k, |z| bits >> z & 1 == 1).unwrap();
            let w = walsh_transform(&f);
            let b = brute_walsh(&f);
            prop_assert_eq!(w.values(), b.as_slice());
        }
    }
}
