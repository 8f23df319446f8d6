//! Characters, exact spectra and the closed-form walk on `Cay(Γ, S)`.
//!
//! For an abelian group the characters `χ_x(g) = Π_s ω_{n_s}^{x_s g_s}` are a
//! common eigenbasis of every Cayley graph, with eigenvalue
//! `λ_x = Σ_{g∈S} χ_x(g)`. Each character value is the single monomial
//! `ω_L^e`, `e = Σ_s (L/n_s)·x_s·g_s mod L`, so eigenvalues are exact
//! cyclotomic integers at level `L = lcm(n_s)`.
//!
//! The transition matrix follows from the spectral decomposition:
//! `H(t)_{u,v} = (1/|Γ|) Σ_g exp(iλ_g t)·χ_g(u − v)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::cyclotomic::{integer_of_reduced, CyclotomicInt, Reducer};
use crate::group::{GroupElement, GroupSpec};
use crate::matrix::{ComplexMatrix, DenseMatrix};
use crate::{Error, Result};

/// Tolerance on the imaginary part of a floating eigenvalue.
pub const REALITY_TOLERANCE: f64 = 1e-10;

/// A validated connection set: `0 ∉ S` and `−S = S`, sorted, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
    indices: Vec<usize>,
}

impl ConnectionSet {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Lexicographic indices of the elements, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// Checks `0 ∉ S` and `−S = S` and removes duplicates.
pub fn validate_connection_set(spec: &GroupSpec, raw: &[GroupElement]) -> Result<ConnectionSet> {
    let mut elements = raw.to_vec();
    for g in &elements {
        spec.check(g)?;
    }
    elements.sort();
    elements.dedup();
    if elements.iter().any(GroupElement::is_zero) {
        return Err(Error::Loop);
    }
    for g in &elements {
        let minus = spec.neg(g)?;
        if elements.binary_search(&minus).is_err() {
            return Err(Error::Asymmetric { element: format!("{g}") });
        }
    }
    let indices = elements.iter().map(|g| spec.index_of(g)).collect::<Result<_>>()?;
    Ok(ConnectionSet { spec: spec.clone(), elements, indices })
}

/// Exponent `e` with `χ_x(g) = ω_L^e`.
fn character_exponent(spec: &GroupSpec, x: &[usize], g: &[usize]) -> usize {
    let level = spec.level();
    x.iter().zip(g).zip(spec.orders()).map(|((&xs, &gs), &n)| (level / n) * ((xs * gs) % n)).sum::<usize>() % level
}

/// `χ_x(g)` as the monomial `ω_L^e`.
pub fn character(spec: &GroupSpec, x: &GroupElement, g: &GroupElement) -> Result<CyclotomicInt> {
    spec.check(x)?;
    spec.check(g)?;
    CyclotomicInt::root(character_exponent(spec, x.coords(), g.coords()) as i64, spec.level())
}

/// `λ_x = Σ_{g∈S} χ_x(g)`, exactly.
pub fn eigenvalue(x: &GroupElement, set: &ConnectionSet) -> Result<CyclotomicInt> {
    let spec = set.spec();
    spec.check(x)?;
    let mut lambda = CyclotomicInt::zero(spec.level())?;
    for g in set.elements() {
        lambda.add_monomial(character_exponent(spec, x.coords(), g.coords()), 1)?;
    }
    Ok(lambda)
}

/// The unit eigenvector `p_x` with entries `χ_x(h)/√|Γ|`, in lexicographic order.
pub fn eigenvector(spec: &GroupSpec, x: &GroupElement) -> Result<Vec<Complex64>> {
    spec.check(x)?;
    let roots = roots_of_unity(spec.level());
    let norm = 1.0 / libm::sqrt(spec.size() as f64);
    Ok(spec.elements().map(|h| roots[character_exponent(spec, x.coords(), h.coords())] * norm).collect())
}

/// `E_x = p_x p_xᴴ`, entries `χ_x(u − v)/|Γ|`.
pub fn eigenprojector(spec: &GroupSpec, x: &GroupElement) -> Result<ComplexMatrix> {
    let p = eigenvector(spec, x)?;
    let n = p.len();
    Ok(ComplexMatrix::from_fn(n, n, |u, v| p[u] * p[v].conj()))
}

/// `exp(2πik/L)` for `k = 0..L`.
pub fn roots_of_unity(level: usize) -> Vec<Complex64> {
    (0..level)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / level as f64;
            Complex64::new(libm::cos(angle), libm::sin(angle))
        })
        .collect()
}

/// All eigenvalues of `Cay(Γ, S)`, indexed by the lexicographic position of
/// the character, each both exactly and as a double.
#[derive(Debug, Clone)]
pub struct Spectrum {
    spec: GroupSpec,
    set: ConnectionSet,
    reducer: Reducer,
    exact: Vec<CyclotomicInt>,
    reduced: Vec<Vec<i64>>,
    values: Vec<f64>,
    roots: Vec<Complex64>,
    coords: Vec<usize>,
}

impl Spectrum {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn level(&self) -> usize {
        self.reducer.level()
    }

    /// `λ_x` in power-basis form at level `L`.
    pub fn exact(&self, index: usize) -> &CyclotomicInt {
        &self.exact[index]
    }

    /// `λ_x` reduced modulo `Φ_L`.
    pub fn reduced(&self, index: usize) -> &[i64] {
        &self.reduced[index]
    }

    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `λ_x` if it is an integer.
    pub fn integer_value(&self, index: usize) -> Option<i64> {
        integer_of_reduced(&self.reduced[index])
    }

    /// `λ_x − λ_y` if it is an integer, decided exactly.
    pub fn integer_difference(&self, x: usize, y: usize) -> Result<Option<i64>> {
        let (a, b) = (&self.reduced[x], &self.reduced[y]);
        if a[1..] != b[1..] {
            return Ok(None);
        }
        a[0].checked_sub(b[0]).map(Some).ok_or(Error::Overflow)
    }

    /// `H(t)_{u,v}` in `O(|Γ|·r)`, without forming the matrix.
    pub fn transition_entry(&self, u: &GroupElement, v: &GroupElement, t: f64) -> Result<Complex64> {
        let d = self.spec.sub(u, v)?;
        let phases = self.phases(t);
        Ok(self.entry_for_difference(&phases, d.coords()))
    }

    /// `H(t)` from the spectral decomposition.
    pub fn transition_matrix(&self, t: f64) -> TransitionMatrix {
        let n = self.len();
        let r = self.spec.rank();
        let phases = self.phases(t);
        let by_difference: Vec<Complex64> =
            (0..n).map(|d| self.entry_for_difference(&phases, &self.coords[d * r..(d + 1) * r])).collect();
        let orders = self.spec.orders();
        let matrix = ComplexMatrix::from_fn(n, n, |u, v| {
            let cu = &self.coords[u * r..(u + 1) * r];
            let cv = &self.coords[v * r..(v + 1) * r];
            let d = cu.iter().zip(cv).zip(orders).fold(0, |acc, ((&a, &b), &m)| acc * m + (a + m - b) % m);
            by_difference[d]
        });
        TransitionMatrix { time: t, matrix }
    }

    /// `exp(iλ_g t)` for every `g`.
    pub(crate) fn phases(&self, t: f64) -> Vec<Complex64> {
        self.values.iter().map(|&lambda| Complex64::new(libm::cos(lambda * t), libm::sin(lambda * t))).collect()
    }

    /// `(1/|Γ|) Σ_g phase_g·χ_g(d)`.
    ///
    /// `d` and `−d` give the same value; the sum is always evaluated at the
    /// lexicographically smaller of the two so that `H(t)` is exactly symmetric.
    pub(crate) fn entry_for_difference(&self, phases: &[Complex64], d: &[usize]) -> Complex64 {
        let r = self.spec.rank();
        let minus: Vec<usize> = d.iter().zip(self.spec.orders()).map(|(&x, &n)| (n - x) % n).collect();
        let d = if minus.as_slice() < d { minus.as_slice() } else { d };
        let sum = phases.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (g, &p)| {
            let e = character_exponent(&self.spec, &self.coords[g * r..(g + 1) * r], d);
            acc + p * self.roots[e]
        });
        sum / self.len() as f64
    }
}

/// Eigenvalues for every element, in lexicographic order.
pub fn full_spectrum(spec: &GroupSpec, set: &ConnectionSet) -> Result<Spectrum> {
    if set.spec() != spec {
        return Err(Error::SpecMismatch(format!("connection set lives in {}, not {spec}", set.spec())));
    }
    let reducer = Reducer::new(spec.level())?;
    let roots = roots_of_unity(spec.level());
    let coords = spec.coordinate_table();
    let r = spec.rank();
    let n = spec.size();
    let mut exact = Vec::with_capacity(n);
    let mut reduced = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for x in 0..n {
        let cx = &coords[x * r..(x + 1) * r];
        let mut lambda = CyclotomicInt::zero(spec.level())?;
        for &g in set.indices() {
            lambda.add_monomial(character_exponent(spec, cx, &coords[g * r..(g + 1) * r]), 1)?;
        }
        let z = lambda.to_complex();
        if z.im.abs() >= REALITY_TOLERANCE {
            return Err(Error::Inconsistency(format!("eigenvalue {x} has imaginary part {}", z.im)));
        }
        reduced.push(reducer.reduce(&lambda)?);
        values.push(z.re);
        exact.push(lambda);
    }
    if integer_of_reduced(&reduced[0]) != Some(set.len() as i64) {
        return Err(Error::Inconsistency("trivial character does not give |S|".into()));
    }
    Ok(Spectrum { spec: spec.clone(), set: set.clone(), reducer, exact, reduced, values, roots, coords })
}

/// 0/1 adjacency matrix, `A_{u,v} = 1` iff `u − v ∈ S`.
pub fn adjacency_matrix(spec: &GroupSpec, set: &ConnectionSet) -> Result<DenseMatrix<i64>> {
    if set.spec() != spec {
        return Err(Error::SpecMismatch("connection set from another group".into()));
    }
    let n = spec.size();
    let r = spec.rank();
    let orders = spec.orders();
    let coords = spec.coordinate_table();
    let mut member = alloc::vec![false; n];
    for &g in set.indices() {
        member[g] = true;
    }
    Ok(DenseMatrix::from_fn(n, n, |u, v| {
        let d = coords[u * r..(u + 1) * r]
            .iter()
            .zip(&coords[v * r..(v + 1) * r])
            .zip(orders)
            .fold(0, |acc, ((&a, &b), &m)| acc * m + (a + m - b) % m);
        i64::from(member[d])
    }))
}

/// A transition matrix `H(t) = exp(itA)` at a recorded time.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub time: f64,
    pub matrix: ComplexMatrix,
}

/// `H(t)` built from the spectral decomposition.
pub fn transition_matrix_spectral(spec: &GroupSpec, set: &ConnectionSet, t: f64) -> Result<TransitionMatrix> {
    Ok(full_spectrum(spec, set)?.transition_matrix(t))
}

/// A single entry of `H(t)` from a precomputed spectrum.
pub fn transition_entry(spectrum: &Spectrum, u: &GroupElement, v: &GroupElement, t: f64) -> Result<Complex64> {
    spectrum.transition_entry(u, v, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn circulant(n: usize, s: &[usize]) -> (GroupSpec, ConnectionSet) {
        let spec = GroupSpec::cyclic(n).unwrap();
        let raw: Vec<_> = s.iter().map(|&g| spec.element(&[g]).unwrap()).collect();
        let set = validate_connection_set(&spec, &raw).unwrap();
        (spec, set)
    }

    fn ints(spectrum: &Spectrum) -> Vec<i64> {
        (0..spectrum.len()).map(|i| spectrum.integer_value(i).unwrap()).collect()
    }

    fn cabs(z: Complex64) -> f64 {
        z.norm_sqr().sqrt()
    }

    #[test]
    fn connection_set_validation() {
        let z6 = GroupSpec::cyclic(6).unwrap();
        let e = |g| z6.element(&[g]).unwrap();
        let ok = validate_connection_set(&z6, &[e(1), e(5), e(1)]).unwrap();
        assert_eq!(ok.len(), 2);
        assert_eq!(validate_connection_set(&z6, &[e(1), e(2)]).unwrap_err(), Error::Asymmetric { element: "1".into() });
        let z4 = GroupSpec::cyclic(4).unwrap();
        let f = |g| z4.element(&[g]).unwrap();
        assert_eq!(validate_connection_set(&z4, &[f(0), f(2)]).unwrap_err(), Error::Loop);
    }

    #[test]
    fn character_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let e4 = |g| z4.element(&[g]).unwrap();
        for g in 0..4 {
            assert_eq!(character(&z4, &z4.zero(), &e4(g)).unwrap().as_integer().unwrap(), Some(1));
        }
        let chi = character(&z4, &e4(1), &e4(1)).unwrap();
        assert_eq!(chi.coeffs(), CyclotomicInt::root(1, 4).unwrap().coeffs());

        let z6 = GroupSpec::cyclic(6).unwrap();
        let e6 = |g| z6.element(&[g]).unwrap();
        for x in 0..6 {
            let sign = if x % 2 == 0 { 1 } else { -1 };
            assert_eq!(character(&z6, &e6(3), &e6(x)).unwrap().as_integer().unwrap(), Some(sign));
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let (spec, set) = circulant(6, &[1, 5]);
        let lam = |x| eigenvalue(&spec.element(&[x]).unwrap(), &set).unwrap().as_integer().unwrap();
        assert_eq!(lam(0), Some(2));
        assert_eq!(lam(1), Some(1));
        assert_eq!(lam(3), Some(-2));

        let cube = GroupSpec::cube(3).unwrap();
        let raw = [cube.element(&[0, 1, 0]).unwrap(), cube.element(&[1, 1, 0]).unwrap()];
        let set = validate_connection_set(&cube, &raw).unwrap();
        for x in cube.elements() {
            let c = x.coords();
            let expected = (-1i64).pow(c[1] as u32) + (-1i64).pow((c[0] + c[1]) as u32);
            assert_eq!(eigenvalue(&x, &set).unwrap().as_integer().unwrap(), Some(expected));
        }
    }

    #[test]
    fn full_spectrum_examples() {
        let (spec, set) = circulant(4, &[1, 3]);
        assert_eq!(ints(&full_spectrum(&spec, &set).unwrap()), [2, 0, -2, 0]);
        let (spec, set) = circulant(6, &[1, 5]);
        assert_eq!(ints(&full_spectrum(&spec, &set).unwrap()), [2, 1, -1, -2, -1, 1]);
        let (spec, set) = circulant(2, &[1]);
        assert_eq!(ints(&full_spectrum(&spec, &set).unwrap()), [1, -1]);

        let (spec, set) = circulant(8, &[1, 7]);
        let s = full_spectrum(&spec, &set).unwrap();
        assert_eq!(s.integer_value(1), None); // 2cos(π/4) = √2
        assert_eq!(s.integer_value(2), Some(0));
        assert_eq!(s.integer_difference(3, 1).unwrap(), None);
        assert_eq!(s.integer_difference(7, 1).unwrap(), Some(0));
        assert!((s.value(1) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn adjacency_examples() {
        let (spec, set) = circulant(2, &[1]);
        assert_eq!(adjacency_matrix(&spec, &set).unwrap().as_slice(), &[0, 1, 1, 0]);
        let (spec, set) = circulant(4, &[1, 3]);
        let a = adjacency_matrix(&spec, &set).unwrap();
        assert_eq!(a.as_slice(), &[0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0]);

        // Example graph on Z2^3: two disjoint 4-cycles split by the last coordinate.
        let cube = GroupSpec::cube(3).unwrap();
        let raw = [cube.element(&[0, 1, 0]).unwrap(), cube.element(&[1, 1, 0]).unwrap()];
        let set = validate_connection_set(&cube, &raw).unwrap();
        let a = adjacency_matrix(&cube, &set).unwrap();
        for u in 0..8 {
            assert_eq!(a.row(u).iter().sum::<i64>(), 2);
            assert_eq!(a[(u, u)], 0);
            for v in 0..8 {
                assert_eq!(a[(u, v)], a[(v, u)]);
                if u % 2 != v % 2 {
                    assert_eq!(a[(u, v)], 0, "edge across components {u}-{v}");
                }
            }
        }
        // each component is a single cycle: 0 -> (0,1,0) -> (1,0,0) -> (1,1,0) -> 0
        let path = [0usize, 2, 4, 6, 0];
        for w in path.windows(2) {
            assert_eq!(a[(w[0], w[1])], 1);
        }
    }

    #[test]
    fn transition_examples() {
        let (spec, set) = circulant(2, &[1]);
        let h = transition_matrix_spectral(&spec, &set, 0.0).unwrap();
        assert!(h.matrix.max_abs_diff(&ComplexMatrix::identity(2, Complex64::new(1.0, 0.0))) < 1e-15);
        let h = transition_matrix_spectral(&spec, &set, PI / 2.0).unwrap();
        assert!(cabs(h.matrix[(0, 0)]) < 1e-15);
        assert!(cabs(h.matrix[(0, 1)] - Complex64::new(0.0, 1.0)) < 1e-15);

        let (spec, set) = circulant(4, &[1, 3]);
        let h = transition_matrix_spectral(&spec, &set, PI / 2.0).unwrap();
        assert!((cabs(h.matrix[(0, 2)]) - 1.0).abs() < 1e-12);

        let (spec, set) = circulant(6, &[1, 5]);
        let s = full_spectrum(&spec, &set).unwrap();
        let e = |g| spec.element(&[g]).unwrap();
        let t = 2.0 * PI / 3.0;
        assert!(cabs(s.transition_entry(&e(0), &e(0), 0.0).unwrap() - 1.0) < 1e-15);
        let beta = s.transition_entry(&e(3), &e(0), t).unwrap();
        assert!(cabs(beta - Complex64::new(0.0, -(3f64.sqrt()) / 2.0)) < 1e-10);
        let alpha = s.transition_entry(&e(4), &e(4), t).unwrap();
        assert!(cabs(alpha - Complex64::new(-0.5, 0.0)) < 1e-10);
    }

    fn small_graph() -> impl Strategy<Value = (GroupSpec, ConnectionSet)> {
        proptest::collection::vec(2usize..7, 1..3).prop_flat_map(|orders| {
            let spec = GroupSpec::new(&orders).unwrap();
            let n = spec.size();
            proptest::collection::vec(1..n, 0..4).prop_map(move |picks| {
                let mut raw = Vec::new();
                for i in picks {
                    let g = spec.element_at(i).unwrap();
                    raw.push(spec.neg(&g).unwrap());
                    raw.push(g);
                }
                let set = validate_connection_set(&spec, &raw).unwrap();
                (spec.clone(), set)
            })
        })
    }

    proptest! {
        #[test]
        fn characters_are_symmetric_and_multiplicative((spec, _set) in small_graph(), i in 0usize..36, j in 0usize..36, k in 0usize..36) {
            let n = spec.size();
            let (x, g, h) = (spec.element_at(i % n).unwrap(), spec.element_at(j % n).unwrap(), spec.element_at(k % n).unwrap());
            let (xg, gx) = (character(&spec, &x, &g).unwrap(), character(&spec, &g, &x).unwrap());
            prop_assert_eq!(xg.coeffs(), gx.coeffs());
            let lhs = character(&spec, &x, &spec.add(&g, &h).unwrap()).unwrap();
            let rhs = character(&spec, &x, &g).unwrap().mul(&character(&spec, &x, &h).unwrap()).unwrap();
            prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
        }

        #[test]
        fn decomposition_reconstructs_adjacency((spec, set) in small_graph()) {
            let s = full_spectrum(&spec, &set).unwrap();
            let a = adjacency_matrix(&spec, &set).unwrap();
            let n = spec.size();
            let mut sum = ComplexMatrix::zeros(n, n);
            for (x, el) in spec.elements().enumerate() {
                let e = eigenprojector(&spec, &el).unwrap();
                sum = sum.add(&e.scale(Complex64::new(s.value(x), 0.0))).unwrap();
                // eigenvector property
                let p = eigenvector(&spec, &el).unwrap();
                let ap = a.map(|v| Complex64::new(v as f64, 0.0)).matvec(&p).unwrap();
                for (lhs, rhs) in ap.iter().zip(&p) {
                    prop_assert!(cabs(*lhs - rhs * s.value(x)) < 1e-9);
                }
            }
            prop_assert!(sum.max_abs_diff(&a.map(|v| Complex64::new(v as f64, 0.0))) < 1e-9);
            for x in 0..n {
                prop_assert!(s.exact(x).to_complex().im.abs() < 1e-10);
            }
        }

        #[test]
        fn walk_is_a_unitary_group((spec, set) in small_graph(), t1 in -5.0f64..5.0, t2 in -5.0f64..5.0) {
            let s = full_spectrum(&spec, &set).unwrap();
            let n = spec.size();
            let h0 = s.transition_matrix(0.0);
            prop_assert!(h0.matrix.max_abs_diff(&ComplexMatrix::identity(n, Complex64::new(1.0, 0.0))) < 1e-12);
            let h1 = s.transition_matrix(t1);
            let h2 = s.transition_matrix(t2);
            let h12 = s.transition_matrix(t1 + t2);
            prop_assert!(h1.matrix.matmul(&h2.matrix).unwrap().max_abs_diff(&h12.matrix) < 1e-8);
            prop_assert!(h1.matrix.unitarity_defect() < 1e-9);
            prop_assert!(h1.matrix.symmetry_defect() < 1e-12);
            let u = spec.element_at(n - 1).unwrap();
            let v = spec.zero();
            prop_assert!(cabs(s.transition_entry(&u, &v, t1).unwrap() - h1.matrix[(n - 1, 0)]) < 1e-12);
        }
    }
}
