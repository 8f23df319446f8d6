//! Finite abelian groups written as direct sums of cyclic groups.
//!
//! Elements are stored as canonical coordinate vectors `0 ≤ x_s < n_s`.
//! Everything that enumerates elements does so lexicographically, with the
//! first coordinate most significant; [`GroupSpec::index_of`] is the position
//! of an element in that enumeration and is the row/column index used by
//! every matrix in the crate.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// `ℤ_{n_1} ⊕ ℤ_{n_2} ⊕ … ⊕ ℤ_{n_r}` with every `n_s ≥ 2`.
///
/// Equality is structural: `ℤ2 ⊕ ℤ4` and `ℤ4 ⊕ ℤ2` are different specs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<usize>,
    size: usize,
    level: usize,
}

/// An element of a [`GroupSpec`], as canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<usize>,
}

/// Parity of the weight `Σ_s 2·a_s·d_s / n_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl GroupSpec {
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("at least one cyclic factor is required".into()));
        }
        let mut size = 1usize;
        let mut level = 1usize;
        for (s, &n) in orders.iter().enumerate() {
            if n < 2 {
                return Err(Error::InvalidGroup(format!(
                    "factor {} has order {n}; every order must be at least 2",
                    s + 1
                )));
            }
            size = size.checked_mul(n).ok_or(Error::Overflow)?;
            level = lcm(level, n).ok_or(Error::Overflow)?;
        }
        Ok(Self { orders: orders.to_vec(), size, level })
    }

    /// `ℤ_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    /// `ℤ_2^r`.
    pub fn cube(r: usize) -> Result<Self> {
        Self::new(&alloc::vec![2; r])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Number of cyclic factors `r`.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `|Γ|`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `L = lcm(n_1, …, n_r)`, the level at which all characters live.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_cubelike(&self) -> bool {
        self.orders.iter().all(|&n| n == 2)
    }

    /// Builds an element from canonical coordinates.
    pub fn element(&self, coords: &[usize]) -> Result<GroupElement> {
        let e = GroupElement { coords: coords.to_vec() };
        self.check(&e)?;
        Ok(e)
    }

    /// Builds an element from arbitrary integer coordinates, reducing each
    /// one modulo its factor order.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::SpecMismatch(format!("expected {} coordinates, got {}", self.rank(), coords.len())));
        }
        let coords = coords.iter().zip(&self.orders).map(|(&c, &n)| c.rem_euclid(n as i64) as usize).collect();
        Ok(GroupElement { coords })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: alloc::vec![0; self.rank()] }
    }

    /// Checks that `e` has the right number of coordinates, all canonical.
    pub fn check(&self, e: &GroupElement) -> Result<()> {
        if e.coords.len() != self.rank() {
            return Err(Error::SpecMismatch(format!(
                "{e} has {} coordinates, group has {}",
                e.coords.len(),
                self.rank()
            )));
        }
        for (s, (&x, &n)) in e.coords.iter().zip(&self.orders).enumerate() {
            if x >= n {
                return Err(Error::SpecMismatch(format!("coordinate {} of {e} is {x}, outside 0..{n}", s + 1)));
            }
        }
        Ok(())
    }

    /// Position of `e` in lexicographic order.
    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        self.check(e)?;
        Ok(e.coords.iter().zip(&self.orders).fold(0, |acc, (&x, &n)| acc * n + x))
    }

    /// The element at lexicographic position `index`.
    pub fn element_at(&self, index: usize) -> Result<GroupElement> {
        if index >= self.size {
            return Err(Error::SpecMismatch(format!("index {index} outside a group of order {}", self.size)));
        }
        let mut coords = alloc::vec![0; self.rank()];
        let mut rest = index;
        for (c, &n) in coords.iter_mut().zip(&self.orders).rev() {
            *c = rest % n;
            rest /= n;
        }
        Ok(GroupElement { coords })
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(move |i| self.element_at(i).expect("index in range"))
    }

    /// Coordinates of every element, flattened row by row in lexicographic
    /// order (`size × rank` entries).
    pub fn coordinate_table(&self) -> Vec<usize> {
        let r = self.rank();
        let mut table = alloc::vec![0; self.size * r];
        for i in 0..self.size {
            let mut rest = i;
            for s in (0..r).rev() {
                table[i * r + s] = rest % self.orders[s];
                rest /= self.orders[s];
            }
        }
        table
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a.coords.iter().zip(&b.coords).zip(&self.orders).map(|((&x, &y), &n)| (x + y) % n).collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a.coords.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Least `k ≥ 1` with `k·a = 0`.
    pub fn element_order(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        a.coords
            .iter()
            .zip(&self.orders)
            .try_fold(1usize, |acc, (&x, &n)| lcm(acc, n / gcd(n, x)).ok_or(Error::Overflow))
    }

    /// Whether `a ≠ 0` and `2a = 0`.
    pub fn is_involution(&self, a: &GroupElement) -> Result<bool> {
        Ok(self.element_order(a)? == 2)
    }

    /// Every element of order two, in lexicographic order.
    ///
    /// Each coordinate is `0` or `n_s/2`, the latter only for even `n_s`, so
    /// there are `2^e − 1` of them where `e` counts the even factors.
    pub fn involutions(&self) -> Vec<GroupElement> {
        let choices: Vec<Vec<usize>> =
            self.orders.iter().map(|&n| if n % 2 == 0 { alloc::vec![0, n / 2] } else { alloc::vec![0] }).collect();
        let mut out = Vec::new();
        let mut idx = alloc::vec![0usize; self.rank()];
        loop {
            let coords: Vec<usize> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            if coords.iter().any(|&x| x != 0) {
                out.push(GroupElement { coords });
            }
            // odometer, last coordinate fastest
            let mut s = self.rank();
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                idx[s] += 1;
                if idx[s] < choices[s].len() {
                    break;
                }
                idx[s] = 0;
            }
        }
    }

    /// The total order `x ⋗ y`: compare the first differing coordinate as
    /// an integer.
    pub fn compare_dot(&self, x: &GroupElement, y: &GroupElement) -> Result<Ordering> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.coords.cmp(&y.coords))
    }

    /// Parity of `wt(2a·d/n) = Σ_s 2·a_s·d_s/n_s` for an involution `a`.
    ///
    /// Each term is `0` when `a_s = 0` and `d_s` when `a_s = n_s/2`.
    pub fn parity_wt(&self, a: &GroupElement, d: &GroupElement) -> Result<Parity> {
        self.check_involution_coords(a)?;
        self.check(d)?;
        let weight: usize = a.coords.iter().zip(&d.coords).filter(|(&x, _)| x != 0).map(|(_, &y)| y).sum();
        Ok(if weight.is_multiple_of(2) { Parity::Even } else { Parity::Odd })
    }

    /// Errors unless every `a_s ∈ {0, n_s/2}` with `n_s` even and `a ≠ 0`.
    pub(crate) fn check_involution_coords(&self, a: &GroupElement) -> Result<()> {
        self.check(a)?;
        let ok =
            a.coords.iter().any(|&x| x != 0) && a.coords.iter().zip(&self.orders).all(|(&x, &n)| x == 0 || 2 * x == n);
        if ok {
            Ok(())
        } else {
            Err(Error::NotInvolution { element: format!("{a}"), order: self.element_order(a)? })
        }
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, n) in self.orders.iter().enumerate() {
            if s > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [x] = self.coords.as_slice() {
            return write!(f, "{x}");
        }
        f.write_str("(")?;
        for (s, x) in self.coords.iter().enumerate() {
            if s > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> Option<usize> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}
