//! Exact convolution counts of indicator functions, over the integers and
//! over the cyclic groups `Z_M`.
//!
//! Every count is of *ordered* pairs. In particular `conv_sum(A, 2b)` picks up
//! the pair `(b, b)` exactly once when `b ∈ A`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of integers inside a fixed ambient interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerSet {
    elements: Vec<i64>,
    lo: i64,
    hi: i64,
}

impl IntegerSet {
    /// Builds a set from arbitrary elements; they are sorted and deduplicated.
    /// Fails if any element falls outside `[lo, hi]`.
    pub fn new(elements: impl IntoIterator<Item = i64>, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidSet(format!("empty ambient range [{lo}, {hi}]")));
        }
        let mut elements: Vec<i64> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&e| e < lo || e > hi) {
            return Err(Error::InvalidSet(format!(
                "element {bad} outside ambient range [{lo}, {hi}]"
            )));
        }
        Ok(Self { elements, lo, hi })
    }

    pub fn empty(lo: i64, hi: i64) -> Result<Self> {
        Self::new(std::iter::empty(), lo, hi)
    }

    /// The whole ambient interval `[lo, hi]`.
    pub fn full(lo: i64, hi: i64) -> Result<Self> {
        Self::new(lo..=hi, lo, hi)
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn ambient(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `A + t`, with the ambient interval shifted along.
    pub fn shifted(&self, t: i64) -> Self {
        Self {
            elements: self.elements.iter().map(|e| e + t).collect(),
            lo: self.lo + t,
            hi: self.hi + t,
        }
    }

    /// Indicator string over the ambient interval, `'1'` for members.
    pub fn indicator_string(&self) -> String {
        (self.lo..=self.hi)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}} ⊆ [{}, {}]", self.lo, self.hi)
    }
}

/// A subset of `Z_M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicSet {
    modulus: u64,
    members: Vec<u64>,
}

impl CyclicSet {
    /// Residues are reduced modulo `modulus` and deduplicated.
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidSet("cyclic modulus must be at least 1".into()));
        }
        let m = modulus as i64;
        let mut members: Vec<u64> = residues
            .into_iter()
            .map(|r| r.rem_euclid(m) as u64)
            .collect();
        members.sort_unstable();
        members.dedup();
        Ok(Self { modulus, members })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        let r = x.rem_euclid(self.modulus as i64) as u64;
        self.members.binary_search(&r).is_ok()
    }
}

/// `1_A * 1_{-A}(x)`: ordered pairs `(a, b) ∈ A²` with `a - b = x`.
pub fn conv_diff(a: &IntegerSet, x: i64) -> u64 {
    a.elements.iter().filter(|&&e| a.contains(e - x)).count() as u64
}

/// `1_A * 1_A(x)`: ordered pairs `(a, b) ∈ A²` with `a + b = x`.
pub fn conv_sum(a: &IntegerSet, x: i64) -> u64 {
    a.elements.iter().filter(|&&e| a.contains(x - e)).count() as u64
}

/// `1_B * 1_{-B}(x)` in `Z_M`.
pub fn cyclic_conv_diff(b: &CyclicSet, x: i64) -> u64 {
    b.members
        .iter()
        .filter(|&&e| b.contains(e as i64 - x))
        .count() as u64
}

/// `1_P * 1_Q(x)` in `Z_M`; both sets must share the modulus.
pub fn cyclic_conv_pair(p: &CyclicSet, q: &CyclicSet, x: i64) -> Result<u64> {
    if p.modulus != q.modulus {
        return Err(Error::ModulusMismatch(p.modulus, q.modulus));
    }
    Ok(p.members
        .iter()
        .filter(|&&e| q.contains(x - e as i64))
        .count() as u64)
}
