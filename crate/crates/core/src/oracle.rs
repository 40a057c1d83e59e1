//! Brute-force ground truth: every subset of `[1, N]` (or `[-N, N]`), its
//! exact normalized convolution vector, and how far the resulting cloud sits
//! from a polytope in both directions.

use std::collections::HashSet;

use num_traits::Zero;
use rayon::prelude::*;

use crate::convolution::{conv_diff, conv_sum, IntegerSet};
use crate::error::{Error, Result};
use crate::hull::{linf_distance_to_hull, Polytope};
use crate::lp::DEFAULT_PIVOT_BUDGET;
use crate::rational::{int, linf_distance, ratio, Rational};
use crate::Kind;

pub const MAX_DIFF_N: usize = 22;
pub const MAX_SUM_N: usize = 10;

/// The deduplicated set of normalized vectors over all subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumCloud {
    pub kind: Kind,
    pub n: usize,
    pub xs: Vec<usize>,
    /// Sorted by raw counts, so the order is reproducible.
    pub points: Vec<Vec<Rational>>,
}

impl SpectrumCloud {
    pub fn d(&self) -> usize {
        self.xs.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Size of the ambient interval: `N` or `2N + 1`.
pub fn ambient_size(kind: Kind, n: usize) -> usize {
    match kind {
        Kind::Diff => n,
        Kind::Sum => 2 * n + 1,
    }
}

fn check_points(xs: &[usize]) -> Result<()> {
    if xs.is_empty() || xs[0] == 0 || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPoints(format!(
            "{xs:?} must be a nonempty strictly increasing list of positive shifts"
        )));
    }
    Ok(())
}

fn reverse(mask: u64, width: usize) -> u64 {
    mask.reverse_bits() >> (64 - width)
}

/// Convolution counts of the subset encoded by `mask`, via bit tricks.
///
/// For differences bit `i` stands for `i + 1 ∈ [1, N]`; for sums bit `i`
/// stands for `i - N ∈ [-N, N]`.
pub fn fast_counts(kind: Kind, n: usize, mask: u64, xs: &[usize]) -> Vec<u32> {
    match kind {
        Kind::Diff => xs
            .iter()
            .map(|&x| if x >= 64 { 0 } else { (mask & (mask >> x)).count_ones() })
            .collect(),
        Kind::Sum => {
            // a + b = x  ⇔  i_a + i_b = x + 2N, and bit k of the reversal
            // is bit 2N - k of the mask.
            let rev = reverse(mask, 2 * n + 1);
            xs.iter()
                .map(|&x| if x >= 64 { 0 } else { (mask & (rev << x)).count_ones() })
                .collect()
        }
    }
}

/// The subset a mask encodes, under the same bit convention.
pub fn mask_to_set(kind: Kind, n: usize, mask: u64) -> IntegerSet {
    let (lo, hi, offset) = match kind {
        Kind::Diff => (1, n as i64, 1),
        Kind::Sum => (-(n as i64), n as i64, -(n as i64)),
    };
    let width = ambient_size(kind, n);
    let elements = (0..width).filter(|&i| mask >> i & 1 == 1).map(|i| i as i64 + offset);
    IntegerSet::new(elements, lo, hi).expect("mask fits the ambient range")
}

/// Convolution counts by direct recount over the explicit set.
pub fn direct_counts(kind: Kind, n: usize, mask: u64, xs: &[usize]) -> Vec<u32> {
    let set = mask_to_set(kind, n, mask);
    xs.iter()
        .map(|&x| match kind {
            Kind::Diff => conv_diff(&set, x as i64) as u32,
            Kind::Sum => conv_sum(&set, x as i64) as u32,
        })
        .collect()
}

/// Enumerate `S_N(x)` (differences) or `T_N(x)` (sums) exactly.
///
/// Difference vectors are invariant under `A ↦ N + 1 - A`, so for `Diff`
/// only masks no larger than their bit reversal are visited.
pub fn enumerate_spectrum(kind: Kind, n: usize, xs: &[usize]) -> Result<SpectrumCloud> {
    check_points(xs)?;
    let cap = match kind {
        Kind::Diff => MAX_DIFF_N,
        Kind::Sum => MAX_SUM_N,
    };
    if n == 0 || n > cap {
        return Err(Error::EnumerationCap {
            kind: kind.as_str(),
            n,
            cap,
        });
    }
    let width = ambient_size(kind, n);
    let seen: HashSet<Vec<u32>> = (0..1u64 << width)
        .into_par_iter()
        .filter(|&mask| kind == Kind::Sum || mask <= reverse(mask, width))
        .fold(HashSet::new, |mut acc, mask| {
            acc.insert(fast_counts(kind, n, mask, xs));
            acc
        })
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        });
    let mut counts: Vec<Vec<u32>> = seen.into_iter().collect();
    counts.sort_unstable();
    let size = width as i64;
    let points = counts
        .into_iter()
        .map(|c| c.into_iter().map(|v| ratio(v as i64, size)).collect())
        .collect();
    Ok(SpectrumCloud {
        kind,
        n,
        xs: xs.to_vec(),
        points,
    })
}

/// Two-sided distance between a brute-force cloud and a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnclosureReport {
    pub n: usize,
    pub cloud_size: usize,
    /// `max_{s ∈ cloud} dist∞(s, P)`.
    pub forward_max: Rational,
    /// `forward_max · N`.
    pub forward_scaled: Rational,
    /// `max_{h ∈ probes} min_{s ∈ cloud} ‖s − h‖∞`, where the probes are the
    /// corners of `P` and the midpoints of all corner pairs.
    pub converse_max: Rational,
    /// `converse_max · N`.
    pub converse_scaled: Rational,
    /// Forward queries answered by the exact LP rather than the nearest-corner
    /// fallback.
    pub exact_queries: usize,
}

impl EnclosureReport {
    pub fn all_exact(&self) -> bool {
        self.exact_queries == self.cloud_size
    }
}

/// Forward and converse distances between `cloud` and `p`.
pub fn enclosure_report(cloud: &SpectrumCloud, p: &Polytope) -> Result<EnclosureReport> {
    if cloud.d() != p.d {
        return Err(Error::DimensionMismatch {
            expected: p.d,
            got: cloud.d(),
        });
    }
    if cloud.is_empty() {
        return Err(Error::Empty("spectrum cloud"));
    }
    let corners = p.points();
    let distances = cloud
        .points
        .par_iter()
        .map(|q| linf_distance_to_hull(&corners, q, DEFAULT_PIVOT_BUDGET))
        .collect::<Result<Vec<_>>>()?;
    let exact_queries = distances.iter().filter(|r| r.exact).count();
    let forward_max = distances.into_iter().map(|r| r.value).max().unwrap_or_else(Rational::zero);

    let half = ratio(1, 2);
    let mut probes = corners.clone();
    for i in 0..corners.len() {
        for j in i + 1..corners.len() {
            probes.push(
                corners[i]
                    .iter()
                    .zip(&corners[j])
                    .map(|(a, b)| (a + b) * &half)
                    .collect(),
            );
        }
    }
    let converse_max = probes
        .par_iter()
        .map(|h| {
            cloud
                .points
                .iter()
                .map(|s| linf_distance(s, h))
                .min()
                .expect("cloud is nonempty")
        })
        .max()
        .unwrap_or_else(Rational::zero);
    let scale = int(cloud.n as i64);
    Ok(EnclosureReport {
        n: cloud.n,
        cloud_size: cloud.len(),
        forward_scaled: &forward_max * &scale,
        forward_max,
        converse_scaled: &converse_max * &scale,
        converse_max,
        exact_queries,
    })
}
