//! Simple-cycle enumeration on `G` and `G′`, and the rational corner vector
//! each cycle contributes.
//!
//! A cycle of `G` of length `ℓ` spells a periodic binary string; one period
//! of it, read as a subset `C ⊆ Z_ℓ`, gives the corner
//! `ℓ⁻¹ (1_C * 1_{-C}(1), …, 1_C * 1_{-C}(d))`.
//!
//! A cycle of `G′` spells two periodic strings, one growing rightward (the
//! `t` side) and one growing leftward (the `s` side). They give a pair
//! `C′, C″ ⊆ Z_ℓ` and the corner `ℓ⁻¹ (1_{C′} * 1_{C″}(1), …, (d))`. The
//! rightward symbol appended at step `r` sits at residue `r + 1` and the
//! leftward symbol prepended at the same step at residue `-r`, matching the
//! fact that the two positions written by one edge always sum to 1.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convolution::{cyclic_conv_diff, cyclic_conv_pair, CyclicSet};
use crate::debruijn::{unpack_double_label, DeBruijnGraph, Digraph, DoubleDeBruijnGraph, EdgeId, ShiftGraph};
use crate::decomposition::Cycle;
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::Kind;

/// Default ceiling on the number of enumerated cycles.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

struct Johnson<'a> {
    graph: &'a Digraph,
    cap: usize,
    start: usize,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    path: Vec<EdgeId>,
    found: Vec<Cycle>,
}

impl Johnson<'_> {
    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            pending.append(&mut self.blocked_by[u]);
        }
    }

    fn circuit(&mut self, v: usize) -> Result<bool> {
        let mut closed = false;
        self.blocked[v] = true;
        for e in self.graph.out_edges(v) {
            let w = self.graph.target(e);
            if w < self.start {
                continue;
            }
            if w == self.start {
                if self.found.len() == self.cap {
                    return Err(Error::CycleCapExceeded { cap: self.cap });
                }
                let mut edges = self.path.clone();
                edges.push(e);
                self.found.push(Cycle::from_edges_unchecked(edges));
                closed = true;
            } else if !self.blocked[w] {
                self.path.push(e);
                let sub = self.circuit(w);
                self.path.pop();
                if sub? {
                    closed = true;
                }
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for e in self.graph.out_edges(v) {
                let w = self.graph.target(e);
                if w >= self.start && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        Ok(closed)
    }
}

/// All simple directed cycles (loops included), each rotated to start at its
/// smallest vertex. Cycles are ordered by start vertex, then by the label
/// order of the depth-first search; this order defines the cycle indices used
/// elsewhere.
pub fn enumerate_cycles(graph: &Digraph, cap: usize) -> Result<Vec<Cycle>> {
    let n = graph.vertex_count();
    let mut johnson = Johnson {
        graph,
        cap,
        start: 0,
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        path: Vec::new(),
        found: Vec::new(),
    };
    for s in 0..n {
        johnson.start = s;
        for v in s..n {
            johnson.blocked[v] = false;
            johnson.blocked_by[v].clear();
        }
        johnson.circuit(s)?;
    }
    Ok(johnson.found)
}

/// A point of `[0,1]^d` with one shared denominator, usually the length of
/// the cycle it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CornerVector {
    #[serde(rename = "num")]
    pub numerators: Vec<u64>,
    #[serde(rename = "den")]
    pub denominator: u64,
    /// Vertices of the source cycle in canonical rotation, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<usize>>,
}

impl CornerVector {
    pub fn new(numerators: Vec<u64>, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidSet("corner denominator must be positive".into()));
        }
        if let Some(n) = numerators.iter().find(|&&n| n > denominator) {
            return Err(Error::InvalidSet(format!(
                "corner coordinate {n}/{denominator} exceeds 1"
            )));
        }
        Ok(Self {
            numerators,
            denominator,
            cycle: None,
        })
    }

    pub fn with_cycle(mut self, cycle: &Cycle) -> Self {
        self.cycle = Some(cycle.vertices());
        self
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.numerators
            .iter()
            .map(|&n| ratio(n as i64, self.denominator as i64))
            .collect()
    }

    /// Each coordinate in lowest terms; equal keys mean equal points.
    pub fn value_key(&self) -> Vec<(u64, u64)> {
        self.numerators
            .iter()
            .map(|&n| {
                let g = n.gcd(&self.denominator);
                (n / g, self.denominator / g)
            })
            .collect()
    }

    /// Keep only the listed 0-based coordinates.
    pub fn select(&self, coordinates: &[usize]) -> Self {
        Self {
            numerators: coordinates.iter().map(|&i| self.numerators[i]).collect(),
            denominator: self.denominator,
            cycle: self.cycle.clone(),
        }
    }
}

/// One period of the string a `G` cycle spells: residue `r` is present iff
/// the edge taken at step `r` appends a 1.
pub fn cycle_to_cyclic_set(c: &Cycle) -> CyclicSet {
    let residues = c
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.label == 1)
        .map(|(r, _)| r as i64);
    CyclicSet::new(c.len() as u64, residues).expect("cycle length is positive")
}

/// The corner `ℓ⁻¹ (1_C * 1_{-C}(h))_{h=1..d}` of a `G` cycle.
pub fn corner_vector(c: &Cycle, d: usize) -> CornerVector {
    let set = cycle_to_cyclic_set(c);
    let numerators = (1..=d as i64).map(|h| cyclic_conv_diff(&set, h)).collect();
    CornerVector {
        numerators,
        denominator: c.len() as u64,
        cycle: Some(c.vertices()),
    }
}

/// The pair `(C′, C″)` of a `G′` cycle: `C′` holds `r + 1` for each step `r`
/// whose appended `t` symbol is 1, `C″` holds `-r` for each step whose
/// prepended `s` symbol is 1, both modulo `ℓ`.
pub fn cycle_to_pair_sets(c: &Cycle) -> (CyclicSet, CyclicSet) {
    let l = c.len() as u64;
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for (r, e) in c.edges().iter().enumerate() {
        let (s_sym, t_sym) = unpack_double_label(e.label);
        if t_sym == 1 {
            forward.push(r as i64 + 1);
        }
        if s_sym == 1 {
            backward.push(-(r as i64));
        }
    }
    (
        CyclicSet::new(l, forward).expect("cycle length is positive"),
        CyclicSet::new(l, backward).expect("cycle length is positive"),
    )
}

/// The corner `ℓ⁻¹ (1_{C′} * 1_{C″}(h))_{h=1..d}` of a `G′` cycle.
pub fn corner_vector_double(c: &Cycle, d: usize) -> CornerVector {
    let (forward, backward) = cycle_to_pair_sets(c);
    let numerators = (1..=d as i64)
        .map(|h| cyclic_conv_pair(&forward, &backward, h).expect("shared modulus"))
        .collect();
    CornerVector {
        numerators,
        denominator: c.len() as u64,
        cycle: Some(c.vertices()),
    }
}

/// Enumerated cycles with their corner vectors, index-aligned.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub kind: Kind,
    pub d: usize,
    pub cycles: Vec<Cycle>,
    pub corners: Vec<CornerVector>,
}

impl CandidateSet {
    /// Corners with repeated values removed, first occurrence kept.
    pub fn distinct_corners(&self) -> Vec<CornerVector> {
        let mut seen = HashSet::new();
        self.corners
            .iter()
            .filter(|c| seen.insert(c.value_key()))
            .cloned()
            .collect()
    }
}

/// Limits applied when building graphs and enumerating cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_d: usize,
    pub max_double_d: usize,
    pub max_cycles: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_d: crate::debruijn::MAX_DEBRUIJN_D,
            max_double_d: crate::debruijn::MAX_DOUBLE_D,
            max_cycles: DEFAULT_CYCLE_CAP,
        }
    }
}

/// Every cycle of `G` (for `Kind::Diff`) or `G′` (for `Kind::Sum`) together
/// with its corner vector.
pub fn candidate_corners(kind: Kind, d: usize, caps: Caps) -> Result<CandidateSet> {
    let cycles = match kind {
        Kind::Diff => {
            let g = DeBruijnGraph::build_with_cap(d, caps.max_d)?;
            enumerate_cycles(g.digraph(), caps.max_cycles)?
        }
        Kind::Sum => {
            let g = DoubleDeBruijnGraph::build_with_cap(d, caps.max_double_d)?;
            enumerate_cycles(g.digraph(), caps.max_cycles)?
        }
    };
    let corners = cycles
        .par_iter()
        .map(|c| match kind {
            Kind::Diff => corner_vector(c, d),
            Kind::Sum => corner_vector_double(c, d),
        })
        .collect();
    Ok(CandidateSet {
        kind,
        d,
        cycles,
        corners,
    })
}

/// Upper bound on the number of corners: `2^{d(d+1)}` for `G`,
/// `4^{d(d+1)}` for `G′`.
pub fn corner_count_bound(kind: Kind, d: usize) -> BigUint {
    let per = match kind {
        Kind::Diff => 1u32,
        Kind::Sum => 2,
    };
    BigUint::from(1u32) << (per as usize * d * (d + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::{conv_diff, IntegerSet};
    use crate::debruijn::{vertex_conv_contribution, BitLabel, DoubleVertex};

    fn m(s: &str) -> usize {
        BitLabel::parse(s).unwrap().mask()
    }

    fn g(d: usize) -> DeBruijnGraph {
        DeBruijnGraph::build(d).unwrap()
    }

    fn cycle(d: usize, labels: &[&str]) -> Cycle {
        let vs: Vec<usize> = labels.iter().map(|s| m(s)).collect();
        Cycle::from_vertices(g(d).digraph(), &vs).unwrap().canonical()
    }

    #[test]
    fn census_d1_d2() {
        let c1 = enumerate_cycles(g(1).digraph(), DEFAULT_CYCLE_CAP).unwrap();
        let mut v1: Vec<Vec<usize>> = c1.iter().map(|c| c.vertices()).collect();
        v1.sort();
        assert_eq!(v1, vec![vec![0], vec![0, 1], vec![1]]);

        let c2 = enumerate_cycles(g(2).digraph(), DEFAULT_CYCLE_CAP).unwrap();
        let mut lens: Vec<usize> = c2.iter().map(Cycle::len).collect();
        lens.sort();
        assert_eq!(lens, [1, 1, 2, 3, 3, 4]);
    }

    #[test]
    fn census_matches_known_counts() {
        // Simple-cycle counts of the binary de Bruijn graphs, with loops.
        for (d, count) in [(3, 19), (4, 179)] {
            let cs = enumerate_cycles(g(d).digraph(), DEFAULT_CYCLE_CAP).unwrap();
            assert_eq!(cs.len(), count);
            let distinct: HashSet<_> = cs.iter().collect();
            assert_eq!(distinct.len(), count);
            assert!(cs.iter().all(Cycle::is_canonical));
        }
        let gg = DoubleDeBruijnGraph::build(1).unwrap();
        assert_eq!(enumerate_cycles(gg.digraph(), DEFAULT_CYCLE_CAP).unwrap().len(), 24);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_cycles(g(3).digraph(), 10).unwrap_err(),
            Error::CycleCapExceeded { cap: 10 }
        );
        assert_eq!(enumerate_cycles(g(3).digraph(), 19).unwrap().len(), 19);
    }

    #[test]
    fn hamilton_cycles_exist() {
        for d in 1..=4 {
            let cs = enumerate_cycles(g(d).digraph(), DEFAULT_CYCLE_CAP).unwrap();
            assert!(cs.iter().all(|c| c.len() <= 1 << d));
            assert!(cs.iter().any(|c| c.len() == 1 << d));
        }
    }

    #[test]
    fn cyclic_sets_of_d2_cycles() {
        let set = |c: &Cycle| {
            let s = cycle_to_cyclic_set(c);
            (s.modulus(), s.members().to_vec())
        };
        assert_eq!(set(&cycle(2, &["11"])), (1, vec![0]));
        assert_eq!(set(&cycle(2, &["01", "10"])), (2, vec![0]));
        assert_eq!(set(&cycle(2, &["00", "01", "11", "10"])), (4, vec![0, 1]));
        assert_eq!(set(&cycle(2, &["00", "01", "10"])), (3, vec![0]));
        assert_eq!(set(&cycle(2, &["11", "10", "01"])), (3, vec![0, 1]));
        assert_eq!(set(&cycle(2, &["00"])), (1, vec![]));
    }

    #[test]
    fn corners_of_d2_cycles() {
        let coords = |labels: &[&str]| corner_vector(&cycle(2, labels), 2).coords();
        assert_eq!(coords(&["00"]), [ratio(0, 1), ratio(0, 1)]);
        assert_eq!(coords(&["11"]), [ratio(1, 1), ratio(1, 1)]);
        assert_eq!(coords(&["01", "10"]), [ratio(0, 1), ratio(1, 2)]);
        assert_eq!(coords(&["00", "01", "10"]), [ratio(0, 1), ratio(0, 1)]);
        assert_eq!(coords(&["11", "10", "01"]), [ratio(1, 3), ratio(1, 3)]);
        assert_eq!(coords(&["00", "01", "11", "10"]), [ratio(1, 4), ratio(0, 1)]);
    }

    #[test]
    fn corners_are_phase_independent() {
        for d in 1..=4 {
            for c in enumerate_cycles(g(d).digraph(), DEFAULT_CYCLE_CAP).unwrap() {
                let base = corner_vector(&c, d).value_key();
                for k in 1..c.len() {
                    assert_eq!(corner_vector(&c.rotated(k), d).value_key(), base);
                }
            }
        }
    }

    // Second route: sum the per-edge contributions around the cycle instead
    // of convolving the cyclic set.
    #[test]
    fn corner_matches_edge_contributions() {
        for d in 1..=4 {
            let graph = g(d);
            for c in enumerate_cycles(graph.digraph(), DEFAULT_CYCLE_CAP).unwrap() {
                let y = corner_vector(&c, d);
                for j in 1..=d {
                    let total: u64 = c
                        .edges()
                        .iter()
                        .filter(|e| e.label == 1)
                        .map(|e| vertex_conv_contribution(&graph.label(e.source), j).unwrap() as u64)
                        .sum();
                    assert_eq!(total, y.numerators[j - 1], "cycle {:?} j={j}", c.vertices());
                }
            }
        }
    }

    #[test]
    fn periodic_sets_approach_cyclic_counts() {
        let k = 7i64;
        for d in 1..=4 {
            for c in enumerate_cycles(g(d).digraph(), DEFAULT_CYCLE_CAP).unwrap() {
                let l = c.len() as i64;
                let set = cycle_to_cyclic_set(&c);
                let b = IntegerSet::new(
                    (1..=k * l).filter(|p| set.contains(p - 1)),
                    1,
                    k * l,
                )
                .unwrap();
                for j in 1..=d as i64 {
                    let exact = conv_diff(&b, j) as i64;
                    let periodic = k * cyclic_conv_diff(&set, j) as i64;
                    assert!(exact <= periodic && periodic - exact <= d as i64);
                }
            }
        }
    }

    #[test]
    fn double_loops() {
        let d = 2;
        let gg = DoubleDeBruijnGraph::build(d).unwrap();
        let zeros = DoubleVertex::from_index(d, 0).index();
        let ones = (1 << (2 * d)) - 1;
        let z = Cycle::from_vertices(gg.digraph(), &[zeros]).unwrap();
        let o = Cycle::from_vertices(gg.digraph(), &[ones]).unwrap();
        let (p, q) = cycle_to_pair_sets(&z);
        assert!(p.is_empty() && q.is_empty() && p.modulus() == 1);
        let (p, q) = cycle_to_pair_sets(&o);
        assert_eq!((p.members(), q.members()), (&[0][..], &[0][..]));
        assert_eq!(corner_vector_double(&z, d).coords(), [ratio(0, 1), ratio(0, 1)]);
        assert_eq!(corner_vector_double(&o, d).coords(), [ratio(1, 1), ratio(1, 1)]);
    }

    // Second route for G′: an edge contributes to shift j when it appends a
    // 1 on the t side and the new s label has a 1 at position j.
    #[test]
    fn double_corner_matches_edge_contributions() {
        let d = 2;
        let gg = DoubleDeBruijnGraph::build(d).unwrap();
        let dg = gg.digraph();
        let cs = enumerate_cycles(dg, DEFAULT_CYCLE_CAP).unwrap();
        for c in cs.iter().step_by(97) {
            let z = corner_vector_double(c, d);
            assert!(z.numerators.iter().all(|&n| n <= z.denominator));
            let (p, q) = cycle_to_pair_sets(c);
            assert!(p.len() <= c.len() && q.len() <= c.len());
            for j in 1..=d {
                let total = c
                    .edges()
                    .iter()
                    .filter(|e| e.label & 1 == 1)
                    .filter(|&&e| gg.vertex(dg.target(e)).s.symbol(j) == 1)
                    .count() as u64;
                assert_eq!(total, z.numerators[j - 1]);
            }
        }
    }

    #[test]
    fn candidate_bounds_small_d() {
        for d in 1..=3 {
            let cand = candidate_corners(Kind::Diff, d, Caps::default()).unwrap();
            assert!(BigUint::from(cand.distinct_corners().len()) <= corner_count_bound(Kind::Diff, d));
            assert!(cand.corners.iter().all(|c| c.denominator <= 1 << d));
        }
        let cand = candidate_corners(Kind::Sum, 1, Caps::default()).unwrap();
        assert!(BigUint::from(cand.distinct_corners().len()) <= corner_count_bound(Kind::Sum, 1));
        assert_eq!(corner_count_bound(Kind::Diff, 2), BigUint::from(64u32));
        assert_eq!(corner_count_bound(Kind::Sum, 1), BigUint::from(16u32));
    }

    #[test]
    fn corner_vector_validation() {
        assert!(CornerVector::new(vec![1, 2], 1).is_err());
        assert!(CornerVector::new(vec![0], 0).is_err());
        let c = CornerVector::new(vec![2, 0, 4], 4).unwrap();
        assert_eq!(c.value_key(), vec![(1, 2), (0, 1), (1, 1)]);
        assert_eq!(c.select(&[2, 0]).numerators, vec![4, 2]);
    }
}
