//! The binary de Bruijn graph `G` on `2^d` vertices and the double de Bruijn
//! graph `G′` on `4^d` vertices.
//!
//! Vertices are integer masks. For a label of length `d`, bit `p - 1` of the
//! mask holds the symbol at string position `p`, position 1 being left-most.
//! So `"10"` is mask `0b01 = 1` and `"01"` is mask `0b10 = 2`.
//!
//! An edge of `G` drops the left-most symbol and appends a symbol on the
//! right; the edge is named by its source and the appended symbol. An edge of
//! `G′` moves `(s, t)` to `(s′, t′)` where `s′` prepends a symbol to `s` (and
//! drops its right-most one) and `t′` appends a symbol to `t` (and drops its
//! left-most one). Its label packs both symbols as `(s_symbol << 1) | t_symbol`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default ceiling on `d` for `G`.
pub const MAX_DEBRUIJN_D: usize = 8;
/// Default ceiling on `d` for `G′`.
pub const MAX_DOUBLE_D: usize = 4;
/// Hard ceiling imposed by the mask width, whatever the configured cap.
const MASK_BITS_LIMIT: usize = 15;

/// A binary string of length `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitLabel {
    d: usize,
    mask: usize,
}

impl BitLabel {
    pub fn new(d: usize, mask: usize) -> Result<Self> {
        if d == 0 || d > MASK_BITS_LIMIT {
            return Err(Error::DimensionOutOfRange { d, max: MASK_BITS_LIMIT });
        }
        if mask >> d != 0 {
            return Err(Error::InvalidSet(format!("mask {mask} does not fit in {d} bits")));
        }
        Ok(Self { d, mask })
    }

    /// Parses a string of `'0'`/`'1'` characters, left-most first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut mask = 0;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mask |= 1 << i,
                _ => return Err(Error::InvalidSet(format!("bad label {text:?}"))),
            }
        }
        Self::new(text.chars().count(), mask)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mask(&self) -> usize {
        self.mask
    }

    /// Symbol at 1-based string position `pos`.
    pub fn symbol(&self, pos: usize) -> u8 {
        debug_assert!((1..=self.d).contains(&pos));
        ((self.mask >> (pos - 1)) & 1) as u8
    }

    /// Drop the left-most symbol and append `symbol` on the right.
    pub fn shift_append(&self, symbol: u8) -> Self {
        Self {
            d: self.d,
            mask: (self.mask >> 1) | ((symbol as usize & 1) << (self.d - 1)),
        }
    }

    /// Prepend `symbol` on the left and drop the right-most symbol.
    pub fn shift_prepend(&self, symbol: u8) -> Self {
        let full = (1 << self.d) - 1;
        Self {
            d: self.d,
            mask: ((self.mask << 1) & full) | (symbol as usize & 1),
        }
    }
}

impl fmt::Display for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 1..=self.d {
            write!(f, "{}", self.symbol(pos))?;
        }
        Ok(())
    }
}

/// 1 iff `v` has a 1 at position `d - j + 1`: the vertex part of the
/// contribution to `1_A * 1_{-A}(j)` of an edge out of `v` that appends a 1.
pub fn vertex_conv_contribution(v: &BitLabel, j: usize) -> Result<u8> {
    if j == 0 || j > v.d {
        return Err(Error::ShiftOutOfRange { j, d: v.d });
    }
    Ok(v.symbol(v.d - j + 1))
}

/// Names an edge by its source vertex and its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    pub source: usize,
    pub label: u8,
}

/// A directed graph in which every vertex has the same out-degree and the
/// out-edges of a vertex are numbered by their labels `0..out_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    out_degree: usize,
    targets: Vec<usize>,
}

impl Digraph {
    pub fn from_fn(
        vertex_count: usize,
        out_degree: usize,
        target: impl Fn(usize, u8) -> usize,
    ) -> Self {
        let mut targets = Vec::with_capacity(vertex_count * out_degree);
        for v in 0..vertex_count {
            for label in 0..out_degree {
                let w = target(v, label as u8);
                assert!(w < vertex_count, "edge target {w} out of range");
                targets.push(w);
            }
        }
        Self {
            vertex_count,
            out_degree,
            targets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn out_degree(&self) -> usize {
        self.out_degree
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn edge_index(&self, e: EdgeId) -> usize {
        e.source * self.out_degree + e.label as usize
    }

    pub fn edge_at(&self, index: usize) -> EdgeId {
        EdgeId {
            source: index / self.out_degree,
            label: (index % self.out_degree) as u8,
        }
    }

    pub fn target(&self, e: EdgeId) -> usize {
        self.targets[self.edge_index(e)]
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.source < self.vertex_count && (e.label as usize) < self.out_degree
    }

    /// Edges in `(source, label)` order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).map(|i| self.edge_at(i))
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = EdgeId> {
        (0..self.out_degree as u8).map(move |label| EdgeId { source: v, label })
    }

    /// The edge `u → v`, if any. Both graphs here have no parallel edges,
    /// so the lowest label wins only in graphs that do.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        self.out_edges(u).find(|&e| self.target(e) == v)
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &w in &self.targets {
            deg[w] += 1;
        }
        deg
    }

    /// Vertices reachable from `start` following edges forward.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for e in self.out_edges(v) {
                let w = self.target(e);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Shortest edge path from `start` to the nearest vertex in `goal`
    /// (empty if `start` is already in it).
    pub fn shortest_path_to(&self, start: usize, goal: &[bool]) -> Option<Vec<EdgeId>> {
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            if goal[v] {
                let mut path = Vec::new();
                let mut at = v;
                while let Some(e) = parent[at] {
                    path.push(e);
                    at = e.source;
                }
                path.reverse();
                return Some(path);
            }
            for e in self.out_edges(v) {
                let w = self.target(e);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Shared behaviour of `G` and `G′`.
pub trait ShiftGraph {
    /// Label length `d`.
    fn d(&self) -> usize;

    fn digraph(&self) -> &Digraph;

    /// Edge labels which, fed in order from any vertex, arrive at `target`
    /// after exactly `d` steps.
    fn homing_sequence(&self, target: usize) -> Vec<u8>;
}

fn check_d(d: usize, max: usize) -> Result<()> {
    if d == 0 || d > max || d > MASK_BITS_LIMIT {
        return Err(Error::DimensionOutOfRange { d, max: max.min(MASK_BITS_LIMIT) });
    }
    Ok(())
}

/// The de Bruijn graph `G` (with loops) on binary strings of length `d`.
#[derive(Clone, Debug)]
pub struct DeBruijnGraph {
    d: usize,
    graph: Digraph,
}

impl DeBruijnGraph {
    pub fn build(d: usize) -> Result<Self> {
        Self::build_with_cap(d, MAX_DEBRUIJN_D)
    }

    pub fn build_with_cap(d: usize, max_d: usize) -> Result<Self> {
        check_d(d, max_d)?;
        let high = d - 1;
        let graph = Digraph::from_fn(1 << d, 2, |v, s| (v >> 1) | ((s as usize) << high));
        Ok(Self { d, graph })
    }

    pub fn label(&self, v: usize) -> BitLabel {
        BitLabel { d: self.d, mask: v }
    }

    pub fn edge(&self, source: &BitLabel, symbol: u8) -> EdgeId {
        EdgeId {
            source: source.mask,
            label: symbol,
        }
    }
}

impl ShiftGraph for DeBruijnGraph {
    fn d(&self) -> usize {
        self.d
    }

    fn digraph(&self) -> &Digraph {
        &self.graph
    }

    fn homing_sequence(&self, target: usize) -> Vec<u8> {
        let label = self.label(target);
        (1..=self.d).map(|p| label.symbol(p)).collect()
    }
}

/// A vertex `(s, t)` of `G′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleVertex {
    pub s: BitLabel,
    pub t: BitLabel,
}

impl DoubleVertex {
    pub fn new(s: BitLabel, t: BitLabel) -> Result<Self> {
        if s.d != t.d {
            return Err(Error::DimensionMismatch { expected: s.d, got: t.d });
        }
        Ok(Self { s, t })
    }

    /// Vertex index in `G′`: `(s.mask << d) | t.mask`.
    pub fn index(&self) -> usize {
        (self.s.mask << self.s.d) | self.t.mask
    }

    pub fn from_index(d: usize, index: usize) -> Self {
        let low = (1 << d) - 1;
        Self {
            s: BitLabel { d, mask: index >> d },
            t: BitLabel { d, mask: index & low },
        }
    }

    /// Successor along the edge that prepends `s_symbol` and appends `t_symbol`.
    pub fn step(&self, s_symbol: u8, t_symbol: u8) -> Self {
        Self {
            s: self.s.shift_prepend(s_symbol),
            t: self.t.shift_append(t_symbol),
        }
    }
}

impl fmt::Display for DoubleVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

pub fn pack_double_label(s_symbol: u8, t_symbol: u8) -> u8 {
    ((s_symbol & 1) << 1) | (t_symbol & 1)
}

pub fn unpack_double_label(label: u8) -> (u8, u8) {
    ((label >> 1) & 1, label & 1)
}

/// The double de Bruijn graph `G′` on pairs of binary strings of length `d`.
#[derive(Clone, Debug)]
pub struct DoubleDeBruijnGraph {
    d: usize,
    graph: Digraph,
}

impl DoubleDeBruijnGraph {
    pub fn build(d: usize) -> Result<Self> {
        Self::build_with_cap(d, MAX_DOUBLE_D)
    }

    pub fn build_with_cap(d: usize, max_d: usize) -> Result<Self> {
        check_d(d, max_d.min(MASK_BITS_LIMIT / 2))?;
        let graph = Digraph::from_fn(1 << (2 * d), 4, |v, label| {
            let (s_sym, t_sym) = unpack_double_label(label);
            DoubleVertex::from_index(d, v).step(s_sym, t_sym).index()
        });
        Ok(Self { d, graph })
    }

    pub fn vertex(&self, index: usize) -> DoubleVertex {
        DoubleVertex::from_index(self.d, index)
    }
}

impl ShiftGraph for DoubleDeBruijnGraph {
    fn d(&self) -> usize {
        self.d
    }

    fn digraph(&self) -> &Digraph {
        &self.graph
    }

    fn homing_sequence(&self, target: usize) -> Vec<u8> {
        let v = self.vertex(target);
        // The k-th prepend ends up at position d - k of s.
        (0..self.d)
            .map(|k| pack_double_label(v.s.symbol(self.d - k), v.t.symbol(k + 1)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> BitLabel {
        BitLabel::parse(s).unwrap()
    }

    #[test]
    fn mask_convention() {
        assert_eq!(label("10").mask(), 1);
        assert_eq!(label("01").mask(), 2);
        assert_eq!(label("10110").to_string(), "10110");
    }

    #[test]
    fn d2_has_4_vertices_and_8_edges() {
        let g = DeBruijnGraph::build(2).unwrap();
        assert_eq!(g.digraph().vertex_count(), 4);
        assert_eq!(g.digraph().edge_count(), 8);
    }

    #[test]
    fn shift_edge_example_d5() {
        let g = DeBruijnGraph::build(5).unwrap();
        let (from, to) = (label("10110"), label("01101"));
        assert!(g.digraph().edge_between(from.mask(), to.mask()).is_some());
        assert_eq!(from.shift_append(1), to);
    }

    #[test]
    fn d1_is_complete_with_loops() {
        let g = DeBruijnGraph::build(1).unwrap();
        let dg = g.digraph();
        for u in 0..2 {
            for v in 0..2 {
                assert!(dg.edge_between(u, v).is_some(), "{u}->{v}");
            }
        }
    }

    #[test]
    fn degrees_loops_and_connectivity() {
        for d in 1..=MAX_DEBRUIJN_D {
            let g = DeBruijnGraph::build(d).unwrap();
            let dg = g.digraph();
            assert_eq!(dg.edge_count(), 1 << (d + 1));
            assert!(dg.in_degrees().iter().all(|&k| k == 2));
            let loops: Vec<usize> = dg
                .edges()
                .filter(|&e| dg.target(e) == e.source)
                .map(|e| e.source)
                .collect();
            assert_eq!(loops, vec![0, (1 << d) - 1]);
            // Strongly connected: reverse reachability via out-edges from every vertex.
            assert!(dg.reachable_from(0).iter().all(|&r| r));
            for v in 0..dg.vertex_count() {
                assert!(dg.reachable_from(v)[0]);
            }
        }
    }

    #[test]
    fn edge_iff_overlap() {
        let g = DeBruijnGraph::build(4).unwrap();
        let dg = g.digraph();
        for u in 0..16 {
            for v in 0..16 {
                let (lu, lv) = (g.label(u).to_string(), g.label(v).to_string());
                assert_eq!(dg.edge_between(u, v).is_some(), lu[1..] == lv[..3]);
            }
        }
    }

    #[test]
    fn double_successors_d2() {
        let g = DoubleDeBruijnGraph::build(2).unwrap();
        let v = DoubleVertex::new(label("01"), label("10")).unwrap();
        let mut succ: Vec<String> = g
            .digraph()
            .out_edges(v.index())
            .map(|e| g.vertex(g.digraph().target(e)).to_string())
            .collect();
        succ.sort();
        assert_eq!(succ, ["(00,00)", "(00,01)", "(10,00)", "(10,01)"]);
    }

    #[test]
    fn double_graph_sizes_and_degrees() {
        let g = DoubleDeBruijnGraph::build(2).unwrap();
        assert_eq!(g.digraph().vertex_count(), 16);
        assert_eq!(g.digraph().edge_count(), 64);
        for d in 1..=3 {
            let g = DoubleDeBruijnGraph::build(d).unwrap();
            assert!(g.digraph().in_degrees().iter().all(|&k| k == 4));
        }
        let g = DoubleDeBruijnGraph::build(1).unwrap();
        let ones = DoubleVertex::new(label("1"), label("1")).unwrap().index();
        let e = EdgeId { source: ones, label: pack_double_label(1, 1) };
        assert_eq!(g.digraph().target(e), ones);
    }

    #[test]
    fn double_edges_follow_g() {
        // (s,t) -> (s',t') iff s' -> s and t -> t' in G.
        let d = 2;
        let g = DeBruijnGraph::build(d).unwrap();
        let gg = DoubleDeBruijnGraph::build(d).unwrap();
        for u in 0..16 {
            for v in 0..16 {
                let (a, b) = (gg.vertex(u), gg.vertex(v));
                let expect = g.digraph().edge_between(b.s.mask(), a.s.mask()).is_some()
                    && g.digraph().edge_between(a.t.mask(), b.t.mask()).is_some();
                assert_eq!(gg.digraph().edge_between(u, v).is_some(), expect);
            }
        }
    }

    #[test]
    fn homing_sequences_arrive_in_d_steps() {
        let g = DeBruijnGraph::build(3).unwrap();
        let gg = DoubleDeBruijnGraph::build(2).unwrap();
        fn run(dg: &Digraph, mut v: usize, seq: &[u8]) -> usize {
            for &l in seq {
                v = dg.target(EdgeId { source: v, label: l });
            }
            v
        }
        for target in 0..8 {
            for start in 0..8 {
                assert_eq!(run(g.digraph(), start, &g.homing_sequence(target)), target);
            }
        }
        for target in 0..16 {
            for start in 0..16 {
                assert_eq!(run(gg.digraph(), start, &gg.homing_sequence(target)), target);
            }
        }
    }

    #[test]
    fn conv_contribution_reads_position() {
        assert_eq!(vertex_conv_contribution(&label("10"), 1).unwrap(), 0);
        assert_eq!(vertex_conv_contribution(&label("01"), 1).unwrap(), 1);
        for j in 1..=4 {
            assert_eq!(vertex_conv_contribution(&label("0000"), j).unwrap(), 0);
        }
        assert!(vertex_conv_contribution(&label("01"), 3).is_err());
        assert!(vertex_conv_contribution(&label("01"), 0).is_err());
    }

    #[test]
    fn caps() {
        assert!(DeBruijnGraph::build(0).is_err());
        assert_eq!(
            DeBruijnGraph::build(9).unwrap_err(),
            Error::DimensionOutOfRange { d: 9, max: 8 }
        );
        assert!(DeBruijnGraph::build_with_cap(9, 10).is_ok());
        assert!(DoubleDeBruijnGraph::build(5).is_err());
    }
}
