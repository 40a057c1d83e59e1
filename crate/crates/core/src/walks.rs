//! Sliding-window walks of integer sets on `G` and `G′`, their closure, and
//! the edge-traversal counts that turn a closed walk into a weighted graph.

use crate::convolution::IntegerSet;
use crate::debruijn::{BitLabel, Digraph, DoubleVertex, EdgeId, ShiftGraph};
use crate::error::{Error, Result};

/// A vertex sequence in which consecutive vertices are joined by an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<usize>,
}

impl Walk {
    pub fn new(graph: &Digraph, vertices: Vec<usize>) -> Result<Self> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= graph.vertex_count()) {
            return Err(Error::InvalidWalk(format!("vertex {v} not in graph")));
        }
        for pair in vertices.windows(2) {
            if graph.edge_between(pair[0], pair[1]).is_none() {
                return Err(Error::InvalidWalk(format!(
                    "no edge {} -> {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { vertices })
    }

    /// Start at `start` and follow the labelled out-edges in order.
    pub fn from_labels(graph: &Digraph, start: usize, labels: &[u8]) -> Self {
        let mut vertices = Vec::with_capacity(labels.len() + 1);
        vertices.push(start);
        let mut at = start;
        for &label in labels {
            at = graph.target(EdgeId { source: at, label });
            vertices.push(at);
        }
        Self { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of vertices `M` (edges are `M - 1`).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        !self.vertices.is_empty() && self.vertices.first() == self.vertices.last()
    }

    /// The traversed edges, in order.
    pub fn edges(&self, graph: &Digraph) -> Vec<EdgeId> {
        self.vertices
            .windows(2)
            .map(|p| {
                graph
                    .edge_between(p[0], p[1])
                    .expect("walk invariant: consecutive vertices are adjacent")
            })
            .collect()
    }
}

fn window_mask(set: &IntegerSet, positions: impl Iterator<Item = i64>) -> usize {
    positions
        .enumerate()
        .filter(|&(_, p)| set.contains(p))
        .fold(0, |mask, (bit, _)| mask | (1 << bit))
}

/// Walk of the length-`d` windows of the indicator string of `a` on `G`:
/// vertex `i` is positions `lo + i - 1 ..= lo + i + d - 2` of the ambient range.
pub fn encode_walk(a: &IntegerSet, d: usize) -> Result<Walk> {
    let (lo, hi) = a.ambient();
    let n = (hi - lo + 1) as usize;
    if n < d {
        return Err(Error::AmbientTooSmall { n, d });
    }
    let vertices = (0..=(n - d) as i64)
        .map(|i| window_mask(a, lo + i..lo + i + d as i64))
        .collect();
    Ok(Walk { vertices })
}

/// Walk of `a ⊆ [-N, N]` on `G′`. Step `k = 1, 2, …, N - d + 1` has `s` on
/// positions `-d + 2 - k ..= 1 - k` and `t` on positions `k ..= d + k - 1`,
/// both read left to right. Position `-N` is never read.
pub fn encode_walk_double(a: &IntegerSet, d: usize) -> Result<Walk> {
    let (lo, hi) = a.ambient();
    if lo != -hi || hi < 0 {
        return Err(Error::InvalidSet(format!(
            "double walks need a symmetric ambient range [-N, N], got [{lo}, {hi}]"
        )));
    }
    let n = hi as usize;
    if n < d {
        return Err(Error::AmbientTooSmall { n, d });
    }
    let di = d as i64;
    let vertices = (1..=(n - d + 1) as i64)
        .map(|k| {
            let s = window_mask(a, -di + 2 - k..=1 - k);
            let t = window_mask(a, k..=di + k - 1);
            (s << d) | t
        })
        .collect();
    Ok(Walk { vertices })
}

/// Close a walk by feeding the homing sequence of its first vertex, stopping
/// as soon as the walk returns there. Appends at most `d` vertices.
pub fn close_walk<G: ShiftGraph>(graph: &G, walk: &Walk) -> Result<Walk> {
    let first = *walk
        .vertices
        .first()
        .ok_or_else(|| Error::InvalidWalk("cannot close an empty walk".into()))?;
    let mut vertices = walk.vertices.clone();
    let dg = graph.digraph();
    for label in graph.homing_sequence(first) {
        if vertices.last() == Some(&first) {
            break;
        }
        let at = *vertices.last().unwrap();
        vertices.push(dg.target(EdgeId { source: at, label }));
    }
    if vertices.last() != Some(&first) {
        return Err(Error::Invariant(format!(
            "homing sequence failed to close walk at vertex {first}"
        )));
    }
    Ok(Walk { vertices })
}

/// Nonnegative integer weights on the edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    graph: Digraph,
    weights: Vec<u64>,
}

impl WeightedDigraph {
    pub fn zero(graph: &Digraph) -> Self {
        Self {
            graph: graph.clone(),
            weights: vec![0; graph.edge_count()],
        }
    }

    /// `weights` is indexed by [`Digraph::edge_index`].
    pub fn new(graph: &Digraph, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.edge_count(),
                got: weights.len(),
            });
        }
        Ok(Self {
            graph: graph.clone(),
            weights,
        })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, e: EdgeId) -> u64 {
        self.weights[self.graph.edge_index(e)]
    }

    pub fn add(&mut self, e: EdgeId, amount: u64) {
        let i = self.graph.edge_index(e);
        self.weights[i] += amount;
    }

    pub(crate) fn subtract(&mut self, e: EdgeId, amount: u64) {
        let i = self.graph.edge_index(e);
        self.weights[i] -= amount;
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Edges of positive weight, in edge order.
    pub fn support(&self) -> impl Iterator<Item = (EdgeId, u64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(i, &w)| (self.graph.edge_at(i), w))
    }

    pub fn out_weight(&self, v: usize) -> u64 {
        self.graph.out_edges(v).map(|e| self.weight(e)).sum()
    }

    pub fn in_weights(&self) -> Vec<u64> {
        let mut inflow = vec![0; self.graph.vertex_count()];
        for (e, w) in self.support() {
            inflow[self.graph.target(e)] += w;
        }
        inflow
    }

    /// Loops count on both sides, so including them is harmless.
    pub fn check_conservation(&self) -> Result<()> {
        for (v, inflow) in self.in_weights().into_iter().enumerate() {
            let outflow = self.out_weight(v);
            if inflow != outflow {
                return Err(Error::FlowViolation {
                    vertex: v,
                    inflow,
                    outflow,
                });
            }
        }
        Ok(())
    }
}

/// Count how often the closed walk crosses each edge.
pub fn edge_weights(graph: &Digraph, walk: &Walk) -> Result<WeightedDigraph> {
    if !walk.is_closed() {
        return Err(Error::WalkNotClosed);
    }
    let mut weighted = WeightedDigraph::zero(graph);
    for e in walk.edges(graph) {
        weighted.add(e, 1);
    }
    Ok(weighted)
}

/// Labels of the walk vertices on `G`, mostly for display.
pub fn walk_labels(d: usize, walk: &Walk) -> Vec<String> {
    walk.vertices
        .iter()
        .map(|&v| {
            BitLabel::new(d, v)
                .map(|l| l.to_string())
                .unwrap_or_else(|_| v.to_string())
        })
        .collect()
}

/// Labels of the walk vertices on `G′`, as `(s,t)`.
pub fn walk_labels_double(d: usize, walk: &Walk) -> Vec<String> {
    walk.vertices
        .iter()
        .map(|&v| DoubleVertex::from_index(d, v).to_string())
        .collect()
}
