//! Splitting a flow-conserving integer-weighted graph into a nonnegative
//! integer combination of simple cycles, and the formal sum going back.

use std::collections::HashMap;

use crate::debruijn::{Digraph, EdgeId};
use crate::error::{Error, Result};
use crate::walks::WeightedDigraph;

/// A simple directed cycle, stored as its edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    /// Checks that the edges chain head-to-tail, close up, and visit no
    /// vertex twice.
    pub fn new(graph: &Digraph, edges: Vec<EdgeId>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::NotACycle("no edges".into()));
        }
        if let Some(e) = edges.iter().find(|&&e| !graph.contains_edge(e)) {
            return Err(Error::NotACycle(format!("edge {e:?} not in graph")));
        }
        for (i, &e) in edges.iter().enumerate() {
            let next = edges[(i + 1) % edges.len()];
            if graph.target(e) != next.source {
                return Err(Error::NotACycle(format!(
                    "edge {i} ends at {} but edge {} starts at {}",
                    graph.target(e),
                    (i + 1) % edges.len(),
                    next.source
                )));
            }
        }
        let mut seen: Vec<usize> = edges.iter().map(|e| e.source).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotACycle("repeated vertex".into()));
        }
        Ok(Self { edges })
    }

    /// The cycle through `vertices` in order, closing back to the first.
    pub fn from_vertices(graph: &Digraph, vertices: &[usize]) -> Result<Self> {
        let edges = (0..vertices.len())
            .map(|i| {
                let (u, v) = (vertices[i], vertices[(i + 1) % vertices.len()]);
                if u >= graph.vertex_count() || v >= graph.vertex_count() {
                    return Err(Error::NotACycle(format!("vertex out of range in {vertices:?}")));
                }
                graph
                    .edge_between(u, v)
                    .ok_or_else(|| Error::NotACycle(format!("no edge {u} -> {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, edges)
    }

    pub(crate) fn from_edges_unchecked(edges: Vec<EdgeId>) -> Self {
        Self { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.source).collect()
    }

    /// Cycle length `ℓ`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The same cycle started `k` edges later.
    pub fn rotated(&self, k: usize) -> Self {
        let k = k % self.edges.len();
        let mut edges = self.edges[k..].to_vec();
        edges.extend_from_slice(&self.edges[..k]);
        Self { edges }
    }

    /// Rotation starting at the smallest vertex.
    pub fn canonical(&self) -> Self {
        let k = self
            .edges
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| e.source)
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.rotated(k)
    }

    pub fn is_canonical(&self) -> bool {
        self.edges
            .first()
            .is_some_and(|f| self.edges.iter().all(|e| e.source >= f.source))
    }

    /// Position of vertex `v` along the cycle, if it lies on it.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.source == v)
    }
}

/// A multiset `{(c_i, n_i)}` of cycles with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleDecomposition {
    entries: Vec<(Cycle, u64)>,
}

impl CycleDecomposition {
    pub fn new(entries: Vec<(Cycle, u64)>) -> Self {
        Self {
            entries: entries.into_iter().filter(|(_, n)| *n > 0).collect(),
        }
    }

    pub fn entries(&self) -> &[(Cycle, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ n_i ℓ_i`.
    pub fn total_length(&self) -> u64 {
        self.entries.iter().map(|(c, n)| n * c.len() as u64).sum()
    }
}

/// Follow positive-weight out-edges from `start` until a vertex repeats; the
/// portion from the first visit of that vertex is a simple cycle.
fn find_cycle(residual: &WeightedDigraph, start: usize) -> Result<Vec<EdgeId>> {
    let graph = residual.graph();
    let mut visited_at: Vec<Option<usize>> = vec![None; graph.vertex_count()];
    let mut path: Vec<EdgeId> = Vec::new();
    let mut at = start;
    loop {
        if let Some(i) = visited_at[at] {
            return Ok(path.split_off(i));
        }
        visited_at[at] = Some(path.len());
        let e = graph
            .out_edges(at)
            .find(|&e| residual.weight(e) > 0)
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "dead end at vertex {at} in a flow-conserving residual graph"
                ))
            })?;
        path.push(e);
        at = graph.target(e);
    }
}

/// Peel simple cycles off `g` until no weight remains.
///
/// Each step removes one cycle at its minimum residual weight. Out-edges are
/// scanned in label order and start vertices in index order, so the result
/// is deterministic. Cycles are reported in canonical rotation, in the order
/// they were first peeled.
pub fn peel_cycles(g: &WeightedDigraph) -> Result<CycleDecomposition> {
    g.check_conservation()?;
    let mut residual = g.clone();
    let mut index: HashMap<Cycle, usize> = HashMap::new();
    let mut entries: Vec<(Cycle, u64)> = Vec::new();
    let mut remaining = residual.total_weight();
    let vertex_count = g.graph().vertex_count();
    let mut start = 0;
    while remaining > 0 {
        while start < vertex_count && residual.out_weight(start) == 0 {
            start += 1;
        }
        if start == vertex_count {
            return Err(Error::Invariant(format!(
                "{remaining} weight left but no vertex has positive out-weight"
            )));
        }
        let edges = find_cycle(&residual, start)?;
        let amount = edges.iter().map(|&e| residual.weight(e)).min().unwrap();
        for &e in &edges {
            residual.subtract(e, amount);
        }
        remaining -= amount * edges.len() as u64;
        let cycle = Cycle::from_edges_unchecked(edges).canonical();
        match index.get(&cycle) {
            Some(&i) => entries[i].1 += amount,
            None => {
                index.insert(cycle.clone(), entries.len());
                entries.push((cycle, amount));
            }
        }
    }
    Ok(CycleDecomposition { entries })
}

/// The formal sum `Σ n_i c_i` as an edge weighting of `graph`.
pub fn recompose(dec: &CycleDecomposition, graph: &Digraph) -> Result<WeightedDigraph> {
    let mut weighted = WeightedDigraph::zero(graph);
    for (cycle, n) in &dec.entries {
        // Re-validate against this graph; the decomposition may come from elsewhere.
        let checked = Cycle::new(graph, cycle.edges.clone())?;
        for &e in checked.edges() {
            weighted.add(e, *n);
        }
    }
    Ok(weighted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::IntegerSet;
    use crate::debruijn::{BitLabel, DeBruijnGraph, ShiftGraph};
    use crate::walks::{close_walk, edge_weights, encode_walk};
    use proptest::prelude::*;

    fn m(s: &str) -> usize {
        BitLabel::parse(s).unwrap().mask()
    }

    #[test]
    fn peel_small_fixture() {
        let g = DeBruijnGraph::build(2).unwrap();
        let dg = g.digraph();
        let mut w = WeightedDigraph::zero(dg);
        for (a, b, k) in [("10", "01", 1), ("01", "10", 2), ("10", "00", 1), ("00", "01", 1)] {
            w.add(dg.edge_between(m(a), m(b)).unwrap(), k);
        }
        let dec = peel_cycles(&w).unwrap();
        assert_eq!(dec.total_length(), 5);
        assert_eq!(recompose(&dec, dg).unwrap(), w);
        let mut got: Vec<(Vec<usize>, u64)> =
            dec.entries().iter().map(|(c, n)| (c.vertices(), *n)).collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                (vec![m("00"), m("01"), m("10")], 1),
                (vec![m("10"), m("01")], 1)
            ]
        );
    }

    #[test]
    fn loops_and_empty() {
        let g = DeBruijnGraph::build(3).unwrap();
        let dg = g.digraph();
        let mut w = WeightedDigraph::zero(dg);
        w.add(EdgeId { source: 7, label: 1 }, 9);
        let dec = peel_cycles(&w).unwrap();
        assert_eq!(dec.entries().len(), 1);
        assert_eq!(dec.entries()[0].0.vertices(), vec![7]);
        assert_eq!(dec.entries()[0].1, 9);
        assert!(peel_cycles(&WeightedDigraph::zero(dg)).unwrap().is_empty());
        assert!(recompose(&CycleDecomposition::default(), dg).unwrap().total_weight() == 0);
    }

    #[test]
    fn recompose_three_cycle_twice() {
        let g = DeBruijnGraph::build(2).unwrap();
        let c = Cycle::from_vertices(g.digraph(), &[m("00"), m("01"), m("10")]).unwrap();
        let w = recompose(&CycleDecomposition::new(vec![(c.clone(), 2)]), g.digraph()).unwrap();
        assert_eq!(w.total_weight(), 6);
        assert!(c.edges().iter().all(|&e| w.weight(e) == 2));
    }

    #[test]
    fn rejects_unbalanced_input() {
        let g = DeBruijnGraph::build(2).unwrap();
        let mut w = WeightedDigraph::zero(g.digraph());
        w.add(EdgeId { source: 0, label: 1 }, 1);
        assert!(matches!(peel_cycles(&w), Err(Error::FlowViolation { .. })));
    }

    #[test]
    fn foreign_cycles_are_rejected() {
        let big = DeBruijnGraph::build(3).unwrap();
        let small = DeBruijnGraph::build(2).unwrap();
        let c = Cycle::from_vertices(big.digraph(), &[2, 5]).unwrap();
        let dec = CycleDecomposition::new(vec![(c, 1)]);
        assert!(recompose(&dec, small.digraph()).is_err());
        assert!(Cycle::from_vertices(small.digraph(), &[0, 1, 0]).is_err());
    }

    #[test]
    fn canonical_rotation() {
        let g = DeBruijnGraph::build(2).unwrap();
        let c = Cycle::from_vertices(g.digraph(), &[m("01"), m("11"), m("10"), m("00")]).unwrap();
        assert_eq!(c.canonical().vertices(), vec![0, 2, 3, 1]);
        assert!(c.canonical().is_canonical());
        assert!(!c.is_canonical());
    }

    proptest! {
        #[test]
        fn round_trip_on_random_sets(bits in proptest::collection::vec(any::<bool>(), 3..50), d in 1usize..5) {
            prop_assume!(bits.len() >= d);
            let n = bits.len() as i64;
            let a = IntegerSet::new((1..=n).filter(|&i| bits[i as usize - 1]), 1, n).unwrap();
            let g = DeBruijnGraph::build(d).unwrap();
            let closed = close_walk(&g, &encode_walk(&a, d).unwrap()).unwrap();
            let w = edge_weights(g.digraph(), &closed).unwrap();
            let dec = peel_cycles(&w).unwrap();
            prop_assert_eq!(dec.total_length(), closed.len() as u64 - 1);
            prop_assert!(dec.entries().iter().all(|(c, n)| *n >= 1 && c.is_canonical()));
            prop_assert_eq!(recompose(&dec, g.digraph()).unwrap(), w);
        }
    }
}
