//! From a convex combination of corners back to an explicit set.
//!
//! Given weights `λ_i` on the enumerated cycles and a target size `N`, each
//! cycle is traversed `n_i = ⌊N λ_i / ℓ_i⌋` times, consecutive cycles are
//! joined by shortest bridges (never longer than `d`), and the symbols the
//! resulting walk spells are read off as a set in `[1, N]` (or `[-N, N]`).

use num_traits::{Signed, ToPrimitive, Zero};

use crate::convolution::{conv_diff, conv_sum, IntegerSet};
use crate::cycles::{corner_vector, corner_vector_double};
use crate::debruijn::{unpack_double_label, DeBruijnGraph, DoubleDeBruijnGraph, ShiftGraph};
use crate::decomposition::Cycle;
use crate::error::{Error, Result};
use crate::rational::{int, linf_distance, ratio, Rational};
use crate::walks::Walk;
use crate::Kind;

/// Convex weights over an enumerated cycle list, plus the target size `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullPoint {
    lambdas: Vec<Rational>,
    n: usize,
}

impl HullPoint {
    pub fn new(lambdas: Vec<Rational>, n: usize) -> Result<Self> {
        if lambdas.iter().any(Signed::is_negative) {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        let total: Rational = lambdas.iter().sum();
        if total != int(1) {
            return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        if n == 0 {
            return Err(Error::InvalidWeights("target size N must be positive".into()));
        }
        Ok(Self { lambdas, n })
    }

    /// All weight on cycle `index` of a list of `len` cycles.
    pub fn vertex(index: usize, len: usize, n: usize) -> Result<Self> {
        if index >= len {
            return Err(Error::InvalidWeights(format!("cycle index {index} out of {len}")));
        }
        let mut lambdas = vec![Rational::zero(); len];
        lambdas[index] = int(1);
        Self::new(lambdas, n)
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `n_i = ⌊N λ_i / ℓ_i⌋` for every cycle, in list order.
pub fn multiplicities(hp: &HullPoint, cycles: &[Cycle]) -> Result<Vec<(Cycle, u64)>> {
    if cycles.len() != hp.lambdas.len() {
        return Err(Error::DimensionMismatch {
            expected: cycles.len(),
            got: hp.lambdas.len(),
        });
    }
    cycles
        .iter()
        .zip(&hp.lambdas)
        .map(|(c, lambda)| {
            let scaled = lambda * int(hp.n as i64) / int(c.len() as i64);
            let n = scaled
                .floor()
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::Invariant(format!("multiplicity {scaled} out of range")))?;
            Ok((c.clone(), n))
        })
        .collect()
}

/// Traverse each cycle with positive multiplicity `n_i` full times, in list
/// order, hopping between consecutive cycles along a shortest path.
pub fn link_cycles<G: ShiftGraph>(mults: &[(Cycle, u64)], graph: &G) -> Result<Walk> {
    let dg = graph.digraph();
    let used: Vec<&(Cycle, u64)> = mults.iter().filter(|(_, n)| *n > 0).collect();
    let first = used
        .first()
        .ok_or(Error::InvalidWeights("no cycle has positive multiplicity".into()))?;
    let mut vertices = vec![first.0.edges()[0].source];
    for (cycle, n) in used {
        let at = *vertices.last().unwrap();
        let mut on_cycle = vec![false; dg.vertex_count()];
        for v in cycle.vertices() {
            if v >= dg.vertex_count() {
                return Err(Error::NotACycle(format!("vertex {v} not in graph")));
            }
            on_cycle[v] = true;
        }
        let bridge = dg
            .shortest_path_to(at, &on_cycle)
            .ok_or_else(|| Error::Invariant(format!("cycle unreachable from vertex {at}")))?;
        if bridge.len() > graph.d() {
            return Err(Error::Invariant(format!(
                "bridge of {} edges exceeds d = {}",
                bridge.len(),
                graph.d()
            )));
        }
        for e in bridge {
            vertices.push(dg.target(e));
        }
        let entry = *vertices.last().unwrap();
        let turn = cycle.rotated(cycle.position_of(entry).expect("bridge ends on the cycle"));
        for _ in 0..*n {
            for e in turn.edges() {
                vertices.push(dg.target(*e));
            }
        }
    }
    Walk::new(dg, vertices)
}

/// Read the string spelled by a walk on `G` (first label, then one appended
/// symbol per edge) as a subset of `[1, N]`, dropping everything past `N`.
pub fn walk_to_set(graph: &DeBruijnGraph, walk: &Walk, n: usize) -> Result<IntegerSet> {
    let d = graph.d();
    if n < d {
        return Err(Error::AmbientTooSmall { n, d });
    }
    let first = *walk
        .vertices()
        .first()
        .ok_or_else(|| Error::InvalidWalk("empty walk".into()))?;
    let label = graph.label(first);
    let symbols = (1..=d)
        .map(|p| label.symbol(p))
        .chain(walk.edges(graph.digraph()).into_iter().map(|e| e.label));
    let elements = symbols
        .take(n)
        .enumerate()
        .filter(|&(_, s)| s == 1)
        .map(|(i, _)| i as i64 + 1);
    IntegerSet::new(elements, 1, n as i64)
}

/// The `G′` analogue: the first vertex `(s, t)` covers positions
/// `-d+1..=0` and `1..=d`; edge `k` writes its `s` symbol at `-d+1-k` and its
/// `t` symbol at `d+k`. Positions outside `[-N, N]` are dropped on both ends.
pub fn walk_to_set_double(graph: &DoubleDeBruijnGraph, walk: &Walk, n: usize) -> Result<IntegerSet> {
    let d = graph.d();
    if n < d {
        return Err(Error::AmbientTooSmall { n, d });
    }
    let first = *walk
        .vertices()
        .first()
        .ok_or_else(|| Error::InvalidWalk("empty walk".into()))?;
    let v = graph.vertex(first);
    let di = d as i64;
    let mut elements = Vec::new();
    for p in 1..=d {
        if v.s.symbol(p) == 1 {
            elements.push(-di + p as i64);
        }
        if v.t.symbol(p) == 1 {
            elements.push(p as i64);
        }
    }
    for (k, e) in walk.edges(graph.digraph()).iter().enumerate() {
        let k = k as i64 + 1;
        let (s_sym, t_sym) = unpack_double_label(e.label);
        if s_sym == 1 {
            elements.push(-di + 1 - k);
        }
        if t_sym == 1 {
            elements.push(di + k);
        }
    }
    let n = n as i64;
    IntegerSet::new(elements.into_iter().filter(|x| (-n..=n).contains(x)), -n, n)
}

/// Normalized convolution vector of `a` at shifts `1..=d`: divided by `N`
/// for differences over `[1, N]`, by `2N + 1` for sums over `[-N, N]`.
pub fn normalized_vector(a: &IntegerSet, kind: Kind, d: usize) -> Vec<Rational> {
    let (lo, hi) = a.ambient();
    let size = hi - lo + 1;
    (1..=d as i64)
        .map(|j| {
            let count = match kind {
                Kind::Diff => conv_diff(a, j),
                Kind::Sum => conv_sum(a, j),
            };
            ratio(count as i64, size)
        })
        .collect()
}

/// Outcome of [`realize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub set: IntegerSet,
    pub achieved: Vec<Rational>,
    pub target: Vec<Rational>,
    pub linf_error: Rational,
    /// A priori bound on `linf_error`. With `m` the number of cycles of
    /// positive weight and `L` the sum of their lengths it is
    /// `(m d + L) / N` for differences and `(4 m d + 2 L + 1) / (2N + 1)` for
    /// sums; since `L ≤ 2^d m` (resp. `4^d m`) this is `O((d + 2^d) m / N)`.
    pub bound: Rational,
}

/// Build a set whose normalized convolution vector approximates
/// `Σ λ_i y_i`, where `y_i` is the corner of `cycles[i]`.
pub fn realize(hp: &HullPoint, kind: Kind, d: usize, cycles: &[Cycle]) -> Result<Realization> {
    let mults = multiplicities(hp, cycles)?;
    let n = hp.n;
    let (set, corners) = match kind {
        Kind::Diff => {
            let g = DeBruijnGraph::build_with_cap(d, usize::MAX)?;
            let walk = link_cycles(&mults, &g)?;
            let corners: Vec<_> = cycles.iter().map(|c| corner_vector(c, d)).collect();
            (walk_to_set(&g, &walk, n)?, corners)
        }
        Kind::Sum => {
            let g = DoubleDeBruijnGraph::build_with_cap(d, usize::MAX)?;
            let walk = link_cycles(&mults, &g)?;
            let corners: Vec<_> = cycles.iter().map(|c| corner_vector_double(c, d)).collect();
            (walk_to_set_double(&g, &walk, n)?, corners)
        }
    };
    let mut target = vec![Rational::zero(); d];
    let mut weighted = 0i64;
    let mut total_len = 0i64;
    for (lambda, corner) in hp.lambdas.iter().zip(&corners) {
        if lambda.is_zero() {
            continue;
        }
        weighted += 1;
        total_len += corner.denominator as i64;
        for (t, y) in target.iter_mut().zip(corner.coords()) {
            *t += lambda * y;
        }
    }
    let achieved = normalized_vector(&set, kind, d);
    let linf_error = linf_distance(&achieved, &target);
    let (di, ni) = (d as i64, n as i64);
    let bound = match kind {
        Kind::Diff => ratio(weighted * di + total_len, ni),
        Kind::Sum => ratio(4 * weighted * di + 2 * total_len + 1, 2 * ni + 1),
    };
    Ok(Realization {
        set,
        achieved,
        target,
        linf_error,
        bound,
    })
}
