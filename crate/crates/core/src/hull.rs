//! Exact convex-hull queries on finite point sets: membership, redundant
//! point removal, `ℓ∞` distance, and coordinate projection.
//!
//! Everything goes through the exact simplex in [`crate::lp`]; there is no
//! floating-point tolerance anywhere on these paths.

use std::collections::HashSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cycles::CornerVector;
use crate::error::{Error, Result};
use crate::lp::{solve, LpOutcome, StandardLp, DEFAULT_PIVOT_BUDGET};
use crate::rational::{int, linf_distance, Rational};

/// The convex hull of a finite list of corner vectors in `[0,1]^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub d: usize,
    pub corners: Vec<CornerVector>,
}

impl Polytope {
    pub fn new(d: usize, corners: Vec<CornerVector>) -> Result<Self> {
        if let Some(c) = corners.iter().find(|c| c.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: c.dim() });
        }
        Ok(Self { d, corners })
    }

    pub fn points(&self) -> Vec<Vec<Rational>> {
        self.corners.iter().map(CornerVector::coords).collect()
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    fn check_dim(&self, q: &[Rational]) -> Result<()> {
        if q.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: q.len() });
        }
        Ok(())
    }
}

/// An `ℓ∞` distance from a point to a hull. `exact` is false only when the
/// LP ran out of pivots and `value` is the distance to the nearest corner,
/// which is an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinfDistance {
    pub value: Rational,
    pub exact: bool,
}

fn one() -> Rational {
    int(1)
}

/// Is `q` a convex combination of `points`?
pub fn point_in_hull(points: &[Vec<Rational>], q: &[Rational]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    if points.iter().any(|p| p.as_slice() == q) {
        return Ok(true);
    }
    let d = q.len();
    for i in 0..d {
        let lo = points.iter().map(|p| &p[i]).min().unwrap();
        let hi = points.iter().map(|p| &p[i]).max().unwrap();
        if q[i] < *lo || q[i] > *hi {
            return Ok(false);
        }
    }
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect();
    a.push(vec![one(); points.len()]);
    let mut b: Vec<Rational> = q.to_vec();
    b.push(one());
    let lp = StandardLp {
        a,
        b,
        c: vec![Rational::zero(); points.len()],
    };
    match solve(&lp, DEFAULT_PIVOT_BUDGET) {
        LpOutcome::Optimal { .. } => Ok(true),
        LpOutcome::Infeasible => Ok(false),
        other => Err(Error::Invariant(format!("membership LP ended with {other:?}"))),
    }
}

pub fn hull_contains(p: &Polytope, q: &[Rational]) -> Result<bool> {
    p.check_dim(q)?;
    point_in_hull(&p.points(), q)
}

/// `min_{h ∈ hull} ‖q − h‖∞` as the LP
/// `min t  s.t.  −t ≤ q_i − Σ λ_j c_{j,i} ≤ t,  Σ λ = 1,  λ ≥ 0`.
pub fn linf_distance_to_hull(points: &[Vec<Rational>], q: &[Rational], pivot_budget: usize) -> Result<LinfDistance> {
    if points.is_empty() {
        return Err(Error::Empty("hull has no corners"));
    }
    let d = q.len();
    let m = points.len();
    // Columns: λ_1..λ_m, t, slack⁺_1..d, slack⁻_1..d.
    let cols = m + 1 + 2 * d;
    let mut a = Vec::with_capacity(2 * d + 1);
    let mut b = Vec::with_capacity(2 * d + 1);
    for i in 0..d {
        for sign in [1i64, -1] {
            let mut row = vec![Rational::zero(); cols];
            for (j, p) in points.iter().enumerate() {
                row[j] = p[i].clone();
            }
            row[m] = int(sign);
            let slack = if sign == 1 { m + 1 + i } else { m + 1 + d + i };
            row[slack] = int(-sign);
            a.push(row);
            b.push(q[i].clone());
        }
    }
    let mut sum_row = vec![Rational::zero(); cols];
    for v in sum_row.iter_mut().take(m) {
        *v = one();
    }
    a.push(sum_row);
    b.push(one());
    let mut c = vec![Rational::zero(); cols];
    c[m] = one();
    match solve(&StandardLp { a, b, c }, pivot_budget) {
        LpOutcome::Optimal { value, .. } => Ok(LinfDistance { value, exact: true }),
        LpOutcome::PivotLimit => {
            let value = points
                .iter()
                .map(|p| linf_distance(p, q))
                .min()
                .expect("nonempty");
            Ok(LinfDistance { value, exact: false })
        }
        other => Err(Error::Invariant(format!("distance LP ended with {other:?}"))),
    }
}

pub fn hull_distance_linf(p: &Polytope, q: &[Rational]) -> Result<LinfDistance> {
    p.check_dim(q)?;
    linf_distance_to_hull(&p.points(), q, DEFAULT_PIVOT_BUDGET)
}

/// Drop repeated values, then every candidate lying in the hull of the
/// remaining ones. What is left are the extreme points, in input order.
pub fn minimize(candidates: Vec<CornerVector>) -> Result<Polytope> {
    let d = candidates
        .first()
        .ok_or(Error::Empty("no corner candidates"))?
        .dim();
    let mut seen = HashSet::new();
    let mut corners: Vec<CornerVector> = candidates
        .into_iter()
        .filter(|c| seen.insert(c.value_key()))
        .collect();
    if let Some(c) = corners.iter().find(|c| c.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: c.dim() });
    }
    let mut points: Vec<Vec<Rational>> = corners.iter().map(CornerVector::coords).collect();
    let mut i = 0;
    while i < corners.len() {
        let others: Vec<Vec<Rational>> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if point_in_hull(&others, &points[i])? {
            corners.remove(i);
            points.remove(i);
        } else {
            i += 1;
        }
    }
    Polytope::new(d, corners)
}

/// Keep coordinates `x_1 < … < x_k` (1-based) of every corner and minimize.
pub fn project(p: &Polytope, points: &[usize]) -> Result<Polytope> {
    if points.is_empty() {
        return Err(Error::InvalidPoints("no coordinates selected".into()));
    }
    if points[0] == 0 || *points.last().unwrap() > p.d {
        return Err(Error::InvalidPoints(format!(
            "coordinates {points:?} must lie in 1..={}",
            p.d
        )));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPoints(format!(
            "coordinates {points:?} must be strictly increasing"
        )));
    }
    let zero_based: Vec<usize> = points.iter().map(|x| x - 1).collect();
    minimize(p.corners.iter().map(|c| c.select(&zero_based)).collect())
}
