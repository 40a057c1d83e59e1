//! Dense two-phase simplex over exact rationals, with Bland's rule.
//!
//! Problems are in standard form: minimize `c·x` subject to `A x = b`,
//! `x ≥ 0`. Bland's rule (lowest-index entering column, lowest-index basic
//! variable among ratio ties) rules out cycling, so every solve terminates;
//! the pivot budget only guards against pathological sizes.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
    /// Pivot budget exhausted before a verdict.
    PivotLimit,
}

pub const DEFAULT_PIVOT_BUDGET: usize = 100_000;

struct Tableau {
    rows: Vec<Vec<Rational>>, // each row: columns then rhs
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    fn reduced_costs(&self, cost: &[Rational], allowed: usize) -> Vec<Rational> {
        (0..allowed)
            .map(|j| {
                let mut r = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[bi] * &self.rows[i][j];
                    }
                }
                r
            })
            .collect()
    }

    /// Runs Bland's rule over columns `0..allowed`. Returns `Some(true)` at
    /// an optimum, `Some(false)` when unbounded, `None` on budget exhaustion.
    fn optimize(&mut self, cost: &[Rational], allowed: usize, budget: &mut usize) -> Option<bool> {
        loop {
            let reduced = self.reduced_costs(cost, allowed);
            let Some(enter) = reduced.iter().position(|r| r.is_negative()) else {
                return Some(true);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Some(false);
            };
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            self.pivot(r, enter);
        }
    }
}

pub fn solve(lp: &StandardLp, pivot_budget: usize) -> LpOutcome {
    let m = lp.b.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|row| row.len() == n));
    let cols = n + m;
    // Phase 1: one artificial per row, rows flipped so b >= 0.
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = lp.b[i].is_negative();
        let mut row: Vec<Rational> = Vec::with_capacity(cols + 1);
        for j in 0..n {
            row.push(if flip { -lp.a[i][j].clone() } else { lp.a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rational::from_integer(1.into()) } else { Rational::zero() });
        }
        row.push(if flip { -lp.b[i].clone() } else { lp.b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        cols,
    };
    let mut budget = pivot_budget;
    let mut phase1_cost = vec![Rational::zero(); cols];
    for c in phase1_cost.iter_mut().skip(n) {
        *c = Rational::from_integer(1.into());
    }
    match t.optimize(&phase1_cost, cols, &mut budget) {
        None => return LpOutcome::PivotLimit,
        Some(false) => unreachable!("phase 1 objective is bounded below by zero"),
        Some(true) => {}
    }
    let infeasibility: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bi)| bi >= n)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost = lp.c.clone();
    cost.resize(cols, Rational::zero());
    match t.optimize(&cost, n, &mut budget) {
        None => LpOutcome::PivotLimit,
        Some(false) => LpOutcome::Unbounded,
        Some(true) => {
            let mut x = vec![Rational::zero(); n];
            for (i, &bi) in t.basis.iter().enumerate() {
                if bi < n {
                    x[bi] = t.rhs(i).clone();
                }
            }
            let value = x.iter().zip(&lp.c).map(|(xi, ci)| xi * ci).sum();
            LpOutcome::Optimal { value, x }
        }
    }
}
