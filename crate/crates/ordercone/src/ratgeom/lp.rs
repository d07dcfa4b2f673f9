//! Exact simplex over arbitrary-precision rationals.
//!
//! Two-phase dense tableau method with Bland's anti-cycling rule, which
//! guarantees termination over the rationals. Free variables are split into
//! differences of nonnegative ones and `>=` rows get surplus variables, so
//! the tableau stays in standard equality form throughout.

use crate::error::{Error, Result};
use crate::num::{dot, zero_vec, Rat, RatVector};
use crate::ratgeom::LinearConstraint;
use num::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: RatVector,
    pub constraints: Vec<LinearConstraint>,
    pub sense: Sense,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rat, point: RatVector },
    Unbounded { ray: RatVector },
    Infeasible,
}

impl LpResult {
    pub fn optimal(self) -> Option<(Rat, RatVector)> {
        match self {
            LpResult::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpResult::Infeasible)
    }
}

/// Solves `problem` exactly. All constraints must be non-strict.
pub fn lp_solve(problem: &LpProblem) -> Result<LpResult> {
    let n = problem.objective.len();
    let mut rows = Vec::with_capacity(problem.constraints.len());
    for c in &problem.constraints {
        if c.strict {
            return Err(Error::StrictConstraint(
                "lp_solve accepts only non-strict constraints".into(),
            ));
        }
        if c.coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.coeffs.len(),
            });
        }
        rows.push((c.coeffs.clone(), c.rhs.clone()));
    }
    let result = match problem.sense {
        Sense::Maximize => solve_max(&problem.objective, &rows),
        Sense::Minimize => {
            let neg: RatVector = problem.objective.iter().map(|c| -c).collect();
            match solve_max(&neg, &rows) {
                LpResult::Optimal { value, point } => LpResult::Optimal {
                    value: -value,
                    point,
                },
                other => other,
            }
        }
    };
    Ok(result)
}

/// Maximizes `objective` subject to `rows` of the form `a . x >= b` with `x`
/// free. The workhorse behind every optimization in the crate.
pub fn solve_max(objective: &[Rat], rows: &[(RatVector, Rat)]) -> LpResult {
    let n = objective.len();
    if n == 0 {
        // No variables: feasible iff every row reads 0 >= b.
        if rows.iter().all(|(_, b)| !b.is_positive()) {
            return LpResult::Optimal {
                value: Rat::zero(),
                point: Vec::new(),
            };
        }
        return LpResult::Infeasible;
    }
    let mut tab = Tableau::new(n, rows);
    if !tab.phase_one() {
        return LpResult::Infeasible;
    }
    match tab.phase_two(objective) {
        Phase2::Optimal => {
            let point = tab.extract_point();
            let value = dot(objective, &point);
            debug_assert!(rows.iter().all(|(a, b)| dot(a, &point) >= *b));
            LpResult::Optimal { value, point }
        }
        Phase2::Unbounded(ray) => {
            debug_assert!(rows.iter().all(|(a, _)| !dot(a, &ray).is_negative()));
            debug_assert!(dot(objective, &ray).is_positive());
            LpResult::Unbounded { ray }
        }
    }
}

/// Feasibility of `a . x >= b` rows; returns a feasible point if one exists.
pub fn feasible_point(n: usize, rows: &[(RatVector, Rat)]) -> Option<RatVector> {
    match solve_max(&zero_vec(n), rows) {
        LpResult::Optimal { point, .. } => Some(point),
        LpResult::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
        LpResult::Infeasible => None,
    }
}

enum Phase2 {
    Optimal,
    Unbounded(RatVector),
}

/// Dense simplex tableau in standard form. Columns are laid out as
/// `[u_0..u_n, w_0..w_n, s_0..s_m]` (`x = u - w`, `s` surplus), with
/// artificial columns appended during phase one.
struct Tableau {
    n: usize,
    cols: usize,
    rows: Vec<RatVector>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(n: usize, raw: &[(RatVector, Rat)]) -> Self {
        let m = raw.len();
        let cols = 2 * n + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (a, b)) in raw.iter().enumerate() {
            // a.u - a.w - s_i = b, flipped so the right-hand side is >= 0.
            let flip = b.is_negative();
            let mut row = zero_vec(cols);
            for j in 0..n {
                let v = if flip { -&a[j] } else { a[j].clone() };
                row[n + j] = -&v;
                row[j] = v;
            }
            row[2 * n + i] = if flip { Rat::one() } else { -Rat::one() };
            rows.push(row);
            rhs.push(if flip { -b } else { b.clone() });
        }
        Tableau {
            n,
            cols,
            rows,
            rhs,
            basis: Vec::new(),
        }
    }

    fn pivot(&mut self, r: usize, j: usize, d: &mut RatVector, v: &mut Rat) {
        let piv = self.rows[r][j].clone();
        debug_assert!(!piv.is_zero());
        if !piv.is_one() {
            for e in self.rows[r].iter_mut() {
                if !e.is_zero() {
                    *e /= &piv;
                }
            }
            self.rhs[r] /= &piv;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][j].clone();
            if factor.is_zero() {
                continue;
            }
            for (e, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let dj = d[j].clone();
        if !dj.is_zero() {
            for (e, p) in d.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &dj * p;
                }
            }
            *v += &dj * &pivot_rhs;
        }
        self.basis[r] = j;
    }

    /// Bland's rule iteration to optimality. Returns the unbounded entering
    /// column if one is found.
    fn run(&mut self, d: &mut RatVector, v: &mut Rat, live_cols: usize) -> Option<usize> {
        loop {
            let entering = (0..live_cols).find(|&j| d[j].is_positive());
            let j = match entering {
                Some(j) => j,
                None => return None,
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let t = &self.rows[r][j];
                if t.is_positive() {
                    let ratio = &self.rhs[r] / t;
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j, d, v),
                None => return Some(j),
            }
        }
    }

    /// Adds artificials, drives infeasibility to zero, prunes them. Returns
    /// false if the system is infeasible.
    fn phase_one(&mut self) -> bool {
        let m = self.rows.len();
        let base = self.cols;
        self.cols += m;
        for (i, row) in self.rows.iter_mut().enumerate() {
            row.extend(zero_vec(m));
            row[base + i] = Rat::one();
        }
        self.basis = (base..base + m).collect();
        // Reduced costs for maximizing -(sum of artificials).
        let mut d = zero_vec(self.cols);
        let mut v = Rat::zero();
        for r in 0..m {
            for j in 0..base {
                let t = self.rows[r][j].clone();
                if !t.is_zero() {
                    d[j] += t;
                }
            }
            v -= &self.rhs[r];
        }
        let unbounded = self.run(&mut d, &mut v, self.cols);
        debug_assert!(unbounded.is_none(), "phase one objective is bounded");
        if v.is_negative() {
            return false;
        }
        // Pivot artificials out of the basis; drop rows that became redundant.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= base {
                debug_assert!(self.rhs[r].is_zero());
                match (0..base).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j, &mut d, &mut v),
                    None => {
                        self.rows.swap_remove(r);
                        self.rhs.swap_remove(r);
                        self.basis.swap_remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for row in self.rows.iter_mut() {
            row.truncate(base);
        }
        self.cols = base;
        true
    }

    fn phase_two(&mut self, objective: &[Rat]) -> Phase2 {
        let n = self.n;
        let mut cost = zero_vec(self.cols);
        for j in 0..n {
            cost[j] = objective[j].clone();
            cost[n + j] = -&objective[j];
        }
        let mut d = cost.clone();
        let mut v = Rat::zero();
        for r in 0..self.rows.len() {
            let cb = cost[self.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let t = self.rows[r][j].clone();
                if !t.is_zero() {
                    d[j] -= &cb * &t;
                }
            }
            v += &cb * &self.rhs[r];
        }
        match self.run(&mut d, &mut v, self.cols) {
            None => Phase2::Optimal,
            Some(j) => {
                // Ray: entering variable grows, basics adjust.
                let mut delta = zero_vec(self.cols);
                delta[j] = Rat::one();
                for r in 0..self.rows.len() {
                    if self.basis[r] != j {
                        delta[self.basis[r]] = -&self.rows[r][j];
                    }
                }
                let ray = (0..n).map(|i| &delta[i] - &delta[n + i]).collect();
                Phase2::Unbounded(ray)
            }
        }
    }

    fn extract_point(&self) -> RatVector {
        let n = self.n;
        let mut vals = zero_vec(self.cols);
        for (r, &b) in self.basis.iter().enumerate() {
            vals[b] = self.rhs[r].clone();
        }
        (0..n).map(|i| &vals[i] - &vals[n + i]).collect()
    }
}
