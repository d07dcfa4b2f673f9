//! Exact rational linear algebra, linear programming and Fourier-Motzkin
//! elimination with strict-inequality tracking. The computational kernel the
//! rest of the crate is built on.

pub mod fm;
pub mod linsys;
pub mod lp;

pub use fm::{fm_eliminate, fm_eliminate_block};
pub use linsys::{in_span, rank, solve_linear_system, LinearSolution};
pub use lp::{feasible_point, lp_solve, solve_max, LpProblem, LpResult, Sense};

use crate::error::{Error, Result};
use crate::num::{dot, primitive_row, zero_vec, Rat, RatVector};
use num::{Signed, Zero};

/// One linear inequality `coeffs . x >= rhs`, or `coeffs . x > rhs` when
/// `strict` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: RatVector,
    pub rhs: Rat,
    pub strict: bool,
}

impl LinearConstraint {
    pub fn new(coeffs: RatVector, rhs: Rat, strict: bool) -> Self {
        LinearConstraint { coeffs, rhs, strict }
    }

    pub fn ge(coeffs: RatVector, rhs: Rat) -> Self {
        Self::new(coeffs, rhs, false)
    }

    pub fn gt(coeffs: RatVector, rhs: Rat) -> Self {
        Self::new(coeffs, rhs, true)
    }

    pub fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    pub fn satisfied_by(&self, point: &[Rat]) -> bool {
        let lhs = dot(&self.coeffs, point);
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }

    /// The complementary half-space: `not (c.x >= r)` is `-c.x > -r` and
    /// `not (c.x > r)` is `-c.x >= -r`.
    pub fn negation(&self) -> LinearConstraint {
        LinearConstraint {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            rhs: -&self.rhs,
            strict: !self.strict,
        }
    }

    /// Same half-space with the strictness flag cleared.
    pub fn closed(&self) -> LinearConstraint {
        LinearConstraint {
            coeffs: self.coeffs.clone(),
            rhs: self.rhs.clone(),
            strict: false,
        }
    }

    /// Canonical form: coprime integer coefficients, positive leading scale.
    pub fn normalized(&self) -> LinearConstraint {
        let (coeffs, rhs) = primitive_row(&self.coeffs, &self.rhs);
        LinearConstraint {
            coeffs,
            rhs,
            strict: self.strict,
        }
    }

    pub fn is_zero_row(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `0 . x >= rhs` that every point satisfies.
    pub fn is_tautology(&self) -> bool {
        self.is_zero_row()
            && if self.strict {
                self.rhs.is_negative()
            } else {
                !self.rhs.is_positive()
            }
    }

    /// `0 . x >= rhs` that no point satisfies.
    pub fn is_contradiction(&self) -> bool {
        self.is_zero_row() && !self.is_tautology()
    }

    /// Canonical unsatisfiable row in the given dimension.
    pub fn contradiction(dim: usize) -> Self {
        LinearConstraint::ge(zero_vec(dim), Rat::from_integer(1.into()))
    }
}

fn check_dims(dim: usize, constraints: &[LinearConstraint]) -> Result<()> {
    for c in constraints {
        if c.dimension() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.dimension(),
            });
        }
    }
    Ok(())
}

/// Decides whether a mixed strict/non-strict system has a solution, and
/// produces one when it does.
///
/// Each strict row is relaxed to `c.x >= rhs + t` and the slack `t <= 1` is
/// maximized; the system is strictly feasible exactly when the optimum is
/// positive. Density of the rationals makes this test exact.
pub fn strict_feasible(
    dim: usize,
    constraints: &[LinearConstraint],
) -> Result<Option<RatVector>> {
    check_dims(dim, constraints)?;
    let mut rows = Vec::with_capacity(constraints.len() + 1);
    for c in constraints {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(if c.strict { -Rat::from_integer(1.into()) } else { Rat::zero() });
        rows.push((coeffs, c.rhs.clone()));
    }
    let mut cap = zero_vec(dim + 1);
    cap[dim] = -Rat::from_integer(1.into());
    rows.push((cap, -Rat::from_integer(1.into())));
    let mut objective = zero_vec(dim + 1);
    objective[dim] = Rat::from_integer(1.into());
    match solve_max(&objective, &rows) {
        LpResult::Optimal { value, mut point } => {
            if value.is_positive() {
                point.truncate(dim);
                debug_assert!(constraints.iter().all(|c| c.satisfied_by(&point)));
                Ok(Some(point))
            } else {
                Ok(None)
            }
        }
        LpResult::Infeasible => Ok(None),
        LpResult::Unbounded { .. } => Err(Error::Internal(
            "slack objective is bounded by construction".into(),
        )),
    }
}

/// Minimal equivalent subsystem: rows are normalized, deduplicated and each
/// row implied by the remaining ones is dropped (LP implied-by-rest test,
/// exact for mixed strict/non-strict systems). An infeasible system collapses
/// to the canonical contradiction row.
pub fn remove_redundant(dim: usize, constraints: &[LinearConstraint]) -> Result<Vec<LinearConstraint>> {
    check_dims(dim, constraints)?;
    let mut rows: Vec<LinearConstraint> = Vec::new();
    for c in constraints {
        let c = c.normalized();
        if c.is_tautology() {
            continue;
        }
        if c.is_contradiction() {
            return Ok(vec![LinearConstraint::contradiction(dim)]);
        }
        // A strict copy subsumes its non-strict twin.
        if let Some(existing) = rows
            .iter_mut()
            .find(|r| r.coeffs == c.coeffs && r.rhs == c.rhs)
        {
            existing.strict |= c.strict;
            continue;
        }
        rows.push(c);
    }
    if strict_feasible(dim, &rows)?.is_none() {
        return Ok(vec![LinearConstraint::contradiction(dim)]);
    }
    let mut i = 0;
    while i < rows.len() {
        if rows.len() == 1 {
            break;
        }
        let mut test: Vec<LinearConstraint> =
            rows.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, r)| r.clone()).collect();
        test.push(rows[i].negation());
        if strict_feasible(dim, &test)?.is_none() {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(rows)
}

/// Pushes `coeffs . x = rhs` as a pair of opposite inequalities.
pub fn push_equality(rows: &mut Vec<(RatVector, Rat)>, coeffs: &[Rat], rhs: &Rat) {
    rows.push((coeffs.to_vec(), rhs.clone()));
    rows.push((coeffs.iter().map(|c| -c).collect(), -rhs));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};

    #[test]
    fn strict_open_interval() {
        // {x > 0, -x > -1} is the open unit interval.
        let cs = vec![
            LinearConstraint::gt(vec![rat(1)], rat(0)),
            LinearConstraint::gt(vec![rat(-1)], rat(-1)),
        ];
        let p = strict_feasible(1, &cs).unwrap().expect("feasible");
        assert!(p[0] > rat(0) && p[0] < rat(1));
    }

    #[test]
    fn strict_contradiction() {
        let cs = vec![
            LinearConstraint::gt(vec![rat(1)], rat(0)),
            LinearConstraint::ge(vec![rat(-1)], rat(0)),
        ];
        assert!(strict_feasible(1, &cs).unwrap().is_none());
    }

    #[test]
    fn empty_system_feasible_at_origin() {
        let p = strict_feasible(3, &[]).unwrap().expect("feasible");
        assert_eq!(p, vec![rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn strict_feasible_matches_grid_search() {
        // Brute-force oracle: scan a rational grid for a satisfying point and
        // compare the verdicts on small two-dimensional systems.
        let systems = vec![
            vec![
                LinearConstraint::gt(vec![rat(1), rat(0)], rat(0)),
                LinearConstraint::gt(vec![rat(0), rat(1)], rat(0)),
                LinearConstraint::ge(vec![rat(-1), rat(-1)], rat(-1)),
            ],
            vec![
                LinearConstraint::gt(vec![rat(1), rat(1)], rat(1)),
                LinearConstraint::gt(vec![rat(-1), rat(-1)], rat(-1)),
            ],
            vec![
                LinearConstraint::ge(vec![rat(1), rat(2)], rat(2)),
                LinearConstraint::gt(vec![rat(-1), rat(0)], rat(-2)),
                LinearConstraint::gt(vec![rat(0), rat(-1)], rat(-2)),
            ],
        ];
        for cs in systems {
            let lp_verdict = strict_feasible(2, &cs).unwrap().is_some();
            let mut grid_verdict = false;
            'outer: for i in -16..=16 {
                for j in -16..=16 {
                    let p = vec![ratio(i, 8), ratio(j, 8)];
                    if cs.iter().all(|c| c.satisfied_by(&p)) {
                        grid_verdict = true;
                        break 'outer;
                    }
                }
            }
            assert_eq!(lp_verdict, grid_verdict);
        }
    }

    #[test]
    fn redundant_rows_removed() {
        // x >= 0 twice, and x >= -1 implied by it.
        let cs = vec![
            LinearConstraint::ge(vec![rat(1)], rat(0)),
            LinearConstraint::ge(vec![rat(2)], rat(0)),
            LinearConstraint::ge(vec![rat(1)], rat(-1)),
        ];
        let out = remove_redundant(1, &cs).unwrap();
        assert_eq!(out, vec![LinearConstraint::ge(vec![rat(1)], rat(0))]);
    }

    #[test]
    fn infeasible_collapses_to_contradiction() {
        let cs = vec![
            LinearConstraint::gt(vec![rat(1)], rat(0)),
            LinearConstraint::gt(vec![rat(-1)], rat(0)),
        ];
        let out = remove_redundant(1, &cs).unwrap();
        assert_eq!(out, vec![LinearConstraint::contradiction(1)]);
    }

    #[test]
    fn strict_twin_subsumes() {
        let cs = vec![
            LinearConstraint::ge(vec![rat(1)], rat(0)),
            LinearConstraint::gt(vec![rat(1)], rat(0)),
        ];
        let out = remove_redundant(1, &cs).unwrap();
        assert_eq!(out, vec![LinearConstraint::gt(vec![rat(1)], rat(0))]);
    }
}
