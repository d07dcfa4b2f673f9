//! Linear operators between rational spaces, with order-theoretic predicates
//! relative to an ordered domain. The codomain is always `Q^m` with the
//! coordinatewise order.

use crate::error::{Error, Result};
use crate::num::{dot, mat_vec, zero_vec, Rat, RatMatrix, RatVector};
use crate::ordered_space::OrderedSpace;
use crate::ratgeom::{solve_max, LpResult};
use num::Signed;

/// A rational `m x n` matrix acting `Q^n -> Q^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOperator {
    rows: RatMatrix,
}

impl LinearOperator {
    pub fn new(rows: RatMatrix) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Precondition("operator needs at least one row".into()));
        }
        let n = rows[0].len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        Ok(LinearOperator { rows })
    }

    /// Scalar-valued operator (a functional).
    pub fn functional(coeffs: RatVector) -> Self {
        LinearOperator { rows: vec![coeffs] }
    }

    pub fn zero(codomain_dim: usize, domain_dim: usize) -> Self {
        LinearOperator {
            rows: vec![zero_vec(domain_dim); codomain_dim],
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RatVector {
        &self.rows[i]
    }

    pub fn apply(&self, x: &[Rat]) -> RatVector {
        debug_assert_eq!(x.len(), self.domain_dim());
        mat_vec(&self.rows, x)
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        debug_assert_eq!(self.shape(), other.shape());
        LinearOperator {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        debug_assert_eq!(self.shape(), other.shape());
        LinearOperator {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> LinearOperator {
        LinearOperator {
            rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.codomain_dim(), self.domain_dim())
    }

    /// `T >= 0`: every value on the cone is coordinatewise nonnegative,
    /// decided on the generators of the cone's closure.
    pub fn is_positive(&self, space: &OrderedSpace) -> bool {
        space
            .closure_generators()
            .iter()
            .all(|g| self.rows.iter().all(|row| !dot(row, g).is_negative()))
    }

    /// Order-boundedness probe: the image of the sampled order interval
    /// `[0, e]`, `e` the sum of the closure generators, must fit in a box.
    /// Decided by exact LPs over the interval's closure.
    pub fn is_order_bounded(&self, space: &OrderedSpace) -> Result<bool> {
        let gens = space.closure_generators();
        let dim = space.dimension();
        let mut e = zero_vec(dim);
        for g in gens {
            e = crate::num::vec_add(&e, g);
        }
        let hull = space.closure_hull();
        let mut rows = Vec::new();
        for c in hull.constraints() {
            rows.push((c.coeffs.clone(), c.rhs.clone()));
            // e - z in the closure: -c.z >= -c.e
            rows.push((
                c.coeffs.iter().map(|x| -x).collect(),
                -dot(&c.coeffs, &e),
            ));
        }
        for row in &self.rows {
            for obj in [row.clone(), row.iter().map(|x| -x).collect::<Vec<_>>()] {
                if let LpResult::Unbounded { .. } = solve_max(&obj, &rows) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
