//! Exact solution of linear systems: particular solution plus a kernel basis.

use crate::num::{zero_vec, Rat, RatMatrix, RatVector};
use num::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: RatVector,
    pub kernel: Vec<RatVector>,
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination. Returns `None` when
/// the system is inconsistent; otherwise a particular solution (free
/// variables set to zero) and a basis of the null space.
pub fn solve_linear_system(a: &RatMatrix, b: &RatVector) -> Option<LinearSolution> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<RatVector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), n, "ragged matrix");
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..m).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        rows.swap(rank, pr);
        let p = rows[rank][col].clone();
        if !p.is_one() {
            for e in rows[rank].iter_mut() {
                if !e.is_zero() {
                    *e /= &p;
                }
            }
        }
        for r in 0..m {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let src = rows[rank].clone();
                for (e, s) in rows[r].iter_mut().zip(&src) {
                    if !s.is_zero() {
                        *e -= &f * s;
                    }
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }
    for r in rank..m {
        if !rows[r][n].is_zero() {
            return None;
        }
    }

    let mut particular = zero_vec(n);
    for (k, &col) in pivot_cols.iter().enumerate() {
        particular[col] = rows[k][n].clone();
    }
    let mut kernel = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = zero_vec(n);
        v[free] = Rat::one();
        for (k, &col) in pivot_cols.iter().enumerate() {
            v[col] = -&rows[k][free];
        }
        kernel.push(v);
    }
    Some(LinearSolution { particular, kernel })
}

/// Rank of a rational matrix.
pub fn rank(a: &RatMatrix) -> usize {
    if a.is_empty() {
        return 0;
    }
    let n = a[0].len();
    let zero = zero_vec(a.len());
    match solve_linear_system(a, &zero) {
        Some(sol) => n - sol.kernel.len(),
        None => unreachable!("homogeneous systems are consistent"),
    }
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[RatVector], v: &RatVector) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let n = v.len();
    // Columns are the basis vectors: solve B lambda = v.
    let a: RatMatrix = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    solve_linear_system(&a, v).is_some()
}
