//! Fourier-Motzkin elimination with strict-inequality tracking.

use crate::error::{Error, Result};
use crate::num::Rat;
use crate::ratgeom::{remove_redundant, LinearConstraint};
use num::{Signed, Zero};

/// Projects the solution set of `constraints` along variable `var`,
/// returning an equivalent system in one dimension less (coordinates after
/// `var` shift down by one).
///
/// Combining a strict row with any row yields a strict row; two non-strict
/// rows combine non-strictly. Over the rationals this is an exact projection
/// of the mixed strict/non-strict solution set. Redundant rows are removed
/// by a per-row implied-by-rest LP test after the combination step.
pub fn fm_eliminate(
    dim: usize,
    constraints: &[LinearConstraint],
    var: usize,
) -> Result<Vec<LinearConstraint>> {
    if var >= dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: var,
        });
    }
    for c in constraints {
        if c.dimension() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.dimension(),
            });
        }
    }
    let drop_var = |coeffs: &[Rat]| -> Vec<Rat> {
        coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, c)| c.clone())
            .collect()
    };

    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    let mut kept = Vec::new();
    for c in constraints {
        let v = &c.coeffs[var];
        if v.is_zero() {
            kept.push(LinearConstraint::new(drop_var(&c.coeffs), c.rhs.clone(), c.strict));
        } else if v.is_positive() {
            lowers.push(c);
        } else {
            uppers.push(c);
        }
    }
    for lo in &lowers {
        for up in &uppers {
            let a = -&up.coeffs[var]; // positive
            let b = lo.coeffs[var].clone(); // positive
            let coeffs: Vec<Rat> = drop_var(&lo.coeffs)
                .iter()
                .zip(drop_var(&up.coeffs).iter())
                .map(|(l, u)| &a * l + &b * u)
                .collect();
            let rhs = &a * &lo.rhs + &b * &up.rhs;
            kept.push(LinearConstraint::new(coeffs, rhs, lo.strict || up.strict));
        }
    }
    remove_redundant(dim - 1, &kept)
}

/// Eliminates a whole block of trailing variables `dim - count .. dim`.
pub fn fm_eliminate_block(
    dim: usize,
    constraints: &[LinearConstraint],
    count: usize,
) -> Result<Vec<LinearConstraint>> {
    let mut cs = constraints.to_vec();
    let mut d = dim;
    for _ in 0..count {
        cs = fm_eliminate(d, &cs, d - 1)?;
        d -= 1;
    }
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};
    use crate::ratgeom::strict_feasible;

    #[test]
    fn symmetric_pair() {
        // Eliminate y from {x + y >= 0, x - y >= 0}: projection is {x >= 0}.
        let cs = vec![
            LinearConstraint::ge(vec![rat(1), rat(1)], rat(0)),
            LinearConstraint::ge(vec![rat(1), rat(-1)], rat(0)),
        ];
        let out = fm_eliminate(2, &cs, 1).unwrap();
        assert_eq!(out, vec![LinearConstraint::ge(vec![rat(1)], rat(0))]);
    }

    #[test]
    fn strictness_propagates() {
        // Eliminate y from {y > 0, x - y >= 0}: projection is {x > 0}.
        let cs = vec![
            LinearConstraint::gt(vec![rat(0), rat(1)], rat(0)),
            LinearConstraint::ge(vec![rat(1), rat(-1)], rat(0)),
        ];
        let out = fm_eliminate(2, &cs, 1).unwrap();
        assert_eq!(out, vec![LinearConstraint::gt(vec![rat(1)], rat(0))]);
    }

    #[test]
    fn one_sided_bound_projects_to_everything() {
        let cs = vec![LinearConstraint::ge(vec![rat(0), rat(1)], rat(0))];
        let out = fm_eliminate(2, &cs, 1).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn projection_soundness_random_systems() {
        // Membership oracle: a sampled point satisfies the projection iff the
        // original system has a strictly feasible preimage over it.
        let mut state: u64 = 0x9E3779B97F4A7C15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 4) - 1
        };
        for dim in 2..=4usize {
            for _ in 0..25 {
                let rows = 3 + (next().unsigned_abs() as usize % 3);
                let cs: Vec<LinearConstraint> = (0..rows)
                    .map(|k| {
                        LinearConstraint::new(
                            (0..dim).map(|_| rat(next())).collect(),
                            rat(next()),
                            k % 2 == 0,
                        )
                    })
                    .collect();
                let var = dim - 1;
                let proj = fm_eliminate(dim, &cs, var).unwrap();
                for _ in 0..6 {
                    let sample: Vec<Rat> = (0..dim - 1).map(|_| ratio(next(), 2)).collect();
                    let in_proj = proj.iter().all(|c| c.satisfied_by(&sample));
                    // Fix the sampled coordinates, leave `var` free.
                    let mut fixed = Vec::new();
                    for c in &cs {
                        let mut coeffs = vec![rat(0); 1];
                        coeffs[0] = c.coeffs[var].clone();
                        let consumed: Rat = c
                            .coeffs
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != var)
                            .map(|(i, co)| {
                                let idx = if i < var { i } else { i - 1 };
                                co * &sample[idx]
                            })
                            .sum();
                        fixed.push(LinearConstraint::new(coeffs, &c.rhs - consumed, c.strict));
                    }
                    let preimage = strict_feasible(1, &fixed).unwrap().is_some();
                    assert_eq!(in_proj, preimage, "projection mismatch at {sample:?}");
                }
            }
        }
    }
}
