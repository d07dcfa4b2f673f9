//! Constructive dominating extensions: the one-dimensional extension step,
//! full inductive extension over a basis completion, and the two dominating
//! operator constructions (at an order unit, and below a target value at an
//! arbitrary cone point).
//!
//! Given a superlinear minorant `p` on the cone and a linear `T0` on a
//! subspace `L` with `X_+ + L = X` and `T0 >= p` on `L` intersected with the
//! cone, each step picks `x0` outside `L` and sets, per codomain coordinate,
//!
//! `y0 = sup { p(v + x0) - T0(v) : v in L, v + x0 in the cone closure }`,
//!
//! which an exact second LP confirms to sit below
//! `inf { T0(u) - p(u - x0) : u in L, u - x0 in the cone closure }`.
//! Supremums run over the closure: for the concave piecewise-linear
//! objectives here they agree with supremums over the semi-open cone.

use crate::error::{Error, Result};
use crate::num::{dot, zero_vec, Rat, RatVector};
use crate::operator::LinearOperator;
use crate::ordered_space::OrderedSpace;
use crate::polyhedron::Cell;
use crate::ratgeom::{
    fm_eliminate_block, in_span, solve_linear_system, solve_max, strict_feasible,
    LinearConstraint, LpResult,
};
use crate::rk::{dual_polyhedron, rk_eval, RkInstance};
use num::Zero;

/// Domain of an extension problem: an ordered space, or the full order
/// (`x >= y` for every pair), which the classical Hahn-Banach-Kantorovich
/// setting uses.
#[derive(Clone, Debug)]
pub enum ExtensionDomain {
    Cone(OrderedSpace),
    FullOrder(usize),
}

impl ExtensionDomain {
    pub fn dimension(&self) -> usize {
        match self {
            ExtensionDomain::Cone(s) => s.dimension(),
            ExtensionDomain::FullOrder(d) => *d,
        }
    }

    /// H-representation of the closure of the positive set.
    fn hull(&self) -> Cell {
        match self {
            ExtensionDomain::Cone(s) => s.closure_hull().clone(),
            ExtensionDomain::FullOrder(d) => Cell::everything(*d),
        }
    }

    fn member(&self, x: &[Rat]) -> Result<bool> {
        match self {
            ExtensionDomain::Cone(s) => s.member(x),
            ExtensionDomain::FullOrder(_) => Ok(true),
        }
    }
}

/// A superlinear map in one of the two shapes the extension machinery
/// consumes: a componentwise minimum of linear operators, or the transform
/// of a linear family.
#[derive(Clone, Debug)]
pub enum SuperlinearKind {
    MinOfLinear(Vec<LinearOperator>),
    RkOfLinear(RkInstance),
}

#[derive(Clone, Debug)]
pub struct SuperlinearMap {
    kind: SuperlinearKind,
    domain: ExtensionDomain,
}

impl SuperlinearMap {
    pub fn min_of_linear(domain: ExtensionDomain, ops: Vec<LinearOperator>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::Precondition(
                "a minimum needs at least one operator".into(),
            ));
        }
        let m = ops[0].codomain_dim();
        for t in &ops {
            if t.domain_dim() != domain.dimension() || t.codomain_dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: domain.dimension(),
                    got: t.domain_dim(),
                });
            }
        }
        Ok(SuperlinearMap {
            kind: SuperlinearKind::MinOfLinear(ops),
            domain,
        })
    }

    pub fn rk_of_linear(inst: RkInstance) -> Self {
        let domain = ExtensionDomain::Cone(inst.space().clone());
        SuperlinearMap {
            kind: SuperlinearKind::RkOfLinear(inst),
            domain,
        }
    }

    pub fn domain(&self) -> &ExtensionDomain {
        &self.domain
    }

    pub fn kind(&self) -> &SuperlinearKind {
        &self.kind
    }

    pub fn codomain_dim(&self) -> usize {
        match &self.kind {
            SuperlinearKind::MinOfLinear(ops) => ops[0].codomain_dim(),
            SuperlinearKind::RkOfLinear(inst) => inst.codomain_dim(),
        }
    }

    /// Exact value at a point of the positive set.
    pub fn eval(&self, x: &[Rat]) -> Result<RatVector> {
        if !self.domain.member(x)? {
            return Err(Error::Precondition(
                "superlinear maps are defined on the positive set".into(),
            ));
        }
        match &self.kind {
            SuperlinearKind::MinOfLinear(ops) => {
                let mut vals = ops[0].apply(x);
                for t in &ops[1..] {
                    for (acc, v) in vals.iter_mut().zip(t.apply(x)) {
                        if v < *acc {
                            *acc = v;
                        }
                    }
                }
                Ok(vals)
            }
            SuperlinearKind::RkOfLinear(inst) => Ok(rk_eval(inst, x)?.value),
        }
    }
}

/// An extension problem: extend `t0`, given on the span of `subspace`, to
/// the whole space while staying above `p` on the cone.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    p: SuperlinearMap,
    subspace: Vec<RatVector>,
    /// `m x k` matrix acting on coordinates with respect to `subspace`.
    t0: LinearOperator,
}

impl ExtensionProblem {
    pub fn new(p: SuperlinearMap, subspace: Vec<RatVector>, t0: LinearOperator) -> Result<Self> {
        let d = p.domain.dimension();
        for b in &subspace {
            if b.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: b.len(),
                });
            }
        }
        if !subspace.is_empty() && crate::ratgeom::rank(&subspace) != subspace.len() {
            return Err(Error::Precondition(
                "subspace basis must be linearly independent".into(),
            ));
        }
        if t0.domain_dim() != subspace.len() || t0.codomain_dim() != p.codomain_dim() {
            return Err(Error::DimensionMismatch {
                expected: subspace.len(),
                got: t0.domain_dim(),
            });
        }
        let prob = ExtensionProblem { p, subspace, t0 };
        prob.check_cone_plus_subspace()?;
        prob.check_dominates_on_subspace()?;
        Ok(prob)
    }

    pub fn p(&self) -> &SuperlinearMap {
        &self.p
    }

    pub fn subspace(&self) -> &[RatVector] {
        &self.subspace
    }

    pub fn t0(&self) -> &LinearOperator {
        &self.t0
    }

    /// `X_+ + L = X`: eliminating `(u, mu)` from `{x = u + B mu, u in the
    /// closure}` must leave no constraint on `x`.
    fn check_cone_plus_subspace(&self) -> Result<()> {
        let d = self.p.domain.dimension();
        let k = self.subspace.len();
        let hull = self.p.domain.hull();
        let total = 2 * d + k;
        let mut lifted = Vec::new();
        for c in hull.constraints() {
            let mut row = zero_vec(total);
            for j in 0..d {
                row[d + j] = c.coeffs[j].clone();
            }
            lifted.push(LinearConstraint::new(row, c.rhs.clone(), c.strict));
        }
        for j in 0..d {
            let mut row = zero_vec(total);
            row[j] = Rat::from_integer(1.into());
            row[d + j] = -Rat::from_integer(1.into());
            for (i, b) in self.subspace.iter().enumerate() {
                row[2 * d + i] = -&b[j];
            }
            lifted.push(LinearConstraint::ge(row.clone(), Rat::zero()));
            lifted.push(LinearConstraint::ge(
                row.iter().map(|c| -c).collect(),
                Rat::zero(),
            ));
        }
        let projected = fm_eliminate_block(total, &lifted, d + k)?;
        if !projected.is_empty() {
            return Err(Error::Precondition(
                "the cone plus the subspace does not cover the space".into(),
            ));
        }
        Ok(())
    }

    /// `T0 >= p` on `L` intersected with the cone closure, checked per
    /// coordinate by strict infeasibility of the violation set (the system
    /// is positively homogeneous, so no normalization slice is needed).
    fn check_dominates_on_subspace(&self) -> Result<()> {
        let k = self.subspace.len();
        if k == 0 {
            return Ok(());
        }
        let hull = self.p.domain.hull();
        let hull_rows_mu = |cs: &mut Vec<LinearConstraint>| {
            for c in hull.constraints() {
                let coeffs: RatVector = self
                    .subspace
                    .iter()
                    .map(|b| dot(&c.coeffs, b))
                    .collect();
                cs.push(LinearConstraint::new(coeffs, c.rhs.clone(), c.strict));
            }
        };
        for i in 0..self.p.codomain_dim() {
            let mut cs: Vec<LinearConstraint> = Vec::new();
            hull_rows_mu(&mut cs);
            match &self.p.kind {
                SuperlinearKind::MinOfLinear(ops) => {
                    for f in ops {
                        let coeffs: RatVector = self
                            .subspace
                            .iter()
                            .enumerate()
                            .map(|(j, b)| dot(f.row(i), b) - &self.t0.row(i)[j])
                            .collect();
                        cs.push(LinearConstraint::gt(coeffs, Rat::zero()));
                    }
                }
                SuperlinearKind::RkOfLinear(inst) => {
                    let dp = dual_polyhedron(inst)?;
                    let vl = dp.vertices(i, crate::polyhedron::DEFAULT_BASIS_BUDGET)?;
                    for h in &vl.vertices {
                        let coeffs: RatVector = self
                            .subspace
                            .iter()
                            .enumerate()
                            .map(|(j, b)| dot(h, b) - &self.t0.row(i)[j])
                            .collect();
                        cs.push(LinearConstraint::gt(coeffs, Rat::zero()));
                    }
                }
            }
            if strict_feasible(k, &cs)?.is_some() {
                return Err(Error::Precondition(
                    "t0 does not dominate p on the subspace's cone points".into(),
                ));
            }
        }
        Ok(())
    }
}

/// One extension step at `x0` outside the subspace: the per-coordinate
/// supremum values `y0`, each re-verified against the opposite infimum.
pub fn extend_step(prob: &ExtensionProblem, x0: &[Rat]) -> Result<RatVector> {
    step(
        &prob.p,
        &prob.subspace,
        &prob.t0,
        x0,
    )
}

fn step(
    p: &SuperlinearMap,
    basis: &[RatVector],
    t0: &LinearOperator,
    x0: &[Rat],
) -> Result<RatVector> {
    let d = p.domain.dimension();
    if x0.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: x0.len(),
        });
    }
    if in_span(basis, &x0.to_vec()) {
        return Err(Error::Precondition(
            "the new direction already lies in the subspace".into(),
        ));
    }
    let k = basis.len();
    let hull = p.domain.hull();

    // Feasibility of both sides of the step inequality.
    for sign in [1i64, -1] {
        let rows: Vec<(RatVector, Rat)> = hull
            .constraints()
            .iter()
            .map(|c| {
                let coeffs: RatVector = basis.iter().map(|b| dot(&c.coeffs, b)).collect();
                let shift = dot(&c.coeffs, x0) * Rat::from_integer(sign.into());
                (coeffs, &c.rhs - shift)
            })
            .collect();
        if crate::ratgeom::feasible_point(k, &rows).is_none() {
            return Err(Error::InconsistentProblem(
                "no subspace point reaches the new direction inside the cone".into(),
            ));
        }
    }

    let m = p.codomain_dim();
    let mut y0 = Vec::with_capacity(m);
    for i in 0..m {
        let value = match &p.kind {
            SuperlinearKind::MinOfLinear(ops) => {
                // Variables (mu, t): maximize t with t <= f_i(B mu + x0) - t0_i mu.
                let total = k + 1;
                let mut rows: Vec<(RatVector, Rat)> = Vec::new();
                for c in hull.constraints() {
                    let mut coeffs = zero_vec(total);
                    for (j, b) in basis.iter().enumerate() {
                        coeffs[j] = dot(&c.coeffs, b);
                    }
                    rows.push((coeffs, &c.rhs - dot(&c.coeffs, x0)));
                }
                for f in ops {
                    let mut coeffs = zero_vec(total);
                    for (j, b) in basis.iter().enumerate() {
                        coeffs[j] = dot(f.row(i), b) - &t0.row(i)[j];
                    }
                    coeffs[k] = -Rat::from_integer(1.into());
                    rows.push((coeffs, -dot(f.row(i), x0)));
                }
                let mut objective = zero_vec(total);
                objective[k] = Rat::from_integer(1.into());
                solve_max(&objective, &rows)
            }
            SuperlinearKind::RkOfLinear(inst) => {
                // Variables (mu, z_1..z_n): maximize sum T_j z_j - t0_i mu.
                let n = inst.ops().len();
                let total = k + n * d;
                let mut rows: Vec<(RatVector, Rat)> = Vec::new();
                for j in 0..n {
                    for c in hull.constraints() {
                        let mut coeffs = zero_vec(total);
                        for l in 0..d {
                            coeffs[k + j * d + l] = c.coeffs[l].clone();
                        }
                        rows.push((coeffs, c.rhs.clone()));
                    }
                }
                for c in hull.constraints() {
                    // c.(B mu + x0 - sum z_j) >= 0
                    let mut coeffs = zero_vec(total);
                    for (j, b) in basis.iter().enumerate() {
                        coeffs[j] = dot(&c.coeffs, b);
                    }
                    for j in 0..n {
                        for l in 0..d {
                            coeffs[k + j * d + l] = -&c.coeffs[l];
                        }
                    }
                    rows.push((coeffs, &c.rhs - dot(&c.coeffs, x0)));
                }
                let mut objective = zero_vec(total);
                for (j, b) in basis.iter().enumerate() {
                    objective[j] = -&t0.row(i)[j];
                    let _ = b;
                }
                for j in 0..n {
                    for l in 0..d {
                        objective[k + j * d + l] = inst.ops()[j].row(i)[l].clone();
                    }
                }
                solve_max(&objective, &rows)
            }
        };
        let v = match value {
            LpResult::Optimal { value, .. } => value,
            LpResult::Unbounded { .. } => {
                return Err(Error::InconsistentProblem(
                    "the extension supremum is unbounded".into(),
                ))
            }
            LpResult::Infeasible => {
                return Err(Error::Internal("feasible side vanished".into()))
            }
        };

        // Opposite side: inf over u of t0_i u - p_i(u - x0) must stay >= y0.
        let upper = {
            let total = k + 1; // (mu, s)
            let mut rows: Vec<(RatVector, Rat)> = Vec::new();
            for c in hull.constraints() {
                let mut coeffs = zero_vec(total);
                for (j, b) in basis.iter().enumerate() {
                    coeffs[j] = dot(&c.coeffs, b);
                }
                rows.push((coeffs, &c.rhs + dot(&c.coeffs, x0)));
            }
            let mut minorants: Vec<RatVector> = Vec::new();
            match &p.kind {
                SuperlinearKind::MinOfLinear(ops) => {
                    for f in ops {
                        minorants.push(f.row(i).clone());
                    }
                }
                SuperlinearKind::RkOfLinear(inst) => {
                    let dp = dual_polyhedron(inst)?;
                    let vl = dp.vertices(i, crate::polyhedron::DEFAULT_BASIS_BUDGET)?;
                    minorants.extend(vl.vertices);
                }
            }
            for w in &minorants {
                // s >= t0_i mu - w.(B mu - x0)
                let mut coeffs = zero_vec(total);
                for (j, b) in basis.iter().enumerate() {
                    coeffs[j] = dot(w, b) - &t0.row(i)[j];
                }
                coeffs[k] = Rat::from_integer(1.into());
                rows.push((coeffs, dot(w, x0)));
            }
            let mut objective = zero_vec(total);
            objective[k] = -Rat::from_integer(1.into());
            match solve_max(&objective, &rows) {
                LpResult::Optimal { value, .. } => -value,
                LpResult::Unbounded { .. } => {
                    return Err(Error::InconsistentProblem(
                        "the dominating infimum is unbounded below".into(),
                    ))
                }
                LpResult::Infeasible => {
                    return Err(Error::Internal("feasible side vanished".into()))
                }
            }
        };
        if upper < v {
            return Err(Error::Internal(
                "extension step inequality failed: the supremum exceeds the infimum".into(),
            ));
        }
        y0.push(v);
    }
    Ok(y0)
}

/// Full extension over the deterministic basis completion (smallest unit
/// vectors outside the current span first).
pub fn extend_full(prob: &ExtensionProblem) -> Result<LinearOperator> {
    let d = prob.p.domain.dimension();
    extend_full_with_completion(prob, &(0..d).collect::<Vec<_>>())
}

/// Full extension trying completion directions in the given unit-vector
/// order. The result always restricts to `t0` on the subspace and dominates
/// `p`; different orders may produce different admissible extensions.
pub fn extend_full_with_completion(
    prob: &ExtensionProblem,
    order: &[usize],
) -> Result<LinearOperator> {
    let d = prob.p.domain.dimension();
    let m = prob.p.codomain_dim();
    let mut basis: Vec<RatVector> = prob.subspace.to_vec();
    // Values of the running extension on the basis, one column per vector.
    let mut columns: Vec<RatVector> = (0..prob.subspace.len())
        .map(|j| (0..m).map(|i| prob.t0.row(i)[j].clone()).collect())
        .collect();
    for &idx in order {
        if idx >= d {
            return Err(Error::DimensionMismatch { expected: d, got: idx });
        }
        let e = crate::num::unit_vec(d, idx);
        if in_span(&basis, &e) {
            continue;
        }
        let t_now = LinearOperator::new(
            (0..m)
                .map(|i| columns.iter().map(|col| col[i].clone()).collect())
                .collect(),
        )?;
        let y0 = step(&prob.p, &basis, &t_now, &e)?;
        basis.push(e);
        columns.push(y0);
    }
    if basis.len() != d {
        return Err(Error::Internal("basis completion fell short".into()));
    }
    // Solve M basis_k = column_k for the rows of M.
    let a: Vec<RatVector> = basis.clone();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let b: RatVector = columns.iter().map(|col| col[i].clone()).collect();
        let sol = solve_linear_system(&a, &b)
            .ok_or_else(|| Error::Internal("basis system is singular".into()))?;
        rows.push(sol.particular);
    }
    let extension = LinearOperator::new(rows)?;
    verify_extension(prob, &extension)?;
    Ok(extension)
}

fn verify_extension(prob: &ExtensionProblem, m_op: &LinearOperator) -> Result<()> {
    // Restriction to the subspace is exactly t0.
    for (j, b) in prob.subspace.iter().enumerate() {
        let got = m_op.apply(b);
        for i in 0..m_op.codomain_dim() {
            if got[i] != prob.t0.row(i)[j] {
                return Err(Error::Internal(
                    "extension does not restrict to the given operator".into(),
                ));
            }
        }
    }
    dominance_check(&prob.p, m_op)
}

/// `{x in closure(X_+) : M(x) < p(x)}` must be strictly infeasible.
fn dominance_check(p: &SuperlinearMap, m_op: &LinearOperator) -> Result<()> {
    let d = p.domain.dimension();
    let hull = p.domain.hull();
    for i in 0..m_op.codomain_dim() {
        match &p.kind {
            SuperlinearKind::MinOfLinear(ops) => {
                let mut cs: Vec<LinearConstraint> = hull.constraints().to_vec();
                for f in ops {
                    let coeffs: RatVector = (0..d)
                        .map(|l| &f.row(i)[l] - &m_op.row(i)[l])
                        .collect();
                    cs.push(LinearConstraint::gt(coeffs, Rat::zero()));
                }
                if strict_feasible(d, &cs)?.is_some() {
                    return Err(Error::Internal(
                        "extension drops below the minorant somewhere on the cone".into(),
                    ));
                }
            }
            SuperlinearKind::RkOfLinear(inst) => {
                // Membership of the row in the majorant polyhedron implies
                // dominance everywhere on the closure.
                let dp = dual_polyhedron(inst)?;
                if !dp.contains(i, m_op.row(i)) {
                    return Err(Error::Internal(
                        "extension row escapes the majorant polyhedron".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// A dominating operator pinned at an order unit: `M >= p` on the cone and
/// `M x = y` exactly.
pub fn majorant_at_order_unit(
    space: &OrderedSpace,
    p: &SuperlinearMap,
    x: &[Rat],
    y: &[Rat],
) -> Result<LinearOperator> {
    if !space.is_order_unit(x)? {
        return Err(Error::Precondition(
            "the anchor point must be an order unit".into(),
        ));
    }
    let px = p.eval(x)?;
    if y.len() != px.len() {
        return Err(Error::DimensionMismatch {
            expected: px.len(),
            got: y.len(),
        });
    }
    if px.iter().zip(y).any(|(p_i, y_i)| y_i < p_i) {
        return Err(Error::Precondition(
            "the target value must dominate p at the anchor".into(),
        ));
    }
    let t0 = LinearOperator::new(y.iter().map(|v| vec![v.clone()]).collect())?;
    let prob = ExtensionProblem::new(p.clone(), vec![x.to_vec()], t0)?;
    let m_op = extend_full(&prob)?;
    if m_op.apply(x) != y.to_vec() {
        return Err(Error::Internal("extension misses the anchored value".into()));
    }
    Ok(m_op)
}

/// A dominating functional passing strictly below `y` at `x`: `M >= p` on
/// the cone and `M(x) = p(x) < y`. Works at boundary points; no internal
/// point is needed.
pub fn dominating_below(
    space: &OrderedSpace,
    p: &SuperlinearMap,
    x: &[Rat],
    y: &Rat,
) -> Result<LinearOperator> {
    if p.codomain_dim() != 1 {
        return Err(Error::Precondition(
            "the below-target construction is scalar-valued".into(),
        ));
    }
    if !space.member(x)? {
        return Err(Error::Precondition("x must lie in the cone".into()));
    }
    if !space.is_generating()? {
        return Err(Error::Precondition("the cone must be generating".into()));
    }
    let px = p.eval(x)?[0].clone();
    if *y <= px {
        return Err(Error::Precondition(
            "the target must lie strictly above p(x)".into(),
        ));
    }
    let m_op = match &p.kind {
        SuperlinearKind::MinOfLinear(ops) => {
            // The minimizing member at x already dominates the minimum
            // everywhere and touches it at x.
            let mut best = 0usize;
            let mut best_val = dot(ops[0].row(0), x);
            for (k, f) in ops.iter().enumerate().skip(1) {
                let v = dot(f.row(0), x);
                if v < best_val {
                    best = k;
                    best_val = v;
                }
            }
            ops[best].clone()
        }
        SuperlinearKind::RkOfLinear(inst) => {
            // Minimize h(x) over the majorant polyhedron; the optimum is the
            // transform value itself.
            let dp = dual_polyhedron(inst)?;
            let rows: Vec<(RatVector, Rat)> = dp.per_coordinate[0]
                .iter()
                .map(|c| (c.coeffs.clone(), c.rhs.clone()))
                .collect();
            let neg_x: RatVector = x.iter().map(|v| -v).collect();
            match solve_max(&neg_x, &rows) {
                LpResult::Optimal { point, .. } => LinearOperator::functional(point),
                other => {
                    return Err(Error::Internal(format!(
                        "majorant minimization failed: {other:?}"
                    )))
                }
            }
        }
    };
    let at_x = m_op.apply(x)[0].clone();
    if !(at_x == px && at_x < *y) {
        return Err(Error::Internal(
            "dominating functional misses the target gap".into(),
        ));
    }
    dominance_check(p, &m_op)?;
    Ok(m_op)
}
