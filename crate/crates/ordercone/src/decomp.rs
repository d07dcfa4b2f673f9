//! Decomposition-property checkers and separation oracles.
//!
//! `check_rdp` decides `[0,x] + [0,y] = [0,x+y]` exactly and produces a
//! re-checkable witness point on failure. `check_lrdp` decides the relaxed
//! property: no point of the defect may be *strictly* separable from the sum
//! by a functional of the chosen class. In finite dimension a point admits
//! strict separation from a convex set exactly when it lies outside a closed
//! convex "unseparable region": the closure of the sum for the full class,
//! and a computable polar polyhedron for the regular class.

use crate::error::{Error, Result};
use crate::num::{dot, vec_scale, vec_sub, zero_vec, Rat, RatVector};
use crate::operator::LinearOperator;
use crate::ordered_space::OrderedSpace;
use crate::polyhedron::{cone_generators, Cell, CellUnion, VertexList, DEFAULT_BASIS_BUDGET};
use crate::ratgeom::{
    fm_eliminate_block, solve_max, strict_feasible, LinearConstraint, LpResult,
};
use num::{One, Signed, Zero};

/// Outcome of a decomposition-property check at one pair, with certificates.
#[derive(Clone, Debug)]
pub struct RdpReport {
    pub holds: bool,
    pub pair: (RatVector, RatVector),
    /// A member of `[0, x+y]` outside `[0,x] + [0,y]`, when the property fails.
    pub witness: Option<RatVector>,
    pub lrdp_holds: Option<bool>,
    /// A functional strictly separating the witness from the sum, when the
    /// relaxed property fails.
    pub separator: Option<LinearOperator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionalClass {
    All,
    Regular,
}

fn interval_sets(
    space: &OrderedSpace,
    x: &[Rat],
    y: &[Rat],
) -> Result<(CellUnion, CellUnion)> {
    if !(space.member(x)? && space.member(y)?) {
        return Err(Error::Precondition(
            "decomposition checks need x and y in the positive cone".into(),
        ));
    }
    let zero = zero_vec(space.dimension());
    let sum_point: RatVector = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let whole = space.order_interval(&zero, &sum_point)?.set;
    let ix = space.order_interval(&zero, x)?.set;
    let iy = space.order_interval(&zero, y)?.set;
    let sum = ix.minkowski_sum(&iy)?;
    Ok((whole, sum))
}

/// Decides the Riesz Decomposition Property at the pair `(x, y)`.
pub fn check_rdp(space: &OrderedSpace, x: &[Rat], y: &[Rat]) -> Result<RdpReport> {
    let (whole, sum) = interval_sets(space, x, y)?;
    // The sum is always inside the big interval; verify anyway.
    let (forward, stray) = sum.subset_of(&whole)?;
    if !forward {
        return Err(Error::Internal(format!(
            "sum of intervals leaks outside the big interval at {stray:?}"
        )));
    }
    // Cheap witness pass: vertices of the closure of the big interval.
    let mut witness = None;
    if let Ok(hull) = whole.hull_cell(DEFAULT_BASIS_BUDGET) {
        let hull_union = CellUnion::from_cell(hull, true)?;
        if let Ok(vl) = hull_union.vertices(DEFAULT_BASIS_BUDGET) {
            for v in vl.vertices {
                if whole.contains(&v)? && !sum.contains(&v)? {
                    witness = Some(v);
                    break;
                }
            }
        }
    }
    if witness.is_none() {
        let (holds, w) = whole.subset_of(&sum)?;
        if holds {
            return Ok(RdpReport {
                holds: true,
                pair: (x.to_vec(), y.to_vec()),
                witness: None,
                lrdp_holds: None,
                separator: None,
            });
        }
        witness = w;
    }
    let witness_point = witness.expect("witness exists when the subset test fails");
    debug_assert!(whole.contains(&witness_point)?);
    debug_assert!(!sum.contains(&witness_point)?);
    Ok(RdpReport {
        holds: false,
        pair: (x.to_vec(), y.to_vec()),
        witness: Some(witness_point),
        lrdp_holds: None,
        separator: None,
    })
}

/// Decides the relaxed decomposition property at `(x, y)` for the given
/// functional class, filling the plain verdict as well.
pub fn check_lrdp(
    space: &OrderedSpace,
    x: &[Rat],
    y: &[Rat],
    class: FunctionalClass,
) -> Result<RdpReport> {
    let mut report = check_rdp(space, x, y)?;
    if report.holds {
        // Nothing to separate.
        report.lrdp_holds = Some(true);
        return Ok(report);
    }
    let (whole, sum) = interval_sets(space, x, y)?;
    match class {
        FunctionalClass::All => {
            let (ok, w) = whole.subset_of_closure(&sum)?;
            report.lrdp_holds = Some(ok);
            if !ok {
                let z = w.expect("witness accompanies a failed subset test");
                let sep = strict_separation(&z, &sum)?.ok_or_else(|| {
                    Error::Internal("point outside the closure must be separable".into())
                })?;
                report.witness = Some(z);
                report.separator = Some(sep.separator);
            }
        }
        FunctionalClass::Regular => {
            let region = regular_unseparable_region(space, &sum)?;
            let region_union = CellUnion::from_cell(region, true)?;
            let (ok, w) = whole.subset_of(&region_union)?;
            report.lrdp_holds = Some(ok);
            if !ok {
                let z = w.expect("witness accompanies a failed subset test");
                let sep = regular_separator_at(space, &z, &sum)?.ok_or_else(|| {
                    Error::Internal(
                        "point outside the unseparable region must admit a regular separator"
                            .into(),
                    )
                })?;
                report.witness = Some(z);
                report.separator = Some(sep);
            }
        }
    }
    Ok(report)
}

/// Points that no regular functional strictly separates from `set`: the
/// polar of the cone `{(f, g) regular, f <= g on set}`, computed exactly by
/// eliminating the positive parts and enumerating the projected cone's
/// generators.
fn regular_unseparable_region(space: &OrderedSpace, set: &CellUnion) -> Result<Cell> {
    let d = space.dimension();
    let gens = space.closure_generators();
    let hull = set.hull_cell(DEFAULT_BASIS_BUDGET)?;
    let vl = CellUnion::from_cell(hull, true)?.vertices(DEFAULT_BASIS_BUDGET)?;
    // Variables (f, gamma, a, b): f = a - b with a, b in the dual cone, and
    // f . v <= gamma on the set's closure.
    let total = 3 * d + 1;
    let mut lifted: Vec<LinearConstraint> = Vec::new();
    for g in gens {
        let mut ca = zero_vec(total);
        let mut cb = zero_vec(total);
        for k in 0..d {
            ca[d + 1 + k] = g[k].clone();
            cb[2 * d + 1 + k] = g[k].clone();
        }
        lifted.push(LinearConstraint::ge(ca, Rat::zero()));
        lifted.push(LinearConstraint::ge(cb, Rat::zero()));
    }
    for k in 0..d {
        let mut row = zero_vec(total);
        row[k] = Rat::one();
        row[d + 1 + k] = -Rat::one();
        row[2 * d + 1 + k] = Rat::one();
        lifted.push(LinearConstraint::ge(row.clone(), Rat::zero()));
        lifted.push(LinearConstraint::ge(
            row.iter().map(|c| -c).collect(),
            Rat::zero(),
        ));
    }
    for v in &vl.vertices {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&v[k];
        }
        row[d] = Rat::one();
        lifted.push(LinearConstraint::ge(row, Rat::zero()));
    }
    for r in &vl.rays {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&r[k];
        }
        lifted.push(LinearConstraint::ge(row, Rat::zero()));
    }
    let projected = fm_eliminate_block(total, &lifted, 2 * d)?;
    let cone_cell = Cell::new(d + 1, projected)?;
    let generators = cone_generators(&cone_cell, DEFAULT_BASIS_BUDGET)?;
    let mut region_rows = Vec::new();
    for g in &generators {
        // (f, gamma) generator imposes f . z <= gamma on the region.
        let f: RatVector = g[..d].iter().map(|c| -c).collect();
        region_rows.push(LinearConstraint::ge(f, -&g[d]));
    }
    Cell::new(d, region_rows)
}

/// A regular functional strictly separating `z` from `set`, if one exists.
fn regular_separator_at(
    space: &OrderedSpace,
    z: &[Rat],
    set: &CellUnion,
) -> Result<Option<LinearOperator>> {
    let d = space.dimension();
    let gens = space.closure_generators();
    let hull = set.hull_cell(DEFAULT_BASIS_BUDGET)?;
    let vl = CellUnion::from_cell(hull, true)?.vertices(DEFAULT_BASIS_BUDGET)?;
    // Variables (a, b, gamma); separation demands (a-b).z > gamma while
    // (a-b).v <= gamma on the set. The system is a cone, so plain strict
    // feasibility decides it.
    let total = 2 * d + 1;
    let mut cs: Vec<LinearConstraint> = Vec::new();
    for g in gens {
        let mut ca = zero_vec(total);
        let mut cb = zero_vec(total);
        for k in 0..d {
            ca[k] = g[k].clone();
            cb[d + k] = g[k].clone();
        }
        cs.push(LinearConstraint::ge(ca, Rat::zero()));
        cs.push(LinearConstraint::ge(cb, Rat::zero()));
    }
    for v in &vl.vertices {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&v[k];
            row[d + k] = v[k].clone();
        }
        row[2 * d] = Rat::one();
        cs.push(LinearConstraint::ge(row, Rat::zero()));
    }
    for r in &vl.rays {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&r[k];
            row[d + k] = r[k].clone();
        }
        cs.push(LinearConstraint::ge(row, Rat::zero()));
    }
    let mut strict_row = zero_vec(total);
    for k in 0..d {
        strict_row[k] = z[k].clone();
        strict_row[d + k] = -&z[k];
    }
    strict_row[2 * d] = -Rat::one();
    cs.push(LinearConstraint::gt(strict_row, Rat::zero()));
    match strict_feasible(total, &cs)? {
        None => Ok(None),
        Some(p) => {
            let f: RatVector = (0..d).map(|k| &p[k] - &p[d + k]).collect();
            let fz = dot(&f, z);
            let sup = sup_over(&vl, &f)?;
            if fz <= sup {
                return Err(Error::Internal(
                    "regular separator candidate fails the margin re-check".into(),
                ));
            }
            Ok(Some(LinearOperator::functional(f)))
        }
    }
}

/// Strict separation certificate: `separator(point) > bound > sup` over the
/// set, with exact margins.
#[derive(Clone, Debug)]
pub struct SeparationResult {
    pub separator: LinearOperator,
    pub bound: Rat,
    pub strict: bool,
}

fn sup_over(vl: &VertexList, f: &[Rat]) -> Result<Rat> {
    let mut best: Option<Rat> = None;
    for v in &vl.vertices {
        let val = dot(f, v);
        if best.as_ref().is_none_or(|b| val > *b) {
            best = Some(val);
        }
    }
    for r in &vl.rays {
        if dot(f, r).is_positive() {
            return Err(Error::Internal(
                "support value is unbounded along a ray".into(),
            ));
        }
    }
    best.ok_or_else(|| Error::Precondition("cannot take a supremum over an empty set".into()))
}

/// Separates `point` strictly from a convex `set` when the point lies
/// outside the set's closure; `None` when it does not.
pub fn strict_separation(point: &[Rat], set: &CellUnion) -> Result<Option<SeparationResult>> {
    if !set.convex_hint() {
        return Err(Error::NotConvex("separation needs a convex set".into()));
    }
    if set.is_empty() {
        return Err(Error::Precondition(
            "cannot separate from an empty set".into(),
        ));
    }
    let d = set.dimension();
    if point.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: point.len(),
        });
    }
    let hull = set.hull_cell(DEFAULT_BASIS_BUDGET)?;
    if hull.contains(point)? {
        return Ok(None);
    }
    let vl = CellUnion::from_cell(hull, true)?.vertices(DEFAULT_BASIS_BUDGET)?;
    // Variables (f, gamma): maximize f.point - gamma within a coefficient box.
    let total = d + 1;
    let mut rows: Vec<(RatVector, Rat)> = Vec::new();
    for v in &vl.vertices {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&v[k];
        }
        row[d] = Rat::one();
        rows.push((row, Rat::zero()));
    }
    for r in &vl.rays {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&r[k];
        }
        rows.push((row, Rat::zero()));
    }
    for k in 0..d {
        let mut up = zero_vec(total);
        up[k] = -Rat::one();
        rows.push((up, -Rat::one()));
        let mut lo = zero_vec(total);
        lo[k] = Rat::one();
        rows.push((lo, -Rat::one()));
    }
    let mut objective = zero_vec(total);
    for k in 0..d {
        objective[k] = point[k].clone();
    }
    objective[d] = -Rat::one();
    match solve_max(&objective, &rows) {
        LpResult::Optimal { value, point: sol } => {
            if !value.is_positive() {
                return Err(Error::Internal(
                    "no separating margin although the point is outside the closure".into(),
                ));
            }
            let f: RatVector = sol[..d].to_vec();
            let sup = sup_over(&vl, &f)?;
            let fz = dot(&f, point);
            debug_assert!(fz > sup);
            let bound = (&fz + &sup) / Rat::from_integer(2.into());
            Ok(Some(SeparationResult {
                separator: LinearOperator::functional(f),
                bound,
                strict: true,
            }))
        }
        other => Err(Error::Internal(format!(
            "separation LP did not reach an optimum: {other:?}"
        ))),
    }
}

/// A regular functional separating two disjoint sub-cones, with its two
/// positive parts, built through the base of the cone.
#[derive(Clone, Debug)]
pub struct RegularSeparator {
    pub separator: LinearOperator,
    pub positive_part: LinearOperator,
    pub negative_part: LinearOperator,
}

/// Separation of two disjoint convex sub-cones of `X_+` by a regular
/// functional, constructed through the base slice: separate the base
/// sections by a hyperplane, bound the aperture coordinate over the base,
/// and extend the two tilted affine functionals linearly.
///
/// The returned functional is nonpositive on `k0` and nonnegative on `k1`.
pub fn separate_by_regular(
    space: &OrderedSpace,
    k0: &CellUnion,
    k1: &CellUnion,
) -> Result<RegularSeparator> {
    let d = space.dimension();
    if k0.is_empty() || k1.is_empty() {
        return Err(Error::Precondition("both cones must be nonempty".into()));
    }
    for (name, k) in [("first", k0), ("second", k1)] {
        let (inside, stray) = k.subset_of(space.cone_cells())?;
        if !inside {
            return Err(Error::Precondition(format!(
                "{name} cone leaves the positive cone at {stray:?}"
            )));
        }
    }
    for c0 in k0.cells() {
        for c1 in k1.cells() {
            let mut cs = c0.constraints().to_vec();
            cs.extend_from_slice(c1.constraints());
            if strict_feasible(d, &cs)?.is_some() {
                return Err(Error::Precondition("the cones intersect".into()));
            }
        }
    }
    let interior_cell = k0
        .cells()
        .iter()
        .find_map(|c| c.interior_point().transpose())
        .transpose()?;
    if interior_cell.is_none() {
        return Err(Error::Precondition(
            "the first cone must have internal points".into(),
        ));
    }
    if !space.is_generating()? {
        return Err(Error::Precondition("the cone must be generating".into()));
    }
    if !space.has_bounded_aperture()? {
        return Err(Error::Precondition(
            "the cone must have bounded aperture".into(),
        ));
    }
    let (f_base, base) = space
        .strictly_positive_functional()?
        .expect("bounded aperture implies a base");
    let f_base_row = f_base.row(0).clone();

    // Base sections A_j = K_j with f = 1.
    let slice = |k: &CellUnion| -> Result<CellUnion> {
        let mut cells = Vec::new();
        for c in k.cells() {
            let mut cs = c.constraints().to_vec();
            cs.push(LinearConstraint::ge(f_base_row.clone(), Rat::one()));
            cs.push(LinearConstraint::ge(
                f_base_row.iter().map(|x| -x).collect(),
                -Rat::one(),
            ));
            cells.push(Cell::new(d, cs)?);
        }
        CellUnion::new(d, cells, true)
    };
    let a0 = slice(k0)?;
    let a1 = slice(k1)?;

    // A relative interior point of A_0 in the base slice.
    let x0 = {
        let mut found = None;
        for c in k0.cells() {
            let mut cs: Vec<LinearConstraint> = c
                .constraints()
                .iter()
                .map(|cc| LinearConstraint::gt(cc.coeffs.clone(), cc.rhs.clone()))
                .collect();
            cs.push(LinearConstraint::ge(f_base_row.clone(), Rat::one()));
            cs.push(LinearConstraint::ge(
                f_base_row.iter().map(|x| -x).collect(),
                -Rat::one(),
            ));
            if let Some(p) = strict_feasible(d, &cs)? {
                found = Some(p);
                break;
            }
        }
        found.ok_or_else(|| {
            Error::Precondition("the first cone's interior misses the base slice".into())
        })?
    };

    // Hyperplane of the base slice separating the sections, proper at x0.
    let v0 = CellUnion::from_cell(a0.hull_cell(DEFAULT_BASIS_BUDGET)?, true)?
        .vertices(DEFAULT_BASIS_BUDGET)?;
    let v1 = CellUnion::from_cell(a1.hull_cell(DEFAULT_BASIS_BUDGET)?, true)?
        .vertices(DEFAULT_BASIS_BUDGET)?;
    let total = d + 1; // (h, alpha)
    let mut rows: Vec<(RatVector, Rat)> = Vec::new();
    for v in v0.vertices.iter().chain(&v0.rays) {
        // h . v <= alpha for vertices; h . r <= 0 for rays.
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&v[k];
        }
        if v0.vertices.contains(v) {
            row[d] = Rat::one();
        }
        rows.push((row, Rat::zero()));
    }
    for v in v1.vertices.iter().chain(&v1.rays) {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = v[k].clone();
        }
        if v1.vertices.contains(v) {
            row[d] = -Rat::one();
        }
        rows.push((row, Rat::zero()));
    }
    for k in 0..d {
        let mut up = zero_vec(total);
        up[k] = -Rat::one();
        rows.push((up, -Rat::one()));
        let mut lo = zero_vec(total);
        lo[k] = Rat::one();
        rows.push((lo, -Rat::one()));
    }
    let mut objective = zero_vec(total);
    for k in 0..d {
        objective[k] = -&x0[k];
    }
    objective[d] = Rat::one();
    let (margin, sol) = match solve_max(&objective, &rows) {
        LpResult::Optimal { value, point } => (value, point),
        other => {
            return Err(Error::Internal(format!(
                "base separation LP did not reach an optimum: {other:?}"
            )))
        }
    };
    if !margin.is_positive() {
        return Err(Error::Internal(
            "no proper separating hyperplane over the base".into(),
        ));
    }
    let h: RatVector = sol[..d].to_vec();
    let alpha = sol[d].clone();

    // Aperture coordinate s(z) = (h.z - alpha) / (h.x0 - alpha) over the
    // base; |s| <= c with c computed by two exact LPs.
    let denom = dot(&h, &x0) - &alpha; // negative
    let base_hull = base.hull_cell(DEFAULT_BASIS_BUDGET)?;
    let base_rows: Vec<(RatVector, Rat)> = base_hull
        .constraints()
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    let mut c_bound = Rat::one();
    for sign in [Rat::one(), -Rat::one()] {
        let objective: RatVector = h.iter().map(|x| x * &sign / &denom).collect();
        match solve_max(&objective, &base_rows) {
            LpResult::Optimal { value, .. } => {
                let s_val = value + (&alpha * &sign / &denom).clone() * (-Rat::one());
                if s_val > c_bound {
                    c_bound = s_val;
                }
            }
            LpResult::Unbounded { .. } => {
                return Err(Error::Internal(
                    "base is unbounded despite the aperture check".into(),
                ))
            }
            LpResult::Infeasible => {
                return Err(Error::Internal("base slice is empty".into()))
            }
        }
    }

    // h0 = 1 + s/(2c), h1 = 1 - s/(2c) on the base, extended linearly:
    // F = w/(2c) +- beta f_base with w the linear part of s.
    let two_c = Rat::from_integer(2.into()) * &c_bound;
    let w: RatVector = h.iter().map(|x| x / &denom).collect();
    let sigma = -&alpha / &denom;
    let beta0 = Rat::one() + &sigma / &two_c;
    let beta1 = Rat::one() - &sigma / &two_c;
    let f0: RatVector = (0..d)
        .map(|k| &w[k] / &two_c + &beta0 * &f_base_row[k])
        .collect();
    let f1: RatVector = (0..d)
        .map(|k| -&w[k] / &two_c + &beta1 * &f_base_row[k])
        .collect();
    for g in space.closure_generators() {
        if dot(&f0, g).is_negative() || dot(&f1, g).is_negative() {
            return Err(Error::Internal(
                "constructed parts are not positive on the cone".into(),
            ));
        }
    }
    // f = f1 - f0 is -s/c on the base: nonpositive on A_0, nonnegative on A_1.
    let f: RatVector = (0..d).map(|k| &f1[k] - &f0[k]).collect();
    for c in k0.cells() {
        if let Some(p) = c.sample_point()? {
            if dot(&f, &p).is_positive() {
                return Err(Error::Internal("sign check failed on the first cone".into()));
            }
        }
    }
    for c in k1.cells() {
        if let Some(p) = c.sample_point()? {
            if dot(&f, &p).is_negative() {
                return Err(Error::Internal("sign check failed on the second cone".into()));
            }
        }
    }
    Ok(RegularSeparator {
        separator: LinearOperator::functional(f),
        positive_part: LinearOperator::functional(f1),
        negative_part: LinearOperator::functional(f0),
    })
}

/// A regular functional whose level set is the given hyperplane: a positive
/// multiple of the normal exhibited as a difference of two dual-cone
/// members, found by one exact feasibility LP.
pub struct RegularHyperplane {
    pub functional: LinearOperator,
    pub offset: Rat,
    pub positive_part: LinearOperator,
    pub negative_part: LinearOperator,
}

pub fn hyperplane_as_regular(
    space: &OrderedSpace,
    normal: &[Rat],
    offset: &Rat,
) -> Result<RegularHyperplane> {
    let d = space.dimension();
    if normal.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: normal.len(),
        });
    }
    if normal.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("hyperplane normal must be nonzero".into()));
    }
    if !space.is_generating()? {
        return Err(Error::Precondition("the cone must be generating".into()));
    }
    if !space.has_bounded_aperture()? {
        return Err(Error::Precondition(
            "the cone must have bounded aperture".into(),
        ));
    }
    if space.interior_point()?.is_none() {
        return Err(Error::Precondition(
            "the cone must have internal points".into(),
        ));
    }
    let gens = space.closure_generators();
    // Variables (a, b, lambda): a - b = lambda * normal, a and b in the dual
    // cone, lambda >= 1.
    let total = 2 * d + 1;
    let mut rows: Vec<(RatVector, Rat)> = Vec::new();
    for g in gens {
        let mut ca = zero_vec(total);
        let mut cb = zero_vec(total);
        for k in 0..d {
            ca[k] = g[k].clone();
            cb[d + k] = g[k].clone();
        }
        rows.push((ca, Rat::zero()));
        rows.push((cb, Rat::zero()));
    }
    for k in 0..d {
        let mut row = zero_vec(total);
        row[k] = Rat::one();
        row[d + k] = -Rat::one();
        row[2 * d] = -&normal[k];
        rows.push((row.clone(), Rat::zero()));
        rows.push((row.iter().map(|c| -c).collect(), Rat::zero()));
    }
    let mut lam = zero_vec(total);
    lam[2 * d] = Rat::one();
    rows.push((lam, Rat::one()));
    match crate::ratgeom::feasible_point(total, &rows) {
        None => Err(Error::Internal(
            "no regular multiple of the normal despite the preconditions".into(),
        )),
        Some(p) => {
            let a: RatVector = p[..d].to_vec();
            let b: RatVector = p[d..2 * d].to_vec();
            let lambda = p[2 * d].clone();
            let f: RatVector = (0..d).map(|k| &a[k] - &b[k]).collect();
            debug_assert_eq!(f, vec_scale(&lambda, normal));
            Ok(RegularHyperplane {
                functional: LinearOperator::functional(f),
                offset: &lambda * offset,
                positive_part: LinearOperator::functional(a),
                negative_part: LinearOperator::functional(b),
            })
        }
    }
}

/// For nonempty convex line-open `b` inside line-open `a`: a functional `g`,
/// a level `alpha` and a point of `a` strictly beyond the level, so that the
/// open slab `a \cap {g > alpha}` misses `b` entirely. `None` when `a` is
/// contained in `b`.
pub fn internal_of_difference(
    a: &CellUnion,
    b: &CellUnion,
) -> Result<Option<(RatVector, RatVector, Rat)>> {
    let d = a.dimension();
    for (name, u) in [("first", a), ("second", b)] {
        if u.is_empty() {
            return Err(Error::Precondition(format!("{name} set must be nonempty")));
        }
        if !u.convex_hint() {
            return Err(Error::NotConvex(format!("{name} set must be convex")));
        }
        for c in u.cells() {
            if !c.is_open() {
                return Err(Error::Precondition(format!(
                    "{name} set must be line-open (all constraints strict)"
                )));
            }
        }
    }
    let (inside, stray) = b.subset_of(a)?;
    if !inside {
        return Err(Error::Precondition(format!(
            "the second set must be contained in the first; {stray:?} escapes"
        )));
    }
    let (covered, w) = a.subset_of(b)?;
    if covered {
        return Ok(None);
    }
    let y0 = w.expect("witness accompanies a failed subset test");
    let x0 = b
        .sample_point()?
        .expect("nonempty line-open set has members");
    // Support b away from y0: g . b <= alpha <= g . y0, strict at x0.
    let hull_b = b.hull_cell(DEFAULT_BASIS_BUDGET)?;
    let vlb = CellUnion::from_cell(hull_b, true)?.vertices(DEFAULT_BASIS_BUDGET)?;
    let total = d + 2; // (g, alpha, t)
    let mut rows: Vec<(RatVector, Rat)> = Vec::new();
    for v in &vlb.vertices {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&v[k];
        }
        row[d] = Rat::one();
        rows.push((row, Rat::zero()));
    }
    for r in &vlb.rays {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&r[k];
        }
        rows.push((row, Rat::zero()));
    }
    {
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = y0[k].clone();
        }
        row[d] = -Rat::one();
        rows.push((row, Rat::zero())); // g . y0 >= alpha
        let mut row = zero_vec(total);
        for k in 0..d {
            row[k] = -&x0[k];
        }
        row[d] = Rat::one();
        row[d + 1] = -Rat::one();
        rows.push((row, Rat::zero())); // alpha - g . x0 >= t
    }
    for k in 0..d {
        let mut up = zero_vec(total);
        up[k] = -Rat::one();
        rows.push((up, -Rat::one()));
        let mut lo = zero_vec(total);
        lo[k] = Rat::one();
        rows.push((lo, -Rat::one()));
    }
    let mut objective = zero_vec(total);
    objective[d + 1] = Rat::one();
    let (t, sol) = match solve_max(&objective, &rows) {
        LpResult::Optimal { value, point } => (value, point),
        other => {
            return Err(Error::Internal(format!(
                "support LP did not reach an optimum: {other:?}"
            )))
        }
    };
    if !t.is_positive() {
        return Err(Error::Internal(
            "no proper support of the inner set away from the witness".into(),
        ));
    }
    let g: RatVector = sol[..d].to_vec();
    let alpha = sol[d].clone();

    // Push past y0 along the line from x0 while staying inside a.
    let hull_a = a.hull_cell(DEFAULT_BASIS_BUDGET)?;
    let dir = vec_sub(&y0, &x0);
    let mut lambda_rows: Vec<(RatVector, Rat)> = Vec::new();
    for c in hull_a.constraints() {
        // c . (x0 + lambda dir) >= rhs
        lambda_rows.push((
            vec![dot(&c.coeffs, &dir)],
            &c.rhs - dot(&c.coeffs, &x0),
        ));
    }
    let lambda = match solve_max(&[Rat::one()], &lambda_rows) {
        LpResult::Optimal { value, .. } => {
            (Rat::one() + value) / Rat::from_integer(2.into())
        }
        LpResult::Unbounded { .. } => Rat::from_integer(2.into()),
        LpResult::Infeasible => {
            return Err(Error::Internal("witness left the outer hull".into()))
        }
    };
    let y: RatVector = (0..d).map(|k| &x0[k] + &lambda * &dir[k]).collect();
    if !a.contains(&y)? {
        return Err(Error::Internal("pushed point left the outer set".into()));
    }
    if dot(&g, &y) <= alpha {
        return Err(Error::Internal("pushed point is not beyond the level".into()));
    }
    Ok(Some((y, g, alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};

    #[test]
    fn rdp_fails_on_semiopen_example() {
        let s = OrderedSpace::named("example_s2").unwrap();
        let rep = check_rdp(&s, &[rat(2), rat(1), rat(1)], &[rat(1), rat(2), rat(1)]).unwrap();
        assert!(!rep.holds);
        let w = rep.witness.unwrap();
        // The witness lies on the included part of the bottom boundary
        // segment from (2,2,0) to (3,3,0).
        assert_eq!(w[0], w[1]);
        assert_eq!(w[2], rat(0));
        assert!(w[0] >= rat(2) && w[0] < rat(3), "witness {w:?}");
        // Re-check the certificate exactly.
        let (whole, sum) = interval_sets(&s, &[rat(2), rat(1), rat(1)], &[rat(1), rat(2), rat(1)])
            .unwrap();
        assert!(whole.contains(&w).unwrap());
        assert!(!sum.contains(&w).unwrap());
    }

    #[test]
    fn rdp_holds_on_lattice_cone() {
        let s = OrderedSpace::named("standard:3").unwrap();
        for (x, y) in [
            (vec![rat(1), rat(2), rat(1)], vec![rat(2), rat(1), rat(3)]),
            (vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(0), rat(2)]),
        ] {
            let rep = check_rdp(&s, &x, &y).unwrap();
            assert!(rep.holds);
            assert!(rep.witness.is_none());
        }
    }

    #[test]
    fn rdp_fails_on_square_cone_with_vertex_witness() {
        let s = OrderedSpace::named("square_cone").unwrap();
        let x = vec![rat(1), rat(1), rat(1)];
        let y = vec![rat(-1), rat(-1), rat(1)];
        let rep = check_rdp(&s, &x, &y).unwrap();
        assert!(!rep.holds);
        let w = rep.witness.unwrap();
        let (whole, sum) = interval_sets(&s, &x, &y).unwrap();
        assert!(whole.contains(&w).unwrap());
        assert!(!sum.contains(&w).unwrap());
        // The witness from the vertex pass is a corner of [0, x+y].
        assert!(w == vec![rat(1), rat(-1), rat(1)] || w == vec![rat(-1), rat(1), rat(1)]);
    }

    #[test]
    fn lrdp_holds_on_semiopen_example() {
        let s = OrderedSpace::named("example_s2").unwrap();
        let rep = check_lrdp(
            &s,
            &[rat(2), rat(1), rat(1)],
            &[rat(1), rat(2), rat(1)],
            FunctionalClass::All,
        )
        .unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.lrdp_holds, Some(true));
        assert!(rep.separator.is_none());
    }

    #[test]
    fn lrdp_trivially_follows_from_rdp() {
        let s = OrderedSpace::named("standard:3").unwrap();
        let rep = check_lrdp(
            &s,
            &[rat(1), rat(2), rat(3)],
            &[rat(3), rat(1), rat(2)],
            FunctionalClass::All,
        )
        .unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lrdp_holds, Some(true));
    }

    #[test]
    fn lrdp_fails_on_square_cone_with_verified_separator() {
        let s = OrderedSpace::named("square_cone").unwrap();
        let x = vec![rat(1), rat(1), rat(1)];
        let y = vec![rat(-1), rat(-1), rat(1)];
        let rep = check_lrdp(&s, &x, &y, FunctionalClass::All).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.lrdp_holds, Some(false));
        let z = rep.witness.clone().unwrap();
        let f = rep.separator.unwrap();
        let (_, sum) = interval_sets(&s, &x, &y).unwrap();
        let hull = sum.hull_cell(DEFAULT_BASIS_BUDGET).unwrap();
        let vl = CellUnion::from_cell(hull, true)
            .unwrap()
            .vertices(DEFAULT_BASIS_BUDGET)
            .unwrap();
        let sup = sup_over(&vl, f.row(0)).unwrap();
        assert!(dot(f.row(0), &z) > sup);
        // The regular class agrees here: closed polyhedral data.
        let rep = check_lrdp(&s, &x, &y, FunctionalClass::Regular).unwrap();
        assert_eq!(rep.lrdp_holds, Some(false));
        assert!(rep.separator.is_some());
    }

    #[test]
    fn lrdp_regular_holds_on_semiopen_example() {
        let s = OrderedSpace::named("example_s2").unwrap();
        let rep = check_lrdp(
            &s,
            &[rat(2), rat(1), rat(1)],
            &[rat(1), rat(2), rat(1)],
            FunctionalClass::Regular,
        )
        .unwrap();
        assert_eq!(rep.lrdp_holds, Some(true));
    }

    #[test]
    fn separation_examples() {
        let s = OrderedSpace::named("example_s2").unwrap();
        let interval = s
            .order_interval(&zero_vec(3), &[rat(3), rat(3), rat(2)])
            .unwrap()
            .set
            .closure()
            .unwrap();
        let res = strict_separation(&[rat(0), rat(0), rat(5)], &interval)
            .unwrap()
            .expect("point is outside");
        let f = res.separator.row(0);
        assert!(dot(f, &[rat(0), rat(0), rat(5)]) > res.bound);
        // Bound dominates the supremum over the set.
        let hull = interval.hull_cell(DEFAULT_BASIS_BUDGET).unwrap();
        let vl = CellUnion::from_cell(hull, true)
            .unwrap()
            .vertices(DEFAULT_BASIS_BUDGET)
            .unwrap();
        assert!(res.bound > sup_over(&vl, f).unwrap());

        // A point in the closure of the sum is not strictly separable.
        let ia = s.order_interval(&zero_vec(3), &[rat(2), rat(1), rat(1)]).unwrap().set;
        let ib = s.order_interval(&zero_vec(3), &[rat(1), rat(2), rat(1)]).unwrap().set;
        let sum = ia.minkowski_sum(&ib).unwrap();
        assert!(strict_separation(&[ratio(5, 2), ratio(5, 2), rat(0)], &sum)
            .unwrap()
            .is_none());
        // An interior point is certainly not separable.
        assert!(strict_separation(&[rat(1), rat(1), rat(1)], &sum).unwrap().is_none());
    }

    #[test]
    fn regular_separation_of_plane_subcones() {
        let s = OrderedSpace::named("standard:2").unwrap();
        // Cones over the base segments (1,t), 0 < t < 1/2 and 1/2 < t < 1.
        let k0 = CellUnion::from_cell(
            Cell::new(
                2,
                vec![
                    LinearConstraint::gt(vec![rat(0), rat(1)], rat(0)),
                    LinearConstraint::gt(vec![rat(1), rat(-2)], rat(0)),
                ],
            )
            .unwrap(),
            true,
        )
        .unwrap();
        let k1 = CellUnion::from_cell(
            Cell::new(
                2,
                vec![
                    LinearConstraint::gt(vec![rat(-1), rat(2)], rat(0)),
                    LinearConstraint::gt(vec![rat(1), rat(-1)], rat(0)),
                ],
            )
            .unwrap(),
            true,
        )
        .unwrap();
        let sep = separate_by_regular(&s, &k0, &k1).unwrap();
        // Parts are entrywise nonnegative functionals on the plane cone.
        for part in [&sep.positive_part, &sep.negative_part] {
            assert!(part.row(0).iter().all(|c| !c.is_negative()));
        }
        assert_eq!(
            sep.separator,
            sep.positive_part.sub(&sep.negative_part)
        );
        // Sign pattern on cone samples.
        for p in [vec![rat(4), rat(1)], vec![rat(8), rat(3)]] {
            assert!(!dot(sep.separator.row(0), &p).is_positive());
        }
        for p in [vec![rat(4), rat(3)], vec![rat(8), rat(7)]] {
            assert!(!dot(sep.separator.row(0), &p).is_negative());
        }
    }

    #[test]
    fn regular_separation_needs_bounded_aperture() {
        // Open half-plane plus origin: base exists but aperture is unbounded.
        let open_half =
            Cell::new(2, vec![LinearConstraint::gt(vec![rat(0), rat(1)], rat(0))]).unwrap();
        let origin = Cell::new(
            2,
            vec![
                LinearConstraint::ge(vec![rat(1), rat(0)], rat(0)),
                LinearConstraint::ge(vec![rat(-1), rat(0)], rat(0)),
                LinearConstraint::ge(vec![rat(0), rat(1)], rat(0)),
                LinearConstraint::ge(vec![rat(0), rat(-1)], rat(0)),
            ],
        )
        .unwrap();
        let space = OrderedSpace::semi_open(
            2,
            CellUnion::new(2, vec![open_half, origin], true).unwrap(),
        )
        .unwrap();
        let k0 = CellUnion::from_cell(
            Cell::new(
                2,
                vec![
                    LinearConstraint::gt(vec![rat(0), rat(1)], rat(0)),
                    LinearConstraint::gt(vec![rat(-1), rat(0)], rat(0)),
                ],
            )
            .unwrap(),
            true,
        )
        .unwrap();
        let k1 = CellUnion::from_cell(
            Cell::new(
                2,
                vec![
                    LinearConstraint::gt(vec![rat(0), rat(1)], rat(0)),
                    LinearConstraint::gt(vec![rat(1), rat(0)], rat(0)),
                ],
            )
            .unwrap(),
            true,
        )
        .unwrap();
        assert!(matches!(
            separate_by_regular(&space, &k0, &k1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn hyperplane_decompositions() {
        let s = OrderedSpace::named("standard:2").unwrap();
        let h = hyperplane_as_regular(&s, &[rat(1), rat(-1)], &rat(0)).unwrap();
        let f = h.functional.row(0);
        // A positive multiple of the normal, split into positive parts.
        assert!(f[0].is_positive());
        assert_eq!(f[0], -f[1].clone());
        assert_eq!(
            h.functional,
            h.positive_part.sub(&h.negative_part)
        );
        let s3 = OrderedSpace::named("standard:3").unwrap();
        let h = hyperplane_as_regular(&s3, &[rat(1), rat(1), rat(-2)], &rat(1)).unwrap();
        for g in s3.closure_generators() {
            assert!(!dot(h.positive_part.row(0), g).is_negative());
            assert!(!dot(h.negative_part.row(0), g).is_negative());
        }
        // Offset scales with the multiple.
        let lambda = &h.functional.row(0)[0];
        assert_eq!(h.offset, lambda.clone());
        assert!(matches!(
            hyperplane_as_regular(&s, &[rat(0), rat(0)], &rat(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn internal_difference_of_open_boxes() {
        let open_square = Cell::new(
            2,
            vec![
                LinearConstraint::gt(vec![rat(1), rat(0)], rat(0)),
                LinearConstraint::gt(vec![rat(-1), rat(0)], rat(-1)),
                LinearConstraint::gt(vec![rat(0), rat(1)], rat(0)),
                LinearConstraint::gt(vec![rat(0), rat(-1)], rat(-1)),
            ],
        )
        .unwrap();
        let left_half = Cell::new(
            2,
            vec![
                LinearConstraint::gt(vec![rat(1), rat(0)], rat(0)),
                LinearConstraint::gt(vec![rat(-1), rat(0)], ratio(-1, 2)),
                LinearConstraint::gt(vec![rat(0), rat(1)], rat(0)),
                LinearConstraint::gt(vec![rat(0), rat(-1)], rat(-1)),
            ],
        )
        .unwrap();
        let a = CellUnion::from_cell(open_square, true).unwrap();
        let b = CellUnion::from_cell(left_half, true).unwrap();
        let (y, g, alpha) = internal_of_difference(&a, &b).unwrap().unwrap();
        assert!(a.contains(&y).unwrap());
        assert!(dot(&g, &y) > alpha);
        // The inner set stays at or below the level.
        let hull_b = b.hull_cell(DEFAULT_BASIS_BUDGET).unwrap();
        let vl = CellUnion::from_cell(hull_b, true)
            .unwrap()
            .vertices(DEFAULT_BASIS_BUDGET)
            .unwrap();
        assert!(sup_over(&vl, &g).unwrap() <= alpha);
        // Equal sets yield nothing.
        assert!(internal_of_difference(&a, &a).unwrap().is_none());
        // Empty inner set violates the preconditions.
        let empty = CellUnion::empty(2);
        assert!(matches!(
            internal_of_difference(&a, &empty),
            Err(Error::Precondition(_))
        ));
    }
}
