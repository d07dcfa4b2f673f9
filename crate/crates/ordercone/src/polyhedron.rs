//! Semi-open polyhedral sets: cells (conjunctions of strict and non-strict
//! linear inequalities) and finite unions of cells, with exact membership,
//! closure, Minkowski sum, subset tests and vertex enumeration.

use crate::error::{Error, Result};
use crate::num::{
    is_zero_vec, primitive_vec, unit_vec, vec_add, vec_scale, zero_vec, Rat, RatVector,
};
use crate::ratgeom::{
    feasible_point, fm_eliminate_block, push_equality, remove_redundant, solve_linear_system,
    strict_feasible, LinearConstraint,
};
use num::{One, Zero};

/// Default cap on the number of constraint subsets inspected during vertex
/// and ray enumeration.
pub const DEFAULT_BASIS_BUDGET: usize = 10_000;

/// A conjunction of linear inequalities, some of them possibly strict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl Cell {
    pub fn new(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            if c.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.dimension(),
                });
            }
        }
        Ok(Cell { dim, constraints })
    }

    /// Whole space in the given dimension.
    pub fn everything(dim: usize) -> Self {
        Cell {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        Ok(self.constraints.iter().all(|c| c.satisfied_by(point)))
    }

    pub fn closure(&self) -> Cell {
        Cell {
            dim: self.dim,
            constraints: self.constraints.iter().map(|c| c.closed()).collect(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.constraints.iter().all(|c| !c.strict)
    }

    /// Every constraint strict (a line-open cell).
    pub fn is_open(&self) -> bool {
        self.constraints.iter().all(|c| c.strict)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.sample_point()?.is_none())
    }

    pub fn sample_point(&self) -> Result<Option<RatVector>> {
        strict_feasible(self.dim, &self.constraints)
    }

    /// Feasibility of the all-strict relaxation; nonempty exactly when the
    /// cell has nonempty topological interior.
    pub fn interior_point(&self) -> Result<Option<RatVector>> {
        let strict: Vec<LinearConstraint> = self
            .constraints
            .iter()
            .map(|c| LinearConstraint::gt(c.coeffs.clone(), c.rhs.clone()))
            .collect();
        strict_feasible(self.dim, &strict)
    }

    pub fn normalized(&self) -> Result<Cell> {
        Ok(Cell {
            dim: self.dim,
            constraints: remove_redundant(self.dim, &self.constraints)?,
        })
    }

    fn with_extra(&self, extra: &[LinearConstraint]) -> Cell {
        let mut cs = self.constraints.clone();
        cs.extend_from_slice(extra);
        Cell {
            dim: self.dim,
            constraints: cs,
        }
    }
}

/// Finite union of same-dimension cells. `convex_hint` is a caller assertion
/// used by the operations that mathematically require convexity; it is
/// spot-checked where it is load-bearing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellUnion {
    dim: usize,
    cells: Vec<Cell>,
    convex_hint: bool,
}

impl CellUnion {
    /// Builds a union, pruning empty cells.
    pub fn new(dim: usize, cells: Vec<Cell>, convex_hint: bool) -> Result<Self> {
        let mut kept = Vec::with_capacity(cells.len());
        for c in cells {
            if c.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.dimension(),
                });
            }
            if !c.is_empty()? {
                kept.push(c.normalized()?);
            }
        }
        Ok(CellUnion {
            dim,
            cells: kept,
            convex_hint,
        })
    }

    pub fn from_cell(cell: Cell, convex_hint: bool) -> Result<Self> {
        let dim = cell.dimension();
        Self::new(dim, vec![cell], convex_hint)
    }

    pub fn empty(dim: usize) -> Self {
        CellUnion {
            dim,
            cells: Vec::new(),
            convex_hint: true,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn convex_hint(&self) -> bool {
        self.convex_hint
    }

    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        for c in &self.cells {
            if c.contains(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn sample_point(&self) -> Result<Option<RatVector>> {
        match self.cells.first() {
            Some(c) => c.sample_point(),
            None => Ok(None),
        }
    }

    /// Per-cell closure, with cells contained in another closed cell dropped.
    pub fn closure(&self) -> Result<CellUnion> {
        let closed: Vec<Cell> = self.cells.iter().map(|c| c.closure()).collect();
        let kept = prune_contained(self.dim, closed)?;
        Ok(CellUnion {
            dim: self.dim,
            cells: kept,
            convex_hint: self.convex_hint,
        })
    }

    /// Exact Minkowski sum: pairwise cell sums, each obtained by eliminating
    /// the auxiliary summand copy from `{x = u + v, u in A, v in B}`.
    pub fn minkowski_sum(&self, other: &CellUnion) -> Result<CellUnion> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                // Variables (x, u); v = x - u is eliminated by substitution.
                let mut lifted = Vec::new();
                for c in a.constraints() {
                    // c . u >= rhs
                    let mut coeffs = zero_vec(2 * d);
                    for j in 0..d {
                        coeffs[d + j] = c.coeffs[j].clone();
                    }
                    lifted.push(LinearConstraint::new(coeffs, c.rhs.clone(), c.strict));
                }
                for c in b.constraints() {
                    // c . (x - u) >= rhs
                    let mut coeffs = zero_vec(2 * d);
                    for j in 0..d {
                        coeffs[j] = c.coeffs[j].clone();
                        coeffs[d + j] = -&c.coeffs[j];
                    }
                    lifted.push(LinearConstraint::new(coeffs, c.rhs.clone(), c.strict));
                }
                let projected = fm_eliminate_block(2 * d, &lifted, d)?;
                cells.push(Cell::new(d, projected)?);
            }
        }
        CellUnion::new(d, cells, self.convex_hint && other.convex_hint)
    }

    /// Decides `self` as a subset of the closure of `other`; on failure
    /// returns a member of `self` outside that closure.
    pub fn subset_of_closure(&self, other: &CellUnion) -> Result<(bool, Option<RatVector>)> {
        let closed = other.closure()?;
        self.subset_of(&closed)
    }

    /// Exact subset test between semi-open unions; on failure returns a
    /// member of `self` outside `other`.
    ///
    /// Works cell by cell, subtracting each cell of `other` disjunctively:
    /// a region minus a cell splits into one sub-region per negated facet,
    /// with empty sub-regions pruned as they appear.
    pub fn subset_of(&self, other: &CellUnion) -> Result<(bool, Option<RatVector>)> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        for a in &self.cells {
            if let Some(w) = difference_witness(self.dim, a, other.cells())? {
                return Ok((false, Some(w)));
            }
        }
        Ok((true, None))
    }

    /// Vertex and extreme-ray enumeration of a closed convex union.
    pub fn vertices(&self, budget: usize) -> Result<VertexList> {
        if !self.convex_hint {
            return Err(Error::NotConvex("vertex enumeration needs convex input".into()));
        }
        for c in &self.cells {
            if !c.is_closed() {
                return Err(Error::SemiOpenInput(
                    "vertex enumeration needs a closed polyhedron".into(),
                ));
            }
        }
        if self.dim == 0 {
            return Ok(VertexList {
                vertices: if self.cells.is_empty() { vec![] } else { vec![vec![]] },
                rays: vec![],
            });
        }
        let mut vertices: Vec<RatVector> = Vec::new();
        let mut rays: Vec<RatVector> = Vec::new();
        for c in &self.cells {
            let vl = cell_vertices(c, budget)?;
            for v in vl.vertices {
                if !vertices.contains(&v) {
                    vertices.push(v);
                }
            }
            for r in vl.rays {
                if !rays.contains(&r) {
                    rays.push(r);
                }
            }
        }
        if self.cells.len() > 1 {
            self.spot_check_convexity(&vertices)?;
            filter_extreme(self.dim, &mut vertices, &mut rays);
        }
        Ok(VertexList { vertices, rays })
    }

    /// H-representation of the closed convex hull of the closure. For a
    /// convex union this is exactly the closure of the set.
    pub fn hull_cell(&self, budget: usize) -> Result<Cell> {
        if !self.convex_hint {
            return Err(Error::NotConvex("hull needs convex input".into()));
        }
        let closed = self.closure()?;
        match closed.cells.len() {
            0 => Cell::new(self.dim, vec![LinearConstraint::contradiction(self.dim)]),
            1 => Ok(closed.cells[0].clone()),
            _ => {
                let vl = closed.vertices(budget)?;
                let cs = vertex_hull_constraints(self.dim, &vl)?;
                Cell::new(self.dim, cs)
            }
        }
    }

    fn spot_check_convexity(&self, samples: &[RatVector]) -> Result<()> {
        let half = Rat::new(1.into(), 2.into());
        for (i, a) in samples.iter().enumerate() {
            for b in samples.iter().skip(i + 1) {
                let mid = vec_scale(&half, &vec_add(a, b));
                if !self.contains(&mid)? {
                    return Err(Error::NotConvex(format!(
                        "midpoint of two members is not a member: {mid:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A point of `a` outside the union of `bs`, if any.
fn difference_witness(dim: usize, a: &Cell, bs: &[Cell]) -> Result<Option<RatVector>> {
    let mut regions: Vec<Vec<LinearConstraint>> = vec![a.constraints().to_vec()];
    for b in bs {
        let mut next = Vec::new();
        for region in &regions {
            for facet in b.constraints() {
                let mut sys = region.clone();
                sys.push(facet.negation());
                let sys = remove_redundant(dim, &sys)?;
                if !(sys.len() == 1 && sys[0].is_contradiction()) {
                    next.push(sys);
                }
            }
        }
        regions = next;
        if regions.is_empty() {
            return Ok(None);
        }
    }
    strict_feasible(dim, &regions[0])
}

fn prune_contained(dim: usize, cells: Vec<Cell>) -> Result<Vec<Cell>> {
    let mut kept: Vec<Cell> = Vec::new();
    'outer: for (i, c) in cells.iter().enumerate() {
        if c.is_empty()? {
            continue;
        }
        for (j, other) in cells.iter().enumerate() {
            if i == j {
                continue;
            }
            // Drop duplicates toward the earlier copy.
            let duplicate = c == other && j < i;
            let strictly_inside =
                c != other && difference_witness(dim, c, std::slice::from_ref(other))?.is_none();
            if duplicate || strictly_inside {
                continue 'outer;
            }
        }
        kept.push(c.clone());
    }
    if kept.is_empty() && !cells.is_empty() {
        // All cells mutually contained: keep the first.
        kept.push(cells[0].clone());
    }
    Ok(kept)
}

/// Exact extreme points and extreme rays of a closed polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexList {
    pub vertices: Vec<RatVector>,
    pub rays: Vec<RatVector>,
}

fn count_subsets(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        // Advance to the next lexicographic k-subset of {0..n}.
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] + 1 <= n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            done = true;
        }
        Some(out)
    })
}

fn cell_vertices(cell: &Cell, budget: usize) -> Result<VertexList> {
    let dim = cell.dimension();
    let cs = remove_redundant(dim, cell.constraints())?;
    if cs.len() == 1 && cs[0].is_contradiction() {
        return Ok(VertexList {
            vertices: vec![],
            rays: vec![],
        });
    }
    let rows: Vec<RatVector> = cs.iter().map(|c| c.coeffs.clone()).collect();
    if !rows.is_empty() {
        let hom = solve_linear_system(&rows, &zero_vec(rows.len()))
            .expect("homogeneous system is consistent");
        if !hom.kernel.is_empty() {
            return Err(Error::NotPointed(
                "polyhedron contains a line; extreme points do not exist".into(),
            ));
        }
    } else {
        return Err(Error::NotPointed("unconstrained polyhedron".into()));
    }

    let n = cs.len();
    if count_subsets(n, dim) + count_subsets(n, dim.saturating_sub(1)) > budget as u128 {
        return Err(Error::CapacityExceeded(format!(
            "{} constraint subsets exceed the budget of {budget}",
            count_subsets(n, dim) + count_subsets(n, dim - 1)
        )));
    }

    let mut vertices: Vec<RatVector> = Vec::new();
    for subset in subsets(n, dim) {
        let a: Vec<RatVector> = subset.iter().map(|&i| cs[i].coeffs.clone()).collect();
        let b: RatVector = subset.iter().map(|&i| cs[i].rhs.clone()).collect();
        if let Some(sol) = solve_linear_system(&a, &b) {
            if sol.kernel.is_empty() {
                let v = sol.particular;
                if cs.iter().all(|c| c.satisfied_by(&v)) && !vertices.contains(&v) {
                    vertices.push(v);
                }
            }
        }
    }

    let mut rays: Vec<RatVector> = Vec::new();
    let recession: Vec<LinearConstraint> = cs
        .iter()
        .map(|c| LinearConstraint::ge(c.coeffs.clone(), Rat::zero()))
        .collect();
    let push_ray = |dir: RatVector, rays: &mut Vec<RatVector>| {
        if recession.iter().all(|c| c.satisfied_by(&dir)) {
            let p = primitive_vec(&dir);
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
    };
    if dim == 1 {
        push_ray(vec![Rat::one()], &mut rays);
        push_ray(vec![-Rat::one()], &mut rays);
    } else {
        for subset in subsets(n, dim - 1) {
            let a: Vec<RatVector> = subset.iter().map(|&i| cs[i].coeffs.clone()).collect();
            let sol = solve_linear_system(&a, &zero_vec(a.len()))
                .expect("homogeneous system is consistent");
            if sol.kernel.len() != 1 {
                continue;
            }
            let dir = sol.kernel[0].clone();
            push_ray(dir.clone(), &mut rays);
            push_ray(dir.iter().map(|x| -x).collect(), &mut rays);
        }
    }
    Ok(VertexList { vertices, rays })
}

/// Drops candidates expressible by the remaining generators: a vertex inside
/// `conv(others) + cone(rays)`, or a ray inside `cone(other rays)`.
fn filter_extreme(dim: usize, vertices: &mut Vec<RatVector>, rays: &mut Vec<RatVector>) {
    let mut i = 0;
    while i < vertices.len() {
        let v = vertices[i].clone();
        let others: Vec<RatVector> = vertices
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, u)| u.clone())
            .collect();
        if in_conv_plus_cone(dim, &v, &others, rays) {
            vertices.remove(i);
        } else {
            i += 1;
        }
    }
    let mut i = 0;
    while i < rays.len() {
        let r = rays[i].clone();
        let others: Vec<RatVector> = rays
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, u)| u.clone())
            .collect();
        if in_cone(dim, &r, &others) {
            rays.remove(i);
        } else {
            i += 1;
        }
    }
}

fn in_conv_plus_cone(dim: usize, v: &RatVector, pts: &[RatVector], rays: &[RatVector]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let nv = pts.len();
    let nr = rays.len();
    let vars = nv + nr;
    let mut rows: Vec<(RatVector, Rat)> = Vec::new();
    for d in 0..dim {
        let mut coeffs = zero_vec(vars);
        for (k, p) in pts.iter().enumerate() {
            coeffs[k] = p[d].clone();
        }
        for (k, r) in rays.iter().enumerate() {
            coeffs[nv + k] = r[d].clone();
        }
        push_equality(&mut rows, &coeffs, &v[d]);
    }
    let mut ones = zero_vec(vars);
    for e in ones.iter_mut().take(nv) {
        *e = Rat::one();
    }
    push_equality(&mut rows, &ones, &Rat::one());
    for k in 0..vars {
        rows.push((unit_vec(vars, k), Rat::zero()));
    }
    feasible_point(vars, &rows).is_some()
}

fn in_cone(dim: usize, v: &RatVector, rays: &[RatVector]) -> bool {
    if rays.is_empty() {
        return is_zero_vec(v);
    }
    let nr = rays.len();
    let mut rows: Vec<(RatVector, Rat)> = Vec::new();
    for d in 0..dim {
        let coeffs: RatVector = rays.iter().map(|r| r[d].clone()).collect();
        push_equality(&mut rows, &coeffs, &v[d]);
    }
    for k in 0..nr {
        rows.push((unit_vec(nr, k), Rat::zero()));
    }
    feasible_point(nr, &rows).is_some()
}

/// Converts a vertex/ray description back into inequalities by eliminating
/// the combination weights from `{x = sum(l_i v_i) + sum(m_j r_j)}`.
pub fn vertex_hull_constraints(dim: usize, vl: &VertexList) -> Result<Vec<LinearConstraint>> {
    if vl.vertices.is_empty() {
        return Ok(vec![LinearConstraint::contradiction(dim)]);
    }
    let nv = vl.vertices.len();
    let nr = vl.rays.len();
    let total = dim + nv + nr;
    let mut lifted: Vec<LinearConstraint> = Vec::new();
    for d in 0..dim {
        let mut coeffs = zero_vec(total);
        coeffs[d] = Rat::one();
        for (k, v) in vl.vertices.iter().enumerate() {
            coeffs[dim + k] = -&v[d];
        }
        for (k, r) in vl.rays.iter().enumerate() {
            coeffs[dim + nv + k] = -&r[d];
        }
        lifted.push(LinearConstraint::ge(coeffs.clone(), Rat::zero()));
        lifted.push(LinearConstraint::ge(
            coeffs.iter().map(|c| -c).collect(),
            Rat::zero(),
        ));
    }
    let mut ones = zero_vec(total);
    for k in 0..nv {
        ones[dim + k] = Rat::one();
    }
    lifted.push(LinearConstraint::ge(ones.clone(), Rat::one()));
    lifted.push(LinearConstraint::ge(
        ones.iter().map(|c| -c).collect(),
        -Rat::one(),
    ));
    for k in 0..nv + nr {
        lifted.push(LinearConstraint::ge(unit_vec(total, dim + k), Rat::zero()));
    }
    fm_eliminate_block(total, &lifted, nv + nr)
}

/// Generators of a closed polyhedral cone given by homogeneous inequalities:
/// a lineality basis contributes opposite pairs, the pointed part its extreme
/// rays.
pub fn cone_generators(cell: &Cell, budget: usize) -> Result<Vec<RatVector>> {
    let dim = cell.dimension();
    if dim == 0 {
        return Ok(vec![]);
    }
    let cs = remove_redundant(dim, cell.constraints())?;
    if cs.len() == 1 && cs[0].is_contradiction() {
        return Err(Error::Internal("a cone is never empty".into()));
    }
    debug_assert!(cs.iter().all(|c| c.rhs.is_zero()), "cone cell must be homogeneous");
    let rows: Vec<RatVector> = cs.iter().map(|c| c.coeffs.clone()).collect();
    let lineality = if rows.is_empty() {
        (0..dim).map(|i| unit_vec(dim, i)).collect::<Vec<_>>()
    } else {
        solve_linear_system(&rows, &zero_vec(rows.len()))
            .expect("homogeneous system is consistent")
            .kernel
    };
    let mut generators: Vec<RatVector> = Vec::new();
    for b in &lineality {
        generators.push(primitive_vec(b));
        generators.push(primitive_vec(&b.iter().map(|x| -x).collect::<Vec<_>>()));
    }
    // Pointed part: intersect with the orthogonal complement of the lineality.
    let mut pointed = cs.clone();
    for b in &lineality {
        pointed.push(LinearConstraint::ge(b.clone(), Rat::zero()));
        pointed.push(LinearConstraint::ge(
            b.iter().map(|x| -x).collect(),
            Rat::zero(),
        ));
    }
    let vl = cell_vertices(&Cell::new(dim, pointed)?, budget)?;
    for r in vl.rays {
        if !generators.contains(&r) {
            generators.push(r);
        }
    }
    Ok(generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};

    fn ge(coeffs: Vec<Rat>, rhs: Rat) -> LinearConstraint {
        LinearConstraint::ge(coeffs, rhs)
    }
    fn gt(coeffs: Vec<Rat>, rhs: Rat) -> LinearConstraint {
        LinearConstraint::gt(coeffs, rhs)
    }

    fn unit_box(dim: usize) -> Cell {
        let mut cs = Vec::new();
        for i in 0..dim {
            cs.push(ge(unit_vec(dim, i), rat(0)));
            cs.push(ge(
                unit_vec(dim, i).iter().map(|x| -x).collect(),
                rat(-1),
            ));
        }
        Cell::new(dim, cs).unwrap()
    }

    #[test]
    fn closure_of_open_halfline() {
        let open = CellUnion::from_cell(Cell::new(1, vec![gt(vec![rat(1)], rat(0))]).unwrap(), true)
            .unwrap();
        let closed = open.closure().unwrap();
        assert!(closed.contains(&[rat(0)]).unwrap());
        assert!(!open.contains(&[rat(0)]).unwrap());
        // Idempotent on closed input.
        assert_eq!(closed.closure().unwrap(), closed);
    }

    #[test]
    fn minkowski_identity_element() {
        let a = CellUnion::from_cell(unit_box(2), true).unwrap();
        let zero = Cell::new(
            2,
            vec![
                ge(vec![rat(1), rat(0)], rat(0)),
                ge(vec![rat(-1), rat(0)], rat(0)),
                ge(vec![rat(0), rat(1)], rat(0)),
                ge(vec![rat(0), rat(-1)], rat(0)),
            ],
        )
        .unwrap();
        let zero = CellUnion::from_cell(zero, true).unwrap();
        let sum = a.minkowski_sum(&zero).unwrap();
        let (subset, _) = sum.subset_of(&a).unwrap();
        assert!(subset);
        let (superset, _) = a.subset_of(&sum).unwrap();
        assert!(superset);
    }

    #[test]
    fn minkowski_of_segments_is_square_grid_checked() {
        // [0,(1,0)] + [0,(0,1)] over the standard plane cone is the unit
        // square; brute-force membership on the 1/4 grid is the oracle.
        let seg_x = Cell::new(
            2,
            vec![
                ge(vec![rat(1), rat(0)], rat(0)),
                ge(vec![rat(-1), rat(0)], rat(-1)),
                ge(vec![rat(0), rat(1)], rat(0)),
                ge(vec![rat(0), rat(-1)], rat(0)),
            ],
        )
        .unwrap();
        let seg_y = Cell::new(
            2,
            vec![
                ge(vec![rat(0), rat(1)], rat(0)),
                ge(vec![rat(0), rat(-1)], rat(-1)),
                ge(vec![rat(1), rat(0)], rat(0)),
                ge(vec![rat(-1), rat(0)], rat(0)),
            ],
        )
        .unwrap();
        let sum = CellUnion::from_cell(seg_x, true)
            .unwrap()
            .minkowski_sum(&CellUnion::from_cell(seg_y, true).unwrap())
            .unwrap();
        let square = CellUnion::from_cell(unit_box(2), true).unwrap();
        for i in -2..=6 {
            for j in -2..=6 {
                let p = vec![ratio(i, 4), ratio(j, 4)];
                assert_eq!(
                    sum.contains(&p).unwrap(),
                    square.contains(&p).unwrap(),
                    "mismatch at {p:?}"
                );
            }
        }
    }

    #[test]
    fn subset_with_witness() {
        let a = CellUnion::from_cell(Cell::new(1, vec![gt(vec![rat(1)], rat(1))]).unwrap(), true)
            .unwrap();
        let b = CellUnion::from_cell(Cell::new(1, vec![ge(vec![rat(-1)], rat(0))]).unwrap(), true)
            .unwrap();
        let (ok, witness) = a.subset_of_closure(&b).unwrap();
        assert!(!ok);
        let w = witness.unwrap();
        assert!(w[0] > rat(1));
        // Any set sits inside its own closure.
        let (ok, _) = a.subset_of_closure(&a).unwrap();
        assert!(ok);
    }

    #[test]
    fn empty_union_detection() {
        let contradiction =
            Cell::new(1, vec![gt(vec![rat(1)], rat(0)), gt(vec![rat(-1)], rat(0))]).unwrap();
        let u = CellUnion::new(1, vec![contradiction.clone()], true).unwrap();
        assert!(u.is_empty());
        let half = Cell::new(1, vec![ge(vec![rat(1)], rat(0))]).unwrap();
        let mixed = CellUnion::new(1, vec![contradiction, half], true).unwrap();
        assert!(!mixed.is_empty());
    }

    #[test]
    fn cube_vertices() {
        let u = CellUnion::from_cell(unit_box(3), true).unwrap();
        let vl = u.vertices(DEFAULT_BASIS_BUDGET).unwrap();
        assert_eq!(vl.vertices.len(), 8);
        assert!(vl.rays.is_empty());
        for v in &vl.vertices {
            assert!(v.iter().all(|x| *x == rat(0) || *x == rat(1)));
        }
    }

    #[test]
    fn quadrant_vertex_and_rays() {
        let quad = Cell::new(
            2,
            vec![ge(vec![rat(1), rat(0)], rat(0)), ge(vec![rat(0), rat(1)], rat(0))],
        )
        .unwrap();
        let u = CellUnion::from_cell(quad, true).unwrap();
        let vl = u.vertices(DEFAULT_BASIS_BUDGET).unwrap();
        assert_eq!(vl.vertices, vec![vec![rat(0), rat(0)]]);
        assert_eq!(vl.rays.len(), 2);
        assert!(vl.rays.contains(&vec![rat(1), rat(0)]));
        assert!(vl.rays.contains(&vec![rat(0), rat(1)]));
    }

    #[test]
    fn vertices_reject_semi_open_and_nonconvex_flag() {
        let open = Cell::new(1, vec![gt(vec![rat(1)], rat(0))]).unwrap();
        let u = CellUnion::from_cell(open, true).unwrap();
        assert!(matches!(
            u.vertices(DEFAULT_BASIS_BUDGET),
            Err(Error::SemiOpenInput(_))
        ));
        let closed = Cell::new(1, vec![ge(vec![rat(1)], rat(0))]).unwrap();
        let u = CellUnion::from_cell(closed, false).unwrap();
        assert!(matches!(
            u.vertices(DEFAULT_BASIS_BUDGET),
            Err(Error::NotConvex(_))
        ));
    }

    #[test]
    fn vertex_inequality_round_trip() {
        // Cube -> vertices -> inequalities -> vertices again.
        let u = CellUnion::from_cell(unit_box(3), true).unwrap();
        let vl = u.vertices(DEFAULT_BASIS_BUDGET).unwrap();
        let cs = vertex_hull_constraints(3, &vl).unwrap();
        let back = CellUnion::from_cell(Cell::new(3, cs).unwrap(), true).unwrap();
        let mut vl2 = back.vertices(DEFAULT_BASIS_BUDGET).unwrap();
        let mut expect = vl.vertices.clone();
        vl2.vertices.sort();
        expect.sort();
        assert_eq!(vl2.vertices, expect);
        assert!(vl2.rays.is_empty());
    }

    #[test]
    fn hull_of_two_triangles() {
        // Two closed triangles forming a convex quadrilateral split along a
        // diagonal; the hull must contain both and nothing outside.
        let t1 = Cell::new(
            2,
            vec![
                ge(vec![rat(1), rat(0)], rat(0)),
                ge(vec![rat(0), rat(1)], rat(0)),
                ge(vec![rat(-1), rat(-1)], rat(-1)),
            ],
        )
        .unwrap();
        let t2 = Cell::new(
            2,
            vec![
                ge(vec![rat(1), rat(1)], rat(1)),
                ge(vec![rat(-1), rat(0)], rat(-1)),
                ge(vec![rat(0), rat(-1)], rat(-1)),
            ],
        )
        .unwrap();
        let u = CellUnion::new(2, vec![t1, t2], true).unwrap();
        let hull = u.hull_cell(DEFAULT_BASIS_BUDGET).unwrap();
        for p in [
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            vec![ratio(1, 2), ratio(1, 2)],
        ] {
            assert!(hull.contains(&p).unwrap());
        }
        assert!(!hull.contains(&[rat(2), rat(0)]).unwrap());
        assert!(!hull.contains(&[rat(-1), rat(0)]).unwrap());
    }

    #[test]
    fn cone_generators_with_lineality() {
        // Half-plane {y >= 0}: generators are a lineality pair and one ray.
        let half = Cell::new(2, vec![ge(vec![rat(0), rat(1)], rat(0))]).unwrap();
        let gens = cone_generators(&half, DEFAULT_BASIS_BUDGET).unwrap();
        assert!(gens.contains(&vec![rat(1), rat(0)]));
        assert!(gens.contains(&vec![rat(-1), rat(0)]));
        assert!(gens.contains(&vec![rat(0), rat(1)]));
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn dimension_zero_sets() {
        let c = Cell::everything(0);
        assert!(c.contains(&[]).unwrap());
        let u = CellUnion::from_cell(c, true).unwrap();
        let vl = u.vertices(DEFAULT_BASIS_BUDGET).unwrap();
        assert_eq!(vl.vertices, vec![Vec::<Rat>::new()]);
    }
}
