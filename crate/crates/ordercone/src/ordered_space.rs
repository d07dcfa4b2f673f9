//! Ordered vector spaces over the rationals: a positive cone in one of
//! several representations, order queries, order intervals, duality, bases
//! and the named example spaces.

use crate::error::{Error, Result};
use crate::num::{dot, unit_vec, vec_add, vec_sub, zero_vec, Rat, RatVector};
use crate::operator::LinearOperator;
use crate::polyhedron::{cone_generators, Cell, CellUnion, DEFAULT_BASIS_BUDGET};
use crate::ratgeom::{fm_eliminate_block, solve_linear_system, strict_feasible, LinearConstraint};
use num::{One, Signed, Zero};
use std::sync::OnceLock;

/// Ambient dimension cap. Fourier-Motzkin elimination and vertex enumeration
/// are exponential in the dimension; 6 keeps every operation at desk scale.
/// Override with the `ORDERCONE_DIM_CAP` environment variable.
pub fn dim_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("ORDERCONE_DIM_CAP")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(6)
    })
}

/// How the positive cone was described.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeRepr {
    /// Homogeneous non-strict inequalities.
    ClosedH(Vec<LinearConstraint>),
    /// Conic hull of finitely many generators.
    ClosedV(Vec<RatVector>),
    /// A union of homogeneous mixed strict/non-strict cells.
    SemiOpen(CellUnion),
    /// Last coordinate most significant.
    Lexicographic,
}

/// A finite-dimensional ordered vector space `(Q^n, X_+)`. The cone is
/// convex, pointed and contains the origin; pointedness is checked at
/// construction and non-pointed input is rejected.
#[derive(Clone, Debug)]
pub struct OrderedSpace {
    dimension: usize,
    name: Option<String>,
    repr: ConeRepr,
    cells: CellUnion,
    closure_hull: Cell,
    generators: Vec<RatVector>,
}

impl OrderedSpace {
    pub fn closed_h(dimension: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            if c.strict || !c.rhs.is_zero() {
                return Err(Error::Precondition(
                    "a closed cone takes homogeneous non-strict inequalities".into(),
                ));
            }
        }
        let cell = Cell::new(dimension, constraints.clone())?;
        let cells = CellUnion::from_cell(cell, true)?;
        Self::build(dimension, None, ConeRepr::ClosedH(constraints), cells)
    }

    pub fn closed_v(dimension: usize, generators: Vec<RatVector>) -> Result<Self> {
        for g in &generators {
            if g.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: g.len(),
                });
            }
        }
        let constraints = v_to_h_cone(dimension, &generators)?;
        let cell = Cell::new(dimension, constraints)?;
        let cells = CellUnion::from_cell(cell, true)?;
        Self::build(dimension, None, ConeRepr::ClosedV(generators), cells)
    }

    pub fn semi_open(dimension: usize, cells: CellUnion) -> Result<Self> {
        if cells.dimension() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: cells.dimension(),
            });
        }
        for cell in cells.cells() {
            for c in cell.constraints() {
                if !c.rhs.is_zero() {
                    return Err(Error::Precondition(
                        "cone cells must be homogeneous".into(),
                    ));
                }
            }
        }
        if !cells.contains(&zero_vec(dimension))? {
            return Err(Error::Precondition("a cone must contain the origin".into()));
        }
        Self::build(dimension, None, ConeRepr::SemiOpen(cells.clone()), cells)
    }

    pub fn lexicographic(dimension: usize) -> Result<Self> {
        let mut cells = Vec::new();
        for lead in (0..dimension).rev() {
            let mut cs = Vec::new();
            for higher in lead + 1..dimension {
                cs.push(LinearConstraint::ge(unit_vec(dimension, higher), Rat::zero()));
                cs.push(LinearConstraint::ge(
                    unit_vec(dimension, higher).iter().map(|x| -x).collect(),
                    Rat::zero(),
                ));
            }
            let strict = lead != 0;
            cs.push(LinearConstraint::new(
                unit_vec(dimension, lead),
                Rat::zero(),
                strict,
            ));
            cells.push(Cell::new(dimension, cs)?);
        }
        let union = CellUnion::new(dimension, cells, true)?;
        Self::build(dimension, None, ConeRepr::Lexicographic, union)
    }

    /// Named example spaces addressable from the command line:
    /// `standard:n`, `lex:n`, `example_s2`, `square_cone`.
    pub fn named(name: &str) -> Result<Self> {
        let mut space = match name {
            "example_s2" => {
                let open_octant = Cell::new(
                    3,
                    (0..3)
                        .map(|i| LinearConstraint::gt(unit_vec(3, i), Rat::zero()))
                        .collect(),
                )?;
                // z = 0, x = y >= 0
                let diagonal = Cell::new(
                    3,
                    vec![
                        LinearConstraint::ge(unit_vec(3, 2), Rat::zero()),
                        LinearConstraint::ge(
                            unit_vec(3, 2).iter().map(|x| -x).collect(),
                            Rat::zero(),
                        ),
                        LinearConstraint::ge(
                            vec![Rat::one(), -Rat::one(), Rat::zero()],
                            Rat::zero(),
                        ),
                        LinearConstraint::ge(
                            vec![-Rat::one(), Rat::one(), Rat::zero()],
                            Rat::zero(),
                        ),
                        LinearConstraint::ge(unit_vec(3, 0), Rat::zero()),
                    ],
                )?;
                let union = CellUnion::new(3, vec![open_octant, diagonal], true)?;
                Self::semi_open(3, union)?
            }
            "square_cone" => {
                let gens = vec![
                    vec![Rat::one(), Rat::one(), Rat::one()],
                    vec![Rat::one(), -Rat::one(), Rat::one()],
                    vec![-Rat::one(), Rat::one(), Rat::one()],
                    vec![-Rat::one(), -Rat::one(), Rat::one()],
                ];
                Self::closed_v(3, gens)?
            }
            _ => {
                if let Some(n) = name.strip_prefix("standard:") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| Error::UnknownSpace(name.to_string()))?;
                    Self::standard(n)?
                } else if let Some(n) = name.strip_prefix("lex:") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| Error::UnknownSpace(name.to_string()))?;
                    Self::lexicographic(n)?
                } else {
                    return Err(Error::UnknownSpace(name.to_string()));
                }
            }
        };
        space.name = Some(name.to_string());
        Ok(space)
    }

    /// `Q^n` with the coordinatewise order.
    pub fn standard(dimension: usize) -> Result<Self> {
        let constraints = (0..dimension)
            .map(|i| LinearConstraint::ge(unit_vec(dimension, i), Rat::zero()))
            .collect();
        Self::closed_h(dimension, constraints)
    }

    fn build(
        dimension: usize,
        name: Option<String>,
        repr: ConeRepr,
        cells: CellUnion,
    ) -> Result<Self> {
        if dimension == 0 || dimension > dim_cap() {
            return Err(Error::DimensionCap(dimension, dim_cap()));
        }
        let closure_hull = cells.hull_cell(DEFAULT_BASIS_BUDGET)?.normalized()?;
        check_pointed(dimension, &cells)?;
        let generators = cone_generators(&closure_hull, DEFAULT_BASIS_BUDGET)?;
        Ok(OrderedSpace {
            dimension,
            name,
            repr,
            cells,
            closure_hull,
            generators,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn repr(&self) -> &ConeRepr {
        &self.repr
    }

    /// The cone as an exact semi-open cell union.
    pub fn cone_cells(&self) -> &CellUnion {
        &self.cells
    }

    /// H-representation of the closure of the cone (a single closed cell).
    pub fn closure_hull(&self) -> &Cell {
        &self.closure_hull
    }

    /// Generators of the closure: lineality pairs plus extreme rays.
    pub fn closure_generators(&self) -> &[RatVector] {
        &self.generators
    }

    pub fn is_closed_cone(&self) -> bool {
        self.cells
            .cells()
            .iter()
            .all(|c| c.constraints().iter().all(|k| !k.strict))
    }

    /// Exact membership in the positive cone.
    pub fn member(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: x.len(),
            });
        }
        if let ConeRepr::Lexicographic = self.repr {
            for c in x.iter().rev() {
                if c.is_positive() {
                    return Ok(true);
                }
                if c.is_negative() {
                    return Ok(false);
                }
            }
            return Ok(true); // the origin
        }
        self.cells.contains(x)
    }

    /// `a <= b` in the cone order: `b - a` is a cone member.
    pub fn leq(&self, a: &[Rat], b: &[Rat]) -> Result<bool> {
        if a.len() != self.dimension || b.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: a.len().max(b.len()),
            });
        }
        self.member(&vec_sub(b, a))
    }

    /// Membership in `tint X_+`, the set of internal points of the cone.
    pub fn interior_member(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: x.len(),
            });
        }
        Ok(self
            .closure_hull
            .constraints()
            .iter()
            .all(|c| dot(&c.coeffs, x) > c.rhs))
    }

    /// The order interval `[lo, hi]` as a semi-open cell union, built from
    /// cone membership of `z - lo` and `hi - z`.
    pub fn order_interval(&self, lo: &[Rat], hi: &[Rat]) -> Result<OrderInterval> {
        let d = self.dimension;
        if lo.len() != d || hi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: lo.len().max(hi.len()),
            });
        }
        let mut cells = Vec::new();
        for hi_cell in self.cells.cells() {
            for lo_cell in self.cells.cells() {
                let mut cs = Vec::new();
                for c in lo_cell.constraints() {
                    // c.(z - lo) >= rhs (rhs = 0)
                    cs.push(LinearConstraint::new(
                        c.coeffs.clone(),
                        &c.rhs + dot(&c.coeffs, lo),
                        c.strict,
                    ));
                }
                for c in hi_cell.constraints() {
                    // c.(hi - z) >= rhs
                    cs.push(LinearConstraint::new(
                        c.coeffs.iter().map(|x| -x).collect(),
                        &c.rhs - dot(&c.coeffs, hi),
                        c.strict,
                    ));
                }
                cells.push(Cell::new(d, cs)?);
            }
        }
        let set = CellUnion::new(d, cells, true)?;
        Ok(OrderInterval {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
            set,
        })
    }

    /// Whether `X_+ - X_+ = X`, i.e. the span of the cone is everything.
    pub fn is_generating(&self) -> Result<bool> {
        match &self.repr {
            ConeRepr::Lexicographic => Ok(true),
            ConeRepr::ClosedV(gens) => {
                if gens.is_empty() {
                    return Ok(self.dimension == 0);
                }
                Ok(crate::ratgeom::rank(gens) == self.dimension)
            }
            _ => {
                let mut span: Vec<RatVector> = Vec::new();
                loop {
                    if span.len() == self.dimension {
                        return Ok(true);
                    }
                    let normals = orthogonal_complement(self.dimension, &span);
                    let mut found = None;
                    'search: for cell in self.cells.cells() {
                        for n in &normals {
                            for sign in [Rat::one(), -Rat::one()] {
                                let mut cs = cell.constraints().to_vec();
                                cs.push(LinearConstraint::gt(
                                    n.iter().map(|x| x * &sign).collect(),
                                    Rat::zero(),
                                ));
                                if let Some(p) = strict_feasible(self.dimension, &cs)? {
                                    found = Some(p);
                                    break 'search;
                                }
                            }
                        }
                    }
                    match found {
                        Some(p) => span.push(p),
                        None => return Ok(false),
                    }
                }
            }
        }
    }

    /// Whether `e` is an order unit, i.e. an internal point of the cone:
    /// some full-dimensional cell must hold strictly at `e`.
    pub fn is_order_unit(&self, e: &[Rat]) -> Result<bool> {
        if e.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: e.len(),
            });
        }
        for cell in self.cells.cells() {
            let strictly = cell
                .constraints()
                .iter()
                .all(|c| dot(&c.coeffs, e) > c.rhs);
            if strictly && cell.interior_point()?.is_some() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The dual cone `K* = {f : f(x) >= 0 for all x in X_+}`, which equals
    /// the dual of the closure. Returned as a closed space; fails if the
    /// dual is not pointed (the cone was not generating).
    pub fn dual_cone(&self) -> Result<OrderedSpace> {
        let constraints = self
            .generators
            .iter()
            .map(|g| LinearConstraint::ge(g.clone(), Rat::zero()))
            .collect();
        OrderedSpace::closed_h(self.dimension, constraints)
    }

    /// A strictly positive functional and the base `B = {x : f(x) = 1}` it
    /// cuts, when they exist. The candidate is the sum of the dual cone's
    /// generators; strict positivity is verified exactly.
    pub fn strictly_positive_functional(
        &self,
    ) -> Result<Option<(LinearOperator, CellUnion)>> {
        let dual_cell = Cell::new(
            self.dimension,
            self.generators
                .iter()
                .map(|g| LinearConstraint::ge(g.clone(), Rat::zero()))
                .collect(),
        )?;
        let dual_gens = cone_generators(&dual_cell, DEFAULT_BASIS_BUDGET)?;
        let mut f = zero_vec(self.dimension);
        for g in &dual_gens {
            f = vec_add(&f, g);
        }
        // Verify f > 0 on the cone minus the origin, coordinate disjunction
        // standing in for x != 0.
        for cell in self.cells.cells() {
            for k in 0..self.dimension {
                for sign in [Rat::one(), -Rat::one()] {
                    let mut cs = cell.constraints().to_vec();
                    cs.push(LinearConstraint::ge(
                        f.iter().map(|x| -x).collect(),
                        Rat::zero(),
                    ));
                    let mut pick = zero_vec(self.dimension);
                    pick[k] = sign;
                    cs.push(LinearConstraint::gt(pick, Rat::zero()));
                    if strict_feasible(self.dimension, &cs)?.is_some() {
                        return Ok(None);
                    }
                }
            }
        }
        let mut base_cells = Vec::new();
        for cell in self.cells.cells() {
            let mut cs = cell.constraints().to_vec();
            cs.push(LinearConstraint::ge(f.clone(), Rat::one()));
            cs.push(LinearConstraint::ge(
                f.iter().map(|x| -x).collect(),
                -Rat::one(),
            ));
            base_cells.push(Cell::new(self.dimension, cs)?);
        }
        let base = CellUnion::new(self.dimension, base_cells, true)?;
        Ok(Some((LinearOperator::functional(f), base)))
    }

    /// Bounded aperture on parallel lines. In finite dimension this is
    /// pointedness of the cone's closure; requires a base to exist.
    pub fn has_bounded_aperture(&self) -> Result<bool> {
        if self.strictly_positive_functional()?.is_none() {
            return Err(Error::Precondition(
                "bounded aperture is defined relative to a base, and this cone has none".into(),
            ));
        }
        let rows: Vec<RatVector> = self
            .closure_hull
            .constraints()
            .iter()
            .map(|c| c.coeffs.clone())
            .collect();
        if rows.is_empty() {
            return Ok(self.dimension == 0);
        }
        let sol = solve_linear_system(&rows, &zero_vec(rows.len()))
            .expect("homogeneous system is consistent");
        Ok(sol.kernel.is_empty())
    }

    /// An internal point of the cone, when one exists.
    pub fn interior_point(&self) -> Result<Option<RatVector>> {
        self.closure_hull.interior_point()
    }
}

/// The order interval `[lo, hi]` with its exact semi-open point set.
#[derive(Clone, Debug)]
pub struct OrderInterval {
    pub lo: RatVector,
    pub hi: RatVector,
    pub set: CellUnion,
}

impl OrderInterval {
    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// H-representation of the conic hull of `generators`, by eliminating the
/// combination weights from `{x = G lambda, lambda >= 0}`.
fn v_to_h_cone(dim: usize, generators: &[RatVector]) -> Result<Vec<LinearConstraint>> {
    if generators.is_empty() {
        // The trivial cone {0}.
        let mut cs = Vec::new();
        for i in 0..dim {
            cs.push(LinearConstraint::ge(unit_vec(dim, i), Rat::zero()));
            cs.push(LinearConstraint::ge(
                unit_vec(dim, i).iter().map(|x| -x).collect(),
                Rat::zero(),
            ));
        }
        return Ok(cs);
    }
    let k = generators.len();
    let total = dim + k;
    let mut lifted = Vec::new();
    for d in 0..dim {
        let mut coeffs = zero_vec(total);
        coeffs[d] = Rat::one();
        for (j, g) in generators.iter().enumerate() {
            coeffs[dim + j] = -&g[d];
        }
        lifted.push(LinearConstraint::ge(coeffs.clone(), Rat::zero()));
        lifted.push(LinearConstraint::ge(
            coeffs.iter().map(|x| -x).collect(),
            Rat::zero(),
        ));
    }
    for j in 0..k {
        lifted.push(LinearConstraint::ge(unit_vec(total, dim + j), Rat::zero()));
    }
    fm_eliminate_block(total, &lifted, k)
}

/// Basis of the orthogonal complement of `span`.
fn orthogonal_complement(dim: usize, span: &[RatVector]) -> Vec<RatVector> {
    if span.is_empty() {
        return (0..dim).map(|i| unit_vec(dim, i)).collect();
    }
    let rows: Vec<RatVector> = span.to_vec();
    solve_linear_system(&rows, &zero_vec(rows.len()))
        .expect("homogeneous system is consistent")
        .kernel
}

/// Rejects cones with a nonzero `x` such that both `x` and `-x` are members.
fn check_pointed(dim: usize, cells: &CellUnion) -> Result<()> {
    for ci in cells.cells() {
        for cj in cells.cells() {
            for k in 0..dim {
                let mut cs: Vec<LinearConstraint> = ci.constraints().to_vec();
                for c in cj.constraints() {
                    cs.push(LinearConstraint::new(
                        c.coeffs.iter().map(|x| -x).collect(),
                        c.rhs.clone(),
                        c.strict,
                    ));
                }
                cs.push(LinearConstraint::gt(unit_vec(dim, k), Rat::zero()));
                if let Some(w) = strict_feasible(dim, &cs)? {
                    return Err(Error::NotPointed(format!(
                        "both {w:?} and its negation belong to the cone"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};

    #[test]
    fn standard_cone_order() {
        let s = OrderedSpace::named("standard:2").unwrap();
        assert!(s.leq(&[rat(0), rat(0)], &[rat(1), rat(1)]).unwrap());
        assert!(!s.leq(&[rat(1), rat(0)], &[rat(0), rat(1)]).unwrap());
    }

    #[test]
    fn lexicographic_plane_order() {
        let s = OrderedSpace::named("lex:2").unwrap();
        // (5,0) <= (0,1) because (0,1)-(5,0) = (-5,1) has positive second coordinate.
        assert!(s.leq(&[rat(5), rat(0)], &[rat(0), rat(1)]).unwrap());
        assert!(!s.member(&[rat(-1), rat(0)]).unwrap());
        assert!(s.member(&[rat(3), rat(0)]).unwrap());
        assert!(s.member(&[rat(0), rat(0)]).unwrap());
    }

    #[test]
    fn semiopen_cone_membership() {
        let s = OrderedSpace::named("example_s2").unwrap();
        assert!(s.member(&[rat(1), rat(1), rat(0)]).unwrap());
        assert!(!s.member(&[rat(1), rat(0), rat(0)]).unwrap());
        assert!(s.member(&[rat(0), rat(0), rat(0)]).unwrap());
        assert!(s.member(&[rat(1), rat(2), rat(3)]).unwrap());
        assert!(!s.leq(&[rat(0), rat(0), rat(0)], &[rat(1), rat(0), rat(0)]).unwrap());
    }

    #[test]
    fn semiopen_closure_is_standard_cone() {
        let s2 = OrderedSpace::named("example_s2").unwrap();
        let std3 = OrderedSpace::named("standard:3").unwrap();
        let closure = s2.cone_cells().closure().unwrap();
        let (a, _) = closure.subset_of(std3.cone_cells()).unwrap();
        let (b, _) = std3.cone_cells().subset_of(&closure).unwrap();
        assert!(a && b);
    }

    #[test]
    fn order_interval_of_semiopen_cone() {
        let s = OrderedSpace::named("example_s2").unwrap();
        let iv = s
            .order_interval(&zero_vec(3), &[rat(2), rat(1), rat(1)])
            .unwrap();
        assert!(iv.set.contains(&[rat(1), ratio(1, 2), ratio(1, 2)]).unwrap());
        // Half of (1,1,0) lies on the included lower segment.
        assert!(iv.set.contains(&[ratio(1, 2), ratio(1, 2), rat(0)]).unwrap());
        // The far endpoint of the lower segment is excluded.
        assert!(!iv.set.contains(&[rat(1), rat(1), rat(0)]).unwrap());
        // Upper segment: (2,1,1) is in, its excluded endpoint (1,0,1) is not.
        assert!(iv.set.contains(&[rat(2), rat(1), rat(1)]).unwrap());
        assert!(!iv.set.contains(&[rat(1), rat(0), rat(1)]).unwrap());
    }

    #[test]
    fn empty_interval() {
        let s = OrderedSpace::named("standard:2").unwrap();
        let iv = s
            .order_interval(&zero_vec(2), &[rat(-1), rat(-1)])
            .unwrap();
        assert!(iv.is_empty());
    }

    #[test]
    fn generating_checks() {
        assert!(OrderedSpace::named("standard:3").unwrap().is_generating().unwrap());
        let ray = OrderedSpace::closed_v(2, vec![vec![rat(1), rat(0)]]).unwrap();
        assert!(!ray.is_generating().unwrap());
        assert!(OrderedSpace::named("example_s2").unwrap().is_generating().unwrap());
        assert!(OrderedSpace::named("lex:3").unwrap().is_generating().unwrap());
    }

    #[test]
    fn order_units() {
        let s3 = OrderedSpace::named("standard:3").unwrap();
        assert!(s3.is_order_unit(&[rat(1), rat(1), rat(1)]).unwrap());
        assert!(!s3.is_order_unit(&[rat(1), rat(1), rat(0)]).unwrap());
        let lex = OrderedSpace::named("lex:2").unwrap();
        // Direct check of the internal-point definition: (0,1) absorbs every
        // direction because the second coordinate stays positive.
        assert!(lex.is_order_unit(&[rat(0), rat(1)]).unwrap());
        assert!(!lex.is_order_unit(&[rat(1), rat(0)]).unwrap());
        let s2 = OrderedSpace::named("example_s2").unwrap();
        assert!(s2.is_order_unit(&[rat(1), rat(1), rat(1)]).unwrap());
        assert!(!s2.is_order_unit(&[rat(1), rat(1), rat(0)]).unwrap());
    }

    #[test]
    fn dual_cones() {
        // The standard cone is self-dual.
        let s = OrderedSpace::named("standard:3").unwrap();
        let dual = s.dual_cone().unwrap();
        let (a, _) = dual.cone_cells().subset_of(s.cone_cells()).unwrap();
        let (b, _) = s.cone_cells().subset_of(dual.cone_cells()).unwrap();
        assert!(a && b);
        // Dual of the semi-open example is the dual of its closure.
        let s2 = OrderedSpace::named("example_s2").unwrap();
        let dual = s2.dual_cone().unwrap();
        let std3 = OrderedSpace::named("standard:3").unwrap();
        let (a, _) = dual.cone_cells().subset_of(std3.cone_cells()).unwrap();
        let (b, _) = std3.cone_cells().subset_of(dual.cone_cells()).unwrap();
        assert!(a && b);
        // Lexicographic plane: only multiples of the second coordinate.
        let lex = OrderedSpace::named("lex:2").unwrap();
        let dual = lex.dual_cone().unwrap();
        assert!(dual.member(&[rat(0), rat(7)]).unwrap());
        assert!(!dual.member(&[rat(1), rat(1)]).unwrap());
        assert!(!dual.member(&[rat(0), rat(-1)]).unwrap());
    }

    #[test]
    fn double_dual_recovers_closed_cones() {
        for name in ["standard:3", "square_cone"] {
            let s = OrderedSpace::named(name).unwrap();
            let dd = s.dual_cone().unwrap().dual_cone().unwrap();
            let (a, _) = dd.cone_cells().subset_of(s.cone_cells()).unwrap();
            let (b, _) = s.cone_cells().subset_of(dd.cone_cells()).unwrap();
            assert!(a && b, "double dual mismatch for {name}");
        }
    }

    #[test]
    fn strictly_positive_functionals() {
        let s = OrderedSpace::named("standard:2").unwrap();
        let (f, base) = s.strictly_positive_functional().unwrap().unwrap();
        assert_eq!(f.row(0), &vec![rat(1), rat(1)]);
        assert!(base.contains(&[rat(1), rat(0)]).unwrap());
        assert!(base.contains(&[ratio(1, 2), ratio(1, 2)]).unwrap());
        assert!(!base.contains(&[rat(1), rat(1)]).unwrap());

        let s2 = OrderedSpace::named("example_s2").unwrap();
        let (f, _) = s2.strictly_positive_functional().unwrap().unwrap();
        assert_eq!(f.row(0), &vec![rat(1), rat(1), rat(1)]);

        // The lexicographic cone has no base.
        let lex = OrderedSpace::named("lex:2").unwrap();
        assert!(lex.strictly_positive_functional().unwrap().is_none());
    }

    #[test]
    fn half_plane_rejected_as_not_pointed() {
        let half = OrderedSpace::closed_h(
            2,
            vec![LinearConstraint::ge(vec![rat(0), rat(1)], rat(0))],
        );
        assert!(matches!(half, Err(Error::NotPointed(_))));
    }

    #[test]
    fn bounded_aperture() {
        assert!(OrderedSpace::named("standard:3").unwrap().has_bounded_aperture().unwrap());
        assert!(OrderedSpace::named("example_s2").unwrap().has_bounded_aperture().unwrap());
        // Open upper half-plane plus the origin: pointed, has a base, but the
        // closure contains the horizontal line.
        let open_half = Cell::new(
            2,
            vec![LinearConstraint::gt(vec![rat(0), rat(1)], rat(0))],
        )
        .unwrap();
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
        let union = CellUnion::new(2, vec![open_half, origin], true).unwrap();
        let space = OrderedSpace::semi_open(2, union).unwrap();
        assert!(!space.has_bounded_aperture().unwrap());
        // No base at all: bounded aperture is not defined.
        let lex = OrderedSpace::named("lex:2").unwrap();
        assert!(matches!(
            lex.has_bounded_aperture(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn square_cone_interior() {
        let s = OrderedSpace::named("square_cone").unwrap();
        assert!(s.interior_member(&[rat(0), rat(0), rat(1)]).unwrap());
        assert!(!s.interior_member(&[rat(1), rat(1), rat(1)]).unwrap());
        assert!(s.member(&[rat(1), rat(1), rat(1)]).unwrap());
        assert!(s.is_order_unit(&[rat(0), rat(0), rat(1)]).unwrap());
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(
            OrderedSpace::named("no_such_space"),
            Err(Error::UnknownSpace(_))
        ));
    }

    #[test]
    fn operator_positivity_and_order_boundedness() {
        let s = OrderedSpace::named("standard:2").unwrap();
        let id = LinearOperator::new(vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]).unwrap();
        assert!(id.is_positive(&s));
        let t = LinearOperator::functional(vec![rat(1), rat(-1)]);
        assert!(!t.is_positive(&s));
        assert!(t.is_order_bounded(&s).unwrap());
        // On the lexicographic plane the first-coordinate functional is not
        // order bounded: order intervals are unbounded horizontal strips.
        let lex = OrderedSpace::named("lex:2").unwrap();
        let first = LinearOperator::functional(vec![rat(1), rat(0)]);
        assert!(!first.is_order_bounded(&lex).unwrap());
        let second = LinearOperator::functional(vec![rat(0), rat(1)]);
        assert!(second.is_order_bounded(&lex).unwrap());
    }
}
