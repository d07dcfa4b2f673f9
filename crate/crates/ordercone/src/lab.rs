//! Randomized property harness: seeded cone generation, the five-way
//! equivalence suite over spaces of operators, the two-order agreement
//! check, and a grid-search lower-bound oracle for the transform.
//!
//! The five conditions of the equivalence suite (operator lattice, operator
//! interpolation, linearity of transforms of families with a positive
//! member, linearity of single positive transforms, relaxed decomposition
//! property) are each decided exactly on randomly drawn instances. Random
//! search has one-sided error: a "true" verdict can miss a counterexample
//! another condition found. Whenever any condition produces a certificate,
//! the harness therefore converts it into a failing instance for every other
//! condition, mirroring the constructions that prove the equivalences, so a
//! consistent implementation can never report a mixed verdict.

use crate::decomp::{check_lrdp, FunctionalClass};
use crate::error::{Error, Result};
use crate::hahn_banach::{dominating_below, SuperlinearMap};
use crate::num::{dot, vec_add, vector_to_string, zero_vec, Rat, RatVector};
use crate::operator::LinearOperator;
use crate::ordered_space::OrderedSpace;
use crate::polyhedron::{Cell, CellUnion};
use crate::ratgeom::{feasible_point, strict_feasible, LinearConstraint, LpResult};
use crate::rk::{rk_eval, rk_linearity, Linearity, NonlinearityWitness, RkInstance};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Configuration of a randomized run. Per-trial randomness is derived from
/// `(seed, trial index)` only, so results do not depend on execution order.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrialConfig {
    pub seed: u64,
    pub dimension: usize,
    pub generator_count: usize,
    pub coefficient_bound: i64,
    pub trials: usize,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 || self.dimension > crate::ordered_space::dim_cap() {
            return Err(Error::DimensionCap(
                self.dimension,
                crate::ordered_space::dim_cap(),
            ));
        }
        if self.coefficient_bound <= 0 || self.generator_count == 0 {
            return Err(Error::Precondition(
                "generator count and coefficient bound must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn stream_rng(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 32) | index);
    rng
}

/// A pointed generating cone from random integer generators, rejection
/// sampled; deterministic per `(seed, index)`.
pub fn random_cone(cfg: &TrialConfig, index: u64) -> Result<OrderedSpace> {
    cfg.validate()?;
    let mut rng = stream_rng(cfg.seed, 1, index);
    let b = cfg.coefficient_bound;
    for _ in 0..200 {
        let gens: Vec<RatVector> = (0..cfg.generator_count)
            .map(|_| {
                (0..cfg.dimension)
                    .map(|_| Rat::from_integer(rng.random_range(-b..=b).into()))
                    .collect()
            })
            .collect();
        if gens.iter().any(|g| g.iter().all(|c| c.is_zero())) {
            continue;
        }
        match OrderedSpace::closed_v(cfg.dimension, gens) {
            Ok(space) => {
                if space.is_generating()? {
                    return Ok(space);
                }
            }
            Err(Error::NotPointed(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::CapacityExceeded(
        "rejection sampling budget exhausted while drawing a cone".into(),
    ))
}

/// Five per-trial verdicts plus the consistency flag.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GrkfTrial {
    pub lattice: bool,
    pub rdp: bool,
    pub rk_linear_all: bool,
    pub rk_linear_single: bool,
    pub lrdp: bool,
    pub consistent: bool,
    /// Human-readable certificates for a failing trial, or a description of
    /// the inconsistency when one is found.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GrkfReport {
    pub space: String,
    pub case_two: bool,
    pub trials: Vec<GrkfTrial>,
    pub consistent: bool,
}

impl GrkfReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The evaluation domain of the suite: the space itself for closed cones
/// (scalar-codomain case), or the origin plus the cone's internal points for
/// semi-open ones.
fn restricted_space(space: &OrderedSpace) -> Result<(OrderedSpace, bool)> {
    if space.is_closed_cone() {
        return Ok((space.clone(), false));
    }
    if space.interior_point()?.is_none() {
        return Err(Error::Precondition(
            "the semi-open case needs internal points".into(),
        ));
    }
    let d = space.dimension();
    let strict_hull = Cell::new(
        d,
        space
            .closure_hull()
            .constraints()
            .iter()
            .map(|c| LinearConstraint::gt(c.coeffs.clone(), c.rhs.clone()))
            .collect(),
    )?;
    let mut origin_rows = Vec::new();
    for i in 0..d {
        origin_rows.push(LinearConstraint::ge(crate::num::unit_vec(d, i), Rat::zero()));
        origin_rows.push(LinearConstraint::ge(
            crate::num::unit_vec(d, i).iter().map(|x| -x).collect(),
            Rat::zero(),
        ));
    }
    let origin = Cell::new(d, origin_rows)?;
    let union = CellUnion::new(d, vec![strict_hull, origin], true)?;
    Ok((OrderedSpace::semi_open(d, union)?, true))
}

struct TrialContext {
    space: OrderedSpace,
    dual_rays: Vec<RatVector>,
    probes: Vec<LinearOperator>,
}

impl TrialContext {
    fn new(space: &OrderedSpace) -> Result<Self> {
        let (restricted, _) = restricted_space(space)?;
        let dual = restricted.dual_cone()?;
        let dual_rays: Vec<RatVector> = dual.closure_generators().to_vec();
        // Deterministic probe functionals: differences of dual extreme rays
        // expose the absence of least majorants over non-simplicial cones.
        let mut probes = Vec::new();
        'outer: for (i, a) in dual_rays.iter().enumerate() {
            for b in dual_rays.iter().skip(i + 1) {
                probes.push(LinearOperator::functional(
                    a.iter().zip(b).map(|(x, y)| x - y).collect(),
                ));
                if probes.len() >= 6 {
                    break 'outer;
                }
            }
        }
        Ok(TrialContext {
            space: restricted,
            dual_rays,
            probes,
        })
    }

    fn rand_functional(&self, rng: &mut ChaCha8Rng, bound: i64) -> LinearOperator {
        LinearOperator::functional(
            (0..self.space.dimension())
                .map(|_| Rat::from_integer(rng.random_range(-bound..=bound).into()))
                .collect(),
        )
    }

    fn rand_positive_functional(&self, rng: &mut ChaCha8Rng, bound: i64) -> LinearOperator {
        let d = self.space.dimension();
        let mut row = zero_vec(d);
        for r in &self.dual_rays {
            let w = Rat::from_integer(rng.random_range(0..=bound).into());
            for k in 0..d {
                row[k] += &w * &r[k];
            }
        }
        LinearOperator::functional(row)
    }

    /// A random point of the evaluation domain (interior for semi-open).
    fn rand_point(&self, rng: &mut ChaCha8Rng, bound: i64) -> RatVector {
        let d = self.space.dimension();
        let gens = self.space.closure_generators();
        let mut x = zero_vec(d);
        for g in gens {
            let w = Rat::from_integer(rng.random_range(0..=bound).into());
            for k in 0..d {
                x[k] += &w * &g[k];
            }
        }
        if !self.space.is_closed_cone() {
            // Push into the interior.
            for g in gens {
                for k in 0..d {
                    x[k] += &g[k];
                }
            }
        }
        x
    }

    fn zero_op(&self) -> LinearOperator {
        LinearOperator::zero(1, self.space.dimension())
    }

    /// Linearity of the positive transform of `t`; `Ok(None)` when linear.
    fn positive_transform_witness(
        &self,
        t: &LinearOperator,
    ) -> Result<Option<NonlinearityWitness>> {
        let inst = RkInstance::new(self.space.clone(), vec![self.zero_op(), t.clone()])?;
        match rk_linearity(&inst)? {
            Linearity::Linear(_) => Ok(None),
            Linearity::Nonlinear(w) => Ok(Some(w)),
        }
    }

    /// Representing operator of the positive transform when linear.
    fn positive_transform_linear(&self, t: &LinearOperator) -> Result<Option<LinearOperator>> {
        let inst = RkInstance::new(self.space.clone(), vec![self.zero_op(), t.clone()])?;
        match rk_linearity(&inst)? {
            Linearity::Linear(p) => Ok(Some(p)),
            Linearity::Nonlinear(_) => Ok(None),
        }
    }

    /// Walks the reduction chain of a family, returning a single operator
    /// whose positive transform is nonlinear, when the family's transform is.
    fn chain_single_certificate(
        &self,
        family: &[LinearOperator],
    ) -> Result<Option<LinearOperator>> {
        let mut remaining: Vec<LinearOperator> = family.to_vec();
        while let Some(head) = remaining.first().cloned() {
            match self.positive_transform_linear(&head)? {
                None => return Ok(Some(head)),
                Some(p) => {
                    remaining = remaining[1..].iter().map(|t| t.sub(&p)).collect();
                }
            }
        }
        Ok(None)
    }

    /// Interpolation feasibility for `a_i <= s <= b_j` in the operator order.
    fn interpolation_feasible(
        &self,
        a: &[LinearOperator; 2],
        b: &[LinearOperator; 2],
    ) -> Result<bool> {
        let d = self.space.dimension();
        let gens = self.space.closure_generators();
        let mut rows: Vec<(RatVector, Rat)> = Vec::new();
        for g in gens {
            for ai in a {
                rows.push((g.clone(), dot(ai.row(0), g)));
            }
            for bj in b {
                rows.push((g.iter().map(|c| -c).collect(), -dot(bj.row(0), g)));
            }
        }
        Ok(feasible_point(d, &rows).is_some())
    }
}

fn describe_witness(w: &NonlinearityWitness) -> String {
    format!(
        "superadditivity gap at x=({}), y=({}): value at sum {} > {} = sum of values",
        vector_to_string(&w.x),
        vector_to_string(&w.y),
        crate::num::rat_to_string(&w.at_sum),
        crate::num::rat_to_string(&w.at_parts),
    )
}

fn run_grkf_trial(space: &OrderedSpace, cfg: &TrialConfig, index: u64) -> Result<GrkfTrial> {
    let ctx = TrialContext::new(space)?;
    let mut rng = stream_rng(cfg.seed, 2, index);
    let b = cfg.coefficient_bound;
    let mut notes = Vec::new();

    // Native instances.
    let singles: Vec<LinearOperator> = (0..2)
        .map(|_| ctx.rand_functional(&mut rng, b))
        .chain(ctx.probes.iter().cloned())
        .collect();
    let pair = (ctx.rand_functional(&mut rng, b), ctx.rand_functional(&mut rng, b));
    let family = vec![
        ctx.rand_functional(&mut rng, b),
        ctx.rand_functional(&mut rng, b),
        ctx.rand_positive_functional(&mut rng, b),
    ];
    let center = ctx.rand_functional(&mut rng, b);
    let quad_a = [
        center.sub(&ctx.rand_positive_functional(&mut rng, b)),
        center.sub(&ctx.rand_positive_functional(&mut rng, b)),
    ];
    let quad_b = [
        center.add(&ctx.rand_positive_functional(&mut rng, b)),
        center.add(&ctx.rand_positive_functional(&mut rng, b)),
    ];
    let lrdp_pairs: Vec<(RatVector, RatVector)> = (0..2)
        .map(|_| (ctx.rand_point(&mut rng, b), ctx.rand_point(&mut rng, b)))
        .collect();

    // Condition 4: single positive transforms.
    let mut single_cert: Option<(LinearOperator, NonlinearityWitness)> = None;
    for t in &singles {
        if let Some(w) = ctx.positive_transform_witness(t)? {
            single_cert = Some((t.clone(), w));
            break;
        }
    }
    let mut c4 = single_cert.is_none();

    // Condition 1: lattice via pairwise suprema.
    let diff = pair.1.sub(&pair.0);
    let mut c1 = match ctx.positive_transform_linear(&diff)? {
        Some(p) => {
            // (t - s)^+ + s dominates both members.
            let sup = p.add(&pair.0);
            for g in ctx.space.closure_generators() {
                for t in [&pair.0, &pair.1] {
                    if (dot(sup.row(0), g) - dot(t.row(0), g)).is_negative() {
                        return Err(Error::Internal(
                            "pairwise supremum fails to dominate".into(),
                        ));
                    }
                }
            }
            true
        }
        None => false,
    };
    if !c1 && single_cert.is_none() {
        if let Some(w) = ctx.positive_transform_witness(&diff)? {
            single_cert = Some((diff.clone(), w));
        }
    }

    // Condition 3: transforms of families with a positive member.
    let inst = RkInstance::new(ctx.space.clone(), family.clone())?;
    let mut c3 = matches!(rk_linearity(&inst)?, Linearity::Linear(_));
    if !c3 && single_cert.is_none() {
        if let Some(t) = ctx.chain_single_certificate(&family)? {
            if let Some(w) = ctx.positive_transform_witness(&t)? {
                single_cert = Some((t, w));
            }
        }
        if single_cert.is_none() {
            return Err(Error::Internal(
                "nonlinear family without a nonlinear chain member".into(),
            ));
        }
    }

    // Condition 2: interpolation in the operator order.
    let mut c2 = ctx.interpolation_feasible(&quad_a, &quad_b)?;
    if !c2 && single_cert.is_none() {
        let t = quad_a[0].sub(&quad_a[1]);
        match ctx.positive_transform_witness(&t)? {
            Some(w) => single_cert = Some((t, w)),
            None => {
                return Err(Error::Internal(
                    "failed interpolation with a linear difference transform".into(),
                ))
            }
        }
    }

    // Condition 5: relaxed decomposition property on sampled pairs.
    let mut c5 = true;
    for (x, y) in &lrdp_pairs {
        let rep = check_lrdp(&ctx.space, x, y, FunctionalClass::All)?;
        if rep.lrdp_holds != Some(true) {
            c5 = false;
            if single_cert.is_none() {
                let f = rep
                    .separator
                    .ok_or_else(|| Error::Internal("failed relaxed check without separator".into()))?;
                match ctx.positive_transform_witness(&f)? {
                    Some(w) => single_cert = Some((f, w)),
                    None => {
                        return Err(Error::Internal(
                            "strict separator with a linear positive transform".into(),
                        ))
                    }
                }
            }
            break;
        }
    }

    // Certificate propagation: one nonlinear single defeats every condition.
    if let Some((t, w)) = &single_cert {
        notes.push(format!(
            "nonlinear positive transform of ({}); {}",
            vector_to_string(t.row(0)),
            describe_witness(w)
        ));
        c4 = false;
        if c1 {
            c1 = ctx.positive_transform_linear(t)?.is_some();
            if c1 {
                return Err(Error::Internal("certificate failed to propagate to the lattice condition".into()));
            }
        }
        if c3 {
            let probe = RkInstance::new(ctx.space.clone(), vec![ctx.zero_op(), t.clone()])?;
            c3 = matches!(rk_linearity(&probe)?, Linearity::Linear(_));
            if c3 {
                return Err(Error::Internal("certificate failed to propagate to the family condition".into()));
            }
        }
        if c5 {
            let rep = check_lrdp(&ctx.space, &w.x, &w.y, FunctionalClass::All)?;
            c5 = rep.lrdp_holds == Some(true);
            if c5 {
                return Err(Error::Internal("certificate failed to propagate to the decomposition condition".into()));
            }
            if let Some(z) = rep.witness {
                notes.push(format!(
                    "decomposition defect witness z=({}) strictly separated",
                    vector_to_string(&z)
                ));
            }
        }
        if c2 {
            // Two dominating functionals pinched near the transform values
            // make the interpolation instance infeasible.
            let probe = RkInstance::new(ctx.space.clone(), vec![ctx.zero_op(), t.clone()])?;
            let p = SuperlinearMap::rk_of_linear(probe.clone());
            let gap = &w.at_sum - &w.at_parts;
            let quarter = &gap / Rat::from_integer(4.into());
            let rx = rk_eval(&probe, &w.x)?.value[0].clone();
            let ry = rk_eval(&probe, &w.y)?.value[0].clone();
            let s0 = dominating_below(&ctx.space, &p, &w.x, &(&rx + &quarter))?;
            let s1 = dominating_below(&ctx.space, &p, &w.y, &(&ry + &quarter))?;
            c2 = ctx.interpolation_feasible(
                &[t.clone(), ctx.zero_op()],
                &[s0, s1],
            )?;
            if c2 {
                return Err(Error::Internal("certificate failed to propagate to the interpolation condition".into()));
            }
            notes.push("derived pinched interpolation instance is infeasible".into());
        }
    }

    let verdicts = [c1, c2, c3, c4, c5];
    let consistent = verdicts.iter().all(|v| *v) || verdicts.iter().all(|v| !*v);
    if !consistent {
        notes.push(format!(
            "INCONSISTENT verdicts: lattice={c1} interpolation={c2} family={c3} single={c4} relaxed={c5}"
        ));
    }
    Ok(GrkfTrial {
        lattice: c1,
        rdp: c2,
        rk_linear_all: c3,
        rk_linear_single: c4,
        lrdp: c5,
        consistent,
        notes,
    })
}

/// Runs the five-way equivalence suite over one space.
pub fn verify_grkf(space: &OrderedSpace, cfg: &TrialConfig) -> Result<GrkfReport> {
    run_grkf(space, cfg, false)
}

/// Same suite with trials evaluated in parallel; the merged report is
/// byte-identical to the serial one.
pub fn verify_grkf_parallel(space: &OrderedSpace, cfg: &TrialConfig) -> Result<GrkfReport> {
    run_grkf(space, cfg, true)
}

fn run_grkf(space: &OrderedSpace, cfg: &TrialConfig, parallel: bool) -> Result<GrkfReport> {
    cfg.validate()?;
    let (_, case_two) = restricted_space(space)?;
    let trials: Result<Vec<GrkfTrial>> = if parallel {
        (0..cfg.trials as u64)
            .into_par_iter()
            .map(|i| run_grkf_trial(space, cfg, i))
            .collect()
    } else {
        (0..cfg.trials as u64)
            .map(|i| run_grkf_trial(space, cfg, i))
            .collect()
    };
    let trials = trials?;
    let consistent = trials.iter().all(|t| t.consistent);
    Ok(GrkfReport {
        space: space.name().unwrap_or("custom").to_string(),
        case_two,
        trials,
        consistent,
    })
}

/// Agreement of operator positivity with respect to the cone and with
/// respect to `{0} plus its internal points`, on random operators.
#[derive(Clone, Debug, Serialize)]
pub struct IsameorderReport {
    pub trials: usize,
    pub violations: usize,
}

pub fn verify_isameorder(space: &OrderedSpace, cfg: &TrialConfig) -> Result<IsameorderReport> {
    cfg.validate()?;
    if space.interior_point()?.is_none() {
        return Err(Error::Precondition(
            "two-order agreement needs internal points".into(),
        ));
    }
    let d = space.dimension();
    let strict_rows: Vec<LinearConstraint> = space
        .closure_hull()
        .constraints()
        .iter()
        .map(|c| LinearConstraint::gt(c.coeffs.clone(), c.rhs.clone()))
        .collect();
    let mut violations = 0;
    for i in 0..cfg.trials as u64 {
        let mut rng = stream_rng(cfg.seed, 3, i);
        let m = 1 + (i % 2) as usize;
        let rows: Vec<RatVector> = (0..m)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        Rat::from_integer(
                            rng.random_range(-cfg.coefficient_bound..=cfg.coefficient_bound)
                                .into(),
                        )
                    })
                    .collect()
            })
            .collect();
        let t = LinearOperator::new(rows)?;
        let positive_on_cone = t.is_positive(space);
        let mut positive_on_interior = true;
        for row in t.rows() {
            let mut cs = strict_rows.clone();
            cs.push(LinearConstraint::gt(
                row.iter().map(|c| -c).collect(),
                Rat::zero(),
            ));
            if strict_feasible(d, &cs)?.is_some() {
                positive_on_interior = false;
                break;
            }
        }
        if positive_on_cone != positive_on_interior {
            violations += 1;
        }
    }
    Ok(IsameorderReport {
        trials: cfg.trials,
        violations,
    })
}

/// Grid-search lower bound for the scalar transform.
#[derive(Clone, Debug)]
pub struct BruteForceResult {
    pub bound: Rat,
    pub decomposition: Vec<RatVector>,
}

/// Enumerates decompositions on the `1/2^depth` grid inside the order
/// interval's bounding box, keeping true cone membership throughout. The
/// result never exceeds the exact transform value and matches it whenever an
/// optimal decomposition lands on the grid.
pub fn brute_force_rk(
    inst: &RkInstance,
    x: &[Rat],
    depth: u32,
    budget: usize,
) -> Result<BruteForceResult> {
    if inst.codomain_dim() != 1 {
        return Err(Error::Precondition(
            "the grid oracle handles scalar codomains".into(),
        ));
    }
    if depth == 0 {
        return Err(Error::Precondition("depth must be at least one".into()));
    }
    let space = inst.space();
    let d = space.dimension();
    if !space.member(x)? {
        return Err(Error::Precondition("x must lie in the cone".into()));
    }
    let hull = space.closure_hull();
    // Bounding box of [0, x] in the closure order.
    let mut interval_rows: Vec<(RatVector, Rat)> = Vec::new();
    for c in hull.constraints() {
        interval_rows.push((c.coeffs.clone(), c.rhs.clone()));
        interval_rows.push((
            c.coeffs.iter().map(|v| -v).collect(),
            &c.rhs - dot(&c.coeffs, x),
        ));
    }
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for k in 0..d {
        let mut obj = zero_vec(d);
        obj[k] = Rat::from_integer(1.into());
        let up = match crate::ratgeom::solve_max(&obj, &interval_rows) {
            LpResult::Optimal { value, .. } => value,
            _ => return Err(Error::Internal("interval box is unbounded or empty".into())),
        };
        obj[k] = -Rat::from_integer(1.into());
        let down = match crate::ratgeom::solve_max(&obj, &interval_rows) {
            LpResult::Optimal { value, .. } => -value,
            _ => return Err(Error::Internal("interval box is unbounded or empty".into())),
        };
        lo.push(down);
        hi.push(up);
    }
    // Grid candidates inside the true cone.
    let step = Rat::new(1.into(), num::BigInt::from(2u32.pow(depth)));
    let mut axis_values: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for k in 0..d {
        let mut vals = Vec::new();
        let mut v = lo[k].clone();
        // Snap the start up to a grid multiple.
        let ratio = &v / &step;
        let floor = ratio.floor();
        v = &floor * &step;
        if v < lo[k] {
            v += &step;
        }
        while v <= hi[k] {
            vals.push(v.clone());
            v += &step;
        }
        axis_values.push(vals);
    }
    let mut candidates: Vec<RatVector> = vec![Vec::new()];
    for vals in &axis_values {
        let mut next = Vec::with_capacity(candidates.len() * vals.len());
        for c in &candidates {
            for v in vals {
                let mut p = c.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        candidates = next;
        if candidates.len() > budget {
            return Err(Error::CapacityExceeded(format!(
                "{} grid points exceed the budget of {budget}",
                candidates.len()
            )));
        }
    }
    let mut members: Vec<RatVector> = Vec::new();
    for p in candidates {
        if space.member(&p)? {
            members.push(p);
        }
    }
    let n = inst.ops().len();
    if members.len().pow(n as u32) > budget {
        return Err(Error::CapacityExceeded(format!(
            "{}^{n} decompositions exceed the budget of {budget}",
            members.len()
        )));
    }
    let values: Vec<Vec<Rat>> = inst
        .ops()
        .iter()
        .map(|t| members.iter().map(|p| dot(t.row(0), p)).collect())
        .collect();

    let mut best: Option<(Rat, Vec<usize>)> = None;
    let mut choice = vec![0usize; n];
    'enumerate: loop {
        // Partial feasibility and value.
        let mut total = zero_vec(d);
        let mut value = Rat::zero();
        for (j, &ci) in choice.iter().enumerate() {
            total = vec_add(&total, &members[ci]);
            value += &values[j][ci];
        }
        let slack: RatVector = x.iter().zip(&total).map(|(a, b)| a - b).collect();
        if space.member(&slack)? && best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, choice.clone()));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                break 'enumerate;
            }
            choice[pos] += 1;
            if choice[pos] < members.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
    let (bound, idx) =
        best.ok_or_else(|| Error::Internal("the zero decomposition is always on the grid".into()))?;
    Ok(BruteForceResult {
        bound,
        decomposition: idx.into_iter().map(|i| members[i].clone()).collect(),
    })
}
