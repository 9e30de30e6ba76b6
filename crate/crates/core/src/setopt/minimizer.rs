//! Minimizer computation by a sequence of inclusion LPs.

use std::collections::BTreeSet;

use super::{constants, free_vars, OrderCone, PolyMap, SetOptError};
use crate::exact::{zero_vec, Scalar};
use crate::lp::{solve_lp, solve_lp_hinted, BasisHint, LinExpr, LpBuilder, LpOutcome, LpProblem};
use crate::polyhedron::{
    affine_hull, affine_hull_ineq, min_outer_normals, AffineHull, NormalSystem, VRep,
};

/// `max wᵀy s.t. y ∈ F(x)+C, F(x̄)+C ⊆ F(x)+C` with the positions of `x`
/// and `y` among the LP variables.
#[derive(Debug, Clone)]
pub struct InclusionLp {
    pub problem: LpProblem,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl InclusionLp {
    /// Optimal `(x*, y*)`, or `None` if the LP has no optimal solution.
    pub fn solve(&self) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        match solve_lp(&self.problem) {
            LpOutcome::Optimal { point, .. } => Some(self.extract(&point)),
            _ => None,
        }
    }

    fn extract(&self, point: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        (
            self.x.iter().map(|&j| point[j].clone()).collect(),
            self.y.iter().map(|&j| point[j].clone()).collect(),
        )
    }
}

fn var_index(e: &LinExpr) -> usize {
    e.terms[0].0
}

/// `y` ranges over `F(x)+C+span(lift)`; each of `points` must lie in the
/// unlifted `F(x)+C`.
fn inclusion_lp<'a>(
    f: &PolyMap,
    c: &OrderCone,
    lift: &[Vec<Scalar>],
    w: &[Scalar],
    points: impl IntoIterator<Item = &'a Vec<Scalar>>,
) -> InclusionLp {
    let mut b = LpBuilder::new();
    let x = free_vars(&mut b, f.n);
    let y = free_vars(&mut b, f.q);
    f.encode_value(&mut b, c, lift, &x, &y);
    for p in points {
        f.encode_value(&mut b, c, &[], &x, &constants(p));
    }
    let mut obj = LinExpr::default();
    for (wk, yk) in w.iter().zip(&y) {
        obj.add_term(var_index(yk), wk.clone());
    }
    b.maximize(&obj);
    InclusionLp {
        problem: b.build(),
        x: x.iter().map(var_index).collect(),
        y: y.iter().map(var_index).collect(),
    }
}

/// LP(F, w, x̄).
pub fn build_inclusion_lp(
    f: &PolyMap,
    c: &OrderCone,
    w: &[Scalar],
    xbar: &[Scalar],
) -> Result<InclusionLp, SetOptError> {
    if xbar.len() != f.n {
        return Err(SetOptError::Dimension {
            expected: f.n,
            got: xbar.len(),
        });
    }
    let value = f.value(xbar, c);
    if value.is_empty() {
        return Err(SetOptError::NotInDomain);
    }
    Ok(inclusion_lp(f, c, &[], w, &value.points))
}

/// Blocks added per round of [`InclusionSession::solve`].
const BLOCKS_PER_ROUND: usize = 8;

/// Inclusion LPs over one fixed inner set, built up block by block. A
/// relaxed optimum `(x*, y*)` with every point of the inner set in
/// `F(x*)+C` is optimal for the full LP. All blocks share the recession
/// condition `0 ∈ G(d) + C`, so once one block is present an unbounded
/// relaxation means the full LP is unbounded too. Blocks found necessary and
/// the last basis carry over from one objective to the next.
struct InclusionSession<'a> {
    f: &'a PolyMap,
    c: &'a OrderCone,
    lift: Vec<Vec<Scalar>>,
    inner: VRep,
    /// Indices into `inner.points`, in the order the blocks were added.
    active: Vec<usize>,
    hint: Option<BasisHint>,
}

impl<'a> InclusionSession<'a> {
    fn new(f: &'a PolyMap, c: &'a OrderCone, lift: &[Vec<Scalar>], inner: &VRep) -> Self {
        let active = if inner.points.is_empty() { Vec::new() } else { vec![0] };
        InclusionSession {
            f,
            c,
            lift: lift.to_vec(),
            inner: inner.clone(),
            active,
            hint: None,
        }
    }

    fn solve(&mut self, w: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        let pts = &self.inner.points;
        loop {
            let chosen = self.active.iter().map(|&i| &pts[i]);
            let lp = inclusion_lp(self.f, self.c, &self.lift, w, chosen);
            let (outcome, basis) = solve_lp_hinted(&lp.problem, self.hint.as_ref());
            self.hint = Some(basis);
            let LpOutcome::Optimal { point, .. } = outcome else {
                return None;
            };
            let (x, y) = lp.extract(&point);
            let mut added = 0;
            for (i, p) in pts.iter().enumerate() {
                if added == BLOCKS_PER_ROUND {
                    break;
                }
                if !self.active.contains(&i) && !self.f.value_contains(&x, self.c, p) {
                    self.active.push(i);
                    added += 1;
                }
            }
            if added == 0 {
                return Some((x, y));
            }
        }
    }
}

/// LPʰ(F, w): `max wᵀy s.t. y ∈ G(x)+C, 0 ∈ G(x)+C`.
pub fn build_homogeneous_lp(
    f: &PolyMap,
    c: &OrderCone,
    w: &[Scalar],
) -> Result<InclusionLp, SetOptError> {
    let g = super::recession_map(f)?;
    let inner = VRep::from_points(g.q, vec![zero_vec(g.q)]);
    Ok(inclusion_lp(&g, c, &[], w, &inner.points))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MinimizerStats {
    /// LPs solved in the main loop (one per normal in `W`).
    pub alg1_lps: usize,
    /// Changes of `x̄` in the main loop.
    pub alg1_updates: usize,
    /// LPs solved while stabilizing the affine hull.
    pub alg4_lps: usize,
    /// Changes of `x̄` while stabilizing the affine hull.
    pub alg4_updates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimizer {
    pub x: Vec<Scalar>,
    /// `F(x̄) + C`.
    pub value: VRep,
    /// Normals of `F(x̄) + C + span(lift)` checked in the last pass.
    pub normals: NormalSystem,
    /// Basis of `(aff(F(x̄)+C))^⊥`; empty when the values are full-dimensional.
    pub lift: Vec<Vec<Scalar>>,
    pub stats: MinimizerStats,
}

/// Outcome of the affine-hull stabilization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilized {
    /// `x ↦ F(x) + (aff(F(x̄)+C))^⊥`.
    pub f: PolyMap,
    pub x: Vec<Scalar>,
    pub lift: Vec<Vec<Scalar>>,
    pub lps: usize,
    pub updates: usize,
}

/// Some `x̄` with `ȳ ∈ F(x̄) + C`, from a phase-1 LP.
fn initial_point(f: &PolyMap, c: &OrderCone, ybar: &[Scalar]) -> Result<Vec<Scalar>, SetOptError> {
    if ybar.len() != f.q {
        return Err(SetOptError::Dimension {
            expected: f.q,
            got: ybar.len(),
        });
    }
    let mut b = LpBuilder::new();
    let x = free_vars(&mut b, f.n);
    f.encode_value(&mut b, c, &[], &x, &constants(ybar));
    match solve_lp(&b.build()) {
        LpOutcome::Optimal { point, .. } => Ok(x.iter().map(|e| e.eval(&point)).collect()),
        _ => Err(SetOptError::NotInUpperImage),
    }
}

fn sorted_normals(s: &NormalSystem) -> Vec<Vec<Scalar>> {
    let set: BTreeSet<Vec<Scalar>> = s.normals().cloned().collect();
    set.into_iter().collect()
}

fn stabilize_from(
    f: &PolyMap,
    c: &OrderCone,
    mut x: Vec<Scalar>,
) -> Option<(Vec<Scalar>, VRep, AffineHull, usize, usize)> {
    let mut lps = 0;
    let mut updates = 0;
    loop {
        let value = f.value(&x, c);
        let aff = affine_hull(&value).expect("x̄ in the domain");
        let normals = affine_hull_ineq(&aff.eqs, &aff.rhs);
        let mut session = InclusionSession::new(f, c, &[], &value);
        let mut moved = false;
        for w in sorted_normals(&normals) {
            lps += 1;
            let (xs, ys) = session.solve(&w)?;
            if !aff.contains(&ys) {
                x = xs;
                updates += 1;
                moved = true;
                break;
            }
        }
        if !moved {
            return Some((x, value, aff, lps, updates));
        }
    }
}

/// Moves `x̄` until no value `F(x)+C ⊇ F(x̄)+C` has larger dimension, then
/// lifts `F` by the orthogonal complement of the affine hull of `F(x̄)+C`.
/// `Ok(None)` when some LP has no optimal solution.
pub fn stabilize_affine_hull(
    f: &PolyMap,
    c: &OrderCone,
    ybar: &[Scalar],
) -> Result<Option<Stabilized>, SetOptError> {
    let x0 = initial_point(f, c, ybar)?;
    let Some((x, _, aff, lps, updates)) = stabilize_from(f, c, x0) else {
        return Ok(None);
    };
    let lift = aff.eqs.to_rows();
    let lines: Vec<Vec<Scalar>> = lift
        .iter()
        .map(|l| {
            let mut z = zero_vec(f.n);
            z.extend(l.iter().cloned());
            z
        })
        .collect();
    let lifted = PolyMap::new(f.n, f.q, f.graph.add_directions(&[], &lines))?;
    Ok(Some(Stabilized {
        f: lifted,
        x,
        lift,
        lps,
        updates,
    }))
}

fn lifted_normals(value: &VRep, lift: &[Vec<Scalar>]) -> NormalSystem {
    let mut fat = value.clone();
    for l in lift {
        fat.push_line(l.clone());
    }
    min_outer_normals(&fat).expect("nonempty value")
}

/// Minimizer `x̄` with `ȳ ∈ F(x̄) + C`, or `Ok(None)` when an LP on the way
/// has no optimal solution (the problem has no solution). Normals are
/// processed in lexicographic order.
pub fn compute_minimizer(
    f: &PolyMap,
    c: &OrderCone,
    ybar: &[Scalar],
) -> Result<Option<Minimizer>, SetOptError> {
    let mut stats = MinimizerStats::default();
    let x0 = initial_point(f, c, ybar)?;
    let (mut x, mut value, lift) = if c.has_interior() {
        let value = f.value(&x0, c);
        (x0, value, Vec::new())
    } else {
        let Some((x, value, aff, lps, updates)) = stabilize_from(f, c, x0) else {
            return Ok(None);
        };
        stats.alg4_lps = lps;
        stats.alg4_updates = updates;
        (x, value, aff.eqs.to_rows())
    };

    let mut normals = lifted_normals(&value, &lift);
    let mut session = InclusionSession::new(f, c, &lift, &value);
    let mut done: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    loop {
        let next = sorted_normals(&normals).into_iter().find(|w| !done.contains(w));
        let Some(w) = next else {
            break;
        };
        done.insert(w.clone());
        stats.alg1_lps += 1;
        let Some((xs, ys)) = session.solve(&w) else {
            return Ok(None);
        };
        if !normals.contains(&ys) {
            x = xs;
            stats.alg1_updates += 1;
            value = f.value(&x, c);
            normals = lifted_normals(&value, &lift);
            session = InclusionSession::new(f, c, &lift, &value);
        }
    }
    Ok(Some(Minimizer {
        x,
        value,
        normals,
        lift,
        stats,
    }))
}

/// Re-derives the termination conditions of the minimizer computation at
/// `x̄`: every affine-hull normal and every facet normal of the lifted value
/// gives an LP whose optimum stays in the corresponding set.
pub fn certify_minimizer(f: &PolyMap, c: &OrderCone, xbar: &[Scalar]) -> bool {
    let value = f.value(xbar, c);
    let Ok(aff) = affine_hull(&value) else {
        return false;
    };
    let mut session = InclusionSession::new(f, c, &[], &value);
    for w in affine_hull_ineq(&aff.eqs, &aff.rhs).normals() {
        match session.solve(w) {
            Some((_, y)) if aff.contains(&y) => {}
            _ => return false,
        }
    }
    let lift = aff.eqs.to_rows();
    let normals = lifted_normals(&value, &lift);
    let mut session = InclusionSession::new(f, c, &lift, &value);
    let ok = normals.normals().all(|w| match session.solve(w) {
        Some((_, y)) => normals.contains(&y),
        None => false,
    });
    ok
}
